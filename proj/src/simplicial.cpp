#include "ratvol/simplicial.hpp"

#include "ratvol/cell.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <numeric>
#include <optional>

namespace ratvol {

namespace {
std::atomic<bool> g_invariant_checks{false};
}  // namespace

void set_invariant_checks(bool enabled) { g_invariant_checks.store(enabled); }
bool invariant_checks_enabled() { return g_invariant_checks.load(); }

// Simplex ---------------------------------------------------------------------

Simplex::Simplex(std::vector<RatPoint> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw GeometryError("a simplex needs at least one vertex");
    const std::size_t n = vertices_.front().dim();
    if (n == 0) throw GeometryError("ambient dimension must be positive");
    for (const auto& v : vertices_)
        if (v.dim() != n) throw GeometryError("simplex vertices of mixed dimension");
    std::sort(vertices_.begin(), vertices_.end());
    if (cell::affine_rank(vertices_) != vertices_.size())
        throw GeometryError("simplex vertices are not affinely independent");
}

bool Simplex::has_vertex(const RatPoint& p) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), p);
}

bool Simplex::barycentric(const RatPoint& p, std::vector<Rat>& coords) const {
    if (p.dim() != ambient_dim()) throw GeometryError("point dimension mismatch");
    const std::size_t n = ambient_dim();
    RatMat m(n + 1, vertices_.size());
    std::vector<Rat> b(n + 1);
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) m(i, j) = vertices_[j][i];
        m(n, j) = 1;
    }
    for (std::size_t i = 0; i < n; ++i) b[i] = p[i];
    b[n] = 1;
    return solve(m, std::move(b), coords);
}

bool Simplex::contains(const RatPoint& p) const {
    std::vector<Rat> mu;
    if (!barycentric(p, mu)) return false;
    return std::all_of(mu.begin(), mu.end(), [](const Rat& r) { return sgn(r) >= 0; });
}

bool Simplex::contains(const Simplex& other) const {
    return std::all_of(other.vertices_.begin(), other.vertices_.end(),
                       [this](const RatPoint& v) { return contains(v); });
}

RatPoint Simplex::barycenter() const {
    RatPoint c(ambient_dim());
    for (const auto& v : vertices_)
        for (std::size_t i = 0; i < c.dim(); ++i) c[i] += v[i];
    const Rat k(static_cast<long>(vertices_.size()));
    for (std::size_t i = 0; i < c.dim(); ++i) c[i] /= k;
    return c;
}

Simplex Simplex::face(std::size_t mask) const {
    std::vector<RatPoint> vs;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (mask & (std::size_t{1} << i)) vs.push_back(vertices_[i]);
    if (vs.empty()) throw GeometryError("empty face");
    return Simplex(std::move(vs), Trusted{});
}

Simplex Simplex::facet(std::size_t i) const {
    if (vertices_.size() < 2) throw GeometryError("a point has no facets");
    std::vector<RatPoint> vs = vertices_;
    vs.erase(vs.begin() + static_cast<long>(i));
    return Simplex(std::move(vs), Trusted{});
}

std::vector<IntVec> Simplex::correspondents() const {
    std::vector<IntVec> out;
    out.reserve(vertices_.size());
    for (const auto& v : vertices_) out.push_back(homogeneous(v));
    return out;
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    if (a.vertices_.size() != b.vertices_.size()) return a.vertices_.size() <=> b.vertices_.size();
    for (std::size_t i = 0; i < a.vertices_.size(); ++i) {
        if (auto c = a.vertices_[i] <=> b.vertices_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string Simplex::str() const {
    std::string s = "conv(";
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (i) s += ", ";
        s += vertices_[i].str();
    }
    return s + ")";
}

// Complex ---------------------------------------------------------------------

Complex Complex::from_simplexes(std::size_t ambient_dim, const std::vector<Simplex>& simplexes) {
    Complex c(ambient_dim);
    for (const auto& s : simplexes) {
        if (s.ambient_dim() != ambient_dim) throw GeometryError("simplex of the wrong ambient dimension");
        if (c.simplexes_.count(s)) continue;
        for (auto& f : faces(s)) c.simplexes_.insert(std::move(f));
    }
    // Only inputs can be maximal, and only a higher-dimensional input can cover one.
    std::set<Simplex> inputs(simplexes.begin(), simplexes.end());
    std::size_t lowest = SIZE_MAX;
    for (const auto& s : inputs) lowest = std::min(lowest, s.dim());
    std::set<Simplex> covered;
    for (const auto& t : inputs) {
        if (t.dim() == lowest) continue;
        for (auto& f : faces(t))
            if (f.dim() >= lowest && f.dim() < t.dim() && inputs.count(f)) covered.insert(std::move(f));
    }
    for (const auto& t : inputs)
        if (!covered.count(t)) c.maximal_.push_back(t);
    return c;
}

int Complex::dimension() const {
    int d = -1;
    for (const auto& s : simplexes_) d = std::max(d, static_cast<int>(s.dim()));
    return d;
}

bool Complex::support_contains(const RatPoint& p) const {
    for (const auto& s : maximal())
        if (s.contains(p)) return true;
    return false;
}

bool Complex::is_regular() const {
    for (const auto& s : maximal())
        if (!ratvol::is_regular(s)) return false;
    return true;
}

std::vector<RatPoint> Complex::vertices() const {
    std::vector<RatPoint> out;
    for (const auto& s : simplexes_)
        if (s.dim() == 0) out.push_back(s.vertex(0));
    return out;
}

void Complex::validate() const {
    for (const auto& s : simplexes_) {
        if (s.ambient_dim() != ambient_dim_) throw GeometryError("complex member of the wrong ambient dimension");
        if (s.dim() == 0) continue;
        for (std::size_t i = 0; i < s.vertices().size(); ++i)
            if (!simplexes_.count(s.facet(i))) throw GeometryError("complex is not face-closed at " + s.str());
    }
    // Pairwise intersections, visiting only pairs whose bounding boxes overlap
    // (sweep along the first coordinate).
    const std::vector<Simplex>& top = maximal();
    const std::size_t n = ambient_dim_;
    std::vector<std::vector<Rat>> lo(top.size()), hi(top.size());
    for (std::size_t a = 0; a < top.size(); ++a) {
        lo[a] = hi[a] = top[a].vertex(0).coords();
        for (const auto& v : top[a].vertices())
            for (std::size_t i = 0; i < n; ++i) {
                if (v[i] < lo[a][i]) lo[a][i] = v[i];
                if (v[i] > hi[a][i]) hi[a][i] = v[i];
            }
    }
    std::vector<std::size_t> order(top.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo[a][0] < lo[b][0]; });
    std::vector<std::optional<cell::SimplexConstraints>> hs(top.size());
    auto constraints_of = [&](std::size_t a) -> const cell::SimplexConstraints& {
        if (!hs[a]) hs[a] = cell::simplex_constraints(top[a]);
        return *hs[a];
    };
    // A facet function h of S (h >= 0 on S) that vanishes on the shared vertices
    // and is negative on the other vertices of T confines S ∩ T to the face
    // spanned by the shared vertices.
    auto separated = [&](std::size_t a, std::size_t b) {
        for (const auto& h : constraints_of(a).facets) {
            bool ok = true;
            for (const auto& v : top[b].vertices()) {
                const int sign = sgn(h.eval(v));
                ok = top[a].has_vertex(v) ? sign == 0 : sign < 0;
                if (!ok) break;
            }
            if (ok) return true;
        }
        return false;
    };
    for (std::size_t x = 0; x < order.size(); ++x) {
        const std::size_t a = order[x];
        for (std::size_t y = x + 1; y < order.size() && lo[order[y]][0] <= hi[a][0]; ++y) {
            const std::size_t b = order[y];
            bool overlap = true;
            for (std::size_t i = 1; i < n && overlap; ++i) overlap = !(hi[a][i] < lo[b][i] || hi[b][i] < lo[a][i]);
            if (!overlap || separated(a, b) || separated(b, a)) continue;
            const cell::ConvexCell meet = cell::intersect(top[a], top[b]);
            for (const auto& v : meet.vertices()) {
                if (!top[a].has_vertex(v) || !top[b].has_vertex(v))
                    throw GeometryError("simplexes " + top[a].str() + " and " + top[b].str() +
                                        " do not meet in a common face");
            }
        }
    }
}

// Operations ------------------------------------------------------------------

std::vector<Simplex> faces(const Simplex& s) {
    const std::size_t k = s.vertices().size();
    std::vector<Simplex> out;
    out.reserve((std::size_t{1} << k) - 1);
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) out.push_back(s.face(mask));
    return out;
}

bool is_regular(const Simplex& s) { return gcd_maximal_minors(s.correspondents()) == 1; }

Int den(const Simplex& s) {
    if (!is_regular(s)) throw GeometryError("denominator defined for regular simplexes");
    Int d = 1;
    for (const auto& v : s.vertices()) d *= den(v);
    return d;
}

RatPoint farey_mediant(const Simplex& s) {
    if (!is_regular(s)) throw GeometryError("Farey mediant defined for regular simplexes");
    IntVec sum(s.ambient_dim() + 1);
    for (const auto& g : s.correspondents()) sum = sum + g;
    return dehomogenize(sum);
}

Complex blow_up(const Complex& c, const RatPoint& p) {
    if (p.dim() != c.ambient_dim()) throw GeometryError("blow-up center of the wrong dimension");
    // Stellar subdivision of the maximal members: a member containing p is
    // replaced by the simplexes obtained by swapping p in for each vertex with
    // positive barycentric weight. Their face closure is exactly the set of
    // joins conv(F ∪ {p}) with p ∉ F, together with the untouched members.
    std::vector<Simplex> top;
    bool inside = false;
    for (const auto& s : c.maximal()) {
        std::vector<Rat> mu;
        if (!s.barycentric(p, mu) || std::any_of(mu.begin(), mu.end(), [](const Rat& r) { return sgn(r) < 0; })) {
            top.push_back(s);
            continue;
        }
        inside = true;
        if (s.has_vertex(p)) {
            top.push_back(s);
            continue;
        }
        for (std::size_t i = 0; i < mu.size(); ++i) {
            if (sgn(mu[i]) == 0) continue;
            std::vector<RatPoint> vs = s.vertices();
            vs[i] = p;
            top.emplace_back(std::move(vs));
        }
    }
    if (!inside) throw GeometryError("blow-up center outside support");
    Complex out = Complex::from_simplexes(c.ambient_dim(), top);
    if (invariant_checks_enabled()) out.validate();
    return out;
}

Complex farey_blow_up(const Complex& c, const Simplex& s) {
    if (!c.contains(s)) throw GeometryError("Farey blow-up at a simplex outside the complex");
    return blow_up(c, farey_mediant(s));
}

MaximalSelection maximal_simplexes(const Complex& c, std::size_t i) {
    MaximalSelection sel{i, {}};
    for (const auto& s : c.maximal())
        if (s.dim() == i) sel.members.push_back(s);
    return sel;
}

Complex dimensional_part(const Complex& c, std::size_t i) {
    return Complex::from_simplexes(c.ambient_dim(), maximal_simplexes(c, i).members);
}

Complex standard_triangulation(const std::vector<IntVec>& basis) {
    if (basis.empty()) throw GeometryError("standard triangulation needs a nonempty basis");
    const std::size_t n = basis.front().size();
    if (basis.size() > n || gcd_maximal_minors(basis) != 1) throw GeometryError("not unimodular");
    std::vector<std::size_t> perm(basis.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Simplex> top;
    do {
        std::vector<RatPoint> vs;
        RatPoint partial(n);
        vs.push_back(partial);
        for (std::size_t k : perm) {
            for (std::size_t i = 0; i < n; ++i) partial[i] += basis[k][i];
            vs.push_back(partial);
        }
        top.emplace_back(std::move(vs));
    } while (std::next_permutation(perm.begin(), perm.end()));
    Complex c = Complex::from_simplexes(n, top);
    if (invariant_checks_enabled()) c.validate();
    return c;
}

}  // namespace ratvol
