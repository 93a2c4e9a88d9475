#include "ratvol/polyhedron.hpp"

#include "ratvol/cell.hpp"

#include <algorithm>
#include <set>

namespace ratvol {

// Union triangulation -----------------------------------------------------------

Complex triangulate_union(std::size_t ambient_dim, const std::vector<Simplex>& simplexes) {
    for (const auto& s : simplexes)
        if (s.ambient_dim() != ambient_dim) throw GeometryError("simplexes of mixed ambient dimension");
    if (simplexes.empty()) return Complex(ambient_dim);

    // Every input simplex is an intersection of closed halfspaces and hyperplanes
    // of this arrangement, so each is a union of closed arrangement faces.
    std::set<cell::Constraint> arrangement;
    for (const auto& s : simplexes) {
        cell::SimplexConstraints sc = cell::simplex_constraints(s);
        for (auto& e : sc.equations) arrangement.insert(e.normalized());
        for (auto f : sc.facets) {
            f.equality = true;
            arrangement.insert(f.normalized());
        }
    }

    cell::PullingMemo memo;
    std::set<std::vector<RatPoint>> seen;
    std::vector<Simplex> top;
    for (const auto& s : simplexes) {
        std::vector<cell::ConvexCell> cells{cell::ConvexCell::of_simplex(s)};
        for (const auto& h : arrangement) {
            cell::Constraint half = h;
            half.equality = false;
            std::vector<cell::ConvexCell> next;
            next.reserve(cells.size());
            for (auto& c : cells) {
                if (c.strictly_split_by(half)) {
                    next.push_back(c.cut(half));
                    next.push_back(c.cut(half.negated()));
                } else {
                    next.push_back(std::move(c));
                }
            }
            cells = std::move(next);
        }
        for (const auto& c : cells) {
            if (!seen.insert(c.vertices()).second) continue;
            for (auto& t : c.pulling_triangulation(&memo)) top.push_back(std::move(t));
        }
    }
    Complex out = Complex::from_simplexes(ambient_dim, top);
    if (invariant_checks_enabled()) out.validate();
    return out;
}

Complex triangulate_union(const std::vector<Simplex>& simplexes) {
    if (simplexes.empty()) throw GeometryError("cannot infer the ambient dimension of an empty list");
    return triangulate_union(simplexes.front().ambient_dim(), simplexes);
}

// Polyhedron --------------------------------------------------------------------

Polyhedron::Polyhedron(std::size_t ambient_dim, std::vector<Simplex> simplexes)
    : ambient_dim_(ambient_dim), simplexes_(std::move(simplexes)), lazy_(std::make_shared<Lazy>()) {
    if (ambient_dim_ == 0) throw GeometryError("ambient dimension must be positive");
    for (const auto& s : simplexes_)
        if (s.ambient_dim() != ambient_dim_) throw GeometryError("simplexes of mixed ambient dimension");
}

int Polyhedron::dimension() const {
    int d = -1;
    for (const auto& s : simplexes_) d = std::max(d, static_cast<int>(s.dim()));
    return d;
}

bool Polyhedron::contains(const RatPoint& p) const {
    return std::any_of(simplexes_.begin(), simplexes_.end(), [&](const Simplex& s) { return s.contains(p); });
}

const Complex& Polyhedron::canonical() const {
    std::call_once(lazy_->once, [this] { lazy_->complex = triangulate_union(ambient_dim_, simplexes_); });
    return *lazy_->complex;
}

Polyhedron intersection(const Polyhedron& p, const Polyhedron& q) {
    if (p.ambient_dim() != q.ambient_dim()) throw GeometryError("polyhedra of different ambient dimension");
    std::vector<Simplex> out;
    for (const auto& s : p.input_simplexes())
        for (const auto& t : q.input_simplexes()) {
            const cell::ConvexCell meet = cell::intersect(s, t);
            if (meet.empty()) continue;
            for (auto& piece : meet.pulling_triangulation()) out.push_back(std::move(piece));
        }
    return Polyhedron(p.ambient_dim(), std::move(out));
}

Polyhedron union_of(const Polyhedron& p, const Polyhedron& q) {
    if (p.ambient_dim() != q.ambient_dim()) throw GeometryError("polyhedra of different ambient dimension");
    std::vector<Simplex> all = p.input_simplexes();
    all.insert(all.end(), q.input_simplexes().begin(), q.input_simplexes().end());
    return Polyhedron(p.ambient_dim(), std::move(all));
}

Polyhedron closure_of_difference(const Polyhedron& p, const Polyhedron& q) {
    if (p.ambient_dim() != q.ambient_dim()) throw GeometryError("polyhedra of different ambient dimension");
    if (q.empty() || p.empty()) return p;
    std::vector<Simplex> all = p.input_simplexes();
    all.insert(all.end(), q.input_simplexes().begin(), q.input_simplexes().end());
    const Complex refinement = triangulate_union(p.ambient_dim(), all);
    // The refinement subdivides both supports, so every open simplex lies
    // entirely inside or entirely outside each of P and Q.
    std::vector<Simplex> kept;
    for (const auto& t : refinement.simplexes()) {
        const RatPoint c = t.barycenter();
        if (p.contains(c) && !q.contains(c)) kept.push_back(t);
    }
    return Polyhedron(p.ambient_dim(), Complex::from_simplexes(p.ambient_dim(), kept).maximal());
}

Polyhedron support_of(const Complex& c) { return Polyhedron(c.ambient_dim(), c.maximal()); }

// Affine subspaces ----------------------------------------------------------------

AffineSubspace::AffineSubspace(std::size_t n, std::vector<Equation> eqs, RatPoint point, std::vector<IntVec> dirs)
    : ambient_dim_(n), equations_(std::move(eqs)), basis_point_(std::move(point)), directions_(std::move(dirs)) {}

AffineSubspace AffineSubspace::from_equations(std::size_t ambient_dim, std::vector<Equation> equations) {
    RatMat a(equations.size(), ambient_dim);
    std::vector<Rat> b(equations.size());
    for (std::size_t r = 0; r < equations.size(); ++r) {
        if (equations[r].a.size() != ambient_dim) throw GeometryError("equation of the wrong dimension");
        for (std::size_t c = 0; c < ambient_dim; ++c) a(r, c) = equations[r].a[c];
        b[r] = -equations[r].t;
    }
    std::vector<Rat> x;
    if (!solve(a, b, x)) throw GeometryError("empty affine subspace");
    std::vector<IntVec> dirs;
    for (const auto& v : nullspace(a)) dirs.push_back(primitive_integer(v));
    return AffineSubspace(ambient_dim, std::move(equations), RatPoint(std::move(x)), std::move(dirs));
}

AffineSubspace AffineSubspace::whole_space(std::size_t ambient_dim) { return from_equations(ambient_dim, {}); }

bool AffineSubspace::contains(const RatPoint& p) const {
    if (p.dim() != ambient_dim_) throw GeometryError("point dimension mismatch");
    return std::all_of(equations_.begin(), equations_.end(), [&](const Equation& e) {
        Rat v = e.t;
        for (std::size_t i = 0; i < ambient_dim_; ++i) v += e.a[i] * p[i];
        return v == 0;
    });
}

bool AffineSubspace::same_as(const AffineSubspace& other) const {
    if (ambient_dim_ != other.ambient_dim_ || dim() != other.dim()) return false;
    if (!contains(other.basis_point_)) return false;
    for (const auto& d : other.directions_)
        for (const auto& e : equations_) {
            Int v = 0;
            for (std::size_t i = 0; i < ambient_dim_; ++i) v += e.a[i] * d[i];
            if (v != 0) return false;
        }
    return true;
}

std::vector<IntVec> AffineSubspace::cone_generators() const {
    std::vector<IntVec> gens{homogeneous(basis_point_)};
    for (const auto& d : directions_) {
        IntVec g(ambient_dim_ + 1);
        for (std::size_t i = 0; i < ambient_dim_; ++i) g[i] = d[i];
        gens.push_back(std::move(g));
    }
    return gens;
}

AffineSubspace affine_hull(const Simplex& s) {
    const std::size_t n = s.ambient_dim();
    std::vector<AffineSubspace::Equation> eqs;
    for (const auto& c : cell::simplex_constraints(s).equations) {
        IntVec a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = c.normal[i].get_num();
        eqs.push_back({std::move(a), c.offset.get_num()});
    }
    std::vector<IntVec> dirs;
    for (std::size_t k = 1; k < s.vertices().size(); ++k) {
        std::vector<Rat> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = s.vertex(k)[i] - s.vertex(0)[i];
        dirs.push_back(primitive_integer(d));
    }
    return AffineSubspace(n, std::move(eqs), s.vertex(0), std::move(dirs));
}

// Least denominators ----------------------------------------------------------------

namespace {

const Int& height(const IntVec& v) { return v[v.size() - 1]; }

}  // namespace

std::vector<IntVec> height_reduction(const std::vector<IntVec>& basis) {
    if (basis.empty()) throw GeometryError("not a lattice basis");
    for (const auto& b : basis) {
        if (b.size() != basis.front().size()) throw GeometryError("not a lattice basis");
        if (height(b) <= 0) throw GeometryError("height reduction needs positive heights");
    }
    if (basis.size() > basis.front().size()) throw GeometryError("not a lattice basis");
    const SmithForm snf = smith_normal_form(IntMat::from_rows(basis));
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (snf.D(i, i) != 1) throw GeometryError("not a lattice basis");

    std::vector<IntVec> b = basis;
    while (true) {
        std::size_t top = 0;
        for (std::size_t i = 1; i < b.size(); ++i) {
            if (height(b[i]) > height(b[top]) || (height(b[i]) == height(b[top]) && b[i] < b[top])) top = i;
        }
        std::size_t lower = b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (height(b[i]) >= height(b[top])) continue;
            if (lower == b.size() || height(b[i]) > height(b[lower]) ||
                (height(b[i]) == height(b[lower]) && b[i] < b[lower]))
                lower = i;
        }
        if (lower == b.size()) return b;  // all heights equal
        // q consecutive single subtractions of b[lower], stopping before the height reaches 0.
        Int q = (height(b[top]) - 1) / height(b[lower]);
        b[top] = b[top] - b[lower] * q;
    }
}

std::vector<IntVec> lifted_lattice_basis(const AffineSubspace& f) {
    std::vector<IntVec> b = saturation_basis(f.cone_generators());
    auto pivot = std::find_if(b.begin(), b.end(), [](const IntVec& v) { return height(v) != 0; });
    if (pivot == b.end()) throw GeometryError("lifted lattice has no vector off the horizon");
    if (height(*pivot) < 0) *pivot = *pivot * Int(-1);
    for (auto& v : b) {
        if (&v == &*pivot) continue;
        if (height(v) < 0) v = v * Int(-1);
        if (height(v) == 0) v = v + *pivot;
    }
    return b;
}

Int min_denominator(const AffineSubspace& f) { return height(height_reduction(lifted_lattice_basis(f)).front()); }

Simplex equal_denominator_simplex(const AffineSubspace& f) {
    std::vector<RatPoint> vs;
    for (const auto& g : height_reduction(lifted_lattice_basis(f))) vs.push_back(dehomogenize(g));
    return Simplex(std::move(vs));
}

}  // namespace ratvol
