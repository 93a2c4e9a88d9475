#include "ratvol/fan.hpp"

#include "ratvol/cell.hpp"
#include "ratvol/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ratvol {

// Cone ------------------------------------------------------------------------

Cone::Cone(std::vector<IntVec> generators) {
    if (generators.empty()) throw GeometryError("a cone needs at least one generator");
    for (auto& g : generators) g = primitive(g);
    std::sort(generators.begin(), generators.end());
    generators_ = std::move(generators);
    for (const auto& g : generators_)
        if (g.size() != generators_.front().size()) throw GeometryError("cone generators of mixed dimension");
    multiplicity_ = gcd_maximal_minors(generators_);
    if (multiplicity_ == 0 || generators_.size() > generators_.front().size())
        throw GeometryError("cone generators are linearly dependent");
}

bool Cone::has_generator(const IntVec& g) const {
    return std::binary_search(generators_.begin(), generators_.end(), g);
}

bool Cone::contains(std::span<const Rat> x, std::vector<Rat>* coefficients) const {
    std::vector<Rat> mu;
    if (!coefficients_in_span(generators_, x, mu)) return false;
    if (!std::all_of(mu.begin(), mu.end(), [](const Rat& r) { return sgn(r) >= 0; })) return false;
    if (coefficients) *coefficients = std::move(mu);
    return true;
}

bool Cone::contains(const IntVec& x) const {
    std::vector<Rat> xr(x.entries().begin(), x.entries().end());
    return contains(xr);
}

std::strong_ordering operator<=>(const Cone& a, const Cone& b) {
    if (a.generators_.size() != b.generators_.size()) return a.generators_.size() <=> b.generators_.size();
    for (std::size_t i = 0; i < a.generators_.size(); ++i)
        if (auto c = a.generators_[i] <=> b.generators_[i]; c != 0) return c;
    return std::strong_ordering::equal;
}

std::string Cone::str() const {
    std::string s = "cone{";
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (i) s += ", ";
        s += generators_[i].str();
    }
    return s + "}";
}

std::vector<Cone> faces(const Cone& c) {
    const std::size_t k = c.dim();
    std::vector<Cone> out;
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        std::vector<IntVec> gs;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t{1} << i)) gs.push_back(c.generators()[i]);
        out.emplace_back(std::move(gs));
    }
    return out;
}

// SimplicialFan ---------------------------------------------------------------

SimplicialFan SimplicialFan::from_cones(std::size_t ambient_dim, const std::vector<Cone>& cones) {
    SimplicialFan f(ambient_dim);
    for (const auto& c : cones) {
        if (c.ambient_dim() != ambient_dim) throw GeometryError("cone of the wrong ambient dimension");
        if (f.cones_.count(c)) continue;
        for (auto& face : faces(c)) f.cones_.insert(std::move(face));
    }
    std::set<std::vector<IntVec>> covered;
    for (const auto& c : f.cones_)
        for (std::size_t i = 0; c.dim() > 1 && i < c.dim(); ++i) {
            std::vector<IntVec> gs = c.generators();
            gs.erase(gs.begin() + static_cast<long>(i));
            covered.insert(std::move(gs));
        }
    for (const auto& c : f.cones_)
        if (!covered.count(c.generators())) f.maximal_.push_back(c);
    return f;
}

bool SimplicialFan::is_regular() const {
    return std::all_of(cones_.begin(), cones_.end(), [](const Cone& c) { return c.is_regular(); });
}

bool SimplicialFan::support_contains(std::span<const Rat> x) const {
    for (const auto& c : maximal())
        if (c.contains(x)) return true;
    return false;
}

bool SimplicialFan::support_contains(const IntVec& x) const {
    std::vector<Rat> xr(x.entries().begin(), x.entries().end());
    return support_contains(xr);
}

namespace {

// conv(0, generators): a simplex whose facet opposite the origin truncates the cone.
Simplex truncation(const Cone& c) {
    std::vector<RatPoint> vs{RatPoint(c.ambient_dim())};
    for (const auto& g : c.generators()) vs.emplace_back(std::vector<Rat>(g.entries().begin(), g.entries().end()));
    return Simplex(std::move(vs));
}

std::vector<cell::Constraint> cone_constraints(const Cone& c) {
    const Simplex t = truncation(c);
    cell::SimplexConstraints sc = cell::simplex_constraints(t);
    const RatPoint origin(c.ambient_dim());
    std::vector<cell::Constraint> out = std::move(sc.equations);
    for (std::size_t i = 0; i < t.vertices().size(); ++i)
        if (t.vertex(i) != origin) out.push_back(sc.facets[i]);
    return out;
}

}  // namespace

void SimplicialFan::validate() const {
    for (const auto& c : cones_) {
        if (c.ambient_dim() != ambient_dim_) throw GeometryError("fan cone of the wrong ambient dimension");
        for (const auto& face : faces(c))
            if (!cones_.count(face)) throw GeometryError("fan is not face-closed at " + c.str());
    }
    const std::vector<Cone>& top = maximal();
    const bool graph_positioned = std::all_of(top.begin(), top.end(), [](const Cone& c) {
        return std::all_of(c.generators().begin(), c.generators().end(),
                           [](const IntVec& g) { return g[g.size() - 1] > 0; });
    });
    if (graph_positioned && ambient_dim_ > 1) {
        // Cones over the height-1 slices meet in a common face iff the slices do.
        std::vector<Simplex> slices;
        for (const auto& c : top) {
            std::vector<RatPoint> vs;
            for (const auto& g : c.generators()) vs.push_back(dehomogenize(g));
            slices.emplace_back(std::move(vs));
        }
        Complex::from_simplexes(ambient_dim_ - 1, slices).validate();
        return;
    }
    for (std::size_t a = 0; a < top.size(); ++a) {
        const cell::ConvexCell base = cell::ConvexCell::of_simplex(truncation(top[a]));
        for (std::size_t b = a + 1; b < top.size(); ++b) {
            const cell::ConvexCell meet = base.cut_all(cone_constraints(top[b]));
            for (const auto& v : meet.vertices()) {
                if (std::all_of(v.coords().begin(), v.coords().end(), [](const Rat& r) { return r == 0; })) continue;
                const IntVec ray = primitive_integer(v.coords());
                if (!top[a].has_generator(ray) || !top[b].has_generator(ray))
                    throw GeometryError("cones " + top[a].str() + " and " + top[b].str() +
                                        " do not meet in a common face");
            }
        }
    }
}

FanSupportIndex::FanSupportIndex(const SimplicialFan& f) {
    for (const auto& c : f.maximal()) {
        std::vector<Halfspace> hs;
        for (const auto& h : cone_constraints(c)) {
            // Cone constraints pass through the origin, so the offset vanishes.
            const cell::Constraint n = h.normalized();
            IntVec normal(n.normal.size());
            for (std::size_t i = 0; i < normal.size(); ++i) normal[i] = n.normal[i].get_num();
            hs.push_back({std::move(normal), n.equality});
        }
        pieces_.push_back(std::move(hs));
    }
}

bool FanSupportIndex::contains(std::span<const Rat> x) const {
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const std::vector<Halfspace>& hs) {
        return std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) {
            Rat v = 0;
            for (std::size_t i = 0; i < x.size(); ++i)
                if (h.normal[i] != 0) v += h.normal[i] * x[i];
            return h.equality ? sgn(v) == 0 : sgn(v) >= 0;
        });
    });
}

// Lifting ---------------------------------------------------------------------

Cone cone_of_simplex(const Simplex& s) { return Cone(s.correspondents()); }

SimplicialFan lift(const Complex& c) {
    std::vector<Cone> cones;
    for (const auto& s : c.maximal()) cones.push_back(cone_of_simplex(s));
    return SimplicialFan::from_cones(c.ambient_dim() + 1, cones);
}

Complex unlift(const SimplicialFan& f) {
    if (f.ambient_dim() < 2) throw GeometryError("fan too small to unlift");
    std::vector<Simplex> top;
    for (const auto& c : f.maximal()) {
        std::vector<RatPoint> vs;
        for (const auto& g : c.generators()) vs.push_back(dehomogenize(g));
        top.emplace_back(std::move(vs));
    }
    Complex out = Complex::from_simplexes(f.ambient_dim() - 1, top);
    if (invariant_checks_enabled()) out.validate();
    return out;
}

// Subdivision -----------------------------------------------------------------

namespace {

SimplicialFan subdivide(const SimplicialFan& f, const IntVec& ray) {
    const std::vector<Rat> r(ray.entries().begin(), ray.entries().end());
    std::vector<Cone> top;
    for (const auto& c : f.maximal()) {
        std::vector<Rat> mu;
        if (c.has_generator(ray) || !c.contains(r, &mu)) {
            top.push_back(c);
            continue;
        }
        for (std::size_t i = 0; i < c.dim(); ++i)
            if (sgn(mu[i]) > 0) {
                std::vector<IntVec> gs = c.generators();
                gs[i] = ray;
                top.emplace_back(std::move(gs));
            }
    }
    return SimplicialFan::from_cones(f.ambient_dim(), top);
}

}  // namespace

SimplicialFan stellar_subdivision(const SimplicialFan& f, const IntVec& ray) {
    if (ray.size() != f.ambient_dim()) throw GeometryError("ray of the wrong dimension");
    const IntVec p = primitive(ray);
    if (!f.support_contains(p)) throw GeometryError("subdivision ray outside support");
    SimplicialFan out = subdivide(f, p);
    if (invariant_checks_enabled()) out.validate();
    return out;
}

namespace {

using Generators = std::vector<IntVec>;

// Singular cones in resolution order: lowest dimension first, then highest
// multiplicity, then the canonical cone order.
struct SingularKey {
    Int multiplicity;
    Generators generators;

    friend bool operator<(const SingularKey& a, const SingularKey& b) {
        if (a.generators.size() != b.generators.size()) return a.generators.size() < b.generators.size();
        if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
        return a.generators < b.generators;
    }
};

// Subsets of g that contain every element flagged in keep.
template <class F>
void for_each_face_containing(const Generators& g, const std::vector<bool>& keep, F&& visit) {
    const std::size_t k = g.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        Generators face;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) {
            if (mask & (std::size_t{1} << i)) face.push_back(g[i]);
            else ok = !keep[i];
        }
        if (ok) visit(std::move(face));
    }
}

}  // namespace

SimplicialFan desingularize(const SimplicialFan& f, DesingularizationLog* log) {
    // The fan is updated in place: a stellar step at a ray in the relative
    // interior of the target only touches the cones having the target as a face.
    std::map<Generators, Int> multiplicity;
    std::set<Generators> top;
    std::map<IntVec, std::set<Generators>> star;  // generator -> maximal cones using it
    std::set<SingularKey> singular;
    for (const auto& c : f.cones()) {
        multiplicity.emplace(c.generators(), c.multiplicity());
        if (!c.is_regular()) singular.insert({c.multiplicity(), c.generators()});
    }
    for (const auto& c : f.maximal()) {
        top.insert(c.generators());
        for (const auto& g : c.generators()) star[g].insert(c.generators());
    }

    while (!singular.empty()) {
        const SingularKey target = *singular.begin();

        const ParallelepipedPoint* best = nullptr;
        Rat best_sum;
        const auto points = lattice_points_half_open(target.generators);
        for (const auto& p : points) {
            if (p.point.is_zero()) continue;
            Rat sum = 0;
            for (const auto& m : p.coefficients) sum += m;
            if (!best || sum < best_sum) {  // points arrive in lexicographic order
                best = &p;
                best_sum = sum;
            }
        }
        StellarStep step{Cone(target.generators), primitive(best->point), {}, {}};
        const IntVec& ray = step.ray;
        {
            const std::vector<Rat> r(ray.entries().begin(), ray.entries().end());
            std::vector<Rat> mu;
            if (!step.target.contains(r, &mu) ||
                std::any_of(mu.begin(), mu.end(), [](const Rat& m) { return sgn(m) <= 0; }))
                throw std::logic_error("subdivision ray " + ray.str() + " is not interior to " + step.target.str());
        }

        std::vector<Generators> affected;
        for (const auto& c : star[target.generators.front()])
            if (std::includes(c.begin(), c.end(), target.generators.begin(), target.generators.end()))
                affected.push_back(c);

        std::set<Generators> replaced;
        std::map<Generators, Int> fresh;  // multiplicities of new cones
        std::vector<Generators> children;
        auto replace = [&](Generators g, const IntVec& old) {
            *std::find(g.begin(), g.end(), old) = ray;
            std::sort(g.begin(), g.end());
            return g;
        };
        for (const auto& c : affected) {
            top.erase(c);
            for (const auto& g : c) star[g].erase(c);
            std::vector<bool> keep(c.size());
            for (std::size_t i = 0; i < c.size(); ++i)
                keep[i] = std::binary_search(target.generators.begin(), target.generators.end(), c[i]);
            for_each_face_containing(c, keep, [&](Generators face) {
                if (!replaced.insert(face).second) return;
                const Int& parent = multiplicity.at(face);
                Int worst = 0;
                for (const auto& g : target.generators) {
                    Generators child = replace(face, g);
                    auto it = fresh.find(child);
                    if (it == fresh.end()) it = fresh.emplace(child, gcd_maximal_minors(child)).first;
                    worst = std::max(worst, it->second);
                    if (face.size() == c.size()) children.push_back(std::move(child));
                }
                step.parent_multiplicities.push_back(parent);
                step.child_multiplicities.push_back(worst);
                if (worst >= parent)
                    throw std::logic_error("stellar step at " + ray.str() + " did not reduce the multiplicity of " +
                                           Cone(face).str());
            });
        }
        for (const auto& c : replaced) {
            auto it = multiplicity.find(c);
            singular.erase({it->second, c});
            multiplicity.erase(it);
        }
        for (const auto& c : children) {
            top.insert(c);
            for (const auto& g : c) star[g].insert(c);
            std::vector<bool> keep(c.size());
            for (std::size_t i = 0; i < c.size(); ++i) keep[i] = c[i] == ray;
            for_each_face_containing(c, keep, [&](Generators face) {
                if (multiplicity.count(face)) return;
                auto it = fresh.find(face);
                const Int m = it != fresh.end() ? it->second : gcd_maximal_minors(face);
                if (m != 1) singular.insert({m, face});
                multiplicity.emplace(std::move(face), m);
            });
        }
        if (log) log->steps.push_back(std::move(step));
    }

    SimplicialFan out(f.ambient_dim());
    for (auto& [g, m] : multiplicity) out.cones_.insert(Cone(g, m, Cone::Trusted{}));
    for (const auto& c : out.cones_)
        if (top.count(c.generators())) out.maximal_.push_back(c);
    if (invariant_checks_enabled()) out.validate();
    return out;
}

Complex regular_triangulation(const Polyhedron& p) {
    const Complex& base = p.canonical();
    if (base.empty()) return Complex(p.ambient_dim());
    return unlift(desingularize(lift(base)));
}

}  // namespace ratvol
