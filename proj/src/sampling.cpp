#include "ratvol/sampling.hpp"

#include "ratvol/transforms.hpp"

namespace ratvol::sample {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

RatPoint random_point(Rng& rng, std::size_t n, long max_den, long bound) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    RatPoint p(n);
    for (std::size_t i = 0; i < n; ++i) {
        const long q = den_dist(rng);
        std::uniform_int_distribution<long> num(-bound * q, bound * q);
        p[i] = make_rat(num(rng), q);
    }
    return p;
}

Simplex random_simplex(Rng& rng, std::size_t n, std::size_t dim, long max_den, long bound) {
    while (true) {
        std::vector<RatPoint> vs;
        for (std::size_t k = 0; k <= dim; ++k) vs.push_back(random_point(rng, n, max_den, bound));
        try {
            return Simplex(std::move(vs));
        } catch (const GeometryError&) {
        }
    }
}

RatPoint random_grid_point(Rng& rng, std::size_t n, long q, long bound) {
    std::uniform_int_distribution<long> num(-bound * q, bound * q);
    RatPoint p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = make_rat(num(rng), q);
    return p;
}

Simplex random_grid_simplex(Rng& rng, std::size_t n, std::size_t dim, long q, long bound) {
    while (true) {
        std::vector<RatPoint> vs;
        for (std::size_t k = 0; k <= dim; ++k) vs.push_back(random_grid_point(rng, n, q, bound));
        try {
            return Simplex(std::move(vs));
        } catch (const GeometryError&) {
        }
    }
}

Polyhedron random_grid_polyhedron(Rng& rng, std::size_t n, std::size_t pieces, std::size_t max_dim, long q,
                                  long bound) {
    std::uniform_int_distribution<std::size_t> kd(0, std::min(n, max_dim));
    std::vector<Simplex> ss;
    for (std::size_t i = 0; i < pieces; ++i) ss.push_back(random_grid_simplex(rng, n, kd(rng), q, bound));
    return Polyhedron(n, std::move(ss));
}

Polyhedron random_polyhedron(Rng& rng, std::size_t n, std::size_t pieces, std::size_t max_dim, long max_den,
                             long bound) {
    std::uniform_int_distribution<std::size_t> kd(0, std::min(n, max_dim));
    std::vector<Simplex> ss;
    for (std::size_t i = 0; i < pieces; ++i) ss.push_back(random_simplex(rng, n, kd(rng), max_den, bound));
    return Polyhedron(n, std::move(ss));
}

const std::vector<Shape>& desk_shapes() {
    static const std::vector<Shape> shapes{{1, 3, 1, 12, 2}, {2, 2, 2, 12, 1}, {3, 2, 3, 2, 1}, {4, 1, 4, 2, 1}};
    return shapes;
}

Int lifted_multiplicity(const Polyhedron& p) {
    Int m = 0;
    if (p.empty()) return m;
    for (const auto& s : p.canonical().maximal()) {
        const Int k = gcd_maximal_minors(s.correspondents());
        if (k > m) m = k;
    }
    return m;
}

namespace {

const Shape& shape_for(Rng& rng, std::size_t n) {
    if (n == 0) return pick(rng, desk_shapes());
    for (const auto& s : desk_shapes())
        if (s.n == n) return s;
    throw GeometryError("no desk shape for dimension " + std::to_string(n));
}

Polyhedron draw(Rng& rng, const Shape& s, long q, bool full_dimensional) {
    if (!full_dimensional) return random_grid_polyhedron(rng, s.n, s.pieces, s.max_dim, q, s.bound);
    std::vector<Simplex> ss;
    for (std::size_t i = 0; i < s.pieces; ++i) ss.push_back(random_grid_simplex(rng, s.n, s.n, q, s.bound));
    return Polyhedron(s.n, std::move(ss));
}

}  // namespace

Polyhedron random_desk_polyhedron(Rng& rng, std::size_t n, bool full_dimensional) {
    const Shape& s = shape_for(rng, n);
    std::uniform_int_distribution<long> qd(1, s.max_den);
    while (true) {
        Polyhedron p = draw(rng, s, qd(rng), full_dimensional);
        if (lifted_multiplicity(p) <= kDeskMultiplicity) return p;
    }
}

std::pair<Polyhedron, Polyhedron> random_desk_pair(Rng& rng, std::size_t n) {
    const Shape& s = shape_for(rng, n);
    std::uniform_int_distribution<long> qd(1, s.max_den);
    while (true) {
        const long q = qd(rng);
        Polyhedron a = draw(rng, s, q, false);
        Polyhedron b = draw(rng, s, q, false);
        if (lifted_multiplicity(a) > kDeskMultiplicity || lifted_multiplicity(b) > kDeskMultiplicity) continue;
        if (lifted_multiplicity(union_of(a, b)) > kDeskMultiplicity) continue;
        if (lifted_multiplicity(intersection(a, b)) > kDeskMultiplicity) continue;
        return {std::move(a), std::move(b)};
    }
}

GnMap random_desk_map(Rng& rng, const Polyhedron& p) {
    const std::size_t n = p.ambient_dim();
    for (int attempt = 0; attempt < 30; ++attempt) {
        GnMap g = random_unimodular(n, rng(), 6, 3);
        if (lifted_multiplicity(apply_polyhedron(g, p)) <= kDeskMultiplicity) return g;
    }
    // Translations preserve the lexicographic order, hence the triangulation.
    return GnMap(IntMat::identity(n), random_unimodular(n, rng(), 0, 3).shift());
}

Complex random_farey_step(Rng& rng, const Complex& c) {
    const std::vector<Simplex> members(c.simplexes().begin(), c.simplexes().end());
    return farey_blow_up(c, pick(rng, members));
}

Complex random_regular_complex(Rng& rng, std::size_t n, std::size_t k, int blowups) {
    std::vector<RatPoint> vs{RatPoint(n)};
    for (std::size_t i = 0; i < k; ++i) {
        RatPoint e(n);
        e[i] = 1;
        vs.push_back(std::move(e));
    }
    const GnMap g = random_unimodular(n, rng(), 4, 2);
    Complex c = Complex::from_simplexes(n, {apply(g, Simplex(std::move(vs)))});
    for (int i = 0; i < blowups; ++i) c = random_farey_step(rng, c);
    return c;
}

Simplex random_regular_simplex(Rng& rng, std::size_t n, std::size_t k, int blowups) {
    return pick(rng, maximal_simplexes(random_regular_complex(rng, n, k, blowups), k).members);
}

}  // namespace ratvol::sample
