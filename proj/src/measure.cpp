#include "ratvol/measure.hpp"

#include "ratvol/cell.hpp"
#include "ratvol/fan.hpp"

#include <cmath>
#include <random>

namespace ratvol {

MeasureValue lambda_of_complex(const Complex& delta, std::size_t i) {
    const std::vector<Simplex>& top = delta.maximal();
    for (const auto& t : top)
        if (!is_regular(t)) throw GeometryError("λ requires a regular triangulation");
    Rat sum = 0;
    const Int fact = factorial(static_cast<unsigned>(i));
    for (const auto& t : top) {
        if (t.dim() != i) continue;
        sum += make_rat(1, fact * den(t));
    }
    return {sum};
}

MeasureValue lambda_given(const Polyhedron& p, const Complex& delta, std::size_t i) {
    if (p.ambient_dim() != delta.ambient_dim()) throw GeometryError("support mismatch: ambient dimensions differ");
    const std::vector<Simplex>& pieces = delta.maximal();
    std::vector<Simplex> all = p.input_simplexes();
    all.insert(all.end(), pieces.begin(), pieces.end());
    const Complex common = triangulate_union(p.ambient_dim(), all);
    for (const auto& t : common.maximal()) {
        const RatPoint c = t.barycenter();
        bool in_delta = false;
        for (const auto& s : pieces) {
            if (s.contains(c)) {
                in_delta = true;
                break;
            }
        }
        if (in_delta != p.contains(c)) throw GeometryError("support mismatch between triangulation and polyhedron");
    }
    return lambda_of_complex(delta, i);
}

MeasureValue lambda(const Polyhedron& p, std::size_t d) {
    if (static_cast<int>(d) > p.dimension()) return {Rat(0)};
    return lambda_of_complex(regular_triangulation(p), d);
}

std::vector<Rat> lambda_vector(const Polyhedron& p) {
    std::vector<Rat> out(p.ambient_dim() + 1);
    if (p.empty()) return out;
    const Complex delta = regular_triangulation(p);
    for (std::size_t d = 0; d <= p.ambient_dim(); ++d) out[d] = lambda_of_complex(delta, d).value;
    return out;
}

MeasureValue lebesgue_volume(const Simplex& s) {
    const std::size_t n = s.ambient_dim();
    if (s.dim() != n) throw GeometryError("Lebesgue volume needs full dimension");
    RatMat m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = s.vertex(r + 1)[c] - s.vertex(0)[c];
    return {abs(determinant(m)) / Rat(factorial(static_cast<unsigned>(n)))};
}

HausdorffSq hausdorff_sq(const Simplex& s) {
    const std::size_t m = s.dim();
    if (m == 0) return {Rat(1), 0};
    const std::size_t n = s.ambient_dim();
    std::vector<std::vector<Rat>> edges(m, std::vector<Rat>(n));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t c = 0; c < n; ++c) edges[k][c] = s.vertex(k + 1)[c] - s.vertex(0)[c];
    RatMat gram(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            for (std::size_t c = 0; c < n; ++c) gram(a, b) += edges[a][c] * edges[b][c];
    const Int f = factorial(static_cast<unsigned>(m));
    return {determinant(gram) / Rat(f * f), m};
}

bool proportionality_check(const Simplex& t, const Simplex& t2) {
    if (t.dim() != t2.dim() || !affine_hull(t).same_as(affine_hull(t2)))
        throw GeometryError("proportionality is per-subspace");
    const std::size_t m = t.dim();
    const Rat l1 = lambda(Polyhedron(t.ambient_dim(), {t}), m).value;
    const Rat l2 = lambda(Polyhedron(t2.ambient_dim(), {t2}), m).value;
    return l1 * l1 * hausdorff_sq(t2).value == l2 * l2 * hausdorff_sq(t).value;
}

Rat kappa_sq(const AffineSubspace& a) {
    const Simplex t = equal_denominator_simplex(a);
    const Rat l = lambda_of_complex(Complex::from_simplexes(t.ambient_dim(), {t}), t.dim()).value;
    return l * l / hausdorff_sq(t).value;
}

MonteCarloEstimate monte_carlo_volume(const Polyhedron& p, std::uint64_t samples, std::uint64_t seed) {
    MonteCarloEstimate est;
    est.samples = samples;
    if (p.empty()) return est;
    const std::size_t n = p.ambient_dim();
    if (p.dimension() != static_cast<int>(n)) throw GeometryError("zero-volume target");

    std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
    struct Halfspace {
        std::vector<double> normal;
        double offset;
    };
    std::vector<std::vector<Halfspace>> solids;
    for (const auto& s : p.input_simplexes()) {
        for (const auto& v : s.vertices())
            for (std::size_t i = 0; i < n; ++i) {
                lo[i] = std::min(lo[i], v[i].get_d());
                hi[i] = std::max(hi[i], v[i].get_d());
            }
        if (s.dim() != n) continue;
        std::vector<Halfspace> hs;
        for (const auto& f : cell::simplex_constraints(s).facets) {
            Halfspace h{std::vector<double>(n), f.offset.get_d()};
            for (std::size_t i = 0; i < n; ++i) h.normal[i] = f.normal[i].get_d();
            hs.push_back(std::move(h));
        }
        solids.push_back(std::move(hs));
    }

    double box = 1.0;
    for (std::size_t i = 0; i < n; ++i) box *= hi[i] - lo[i];
    std::mt19937_64 rng(seed);
    std::vector<std::uniform_real_distribution<double>> axis;
    for (std::size_t i = 0; i < n; ++i) axis.emplace_back(lo[i], hi[i]);

    std::uint64_t hits = 0;
    std::vector<double> x(n);
    for (std::uint64_t k = 0; k < samples; ++k) {
        for (std::size_t i = 0; i < n; ++i) x[i] = axis[i](rng);
        for (const auto& hs : solids) {
            bool inside = true;
            for (const auto& h : hs) {
                double v = h.offset;
                for (std::size_t i = 0; i < n; ++i) v += h.normal[i] * x[i];
                if (v < -1e-12) {
                    inside = false;
                    break;
                }
            }
            if (inside) {
                ++hits;
                break;
            }
        }
    }
    const double frac = samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0;
    est.estimate = box * frac;
    est.sigma = samples ? box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples)) : 0.0;
    return est;
}

}  // namespace ratvol
