// Literal helpers and random generators shared by the test binaries.

#pragma once

#include "oracles.hpp"
#include "ratvol/polyhedron.hpp"
#include "ratvol/sampling.hpp"
#include "ratvol/simplicial.hpp"
#include "ratvol/transforms.hpp"

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace ratvol::test {

inline RatPoint pt(std::initializer_list<const char*> cs) {
    std::vector<Rat> v;
    for (const char* c : cs) v.push_back(parse_rat(c));
    return RatPoint(std::move(v));
}

inline Simplex simplex(std::initializer_list<std::initializer_list<const char*>> vs) {
    std::vector<RatPoint> out;
    for (const auto& v : vs) out.push_back(pt(v));
    return Simplex(std::move(out));
}

inline Polyhedron poly(std::size_t n, std::vector<Simplex> ss) { return Polyhedron(n, std::move(ss)); }

/// conv(0, e_1, ..., e_k) in R^n.
inline Simplex unit_simplex(std::size_t n, std::size_t k) {
    std::vector<RatPoint> vs{RatPoint(n)};
    for (std::size_t i = 0; i < k; ++i) {
        RatPoint e(n);
        e[i] = 1;
        vs.push_back(e);
    }
    return Simplex(std::move(vs));
}

inline Simplex unit_triangle() { return unit_simplex(2, 2); }

inline Polyhedron unit_square() {
    return poly(2, {simplex({{"0", "0"}, {"1", "0"}, {"1", "1"}}), simplex({{"0", "0"}, {"0", "1"}, {"1", "1"}})});
}

using sample::pick;
using sample::random_farey_step;
using sample::random_polyhedron;
using sample::random_regular_complex;
using sample::random_regular_simplex;

/// Sample points for support comparisons: vertices, barycenters and points of
/// small random combinations of the members, plus uniform points around them.
inline std::vector<RatPoint> sample_points(std::mt19937_64& rng, const std::vector<Simplex>& near, std::size_t count) {
    std::vector<RatPoint> out;
    const std::size_t n = near.front().ambient_dim();
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<long> w(0, 6);
    while (out.size() < count) {
        const Simplex& s = pick(rng, near);
        switch (kind(rng)) {
            case 0: {
                RatPoint p(n);
                Rat total = 0;
                std::vector<Rat> ws;
                for (std::size_t i = 0; i <= s.dim(); ++i) {
                    ws.emplace_back(w(rng));
                    total += ws.back();
                }
                if (total == 0) continue;
                for (std::size_t i = 0; i <= s.dim(); ++i)
                    for (std::size_t j = 0; j < n; ++j) p[j] += ws[i] / total * s.vertex(i)[j];
                out.push_back(p);
                break;
            }
            case 1: {
                // Perturb a barycenter so points just outside faces are exercised too.
                RatPoint p = s.barycenter();
                std::uniform_int_distribution<std::size_t> axis(0, n - 1);
                std::uniform_int_distribution<long> step(-2, 2);
                p[axis(rng)] += Rat(step(rng), 7);
                out.push_back(p);
                break;
            }
            default:
                out.push_back(sample::random_point(rng, n, 6, 3));
        }
    }
    return out;
}

}  // namespace ratvol::test
