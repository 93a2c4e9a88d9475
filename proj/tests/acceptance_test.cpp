// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "ratvol/fan.hpp"
#include "ratvol/lattice.hpp"
#include "ratvol/measure.hpp"
#include "ratvol/polyhedron.hpp"
#include "ratvol/sampling.hpp"
#include "ratvol/verify.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_map>

using namespace ratvol;
using sample::Rng;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

int failures = 0;

void criterion(int number, const std::string& name, const std::function<void(Verdict&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        body(v);
    } catch (const std::exception& e) {
        v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("%s %2d %s: %s(%.2f s)\n", v.pass ? "PASS" : "FAIL", number, name.c_str(), v.detail.str().c_str(),
                seconds);
    std::fflush(stdout);
}

Polyhedron parse(std::size_t n, std::initializer_list<std::initializer_list<std::initializer_list<const char*>>> ss) {
    std::vector<Simplex> out;
    for (const auto& s : ss) {
        std::vector<RatPoint> vs;
        for (const auto& v : s) {
            std::vector<Rat> cs;
            for (const char* c : v) cs.push_back(parse_rat(c));
            vs.emplace_back(std::move(cs));
        }
        out.emplace_back(std::move(vs));
    }
    return Polyhedron(n, std::move(out));
}

Polyhedron unit_square() { return parse(2, {{{"0", "0"}, {"1", "0"}, {"1", "1"}}, {{"0", "0"}, {"0", "1"}, {"1", "1"}}}); }
Polyhedron unit_triangle() { return parse(2, {{{"0", "0"}, {"1", "0"}, {"0", "1"}}}); }

/// Runs the named properties and checks each executed at least `minimum` instances without failure.
void check_properties(Verdict& v, const verify::Report& r, const std::vector<std::string>& names, std::size_t minimum) {
    for (const auto& name : names) {
        bool found = false;
        for (const auto& p : r.properties) {
            if (p.name != name) continue;
            found = true;
            v.detail << name << " " << p.executed << " instances, " << p.failed << " failures; ";
            v.require(p.executed >= minimum, name + " ran too few instances");
            v.require(p.failed == 0, name + " counterexample " + p.counterexample.dump());
        }
        v.require(found, name + " missing from the report");
    }
}

// Blichfeldt check ---------------------------------------------------------------------

using V3 = std::array<int, 3>;

long det3(const V3& a, const V3& b, const V3& c) {
    return long(a[0]) * (b[1] * c[2] - b[2] * c[1]) - long(a[1]) * (b[0] * c[2] - b[2] * c[0]) +
           long(a[2]) * (b[0] * c[1] - b[1] * c[0]);
}

IntVec to_intvec(const int* v, std::size_t n) {
    IntVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = v[i];
    return out;
}

/// Regularity by both library routes; returns false on disagreement.
bool agrees(const std::vector<IntVec>& g, bool* regular = nullptr) {
    const bool by_minors = gcd_maximal_minors(g) == 1;
    int points = 0;
    for_each_half_open_point(g, [&](const ParallelepipedPoint&) { return ++points < 2; });
    if (regular) *regular = by_minors;
    return by_minors == (points == 1);
}

/// The 48 signed coordinate permutations, as (permutation, signs).
std::vector<std::pair<V3, V3>> signed_permutations() {
    std::vector<std::pair<V3, V3>> out;
    V3 p{0, 1, 2};
    do {
        for (int s = 0; s < 8; ++s) out.push_back({p, V3{s & 1 ? -1 : 1, s & 2 ? -1 : 1, s & 4 ? -1 : 1}});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Base-7 code of the least image of {a, b, c} under the signed permutations.
std::uint32_t orbit_key(const V3& a, const V3& b, const V3& c, const std::vector<std::pair<V3, V3>>& group) {
    std::uint32_t best = UINT32_MAX;
    for (const auto& [p, s] : group) {
        std::array<std::uint32_t, 3> codes{};
        const V3* vs[3] = {&a, &b, &c};
        for (int i = 0; i < 3; ++i) {
            std::uint32_t code = 0;
            for (int j = 0; j < 3; ++j) code = code * 7 + std::uint32_t(s[j] * (*vs[i])[p[j]] + 3);
            codes[i] = code;
        }
        std::sort(codes.begin(), codes.end());
        const std::uint32_t key = (codes[0] * 343 + codes[1]) * 343 + codes[2];
        best = std::min(best, key);
    }
    return best;
}

}  // namespace

int main() {
    std::printf("acceptance run, seed %llu\n", static_cast<unsigned long long>(kSeed));

    criterion(1, "exact values", [](Verdict& v) {
        const auto expect = [&](const Polyhedron& p, std::size_t d, const Rat& want, const char* what) {
            const Rat got = lambda(p, d).value;
            v.detail << what << " = " << to_string(got) << "; ";
            v.require(got == want, what);
        };
        expect(parse(1, {{{"0"}, {"1"}}}), 1, 1, "λ1(conv(0,1))");
        expect(parse(1, {{{"1/5"}}}), 0, Rat(1, 5), "λ0({1/5})");
        expect(unit_square(), 2, 1, "λ2(unit square)");
        expect(unit_triangle(), 2, Rat(1, 2), "λ2(unit triangle)");
        expect(parse(1, {{{"1/5"}, {"2/5"}}}), 1, Rat(1, 5), "λ1(conv(1/5,2/5))");
    });

    criterion(2, "triangulation independence", [](Verdict& v) {
        verify::Options o;
        o.seed = kSeed;
        o.trials = 100;
        o.chains = 20;
        o.only = {"triangulation_independence"};
        v.detail << "20 Farey chains per polyhedron; ";
        check_properties(v, verify::run(o), o.only, 100);
    });

    // Criteria 3 to 7 share one suite run at 200 instances per property.
    verify::Options o;
    o.seed = kSeed;
    o.trials = 200;
    o.only = {"invariance", "valuation", "conservativity", "pyramid", "lebesgue", "proportionality"};
    const auto start = std::chrono::steady_clock::now();
    const verify::Report suite = verify::run(o);
    std::printf("     property suite at 200 trials: %.2f s\n",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

    criterion(3, "G_n-invariance", [&](Verdict& v) { check_properties(v, suite, {"invariance"}, 200); });
    criterion(4, "valuation", [&](Verdict& v) { check_properties(v, suite, {"valuation"}, 200); });
    criterion(5, "conservativity and pyramid",
              [&](Verdict& v) { check_properties(v, suite, {"conservativity", "pyramid"}, 200); });

    criterion(6, "Lebesgue agreement", [&](Verdict& v) {
        check_properties(v, suite, {"lebesgue"}, 200);
        std::vector<Polyhedron> targets{unit_square(), unit_triangle(),
                                        parse(3, {{{"0", "0", "0"}, {"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}})};
        for (std::uint64_t t = 0; t < 5; ++t) {
            Rng rng(sample::derive_seed(kSeed, 100, t));
            targets.push_back(sample::random_desk_polyhedron(rng, 1 + t % 3, true));
        }
        double worst = 0;
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const Polyhedron& p = targets[i];
            const double exact = lambda(p, p.ambient_dim()).value.get_d();
            const MonteCarloEstimate mc = monte_carlo_volume(p, 100000, sample::derive_seed(kSeed, 101, i));
            const double z = mc.sigma > 0 ? std::abs(mc.estimate - exact) / mc.sigma : 0;
            worst = std::max(worst, z);
            v.require(std::abs(mc.estimate - exact) <= 3 * mc.sigma + 1e-12, "Monte Carlo target " + std::to_string(i));
        }
        v.detail << "Monte Carlo " << targets.size() << " targets at 1e5 samples, worst |z| = " << worst << "; ";
    });

    criterion(7, "proportionality", [&](Verdict& v) {
        check_properties(v, suite, {"proportionality"}, 200);
        for (std::size_t n = 1; n <= 4; ++n) {
            const Rat k = kappa_sq(AffineSubspace::whole_space(n));
            v.require(k == 1, "κ² of R^" + std::to_string(n) + " = " + to_string(k));
        }
        v.detail << "κ²(R^n) = 1 for n = 1..4; ";
    });

    criterion(8, "Blichfeldt equivalence", [](Verdict& v) {
        std::vector<V3> all;
        for (int x = -3; x <= 3; ++x)
            for (int y = -3; y <= 3; ++y)
                for (int z = -3; z <= 3; ++z)
                    if (x || y || z) all.push_back({x, y, z});

        // Ambient dimensions 1 and 2, and cones of dimension 1 and 2 in Z^3: every cone directly.
        std::size_t direct = 0;
        for (int x = -3; x <= 3; ++x) {
            if (!x) continue;
            ++direct;
            v.require(agrees({to_intvec(&x, 1)}), "Z^1 cone");
        }
        std::vector<std::array<int, 2>> plane;
        for (int x = -3; x <= 3; ++x)
            for (int y = -3; y <= 3; ++y)
                if (x || y) plane.push_back({x, y});
        for (std::size_t i = 0; i < plane.size(); ++i) {
            ++direct;
            v.require(agrees({to_intvec(plane[i].data(), 2)}), "Z^2 ray");
            for (std::size_t j = i + 1; j < plane.size(); ++j) {
                if (plane[i][0] * plane[j][1] == plane[i][1] * plane[j][0]) continue;
                ++direct;
                v.require(agrees({to_intvec(plane[i].data(), 2), to_intvec(plane[j].data(), 2)}), "Z^2 cone");
            }
        }
        for (std::size_t i = 0; i < all.size(); ++i) {
            ++direct;
            v.require(agrees({to_intvec(all[i].data(), 3)}), "Z^3 ray");
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                const V3 &a = all[i], &b = all[j];
                if (a[1] * b[2] == a[2] * b[1] && a[0] * b[2] == a[2] * b[0] && a[0] * b[1] == a[1] * b[0]) continue;
                ++direct;
                v.require(agrees({to_intvec(a.data(), 3), to_intvec(b.data(), 3)}), "Z^3 2-cone");
            }
        }

        // Full-dimensional cones in Z^3. Signed coordinate permutations lie in GL(3, Z), so they carry
        // parallelepipeds onto parallelepipeds and preserve both tests. Each orbit is checked by both
        // library routes on its first member; every other member must match it in |det|.
        const auto group = signed_permutations();
        struct Orbit {
            long det;
            bool regular;
        };
        std::unordered_map<std::uint32_t, Orbit> orbits;
        std::size_t cones = 0, mismatched = 0;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                for (std::size_t k = j + 1; k < all.size(); ++k) {
                    const long d = std::labs(det3(all[i], all[j], all[k]));
                    if (d == 0) continue;
                    ++cones;
                    const std::uint32_t key = orbit_key(all[i], all[j], all[k], group);
                    const auto it = orbits.find(key);
                    if (it != orbits.end()) {
                        if (it->second.det != d) ++mismatched;
                        continue;
                    }
                    const std::vector<IntVec> g{to_intvec(all[i].data(), 3), to_intvec(all[j].data(), 3),
                                                to_intvec(all[k].data(), 3)};
                    bool regular = false;
                    v.require(agrees(g, &regular), "Z^3 3-cone " + g[0].str() + g[1].str() + g[2].str());
                    v.require(regular == (d == 1), "minor gcd against |det|");
                    orbits.emplace(key, Orbit{d, regular});
                }
        v.require(mismatched == 0, "orbit members with different |det|");

        // Direct checks on a seeded sample of full-dimensional cones as well.
        Rng rng(sample::derive_seed(kSeed, 8, 0));
        std::size_t sampled = 0;
        while (sampled < 20000) {
            const V3 &a = sample::pick(rng, all), &b = sample::pick(rng, all), &c = sample::pick(rng, all);
            if (det3(a, b, c) == 0) continue;
            ++sampled;
            v.require(agrees({to_intvec(a.data(), 3), to_intvec(b.data(), 3), to_intvec(c.data(), 3)}),
                      "sampled Z^3 3-cone");
        }
        v.detail << direct << " cones of dimension <= 2 checked directly; " << cones
                 << " full-dimensional cones in Z^3 in " << orbits.size() << " orbits, " << sampled
                 << " sampled directly; ";
    });

    criterion(9, "d_F and height reduction", [](Verdict& v) {
        std::size_t subspaces = 0, points = 0;
        std::uniform_int_distribution<long> coef(0, 4);
        for (std::uint64_t t = 0; t < 120; ++t) {
            Rng rng(sample::derive_seed(kSeed, 9, t));
            const std::size_t n = 1 + t % 4;
            const AffineSubspace f = affine_hull(sample::random_simplex(rng, n, t % n, 12, 2));
            const Int d = min_denominator(f);
            ++subspaces;
            v.require(d == oracle::min_denominator_by_search(f), "d_F against the SNF search");

            const Simplex s = equal_denominator_simplex(f);
            v.require(s.dim() == f.dim() && is_regular(s), "equal-denominator simplex regular of full dimension");
            for (const auto& x : s.vertices()) v.require(f.contains(x) && den(x) == d, "vertex denominator d_F");

            const std::vector<IntVec> basis = lifted_lattice_basis(f);
            for (int k = 0; k < 12; ++k) {
                IntVec y(n + 1);
                for (const auto& b : basis) y = y + b * Int(coef(rng));
                if (y[n] == 0) continue;
                const RatPoint p = dehomogenize(y);
                ++points;
                v.require(f.contains(p) && den(p) % d == 0, "den(y) divisible by d_F at " + p.str());
            }
        }
        v.require(subspaces >= 100 && points >= 1000, "too few instances");
        v.detail << subspaces << " subspaces, " << points << " divisibility points; ";
    });

    criterion(10, "desingularization soundness", [](Verdict& v) {
        std::size_t fans = 0, queries = 0, steps = 0;
        for (std::uint64_t t = 0; fans < 100; ++t) {
            Rng rng(sample::derive_seed(kSeed, 10, t));
            const Polyhedron p = sample::random_desk_polyhedron(rng, 1 + t % 3);
            if (p.empty()) continue;
            const SimplicialFan f = lift(p.canonical());
            if (f.is_regular()) continue;
            ++fans;
            DesingularizationLog log;
            const SimplicialFan g = desingularize(f, &log);
            for (const auto& c : g.cones()) v.require(c.multiplicity() == 1, "output cone " + c.str());
            for (const auto& step : log.steps) {
                ++steps;
                for (std::size_t i = 0; i < step.parent_multiplicities.size(); ++i)
                    v.require(step.child_multiplicities[i] < step.parent_multiplicities[i], "multiplicity decrease");
            }
            const FanSupportIndex after(g);
            std::uniform_int_distribution<long> w(0, 5), noise(-1, 1);
            std::uniform_int_distribution<int> perturb(0, 3);
            for (int q = 0; q < 1000; ++q) {
                const Cone& c = sample::pick(rng, f.maximal());
                std::vector<Rat> x(f.ambient_dim());
                for (const auto& gen : c.generators()) {
                    const Rat k(w(rng), 3);
                    for (std::size_t j = 0; j < x.size(); ++j) x[j] += k * gen[j];
                }
                if (perturb(rng) == 0)
                    for (auto& e : x) e += Rat(noise(rng), 4);
                ++queries;
                v.require(f.support_contains(x) == after.contains(x), "support membership");
            }
        }
        v.detail << fans << " non-regular fans, " << steps << " stellar steps, " << queries << " membership queries; ";
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? EXIT_FAILURE : EXIT_SUCCESS;
}
