#include "support.hpp"

#include "ratvol/lattice.hpp"
#include "ratvol/simplicial.hpp"
#include "ratvol/transforms.hpp"

#include <gtest/gtest.h>

using namespace ratvol;
using test::pt;
using test::simplex;

namespace {

class Simplicial : public ::testing::Test {
protected:
    void SetUp() override { set_invariant_checks(true); }
};

std::vector<Simplex> sorted(std::vector<Simplex> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_F(Simplicial, SimplexRejectsDependentVertices) {
    EXPECT_THROW(simplex({{"0", "0"}, {"1", "1"}, {"2", "2"}}), GeometryError);
    EXPECT_THROW(simplex({{"1/2"}, {"1/2"}}), GeometryError);
}

TEST_F(Simplicial, VerticesAreSorted) {
    EXPECT_EQ(simplex({{"1"}, {"0"}}), simplex({{"0"}, {"1"}}));
    EXPECT_EQ(simplex({{"1"}, {"0"}}).vertex(0), pt({"0"}));
}

TEST_F(Simplicial, FacesExamples) {
    EXPECT_EQ(faces(simplex({{"1/3"}})), (std::vector<Simplex>{simplex({{"1/3"}})}));
    EXPECT_EQ(sorted(faces(simplex({{"0"}, {"1"}}))),
              sorted({simplex({{"0"}}), simplex({{"1"}}), simplex({{"0"}, {"1"}})}));
    EXPECT_EQ(faces(test::unit_triangle()).size(), 7u);
    EXPECT_EQ(faces(test::unit_simplex(3, 3)).size(), 15u);
}

TEST_F(Simplicial, IsRegularExamples) {
    EXPECT_TRUE(is_regular(test::unit_triangle()));
    EXPECT_FALSE(is_regular(simplex({{"0"}, {"2"}})));
    EXPECT_FALSE(is_regular(simplex({{"1/5"}, {"2/5"}})));
    EXPECT_TRUE(is_regular(simplex({{"1/5"}})));
}

TEST_F(Simplicial, DenExamples) {
    EXPECT_EQ(den(simplex({{"0"}, {"1"}})), 1);
    EXPECT_EQ(den(simplex({{"0"}, {"1/2"}})), 2);
    EXPECT_EQ(den(simplex({{"1/2", "0"}, {"0", "1/2"}})), 4);
    try {
        den(simplex({{"0"}, {"2"}}));
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_STREQ(e.what(), "denominator defined for regular simplexes");
    }
}

TEST_F(Simplicial, FareyMediantExamples) {
    EXPECT_EQ(farey_mediant(simplex({{"0"}, {"1"}})), pt({"1/2"}));
    EXPECT_EQ(farey_mediant(simplex({{"0"}, {"1/2"}})), pt({"1/3"}));
    EXPECT_EQ(farey_mediant(test::unit_triangle()), pt({"1/3", "1/3"}));
    EXPECT_THROW(farey_mediant(simplex({{"0"}, {"2"}})), GeometryError);
}

TEST_F(Simplicial, BlowUpSegmentAtMidpoint) {
    const Complex c = Complex::from_simplexes(1, {simplex({{"0"}, {"1"}})});
    const Complex b = blow_up(c, pt({"1/2"}));
    EXPECT_EQ(sorted(b.maximal()), sorted({simplex({{"0"}, {"1/2"}}), simplex({{"1/2"}, {"1"}})}));
    EXPECT_EQ(b.size(), 5u);
}

TEST_F(Simplicial, BlowUpTriangleAtMediant) {
    const Complex c = Complex::from_simplexes(2, {test::unit_triangle()});
    const Complex b = blow_up(c, pt({"1/3", "1/3"}));
    const auto top = b.maximal();
    ASSERT_EQ(top.size(), 3u);
    for (const auto& s : top) {
        EXPECT_EQ(s.dim(), 2u);
        EXPECT_TRUE(is_regular(s));
        EXPECT_EQ(den(s), 3);
    }
}

TEST_F(Simplicial, BlowUpAtVertexIsIdentity) {
    const Complex c = Complex::from_simplexes(2, {test::unit_triangle()});
    EXPECT_EQ(blow_up(c, pt({"1", "0"})), c);
}

TEST_F(Simplicial, BlowUpOutsideSupport) {
    const Complex c = Complex::from_simplexes(1, {simplex({{"0"}, {"1"}})});
    try {
        blow_up(c, pt({"3/2"}));
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_STREQ(e.what(), "blow-up center outside support");
    }
}

TEST_F(Simplicial, BlowUpOnEdgeSplitsBothTriangles) {
    const Complex c = test::unit_square().canonical();
    const Complex b = blow_up(c, pt({"1/2", "1/2"}));
    EXPECT_EQ(b.maximal().size(), 4u);
    b.validate();
}

TEST_F(Simplicial, MaximalSelectionExamples) {
    const Complex seg = Complex::from_simplexes(1, {simplex({{"0"}, {"1"}})});
    EXPECT_EQ(maximal_simplexes(seg, 1).members, (std::vector<Simplex>{simplex({{"0"}, {"1"}})}));
    EXPECT_TRUE(maximal_simplexes(seg, 0).members.empty());
    const Complex mixed = Complex::from_simplexes(1, {simplex({{"0"}, {"1"}}), simplex({{"2"}})});
    EXPECT_EQ(maximal_simplexes(mixed, 0).members, (std::vector<Simplex>{simplex({{"2"}})}));

    EXPECT_EQ(dimensional_part(seg, 1), seg);
    EXPECT_TRUE(dimensional_part(seg, 0).empty());
    EXPECT_EQ(dimensional_part(mixed, 0), Complex::from_simplexes(1, {simplex({{"2"}})}));
}

TEST_F(Simplicial, StandardTriangulationExamples) {
    const Complex sq = standard_triangulation({IntVec{1, 0}, IntVec{0, 1}});
    EXPECT_EQ(sorted(sq.maximal()), sorted({simplex({{"0", "0"}, {"1", "0"}, {"1", "1"}}),
                                            simplex({{"0", "0"}, {"0", "1"}, {"1", "1"}})}));
    EXPECT_EQ(standard_triangulation({IntVec{1}}).maximal(), (std::vector<Simplex>{simplex({{"0"}, {"1"}})}));
    EXPECT_THROW(standard_triangulation({IntVec{2, 0}, IntVec{0, 1}}), GeometryError);
}

TEST_F(Simplicial, StandardCubeTetrahedraAreEquivalent) {
    const Complex cube = standard_triangulation({IntVec{1, 0, 0}, IntVec{0, 1, 0}, IntVec{0, 0, 1}});
    const auto top = cube.maximal();
    ASSERT_EQ(top.size(), 6u);
    // Permutation matrices carry the path simplexes onto one another.
    std::vector<std::size_t> perm{0, 1, 2};
    std::vector<GnMap> perms;
    do {
        IntMat a(3, 3);
        for (std::size_t i = 0; i < 3; ++i) a(perm[i], i) = 1;
        perms.emplace_back(a, IntVec(3));
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& s : top) {
        EXPECT_TRUE(is_regular(s));
        for (const auto& t : top) {
            const bool found = std::any_of(perms.begin(), perms.end(), [&](const GnMap& g) { return apply(g, s) == t; });
            EXPECT_TRUE(found) << s.str() << " vs " << t.str();
        }
    }
}

TEST_F(Simplicial, ValidateRejectsOverlap) {
    const Complex bad = Complex::from_simplexes(
        2, {test::unit_triangle(), simplex({{"1/2", "0"}, {"1", "1"}, {"0", "1"}})});
    EXPECT_THROW(bad.validate(), GeometryError);
    const Complex bad_line = Complex::from_simplexes(1, {simplex({{"0"}, {"1"}}), simplex({{"1/2"}, {"3/2"}})});
    EXPECT_THROW(bad_line.validate(), GeometryError);
    const Complex good = Complex::from_simplexes(1, {simplex({{"0"}, {"1"}}), simplex({{"1"}, {"3/2"}})});
    EXPECT_NO_THROW(good.validate());
}

TEST_F(Simplicial, FareyBlowUpLaws) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const Complex c = test::random_regular_complex(rng, n, n, 2);
        ASSERT_TRUE(c.is_regular());
        std::vector<Simplex> members(c.simplexes().begin(), c.simplexes().end());
        const Simplex t = test::pick(rng, members);
        const RatPoint m = farey_mediant(t);

        Int sum = 0;
        for (const auto& v : t.vertices()) sum += den(v);
        EXPECT_EQ(den(m), sum);

        const Complex b = farey_blow_up(c, t);
        EXPECT_TRUE(b.is_regular());

        // Denominator law on every simplex T' ⊇ T that got subdivided.
        for (const auto& big : c.maximal()) {
            if (!big.contains(m)) continue;
            Rat inv = 0;
            for (std::size_t u = 0; u < big.vertices().size(); ++u) {
                if (!t.has_vertex(big.vertex(u))) continue;
                std::vector<RatPoint> vs = big.vertices();
                vs[u] = m;
                const Simplex su(vs);
                ASSERT_TRUE(b.contains(su));
                EXPECT_EQ(den(su) * den(big.vertex(u)), den(big) * den(m));
                inv += Rat(1, 1) / Rat(den(su));
            }
            EXPECT_EQ(inv, Rat(1) / Rat(den(big)));
        }

        for (const auto& p : test::sample_points(rng, c.maximal(), 30))
            EXPECT_EQ(c.support_contains(p), b.support_contains(p)) << p.str();
    }
}

TEST_F(Simplicial, IsRegularAgreesWithParallelepiped) {
    std::mt19937_64 rng(103);
    int regular = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 3;
        std::uniform_int_distribution<std::size_t> kd(0, n);
        const Simplex s = sample::random_simplex(rng, n, kd(rng), 4, 2);
        const auto gens = s.correspondents();
        bool only_origin;
        if (n <= 2) {
            only_origin = oracle::half_open_points_by_scan(gens).size() == 1;
        } else {
            int count = 0;
            for_each_half_open_point(gens, [&](const ParallelepipedPoint&) { return ++count < 2; });
            only_origin = count == 1;
        }
        EXPECT_EQ(is_regular(s), only_origin) << s.str();
        regular += only_origin;
    }
    EXPECT_GT(regular, 10);
}
