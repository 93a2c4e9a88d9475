#include "support.hpp"

#include "ratvol/cell.hpp"
#include "ratvol/lattice.hpp"
#include "ratvol/polyhedron.hpp"

#include <gtest/gtest.h>

using namespace ratvol;
using test::poly;
using test::pt;
using test::simplex;

namespace {

class PolyhedronTest : public ::testing::Test {
protected:
    void SetUp() override { set_invariant_checks(true); }
};

std::vector<Simplex> sorted_maximal(const Complex& c) {
    std::vector<Simplex> v = c.maximal();
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Simplex> sorted_maximal(const Polyhedron& p) { return sorted_maximal(p.canonical()); }

bool in_union(const std::vector<Simplex>& ss, const RatPoint& x) {
    return std::any_of(ss.begin(), ss.end(), [&](const Simplex& s) { return s.contains(x); });
}

AffineSubspace hyperplane(std::vector<long> a, long t) {
    IntVec v(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) v[i] = a[i];
    return AffineSubspace::from_equations(a.size(), {{v, Int(t)}});
}

/// Random rational affine subspace of R^n: the affine hull of a random simplex.
AffineSubspace random_subspace(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
    return affine_hull(sample::random_simplex(rng, n, dim, 12, 2));
}

}  // namespace

TEST_F(PolyhedronTest, TriangulateUnionExamples) {
    const Complex c = triangulate_union({simplex({{"0"}, {"1"}}), simplex({{"1/2"}, {"3/2"}})});
    EXPECT_EQ(sorted_maximal(c), (std::vector<Simplex>{simplex({{"0"}, {"1/2"}}), simplex({{"1/2"}, {"1"}}),
                                                        simplex({{"1"}, {"3/2"}})}));

    const Simplex t = simplex({{"0", "0"}, {"2", "0"}, {"0", "3/5"}});
    EXPECT_EQ(triangulate_union({t}), Complex::from_simplexes(2, {t}));

    const Simplex a = test::unit_triangle();
    const Simplex b = simplex({{"5", "5"}, {"6", "5"}, {"5", "6"}});
    EXPECT_EQ(triangulate_union({a, b}), Complex::from_simplexes(2, {a, b}));
}

TEST_F(PolyhedronTest, TriangulateUnionRejectsMixedDimensions) {
    EXPECT_THROW(triangulate_union({simplex({{"0"}, {"1"}}), test::unit_triangle()}), GeometryError);
    EXPECT_THROW(triangulate_union(std::vector<Simplex>{}), GeometryError);
}

TEST_F(PolyhedronTest, IntersectionExamples) {
    const Polyhedron p = poly(1, {simplex({{"0"}, {"1"}})});
    const Polyhedron q = poly(1, {simplex({{"1/2"}, {"3/2"}})});
    EXPECT_EQ(sorted_maximal(intersection(p, q)), (std::vector<Simplex>{simplex({{"1/2"}, {"1"}})}));

    const Polyhedron far = poly(1, {simplex({{"2"}, {"3"}})});
    EXPECT_TRUE(intersection(p, far).empty());

    const Polyhedron lower = poly(2, {test::unit_triangle()});
    const Polyhedron upper = poly(2, {simplex({{"1", "0"}, {"0", "1"}, {"1", "1"}})});
    EXPECT_EQ(sorted_maximal(intersection(lower, upper)), (std::vector<Simplex>{simplex({{"1", "0"}, {"0", "1"}})}));
}

TEST_F(PolyhedronTest, DifferenceExamples) {
    const Polyhedron p = poly(1, {simplex({{"0"}, {"1"}})});
    const Polyhedron q = poly(1, {simplex({{"1/2"}, {"3/2"}})});
    EXPECT_EQ(sorted_maximal(closure_of_difference(p, q)), (std::vector<Simplex>{simplex({{"0"}, {"1/2"}})}));
    EXPECT_EQ(sorted_maximal(closure_of_difference(p, Polyhedron(1))), sorted_maximal(p));
    EXPECT_TRUE(closure_of_difference(p, p).empty());
}

TEST_F(PolyhedronTest, UnionExamples) {
    const Polyhedron p = poly(1, {simplex({{"0"}, {"1"}})});
    const Polyhedron q = poly(1, {simplex({{"1/2"}, {"3/2"}})});
    EXPECT_EQ(sorted_maximal(union_of(p, q)), sorted_maximal(triangulate_union({p.input_simplexes()[0], q.input_simplexes()[0]})));
    EXPECT_EQ(union_of(p, Polyhedron(1)).input_simplexes(), p.input_simplexes());
}

TEST_F(PolyhedronTest, DimensionAndContainment) {
    EXPECT_EQ(Polyhedron(3).dimension(), -1);
    const Polyhedron p = poly(2, {test::unit_triangle(), simplex({{"3", "3"}, {"4", "4"}})});
    EXPECT_EQ(p.dimension(), 2);
    EXPECT_TRUE(p.contains(pt({"7/2", "7/2"})));
    EXPECT_FALSE(p.contains(pt({"2", "2"})));
}

TEST_F(PolyhedronTest, CanonicalIsSharedBetweenCopies) {
    const Polyhedron p = test::unit_square();
    const Polyhedron copy = p;
    EXPECT_EQ(&p.canonical(), &copy.canonical());
}

TEST_F(PolyhedronTest, TriangulateUnionSupport) {
    std::mt19937_64 rng(401);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 1 + trial % 3;
        const Polyhedron p = test::random_polyhedron(rng, n, n == 3 ? 1 + trial % 2 : 1 + trial % 3, n, n == 3 ? 3 : 6, 2);
        const Complex& c = p.canonical();
        c.validate();
        for (const auto& v : c.vertices())
            EXPECT_TRUE(in_union(p.input_simplexes(), v)) << "vertex outside the union " << v.str();
        const cell::SupportIndex index(c);
        for (const auto& x : test::sample_points(rng, p.input_simplexes(), 150))
            EXPECT_EQ(in_union(p.input_simplexes(), x), index.contains(x)) << x.str();
    }
}

TEST_F(PolyhedronTest, BooleanOperationSupports) {
    std::mt19937_64 rng(402);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t n = 1 + trial % 2;
        const Polyhedron p = test::random_polyhedron(rng, n, 1 + trial % 2, n, 6, 1);
        const Polyhedron q = test::random_polyhedron(rng, n, 1 + trial % 2, n, 6, 1);
        const Polyhedron meet = intersection(p, q);
        const Polyhedron join = union_of(p, q);
        const Polyhedron diff = closure_of_difference(p, q);
        std::vector<Simplex> near = p.input_simplexes();
        near.insert(near.end(), q.input_simplexes().begin(), q.input_simplexes().end());
        for (const auto& x : test::sample_points(rng, near, 100)) {
            const bool in_p = p.contains(x), in_q = q.contains(x);
            EXPECT_EQ(meet.contains(x), in_p && in_q) << x.str();
            EXPECT_EQ(join.contains(x), in_p || in_q) << x.str();
            // cl(P \ Q) sits between P \ Q and P.
            if (in_p && !in_q) EXPECT_TRUE(diff.contains(x)) << x.str();
            if (!in_p) EXPECT_FALSE(diff.contains(x)) << x.str();
        }
    }
}

TEST_F(PolyhedronTest, AffineHullExamples) {
    const AffineSubspace line = affine_hull(simplex({{"1", "0"}, {"0", "1"}}));
    EXPECT_TRUE(line.same_as(hyperplane({1, 1}, -1)));
    EXPECT_EQ(line.dim(), 1u);

    const AffineSubspace point = affine_hull(simplex({{"1/5"}}));
    EXPECT_EQ(point.dim(), 0u);
    EXPECT_TRUE(point.contains(pt({"1/5"})));
    EXPECT_FALSE(point.contains(pt({"1/4"})));

    const AffineSubspace whole = affine_hull(test::unit_simplex(3, 3));
    EXPECT_TRUE(whole.equations().empty());
    EXPECT_EQ(whole.dim(), 3u);
}

TEST_F(PolyhedronTest, FromEquationsRejectsEmptySet) {
    IntVec a(1);
    a[0] = 0;
    EXPECT_THROW(AffineSubspace::from_equations(1, {{a, Int(1)}}), GeometryError);
}

TEST_F(PolyhedronTest, MinDenominatorExamples) {
    EXPECT_EQ(min_denominator(AffineSubspace::whole_space(3)), 1);
    EXPECT_EQ(min_denominator(affine_hull(simplex({{"1/5"}}))), 5);
    const AffineSubspace half = hyperplane({2, 2}, -1);  // x1 + x2 = 1/2
    EXPECT_EQ(min_denominator(half), 2);
}

TEST_F(PolyhedronTest, EqualDenominatorSimplexExamples) {
    const Simplex line = equal_denominator_simplex(AffineSubspace::whole_space(1));
    EXPECT_TRUE(is_regular(line));
    EXPECT_EQ(line.dim(), 1u);

    const Simplex half = equal_denominator_simplex(hyperplane({2, 2}, -1));
    EXPECT_TRUE(is_regular(half));
    for (const auto& v : half.vertices()) EXPECT_EQ(den(v), 2);

    EXPECT_EQ(equal_denominator_simplex(affine_hull(simplex({{"1/5"}}))), simplex({{"1/5"}}));
}

TEST_F(PolyhedronTest, HeightReductionExamples) {
    const std::vector<IntVec> equal{IntVec{1, 0, 2}, IntVec{0, 1, 2}};
    EXPECT_EQ(height_reduction(equal), equal);
    EXPECT_EQ(height_reduction({IntVec{0, 1}, IntVec{1, 2}}), (std::vector<IntVec>{IntVec{0, 1}, IntVec{1, 1}}));
    EXPECT_THROW(height_reduction({IntVec{1, 1}, IntVec{0, 3}}), GeometryError);
}

TEST_F(PolyhedronTest, MinDenominatorAgreesWithSearch) {
    std::mt19937_64 rng(403);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const AffineSubspace f = random_subspace(rng, n, trial % n);
        EXPECT_EQ(min_denominator(f), oracle::min_denominator_by_search(f));
    }
}

TEST_F(PolyhedronTest, DenominatorsAreMultiplesOfMinDenominator) {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<long> coef(0, 4);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const AffineSubspace f = random_subspace(rng, n, trial % n);
        const Int d = min_denominator(f);
        const std::vector<IntVec> basis = lifted_lattice_basis(f);
        for (int k = 0; k < 30; ++k) {
            IntVec y(n + 1);
            for (const auto& b : basis) y = y + b * Int(coef(rng));
            if (y[n] == 0) continue;
            const RatPoint p = dehomogenize(y);
            ASSERT_TRUE(f.contains(p));
            EXPECT_EQ(den(p) % d, 0) << p.str() << " in a subspace with d_F = " << d;
        }
    }
}

TEST_F(PolyhedronTest, HeightReductionPreservesTheLattice) {
    std::mt19937_64 rng(405);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const AffineSubspace f = random_subspace(rng, n, trial % n);
        const std::vector<IntVec> in = lifted_lattice_basis(f);
        const std::vector<IntVec> out = height_reduction(in);
        ASSERT_EQ(in.size(), out.size());
        for (const auto& v : out) EXPECT_EQ(v[n], out.front()[n]);
        // Each family is an integer combination of the other: stacking them does not grow the lattice.
        std::vector<IntVec> both = in;
        both.insert(both.end(), out.begin(), out.end());
        const SmithForm s_in = smith_normal_form(IntMat::from_rows(in));
        const SmithForm s_both = smith_normal_form(IntMat::from_rows(both));
        // in spans a saturated lattice, out lies in its span, and out is itself saturated.
        for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(s_in.D(i, i), 1);
        if (in.size() < n + 1) EXPECT_EQ(s_both.D(in.size(), in.size()), 0);
        EXPECT_EQ(gcd_maximal_minors(out), 1);
    }
}

TEST_F(PolyhedronTest, EqualDenominatorSimplexIsRegularInF) {
    std::mt19937_64 rng(406);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + trial % 4;
        const AffineSubspace f = random_subspace(rng, n, trial % n);
        const Simplex s = equal_denominator_simplex(f);
        const Int d = min_denominator(f);
        EXPECT_EQ(s.dim(), f.dim());
        EXPECT_TRUE(is_regular(s)) << s.str();
        for (const auto& v : s.vertices()) {
            EXPECT_TRUE(f.contains(v));
            EXPECT_EQ(den(v), d);
        }
    }
}
