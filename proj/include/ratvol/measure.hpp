// The rational measures λ_d and the exact cross-check measures.

#pragma once

#include "ratvol/polyhedron.hpp"
#include "ratvol/simplicial.hpp"

#include <cstdint>
#include <vector>

namespace ratvol {

/// An exact, nonnegative measure value.
struct MeasureValue {
    Rat value;

    friend bool operator==(const MeasureValue&, const MeasureValue&) = default;
};

/// Squared m-dimensional Hausdorff measure, which is rational even when the
/// measure itself is not.
struct HausdorffSq {
    Rat value;
    std::size_t dim = 0;
};

/// Σ 1/(i! den(T)) over the maximal i-simplexes T of a regular complex; 0 if there are none.
/// Throws "λ requires a regular triangulation" on a non-regular complex.
MeasureValue lambda_of_complex(const Complex& delta, std::size_t i);

/// λ(n, i, P, Δ). Additionally checks that |Δ| = P exactly.
MeasureValue lambda_given(const Polyhedron& p, const Complex& delta, std::size_t i);

/// λ_d(P), through the canonical regular triangulation.
MeasureValue lambda(const Polyhedron& p, std::size_t d);
/// λ_0(P), ..., λ_n(P) from a single triangulation.
std::vector<Rat> lambda_vector(const Polyhedron& p);

/// |det(edge vectors)| / n! for a full-dimensional simplex.
MeasureValue lebesgue_volume(const Simplex& s);

/// det(Gram matrix of edge vectors) / (m!)^2; 1 for a point.
HausdorffSq hausdorff_sq(const Simplex& s);

/// λ_m(t)^2 · H^m(t2)^2 == λ_m(t2)^2 · H^m(t)^2 for simplexes on a common affine hull.
bool proportionality_check(const Simplex& t, const Simplex& t2);

/// κ_A^2 = λ_m(T)^2 / H^m(T)^2 for T = equal_denominator_simplex(A).
Rat kappa_sq(const AffineSubspace& a);

struct MonteCarloEstimate {
    double estimate = 0.0;
    double sigma = 0.0;
    std::uint64_t samples = 0;
};

/// Hit-or-miss volume estimate over the bounding box (floating point oracle).
/// Throws "zero-volume target" for a nonempty lower-dimensional polyhedron.
MonteCarloEstimate monte_carlo_volume(const Polyhedron& p, std::uint64_t samples, std::uint64_t seed);

}  // namespace ratvol
