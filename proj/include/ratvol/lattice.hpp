// Integer lattice kernel: denominators, homogeneous correspondents, maximal
// minors, Smith normal form and lattice points of half-open parallelepipeds.

#pragma once

#include "ratvol/arith.hpp"

#include <functional>
#include <span>
#include <vector>

namespace ratvol {

/// Least common denominator of the coordinates; 1 for integer points.
Int den(const RatPoint& p);

/// den(p) * (p_1, ..., p_n, 1). Always primitive, last entry den(p).
IntVec homogeneous(const RatPoint& p);

/// Inverse of homogeneous(): the point g_{0..n-1} / g_n. Requires g_n > 0.
RatPoint dehomogenize(const IntVec& g);

/// v divided by the gcd of its entries. Throws on the zero vector.
IntVec primitive(const IntVec& v);

/// gcd of the absolute values of all maximal minors of m. For rows <= cols this is
/// 0 exactly when the rows are linearly dependent.
Int gcd_maximal_minors(const IntMat& m);
Int gcd_maximal_minors(std::span<const IntVec> rows);

struct SmithForm {
    IntMat U;  ///< unimodular, rows x rows
    IntMat D;  ///< diagonal, d_i | d_{i+1}, d_i >= 0
    IntMat V;  ///< unimodular, cols x cols
    IntMat V_inv;
};

/// U * m * V == D.
SmithForm smith_normal_form(const IntMat& m);

/// Inverse of a unimodular integer matrix.
IntMat unimodular_inverse(const IntMat& m);

/// Basis of the saturated lattice Z^N ∩ span_Q(rows). Returns rank many vectors.
std::vector<IntVec> saturation_basis(std::span<const IntVec> rows);

struct ParallelepipedPoint {
    IntVec point;
    std::vector<Rat> coefficients;  ///< point = sum coefficients[i] * gens[i], all in [0, 1)

    friend bool operator==(const ParallelepipedPoint&, const ParallelepipedPoint&) = default;
};

/// Coefficients c with sum c_i gens_i = x, or nothing if x is outside the span.
bool coefficients_in_span(std::span<const IntVec> gens, std::span<const Rat> x, std::vector<Rat>& c);

/// All integer points of { sum mu_i g_i : 0 <= mu_i < 1 }, enumerated through the
/// Smith form of the generator matrix, sorted lexicographically. The count equals
/// gcd_maximal_minors(gens). Throws "degenerate parallelepiped" on dependent input.
std::vector<ParallelepipedPoint> lattice_points_half_open(std::span<const IntVec> gens);

/// Unsorted enumeration of the same points; stops early when visit returns false.
void for_each_half_open_point(std::span<const IntVec> gens,
                              const std::function<bool(const ParallelepipedPoint&)>& visit);

}  // namespace ratvol
