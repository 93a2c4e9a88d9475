// The integer affine group G_n = GL(n, Z) ⋉ Z^n acting on rational geometry.

#pragma once

#include "ratvol/arith.hpp"
#include "ratvol/polyhedron.hpp"
#include "ratvol/simplicial.hpp"

#include <cstdint>

namespace ratvol {

/// x ↦ A x + t with A unimodular and t integral.
class GnMap {
public:
    /// Throws GeometryError "not unimodular (det = k)" when |det A| != 1.
    GnMap(IntMat a, IntVec t);
    static GnMap identity(std::size_t n);

    std::size_t dim() const { return a_.rows(); }
    const IntMat& matrix() const { return a_; }
    const IntVec& shift() const { return t_; }

    /// (this ∘ other)(x) = this(other(x))
    GnMap compose(const GnMap& other) const;
    GnMap inverse() const;

    friend bool operator==(const GnMap&, const GnMap&) = default;

private:
    IntMat a_;
    IntVec t_;
};

RatPoint apply(const GnMap& g, const RatPoint& x);
Simplex apply(const GnMap& g, const Simplex& s);
Complex apply(const GnMap& g, const Complex& c);
Polyhedron apply_polyhedron(const GnMap& g, const Polyhedron& p);

/// Product of `steps` random elementary row operations (add ±row, swap, negate)
/// applied to the identity, plus a translation with entries in [-shift_bound, shift_bound].
GnMap random_unimodular(std::size_t n, std::uint64_t seed, std::size_t steps, long shift_bound = 5);

/// (P, 0) ⊂ R^{n+1}.
Polyhedron embed(const Polyhedron& p);
Simplex embed(const Simplex& s);

}  // namespace ratvol
