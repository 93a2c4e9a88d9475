// Rational polyhedra (finite unions of rational simplexes), their canonical
// triangulation and boolean operations; rational affine subspaces and the
// least-denominator machinery.

#pragma once

#include "ratvol/lattice.hpp"
#include "ratvol/simplicial.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace ratvol {

/// Complex whose support is exactly the union of the given simplexes, built by
/// refining each simplex along the hyperplane arrangement of all the inputs and
/// pulling-triangulating the resulting convex cells over their own vertices.
Complex triangulate_union(std::size_t ambient_dim, const std::vector<Simplex>& simplexes);
/// Same, inferring the ambient dimension. Throws on an empty list or mixed dimensions.
Complex triangulate_union(const std::vector<Simplex>& simplexes);

/// Pointwise union of finitely many closed rational simplexes. Need not be
/// convex or connected. The canonical triangulation is computed on first use
/// and shared between copies.
class Polyhedron {
public:
    explicit Polyhedron(std::size_t ambient_dim = 1, std::vector<Simplex> simplexes = {});

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<Simplex>& input_simplexes() const { return simplexes_; }
    bool empty() const { return simplexes_.empty(); }
    /// -1 for the empty polyhedron.
    int dimension() const;
    bool contains(const RatPoint& p) const;

    const Complex& canonical() const;

private:
    struct Lazy {
        std::once_flag once;
        std::optional<Complex> complex;
    };

    std::size_t ambient_dim_;
    std::vector<Simplex> simplexes_;
    std::shared_ptr<Lazy> lazy_;
};

Polyhedron intersection(const Polyhedron& p, const Polyhedron& q);
Polyhedron union_of(const Polyhedron& p, const Polyhedron& q);
/// cl(P \ Q), as the members of a common refinement lying in P but not in Q.
Polyhedron closure_of_difference(const Polyhedron& p, const Polyhedron& q);
/// Polyhedron whose input simplexes are the maximal members of c.
Polyhedron support_of(const Complex& c);

/// Rational affine subspace of R^n, kept in both equation form (a·x + t = 0)
/// and parametric form (basis point plus primitive directions).
class AffineSubspace {
public:
    struct Equation {
        IntVec a;
        Int t;
    };

    /// Solution set of the equations. Throws GeometryError if it is empty.
    static AffineSubspace from_equations(std::size_t ambient_dim, std::vector<Equation> equations);
    static AffineSubspace whole_space(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return directions_.size(); }
    const std::vector<Equation>& equations() const { return equations_; }
    const RatPoint& basis_point() const { return basis_point_; }
    const std::vector<IntVec>& directions() const { return directions_; }

    bool contains(const RatPoint& p) const;
    /// Same point set (compares by mutual containment of generators).
    bool same_as(const AffineSubspace& other) const;
    /// Integer vectors spanning F* = span{(x, 1) : x in F} ⊂ Q^{n+1}.
    std::vector<IntVec> cone_generators() const;

private:
    friend AffineSubspace affine_hull(const Simplex& s);
    AffineSubspace(std::size_t n, std::vector<Equation> eqs, RatPoint point, std::vector<IntVec> dirs);

    std::size_t ambient_dim_;
    std::vector<Equation> equations_;
    RatPoint basis_point_;
    std::vector<IntVec> directions_;
};

AffineSubspace affine_hull(const Simplex& s);

/// Repeatedly replaces a top-height vector u by u - v for a vector v of smaller
/// height until all heights (last coordinates) agree. Requires a basis of the
/// saturated lattice Z^{n+1} ∩ span(basis) with positive heights.
std::vector<IntVec> height_reduction(const std::vector<IntVec>& basis);

/// Lattice basis of Z^{n+1} ∩ F* with all heights positive.
std::vector<IntVec> lifted_lattice_basis(const AffineSubspace& f);

/// d_F: the least denominator of a rational point of F.
Int min_denominator(const AffineSubspace& f);

/// Regular e-simplex in F all of whose vertices have denominator d_F.
Simplex equal_denominator_simplex(const AffineSubspace& f);

}  // namespace ratvol
