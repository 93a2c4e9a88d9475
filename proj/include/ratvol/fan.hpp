// Rational simplicial cones and fans in Z^{n+1}, and their desingularization.

#pragma once

#include "ratvol/lattice.hpp"
#include "ratvol/simplicial.hpp"

#include <set>
#include <vector>

namespace ratvol {

class Polyhedron;
class SimplicialFan;
struct DesingularizationLog;
SimplicialFan desingularize(const SimplicialFan& f, DesingularizationLog* log);

/// Positive span of primitive, linearly independent integer generators (sorted).
class Cone {
public:
    /// Generators are reduced to primitive vectors; throws on dependent input.
    explicit Cone(std::vector<IntVec> generators);

    std::size_t dim() const { return generators_.size(); }
    std::size_t ambient_dim() const { return generators_.front().size(); }
    const std::vector<IntVec>& generators() const { return generators_; }
    /// Index of the sublattice spanned by the generators in the lattice of their span.
    const Int& multiplicity() const { return multiplicity_; }
    bool is_regular() const { return multiplicity_ == 1; }

    bool has_generator(const IntVec& g) const;
    /// Coefficients of x in the generators, if x lies in the cone.
    bool contains(std::span<const Rat> x, std::vector<Rat>* coefficients = nullptr) const;
    bool contains(const IntVec& x) const;

    friend bool operator==(const Cone& a, const Cone& b) { return a.generators_ == b.generators_; }
    friend std::strong_ordering operator<=>(const Cone& a, const Cone& b);

    std::string str() const;

private:
    friend SimplicialFan desingularize(const SimplicialFan&, DesingularizationLog*);
    struct Trusted {};
    Cone(std::vector<IntVec> sorted_primitive, Int multiplicity, Trusted)
        : generators_(std::move(sorted_primitive)), multiplicity_(std::move(multiplicity)) {}

    std::vector<IntVec> generators_;
    Int multiplicity_;
};

/// Nonempty faces of a cone (the zero cone is implicit and never stored).
std::vector<Cone> faces(const Cone& c);

/// Face-closed set of simplicial cones meeting pairwise in common faces.
class SimplicialFan {
public:
    explicit SimplicialFan(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}
    static SimplicialFan from_cones(std::size_t ambient_dim, const std::vector<Cone>& cones);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::set<Cone>& cones() const { return cones_; }
    bool empty() const { return cones_.empty(); }
    std::size_t size() const { return cones_.size(); }
    bool contains(const Cone& c) const { return cones_.count(c) != 0; }

    const std::vector<Cone>& maximal() const { return maximal_; }
    bool is_regular() const;
    bool support_contains(std::span<const Rat> x) const;
    bool support_contains(const IntVec& x) const;

    /// Throws GeometryError on a violated fan axiom.
    void validate() const;

    friend bool operator==(const SimplicialFan& a, const SimplicialFan& b) = default;

private:
    friend SimplicialFan desingularize(const SimplicialFan&, DesingularizationLog*);

    std::size_t ambient_dim_;
    std::set<Cone> cones_;
    std::vector<Cone> maximal_;
};

/// Membership in the support of a fan through precomputed H-descriptions of
/// its maximal cones; for repeated queries.
class FanSupportIndex {
public:
    explicit FanSupportIndex(const SimplicialFan& f);
    bool contains(std::span<const Rat> x) const;

private:
    struct Halfspace {
        IntVec normal;
        bool equality;
    };
    std::vector<std::vector<Halfspace>> pieces_;
};

Cone cone_of_simplex(const Simplex& s);
SimplicialFan lift(const Complex& c);
/// Slices every cone at height 1. Throws "cone not graph-positioned" on a
/// generator with nonpositive last coordinate.
Complex unlift(const SimplicialFan& f);

/// Stellar subdivision at the ray through `ray`.
SimplicialFan stellar_subdivision(const SimplicialFan& f, const IntVec& ray);

/// One stellar step of the desingularization, for auditing.
struct StellarStep {
    Cone target;                  ///< the singular cone whose parallelepiped supplied the ray
    IntVec ray;
    std::vector<Int> parent_multiplicities;  ///< every replaced cone
    std::vector<Int> child_multiplicities;   ///< max child multiplicity, per replaced cone
};

struct DesingularizationLog {
    std::vector<StellarStep> steps;
};

/// Iterated stellar subdivision until every cone is regular. Each step picks a
/// singular cone of minimal dimension (then maximal multiplicity) and the
/// nonzero point of its half-open parallelepiped with least coefficient sum.
/// Throws std::logic_error if a child cone fails to drop in multiplicity.
SimplicialFan desingularize(const SimplicialFan& f, DesingularizationLog* log = nullptr);

/// Regular complex with support exactly p: triangulate, lift, desingularize, unlift.
Complex regular_triangulation(const Polyhedron& p);

}  // namespace ratvol
