// Exact convex cells: rational polytopes carried as a vertex list together with
// an H-description (equations and inequalities) that cuts them out. Used for
// simplex intersections, hyperplane-arrangement refinement and pulling
// triangulations.

#pragma once

#include "ratvol/arith.hpp"
#include "ratvol/simplicial.hpp"

#include <map>
#include <vector>

namespace ratvol::cell {

/// normal·x + offset >= 0, or == 0 when equality is set.
struct Constraint {
    std::vector<Rat> normal;
    Rat offset;
    bool equality = false;

    Rat eval(const RatPoint& x) const;
    Constraint negated() const;
    /// Primitive integer multiple; for equalities the first nonzero normal entry is made positive.
    Constraint normalized() const;

    friend bool operator==(const Constraint&, const Constraint&) = default;
    friend bool operator<(const Constraint& a, const Constraint& b);
};

struct SimplexConstraints {
    std::vector<Constraint> equations;  ///< cut out aff(S); n - m of them
    std::vector<Constraint> facets;     ///< facets[i] vanishes on the facet opposite vertex i
};

/// H-description of a simplex. For a 0-simplex the facet list is empty.
SimplexConstraints simplex_constraints(const Simplex& s);

/// dim(aff(points)) + 1, i.e. 0 for the empty set.
std::size_t affine_rank(const std::vector<RatPoint>& points);

using PullingMemo = std::map<std::vector<RatPoint>, std::vector<std::vector<RatPoint>>>;

class ConvexCell {
public:
    ConvexCell(std::size_t ambient_dim, std::vector<RatPoint> vertices, std::vector<Constraint> constraints);
    static ConvexCell of_simplex(const Simplex& s);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<RatPoint>& vertices() const { return vertices_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    bool empty() const { return vertices_.empty(); }
    /// -1 when empty.
    int dim() const;

    /// Intersection with a halfspace (or hyperplane, for equality constraints).
    ConvexCell cut(const Constraint& h) const;
    ConvexCell cut_all(const std::vector<Constraint>& hs) const;
    /// True iff h takes both signs strictly on the cell.
    bool strictly_split_by(const Constraint& h) const;

    /// Vertex sets of the facets of the face spanned by the given vertices.
    std::vector<std::vector<RatPoint>> facets_of(const std::vector<RatPoint>& face) const;

    /// Pulling triangulation with the lexicographically smallest vertex pulled
    /// first at every level; returns the maximal simplexes. Faces shared by
    /// different cells are triangulated identically.
    std::vector<Simplex> pulling_triangulation(PullingMemo* memo = nullptr) const;

private:
    bool adjacent(std::size_t i, std::size_t j, const std::vector<std::vector<Rat>>& values) const;
    std::vector<std::vector<RatPoint>> pull(const std::vector<RatPoint>& face, PullingMemo& memo) const;

    std::size_t ambient_dim_;
    std::vector<RatPoint> vertices_;
    std::vector<Constraint> constraints_;
};

/// Vertices of S ∩ T where S, T are simplexes (possibly of different dimension).
ConvexCell intersect(const Simplex& s, const Simplex& t);

/// Point membership in a union of simplexes through precomputed integer
/// H-descriptions; for repeated queries against one complex.
class SupportIndex {
public:
    explicit SupportIndex(const std::vector<Simplex>& simplexes);
    explicit SupportIndex(const Complex& c) : SupportIndex(c.maximal()) {}
    bool contains(const RatPoint& p) const;

private:
    std::vector<std::vector<Constraint>> pieces_;
};

}  // namespace ratvol::cell
