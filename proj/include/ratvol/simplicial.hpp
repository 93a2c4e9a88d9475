// Rational simplexes and simplicial complexes.

#pragma once

#include "ratvol/arith.hpp"
#include "ratvol/lattice.hpp"

#include <set>
#include <vector>

namespace ratvol {

/// Enables the O(|Λ|²) complex/fan validity checks after every operation that
/// builds a new complex or fan. Off by default; the test suites switch it on.
void set_invariant_checks(bool enabled);
bool invariant_checks_enabled();

/// conv(v_0, ..., v_m) with affinely independent rational vertices, stored sorted.
/// Two simplexes are equal iff their vertex sets are equal.
class Simplex {
public:
    /// Throws GeometryError if the vertices are not affinely independent.
    explicit Simplex(std::vector<RatPoint> vertices);

    std::size_t dim() const { return vertices_.size() - 1; }
    std::size_t ambient_dim() const { return vertices_.front().dim(); }
    const std::vector<RatPoint>& vertices() const { return vertices_; }
    const RatPoint& vertex(std::size_t i) const { return vertices_[i]; }

    bool has_vertex(const RatPoint& p) const;
    /// Barycentric coordinates of p, or nothing when p is off the affine hull.
    bool barycentric(const RatPoint& p, std::vector<Rat>& coords) const;
    bool contains(const RatPoint& p) const;
    /// True iff every vertex of other lies in this simplex.
    bool contains(const Simplex& other) const;
    RatPoint barycenter() const;
    /// The face spanned by the vertices selected in mask (bit i = vertex i).
    Simplex face(std::size_t mask) const;
    /// The facet opposite vertex i.
    Simplex facet(std::size_t i) const;
    /// Homogeneous correspondents of the vertices, in vertex order.
    std::vector<IntVec> correspondents() const;

    friend bool operator==(const Simplex& a, const Simplex& b) { return a.vertices_ == b.vertices_; }
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);

    std::string str() const;

private:
    struct Trusted {};
    Simplex(std::vector<RatPoint> sorted_independent, Trusted) : vertices_(std::move(sorted_independent)) {}

    std::vector<RatPoint> vertices_;
};

/// A finite, face-closed set of rational simplexes in R^n meeting pairwise in common faces.
class Complex {
public:
    explicit Complex(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}

    /// Face closure of the given simplexes. Does not validate pairwise intersections.
    static Complex from_simplexes(std::size_t ambient_dim, const std::vector<Simplex>& simplexes);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::set<Simplex>& simplexes() const { return simplexes_; }
    bool empty() const { return simplexes_.empty(); }
    std::size_t size() const { return simplexes_.size(); }
    bool contains(const Simplex& s) const { return simplexes_.count(s) != 0; }
    /// -1 for the empty complex.
    int dimension() const;

    /// Simplexes that are faces of no other member.
    const std::vector<Simplex>& maximal() const { return maximal_; }
    /// True iff p lies in the support |Λ|.
    bool support_contains(const RatPoint& p) const;
    bool is_regular() const;
    std::vector<RatPoint> vertices() const;

    /// Throws GeometryError describing the first violated complex axiom.
    void validate() const;

    friend bool operator==(const Complex& a, const Complex& b) = default;

private:
    std::size_t ambient_dim_;
    std::set<Simplex> simplexes_;
    std::vector<Simplex> maximal_;
};

struct MaximalSelection {
    std::size_t i = 0;
    std::vector<Simplex> members;
};

/// All 2^{m+1} - 1 nonempty faces of s.
std::vector<Simplex> faces(const Simplex& s);

/// Regular iff the homogeneous correspondents of the vertices extend to a basis of Z^{n+1}.
bool is_regular(const Simplex& s);

/// Product of the vertex denominators. Defined for regular simplexes only.
Int den(const Simplex& s);

/// The point whose homogeneous correspondent is the sum of the vertex
/// correspondents. Requires a regular simplex.
RatPoint farey_mediant(const Simplex& s);

/// Blow-up of c at p: every member containing p is replaced by the joins
/// conv(F ∪ {p}) over its faces F not containing p.
/// A center that is already a vertex of c leaves the complex unchanged.
Complex blow_up(const Complex& c, const RatPoint& p);

/// blow_up(c, farey_mediant(s)) for a member s of a regular complex.
Complex farey_blow_up(const Complex& c, const Simplex& s);

MaximalSelection maximal_simplexes(const Complex& c, std::size_t i);

/// Subcomplex generated by the maximal i-simplexes.
Complex dimensional_part(const Complex& c, std::size_t i);

/// The j! simplexes conv(0, w_π(1), w_π(1)+w_π(2), ...) triangulating the
/// parallelepiped spanned by a partial basis of Z^n.
Complex standard_triangulation(const std::vector<IntVec>& basis);

}  // namespace ratvol
