// Seeded random instances for property checks: points, simplexes, polyhedra
// and regular complexes at desk scale.

#pragma once

#include "ratvol/polyhedron.hpp"
#include "ratvol/simplicial.hpp"
#include "ratvol/transforms.hpp"

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace ratvol::sample {

using Rng = std::mt19937_64;

/// Independent seed for item `index` of stream `stream`, via splitmix64 mixing.
/// Streams derived this way do not depend on how many draws other items made.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
    std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
    return v[d(rng)];
}

/// Coordinates p/q with q <= max_den and |p/q| <= bound.
RatPoint random_point(Rng& rng, std::size_t n, long max_den, long bound);

/// Random affinely independent simplex of the given dimension (rejection sampling).
Simplex random_simplex(Rng& rng, std::size_t n, std::size_t dim, long max_den, long bound);

/// Union of `pieces` random simplexes of dimension <= max_dim.
Polyhedron random_polyhedron(Rng& rng, std::size_t n, std::size_t pieces, std::size_t max_dim, long max_den,
                             long bound);

/// Coordinates k/q for the given q, |k/q| <= bound.
RatPoint random_grid_point(Rng& rng, std::size_t n, long q, long bound);
Simplex random_grid_simplex(Rng& rng, std::size_t n, std::size_t dim, long q, long bound);
/// Union of random simplexes with all vertices on the grid (1/q)Z^n. Sharing
/// the grid keeps the denominators of intersection points small.
Polyhedron random_grid_polyhedron(Rng& rng, std::size_t n, std::size_t pieces, std::size_t max_dim, long q,
                                  long bound);

struct Shape {
    std::size_t n;
    std::size_t pieces;
    std::size_t max_dim;
    long max_den;  ///< grid denominators q are drawn from [1, max_den]
    long bound;
};

/// One grid shape per ambient dimension 1..4, sized so that desingularization
/// stays cheap: its cost grows quickly with n and with the denominators of
/// intersection points.
const std::vector<Shape>& desk_shapes();

/// Largest multiplicity among the lifted cones of the canonical triangulation; 0 if empty.
Int lifted_multiplicity(const Polyhedron& p);

/// Instances are redrawn until every lifted multiplicity involved is at most this.
inline constexpr long kDeskMultiplicity = 50;

/// A grid polyhedron of a random desk shape (or of dimension n when n > 0).
/// full_dimensional forces every piece to dimension n.
Polyhedron random_desk_polyhedron(Rng& rng, std::size_t n = 0, bool full_dimensional = false);

/// Two polyhedra on a common grid in a common R^n. The multiplicity bound
/// also covers their union and intersection.
std::pair<Polyhedron, Polyhedron> random_desk_pair(Rng& rng, std::size_t n = 0);

/// A random G_n map whose image of p stays within kDeskMultiplicity. The
/// canonical triangulation is not equivariant, so a cheap p can have a costly image.
GnMap random_desk_map(Rng& rng, const Polyhedron& p);

/// Farey blow-up at a random member of a regular complex.
Complex random_farey_step(Rng& rng, const Complex& c);

/// Image of conv(0, e_1, ..., e_k) under a random G_n map, refined by Farey blow-ups.
Complex random_regular_complex(Rng& rng, std::size_t n, std::size_t k, int blowups);

/// A maximal k-simplex of random_regular_complex.
Simplex random_regular_simplex(Rng& rng, std::size_t n, std::size_t k, int blowups = 3);

}  // namespace ratvol::sample
