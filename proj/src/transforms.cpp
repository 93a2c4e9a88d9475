#include "ratvol/transforms.hpp"

#include <random>

namespace ratvol {

GnMap::GnMap(IntMat a, IntVec t) : a_(std::move(a)), t_(std::move(t)) {
    if (a_.rows() != a_.cols() || a_.rows() == 0) throw GeometryError("matrix must be square and nonempty");
    if (t_.size() != a_.rows()) throw GeometryError("shift has the wrong length");
    const Int d = determinant(a_);
    if (abs(d) != 1) throw GeometryError("not unimodular (det = " + d.get_str() + ")");
}

GnMap GnMap::identity(std::size_t n) { return GnMap(IntMat::identity(n), IntVec(n)); }

GnMap GnMap::compose(const GnMap& other) const {
    if (other.dim() != dim()) throw GeometryError("dimension mismatch");
    return GnMap(a_ * other.a_, a_.apply(other.t_) + t_);
}

GnMap GnMap::inverse() const {
    IntMat inv = unimodular_inverse(a_);
    IntVec t = inv.apply(t_) * Int(-1);
    return GnMap(std::move(inv), std::move(t));
}

RatPoint apply(const GnMap& g, const RatPoint& x) {
    if (x.dim() != g.dim()) throw GeometryError("dimension mismatch");
    RatPoint y(x.dim());
    for (std::size_t r = 0; r < x.dim(); ++r) {
        Rat v = g.shift()[r];
        for (std::size_t c = 0; c < x.dim(); ++c) v += g.matrix()(r, c) * x[c];
        y[r] = v;
    }
    return y;
}

Simplex apply(const GnMap& g, const Simplex& s) {
    std::vector<RatPoint> vs;
    for (const auto& v : s.vertices()) vs.push_back(apply(g, v));
    return Simplex(std::move(vs));
}

Complex apply(const GnMap& g, const Complex& c) {
    std::vector<Simplex> top;
    for (const auto& s : c.maximal()) top.push_back(apply(g, s));
    return Complex::from_simplexes(c.ambient_dim(), top);
}

Polyhedron apply_polyhedron(const GnMap& g, const Polyhedron& p) {
    if (p.ambient_dim() != g.dim()) throw GeometryError("dimension mismatch");
    std::vector<Simplex> out;
    for (const auto& s : p.input_simplexes()) out.push_back(apply(g, s));
    return Polyhedron(p.ambient_dim(), std::move(out));
}

GnMap random_unimodular(std::size_t n, std::uint64_t seed, std::size_t steps, long shift_bound) {
    std::mt19937_64 rng(seed);
    IntMat a = IntMat::identity(n);
    std::uniform_int_distribution<std::size_t> row(0, n - 1);
    std::uniform_int_distribution<int> kind(0, 3);
    for (std::size_t k = 0; k < steps; ++k) {
        const std::size_t i = row(rng);
        std::size_t j = row(rng);
        switch (kind(rng)) {
            case 0:
            case 1:  // shear; twice as likely so that entries actually grow
                if (n > 1) {
                    while (j == i) j = row(rng);
                    a.add_row(i, j, Int(kind(rng) % 2 ? 1 : -1));
                }
                break;
            case 2:
                a.swap_rows(i, j);
                break;
            default:
                for (std::size_t c = 0; c < n; ++c) a(i, c) = -a(i, c);
                break;
        }
    }
    std::uniform_int_distribution<long> shift(-shift_bound, shift_bound);
    IntVec t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = shift(rng);
    return GnMap(std::move(a), std::move(t));
}

Simplex embed(const Simplex& s) {
    std::vector<RatPoint> vs;
    for (const auto& v : s.vertices()) {
        std::vector<Rat> c = v.coords();
        c.emplace_back(0);
        vs.emplace_back(std::move(c));
    }
    return Simplex(std::move(vs));
}

Polyhedron embed(const Polyhedron& p) {
    std::vector<Simplex> out;
    for (const auto& s : p.input_simplexes()) out.push_back(embed(s));
    return Polyhedron(p.ambient_dim() + 1, std::move(out));
}

}  // namespace ratvol
