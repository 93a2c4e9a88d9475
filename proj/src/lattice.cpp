#include "ratvol/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace ratvol {

Int den(const RatPoint& p) {
    Int d = 1;
    for (const Rat& c : p.coords()) d = lcm(d, c.get_den());
    return d;
}

IntVec homogeneous(const RatPoint& p) {
    const Int d = den(p);
    IntVec h(p.dim() + 1);
    for (std::size_t i = 0; i < p.dim(); ++i) h[i] = p[i].get_num() * (d / p[i].get_den());
    h[p.dim()] = d;
    return h;
}

RatPoint dehomogenize(const IntVec& g) {
    if (g.size() == 0 || g[g.size() - 1] <= 0) throw GeometryError("cone not graph-positioned");
    const Int& h = g[g.size() - 1];
    RatPoint p(g.size() - 1);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) p[i] = make_rat(g[i], h);
    return p;
}

IntVec primitive(const IntVec& v) {
    const Int g = v.content();
    if (g == 0) throw GeometryError("no primitive representative on the zero ray");
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
    return out;
}

// Maximal minors --------------------------------------------------------------

namespace {

constexpr std::size_t kMinorEnumerationLimit = 4;

// Calls f for every k-subset of {0..n-1}, in lexicographic order.
template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        f(std::span<const std::size_t>(idx));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

Int gcd_maximal_minors(const IntMat& m) {
    const std::size_t k = std::min(m.rows(), m.cols());
    if (k == 0) return 1;
    if (k > kMinorEnumerationLimit) {
        const SmithForm s = smith_normal_form(m);
        Int prod = 1;
        for (std::size_t i = 0; i < k; ++i) prod *= s.D(i, i);
        return prod;
    }
    const bool wide = m.rows() <= m.cols();
    const std::size_t n = wide ? m.cols() : m.rows();
    Int g = 0;
    for_each_subset(n, k, [&](std::span<const std::size_t> pick) {
        if (g == 1) return;
        IntMat sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) sub(a, b) = wide ? m(a, pick[b]) : m(pick[a], b);
        g = gcd(g, determinant(sub));
    });
    return g;
}

Int gcd_maximal_minors(std::span<const IntVec> rows) { return gcd_maximal_minors(IntMat::from_rows(rows)); }

// Smith normal form -----------------------------------------------------------

SmithForm smith_normal_form(const IntMat& m) {
    SmithForm s{IntMat::identity(m.rows()), m, IntMat::identity(m.cols()), IntMat::identity(m.cols())};
    IntMat& D = s.D;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    const std::size_t steps = std::min(rows, cols);

    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (D(i, j) == 0) continue;
                    if (pi == rows || mpz_cmpabs(D(i, j).get_mpz_t(), D(pi, pj).get_mpz_t()) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == rows) return s;  // trailing block is zero
            D.swap_rows(t, pi);
            s.U.swap_rows(t, pi);
            D.swap_cols(t, pj);
            s.V.swap_cols(t, pj);
            s.V_inv.swap_rows(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (D(i, t) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_row(i, t, -q);
                s.U.add_row(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (D(t, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                D.add_col(j, t, -q);
                s.V.add_col(j, t, -q);
                s.V_inv.add_row(t, j, q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Enforce d_t | every entry of the trailing block.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j) {
                    if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
                        D.add_row(t, i, Int(1));
                        s.U.add_row(t, i, Int(1));
                        divides = false;
                        break;
                    }
                }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j) D(t, j) = -D(t, j);
            for (std::size_t j = 0; j < rows; ++j) s.U(t, j) = -s.U(t, j);
        }
    }
    return s;
}

IntMat unimodular_inverse(const IntMat& m) {
    if (m.rows() != m.cols()) throw GeometryError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    IntMat inv(n, n);
    RatMat a(m);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<Rat> e(n), x;
        e[c] = 1;
        if (!solve(a, e, x)) throw GeometryError("matrix is singular");
        for (std::size_t r = 0; r < n; ++r) {
            if (x[r].get_den() != 1) throw GeometryError("matrix is not unimodular");
            inv(r, c) = x[r].get_num();
        }
    }
    return inv;
}

std::vector<IntVec> saturation_basis(std::span<const IntVec> rows) {
    if (rows.empty()) return {};
    const IntMat m = IntMat::from_rows(rows);
    const SmithForm s = smith_normal_form(m);
    std::size_t r = 0;
    while (r < std::min(m.rows(), m.cols()) && s.D(r, r) != 0) ++r;
    std::vector<IntVec> basis;
    for (std::size_t i = 0; i < r; ++i) basis.push_back(s.V_inv.row(i));
    return basis;
}

// Half-open parallelepipeds ---------------------------------------------------

bool coefficients_in_span(std::span<const IntVec> gens, std::span<const Rat> x, std::vector<Rat>& c) {
    const std::size_t n = x.size();
    RatMat a(n, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) a(i, j) = gens[j][i];
    return solve(a, std::vector<Rat>(x.begin(), x.end()), c);
}

void for_each_half_open_point(std::span<const IntVec> gens,
                              const std::function<bool(const ParallelepipedPoint&)>& visit) {
    if (gens.empty()) {
        visit(ParallelepipedPoint{});
        return;
    }
    const std::size_t k = gens.size();
    const std::size_t n = gens.front().size();
    if (k > n || gcd_maximal_minors(gens) == 0) throw GeometryError("degenerate parallelepiped");

    // With U G V = D, the saturated lattice has basis W = rows of V^{-1} and the
    // residues r (0 <= r_i < d_i) index the cosets of the generated sublattice.
    // The coefficients of x = r W are mu = r D^{-1} U.
    const SmithForm s = smith_normal_form(IntMat::from_rows(gens));
    std::vector<Int> residue(k, Int(0));
    std::vector<Rat> mu(k);
    std::vector<Int> x(n);
    ParallelepipedPoint p{IntVec(n), std::vector<Rat>(k)};
    while (true) {
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = 0;
            for (std::size_t i = 0; i < k; ++i) mpz_addmul(x[j].get_mpz_t(), residue[i].get_mpz_t(), s.V_inv(i, j).get_mpz_t());
        }
        for (std::size_t j = 0; j < k; ++j) {
            mu[j] = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (residue[i] != 0) mu[j] += Rat(residue[i] * s.U(i, j)) / Rat(s.D(i, i));
        }
        for (std::size_t j = 0; j < n; ++j) p.point[j] = x[j];
        for (std::size_t i = 0; i < k; ++i) {
            Int fl;
            mpz_fdiv_q(fl.get_mpz_t(), mu[i].get_num_mpz_t(), mu[i].get_den_mpz_t());
            p.coefficients[i] = mu[i] - fl;
            if (fl != 0)
                for (std::size_t j = 0; j < n; ++j) mpz_submul(p.point[j].get_mpz_t(), fl.get_mpz_t(), gens[i][j].get_mpz_t());
        }
        if (!visit(p)) return;

        std::size_t i = 0;  // odometer over the residues
        for (; i < k; ++i) {
            if (++residue[i] < s.D(i, i)) break;
            residue[i] = 0;
        }
        if (i == k) return;
    }
}

std::vector<ParallelepipedPoint> lattice_points_half_open(std::span<const IntVec> gens) {
    std::vector<ParallelepipedPoint> out;
    for_each_half_open_point(gens, [&](const ParallelepipedPoint& p) {
        out.push_back(p);
        return true;
    });
    std::sort(out.begin(), out.end(),
              [](const ParallelepipedPoint& a, const ParallelepipedPoint& b) { return a.point < b.point; });
    return out;
}

}  // namespace ratvol
