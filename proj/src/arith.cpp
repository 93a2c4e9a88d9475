#include "ratvol/arith.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ratvol {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw GeometryError("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rat parse_rat(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                                  : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
        den.front() == '+') {
        throw GeometryError("not an exact rational: \"" + std::string(text) + "\"");
    }
    std::string n(num);
    if (n.front() == '+') n.erase(0, 1);
    return make_rat(Int(n, 10), Int(std::string(den), 10));
}

std::string to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const Int& z) { return z.get_str(); }

Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int factorial(unsigned k) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

// RatPoint ------------------------------------------------------------------

bool RatPoint::is_integral() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rat& r) { return r.get_den() == 1; });
}

std::strong_ordering operator<=>(const RatPoint& a, const RatPoint& b) {
    const std::size_t n = std::min(a.dim(), b.dim());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = compare(a[i], b[i]); c != 0) return c;
    }
    return a.dim() <=> b.dim();
}

std::string RatPoint::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ", ";
        s += to_string(coords_[i]);
    }
    return s + ")";
}

// IntVec --------------------------------------------------------------------

IntVec::IntVec(std::initializer_list<long> entries) {
    entries_.reserve(entries.size());
    for (long e : entries) entries_.emplace_back(e);
}

bool IntVec::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Int& z) { return z == 0; });
}

Int IntVec::content() const {
    Int g = 0;
    for (const Int& e : entries_) g = gcd(g, e);
    return g;
}

IntVec IntVec::operator+(const IntVec& o) const {
    IntVec r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = entries_[i] + o[i];
    return r;
}

IntVec IntVec::operator-(const IntVec& o) const {
    IntVec r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = entries_[i] - o[i];
    return r;
}

IntVec IntVec::operator*(const Int& k) const {
    IntVec r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = entries_[i] * k;
    return r;
}

std::strong_ordering operator<=>(const IntVec& a, const IntVec& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = compare(a[i], b[i]); c != 0) return c;
    }
    return a.size() <=> b.size();
}

std::string IntVec::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) s += ", ";
        s += entries_[i].get_str();
    }
    return s + ")";
}

// IntMat --------------------------------------------------------------------

IntMat::IntMat(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw GeometryError("ragged matrix literal");
        for (long e : r) data_.emplace_back(e);
    }
}

IntMat IntMat::identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMat IntMat::from_rows(std::span<const IntVec> rows) {
    if (rows.empty()) return {};
    IntMat m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw GeometryError("rows of unequal length");
        for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

IntVec IntMat::row(std::size_t r) const {
    IntVec v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
}

IntMat IntMat::transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
    if (cols_ != o.rows_) throw GeometryError("matrix shape mismatch");
    IntMat p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(r, k);
            if (a == 0) continue;
            for (std::size_t c = 0; c < o.cols_; ++c) p(r, c) += a * o(k, c);
        }
    return p;
}

IntVec IntMat::apply(const IntVec& v) const {
    if (v.size() != cols_) throw GeometryError("matrix/vector shape mismatch");
    IntVec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
}

void IntMat::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMat::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMat::add_row(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t c = 0; c < cols_; ++c)
        mpz_addmul((*this)(dst, c).get_mpz_t(), k.get_mpz_t(), (*this)(src, c).get_mpz_t());
}

void IntMat::add_col(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t r = 0; r < rows_; ++r)
        mpz_addmul((*this)(r, dst).get_mpz_t(), k.get_mpz_t(), (*this)(r, src).get_mpz_t());
}

std::string IntMat::str() const {
    std::string s = "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) s += ", ";
        s += row(r).str();
    }
    return s + "]";
}

RatMat::RatMat(const IntMat& m) : RatMat(m.rows(), m.cols()) {
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = m(r, c);
}

// Elimination ---------------------------------------------------------------

namespace {

// Reduces m in place to reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        const Rat inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            const Rat f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(RatMat m) { return rref(m).size(); }

Rat determinant(RatMat m) {
    if (m.rows() != m.cols()) throw GeometryError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m(p, col) == 0) ++p;
        if (p == n) return 0;
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col) == 0) continue;
            const Rat f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

Int determinant(const IntMat& input) {
    if (input.rows() != input.cols()) throw GeometryError("determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0) return 1;
    IntMat m = input;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::vector<std::vector<Rat>> nullspace(RatMat m) {
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve(RatMat m, std::vector<Rat> b, std::vector<Rat>& x) {
    if (b.size() != m.rows()) throw GeometryError("solve: shape mismatch");
    RatMat aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return false;
    x.assign(m.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return true;
}

IntVec primitive_integer(std::span<const Rat> v) {
    Int den = 1;
    for (const Rat& r : v) den = lcm(den, r.get_den());
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (den / v[i].get_den());
    const Int g = out.content();
    if (g == 0) throw GeometryError("no primitive representative on the zero ray");
    for (std::size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), out[i].get_mpz_t(), g.get_mpz_t());
    return out;
}

}  // namespace ratvol

std::size_t std::hash<ratvol::RatPoint>::operator()(const ratvol::RatPoint& p) const noexcept {
    std::size_t h = p.dim();
    for (const auto& c : p.coords()) {
        const std::size_t x = mpz_get_ui(c.get_num_mpz_t()) * 31 + mpz_get_ui(c.get_den_mpz_t()) +
                              static_cast<std::size_t>(mpz_sgn(c.get_num_mpz_t()) + 1);
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t std::hash<ratvol::IntVec>::operator()(const ratvol::IntVec& v) const noexcept {
    std::size_t h = v.size();
    for (const auto& e : v.entries()) {
        const std::size_t x = mpz_get_ui(e.get_mpz_t()) * 2 + static_cast<std::size_t>(mpz_sgn(e.get_mpz_t()) < 0);
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}
