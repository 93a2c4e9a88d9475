// Exact scalar and vector types shared by every ratvol module.
//
// All arithmetic is carried out with GMP integers and rationals; nothing in
// the library touches floating point except the Monte Carlo oracle.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratvol {

using Int = mpz_class;
/// Always canonical (lowest terms, positive denominator); see make_rat().
using Rat = mpq_class;

/// Raised for violated preconditions of the public API.
class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

Rat make_rat(const Int& num, const Int& den);
/// Parses "p/q", "-p/q" or an integer literal. Floats are rejected.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);
std::string to_string(const Int& z);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int factorial(unsigned k);

inline std::strong_ordering compare(const Int& a, const Int& b) {
    const int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}
inline std::strong_ordering compare(const Rat& a, const Rat& b) {
    const int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

/// A point of Q^n.
class RatPoint {
public:
    RatPoint() = default;
    explicit RatPoint(std::size_t dim) : coords_(dim) {}
    explicit RatPoint(std::vector<Rat> coords) : coords_(std::move(coords)) {}
    RatPoint(std::initializer_list<Rat> coords) : coords_(coords) {}

    std::size_t dim() const { return coords_.size(); }
    const Rat& operator[](std::size_t i) const { return coords_[i]; }
    Rat& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Rat>& coords() const { return coords_; }

    bool is_integral() const;

    friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.coords_ == b.coords_; }
    friend std::strong_ordering operator<=>(const RatPoint& a, const RatPoint& b);

    std::string str() const;

private:
    std::vector<Rat> coords_;
};

/// An integer vector; houses homogeneous correspondents and cone generators.
class IntVec {
public:
    IntVec() = default;
    explicit IntVec(std::size_t n) : entries_(n) {}
    explicit IntVec(std::vector<Int> entries) : entries_(std::move(entries)) {}
    IntVec(std::initializer_list<long> entries);

    std::size_t size() const { return entries_.size(); }
    const Int& operator[](std::size_t i) const { return entries_[i]; }
    Int& operator[](std::size_t i) { return entries_[i]; }
    const std::vector<Int>& entries() const { return entries_; }

    bool is_zero() const;
    /// gcd of the absolute values of the entries (0 for the zero vector).
    Int content() const;
    bool is_primitive() const { return content() == 1; }

    IntVec operator+(const IntVec& o) const;
    IntVec operator-(const IntVec& o) const;
    IntVec operator*(const Int& k) const;

    friend bool operator==(const IntVec& a, const IntVec& b) { return a.entries_ == b.entries_; }
    friend std::strong_ordering operator<=>(const IntVec& a, const IntVec& b);

    std::string str() const;

private:
    std::vector<Int> entries_;
};

/// Dense row-major integer matrix.
class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMat(std::initializer_list<std::initializer_list<long>> rows);
    static IntMat identity(std::size_t n);
    static IntMat from_rows(std::span<const IntVec> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    IntVec row(std::size_t r) const;
    IntMat transpose() const;
    IntMat operator*(const IntMat& o) const;
    IntVec apply(const IntVec& v) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const Int& k);
    /// col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const Int& k);

    friend bool operator==(const IntMat& a, const IntMat& b) = default;

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Dense row-major rational matrix used by the elimination routines.
class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    explicit RatMat(const IntMat& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

// Exact linear algebra over Q.

std::size_t rank(RatMat m);
/// Determinant of a square rational matrix by Gaussian elimination.
Rat determinant(RatMat m);
/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
Int determinant(const IntMat& m);
/// Basis of {x : m x = 0} in reduced echelon form (free variables set to unit vectors).
std::vector<std::vector<Rat>> nullspace(RatMat m);
/// Some solution of m x = b, or nothing when inconsistent. Free variables are set to 0.
bool solve(RatMat m, std::vector<Rat> b, std::vector<Rat>& x);

/// Scales a rational vector to the primitive integer vector on the same ray.
IntVec primitive_integer(std::span<const Rat> v);

}  // namespace ratvol

template <>
struct std::hash<ratvol::RatPoint> {
    std::size_t operator()(const ratvol::RatPoint& p) const noexcept;
};
template <>
struct std::hash<ratvol::IntVec> {
    std::size_t operator()(const ratvol::IntVec& v) const noexcept;
};
