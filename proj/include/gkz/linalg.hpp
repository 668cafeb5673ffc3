#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Lexicographic order on integer vectors; usable as a map comparator.
struct LexLess {
    bool operator()(const IntVec& a, const IntVec& b) const;
};

Rat make_rat(const Int& num, const Int& den);
bool is_integral(const Rat& q);
Int l1_norm(const IntVec& v);
Int l2_norm_sq(const IntVec& v);
Int dot(const IntVec& a, const IntVec& b);
Rat dot(const IntVec& a, const RatVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec add(const IntVec& a, const IntVec& b);
IntVec negate(const IntVec& v);
bool is_zero(const IntVec& v);
// Divides by the gcd of the entries; zero vectors pass through unchanged.
IntVec primitive(const IntVec& v);
// Clears denominators and divides by the content. Scaling factor is positive.
IntVec primitive_from_rational(const RatVec& v);
RatVec to_rational(const IntVec& v);

class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);
    static IntMatrix from_rows(const std::vector<IntVec>& rows);
    static IntMatrix from_columns(const std::vector<IntVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntVec row(std::size_t i) const;
    IntVec col(std::size_t j) const;
    IntMatrix transpose() const;
    IntMatrix mul(const IntMatrix& other) const;
    IntVec mul(const IntVec& v) const;
    RatVec mul(const RatVec& v) const;
    bool operator==(const IntMatrix& other) const;
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }
    std::string to_string() const;

    void swap_rows(std::size_t i, std::size_t j);
    void negate_row(std::size_t i);
    // row i -= q * row j
    void row_axpy(std::size_t i, std::size_t j, const Int& q);
    void swap_cols(std::size_t i, std::size_t j);
    void negate_col(std::size_t i);
    void col_axpy(std::size_t i, std::size_t j, const Int& q);

  private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Dense rational matrix, used for normalizations and exact solves.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols);
    static RatMatrix identity(std::size_t n);
    static RatMatrix from_int(const IntMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    RatMatrix mul(const RatMatrix& other) const;
    RatVec mul(const RatVec& v) const;
    bool operator==(const RatMatrix& other) const;
    bool is_integral() const;
    IntMatrix to_int() const;  // requires is_integral()

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

struct HnfResult {
    IntMatrix h;  // row Hermite normal form of the input
    IntMatrix u;  // unimodular, u * m == h
};

// Row-style HNF: row echelon, positive pivots, entries above each pivot
// reduced into [0, pivot).
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
    IntMatrix s;  // diagonal, nonnegative, d_i | d_{i+1}
    IntMatrix u;  // unimodular, u * m * v == s
    IntMatrix v;
};

SnfResult snf(const IntMatrix& m);

// Exact determinant (fraction-free Bareiss elimination).
Int det(const IntMatrix& m);

std::size_t rational_rank(const IntMatrix& m);

// Basis of an integer sublattice of Z^ambient_dim; rows are independent.
struct LatticeBasis {
    std::size_t ambient_dim = 0;
    std::vector<IntVec> basis;

    std::size_t rank() const { return basis.size(); }
    IntMatrix matrix() const { return IntMatrix::from_rows(basis, ambient_dim); }
};

// Saturated integer kernel {u : m*u = 0}, canonicalized by HNF of the
// stacked basis. A matrix with zero rows yields the standard basis.
LatticeBasis kernel_lattice(const IntMatrix& m);

// Lattice generated by an arbitrary list of vectors, canonicalized by HNF.
LatticeBasis lattice_from_generators(std::size_t dim, const std::vector<IntVec>& gens);

// Index [Z^dim : <sub>]; nullopt when the sublattice is not of full rank.
std::optional<Int> lattice_index(const LatticeBasis& sub, std::size_t dim);

bool lattice_contains(const LatticeBasis& l, const IntVec& v);

// All lattice vectors u with |u|_1 <= radius, sorted lexicographically.
std::vector<IntVec> lattice_ball_l1(const LatticeBasis& l, unsigned radius);

// All nonzero lattice vectors with |u|_2^2 <= bound, sorted by (norm^2, lex).
std::vector<IntVec> lattice_ball_l2(const LatticeBasis& l, const Int& bound);

// Exact solve m*x = b for m square or overdetermined; nullopt when
// inconsistent. Free variables, if any, are set to zero.
std::optional<RatVec> solve_rational(const IntMatrix& m, const RatVec& b);

std::optional<RatMatrix> inverse(const RatMatrix& m);
std::optional<RatMatrix> inverse(const IntMatrix& m);

}  // namespace gkz
