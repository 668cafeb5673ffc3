#include "gkz/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace gkz {

bool LexLess::operator()(const IntVec& a, const IntVec& b) const {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

bool is_integral(const Rat& q) { return q.get_den() == 1; }

Int l1_norm(const IntVec& v) {
    Int s = 0;
    for (const Int& x : v) s += abs(x);
    return s;
}

Int l2_norm_sq(const IntVec& v) {
    Int s = 0;
    for (const Int& x : v) s += x * x;
    return s;
}

Int dot(const IntVec& a, const IntVec& b) {
    assert(a.size() == b.size());
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const IntVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    assert(a.size() == b.size());
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntVec add(const IntVec& a, const IntVec& b) {
    assert(a.size() == b.size());
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntVec negate(const IntVec& v) {
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

bool is_zero(const IntVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

IntVec primitive(const IntVec& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g == 0 || g == 1) return v;
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

IntVec primitive_from_rational(const RatVec& v) {
    Int l = 1;
    for (const Rat& q : v) l = lcm(l, q.get_den());
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(l);
        assert(scaled.get_den() == 1);
        r[i] = scaled.get_num();
    }
    return primitive(r);
}

RatVec to_rational(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged input");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows: need explicit column count");
    return from_rows(rows, rows.front().size());
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols) {
    if (cols.empty()) throw std::invalid_argument("from_columns: empty");
    IntMatrix m(cols.front().size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows()) throw std::invalid_argument("from_columns: ragged input");
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

IntVec IntMatrix::row(std::size_t i) const {
    IntVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

IntVec IntMatrix::col(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("mul: dimension mismatch");
    IntMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) r.at(i, j) += a * other.at(k, j);
        }
    return r;
}

IntVec IntMatrix::mul(const IntVec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("mul: dimension mismatch");
    IntVec r(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

RatVec IntMatrix::mul(const RatVec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("mul: dimension mismatch");
    RatVec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += Rat(at(i, j)) * v[j];
    return r;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ' ';
            os << at(i, j).get_str();
        }
        os << '\n';
    }
    return os.str();
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
}

void IntMatrix::row_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) at(i, k) -= q * at(j, k);
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void IntMatrix::negate_col(std::size_t i) {
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) = -at(k, i);
}

void IntMatrix::col_axpy(std::size_t i, std::size_t j, const Int& q) {
    if (q == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) at(k, i) -= q * at(k, j);
}

// ---------------------------------------------------------------- RatMatrix

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_int(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
    return r;
}

RatMatrix RatMatrix::mul(const RatMatrix& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("mul: dimension mismatch");
    RatMatrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) r.at(i, j) += at(i, k) * other.at(k, j);
        }
    return r;
}

RatVec RatMatrix::mul(const RatVec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("mul: dimension mismatch");
    RatVec r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

bool RatMatrix::operator==(const RatMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_;
}

bool RatMatrix::is_integral() const {
    for (const Rat& q : a_)
        if (q.get_den() != 1) return false;
    return true;
}

IntMatrix RatMatrix::to_int() const {
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rat& q = at(i, j);
            if (q.get_den() != 1) throw std::logic_error("to_int: non-integral entry");
            m.at(i, j) = q.get_num();
        }
    return m;
}

// --------------------------------------------------------------------- HNF

HnfResult hnf(const IntMatrix& m) {
    HnfResult res{m, IntMatrix::identity(m.rows())};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;
    const std::size_t rows = m.rows(), cols = m.cols();

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        // Reduce the column below pivot_row to a single nonzero entry.
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = pivot_row; i < rows; ++i) {
                if (h.at(i, col) == 0) continue;
                if (best == rows || cmp(abs(h.at(i, col)), abs(h.at(best, col))) < 0) best = i;
            }
            if (best == rows) break;  // column is zero from pivot_row down
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            bool clean = true;
            for (std::size_t i = pivot_row + 1; i < rows; ++i) {
                if (h.at(i, col) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(pivot_row, col).get_mpz_t());
                h.row_axpy(i, pivot_row, q);
                u.row_axpy(i, pivot_row, q);
                if (h.at(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (pivot_row >= rows || h.at(pivot_row, col) == 0) continue;
        if (h.at(pivot_row, col) < 0) {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < pivot_row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(pivot_row, col).get_mpz_t());
            h.row_axpy(i, pivot_row, q);
            u.row_axpy(i, pivot_row, q);
        }
        ++pivot_row;
    }
    return res;
}

// --------------------------------------------------------------------- SNF

SnfResult snf(const IntMatrix& m) {
    SnfResult res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    IntMatrix& s = res.s;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;
    const std::size_t rows = m.rows(), cols = m.cols();

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Find minimal-magnitude nonzero entry in the trailing submatrix.
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (s.at(i, j) == 0) continue;
                if (pi == rows || cmp(abs(s.at(i, j)), abs(s.at(pi, pj))) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == rows) break;  // trailing submatrix is zero
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        if (s.at(t, t) < 0) {
            s.negate_row(t);
            u.negate_row(t);
        }

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (s.at(i, t) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), s.at(i, t).get_mpz_t(), s.at(t, t).get_mpz_t());
            s.row_axpy(i, t, q);
            u.row_axpy(i, t, q);
            if (s.at(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (s.at(t, j) == 0) continue;
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), s.at(t, j).get_mpz_t(), s.at(t, t).get_mpz_t());
            s.col_axpy(j, t, q);
            v.col_axpy(j, t, q);
            if (s.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;

        // Enforce the divisibility chain before advancing.
        bool divisible = true;
        for (std::size_t i = t + 1; i < rows && divisible; ++i)
            for (std::size_t j = t + 1; j < cols && divisible; ++j)
                if (s.at(i, j) % s.at(t, t) != 0) {
                    s.col_axpy(t, j, Int(-1));  // col_t += col_j
                    v.col_axpy(t, j, Int(-1));
                    divisible = false;
                }
        if (divisible) ++t;
    }
    return res;
}

Int det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

std::size_t rational_rank(const IntMatrix& m) {
    RatMatrix a = RatMatrix::from_int(m);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t p = rank;
        while (p < a.rows() && a.at(p, col) == 0) ++p;
        if (p == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(rank, j), a.at(p, j));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == rank || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col) / a.at(rank, col);
            for (std::size_t j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

// ------------------------------------------------------------------ lattices

static LatticeBasis canonical_basis(std::size_t dim, const std::vector<IntVec>& vectors) {
    LatticeBasis l;
    l.ambient_dim = dim;
    if (vectors.empty()) return l;
    HnfResult r = hnf(IntMatrix::from_rows(vectors, dim));
    for (std::size_t i = 0; i < r.h.rows(); ++i) {
        IntVec row = r.h.row(i);
        if (!is_zero(row)) l.basis.push_back(row);
    }
    return l;
}

LatticeBasis kernel_lattice(const IntMatrix& m) {
    const std::size_t n = m.cols();
    if (m.rows() == 0) {
        LatticeBasis l;
        l.ambient_dim = n;
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, Int(0));
            e[i] = 1;
            l.basis.push_back(e);
        }
        return l;
    }
    SnfResult r = snf(m);
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(r.s.rows(), r.s.cols()); ++i)
        if (r.s.at(i, i) != 0) ++rank;
    std::vector<IntVec> gens;
    for (std::size_t j = rank; j < n; ++j) gens.push_back(r.v.col(j));
    return canonical_basis(n, gens);
}

LatticeBasis lattice_from_generators(std::size_t dim, const std::vector<IntVec>& gens) {
    return canonical_basis(dim, gens);
}

std::optional<Int> lattice_index(const LatticeBasis& sub, std::size_t dim) {
    if (sub.ambient_dim != dim) throw std::invalid_argument("lattice_index: dimension mismatch");
    LatticeBasis c = canonical_basis(dim, sub.basis);
    if (c.rank() < dim) return std::nullopt;
    IntMatrix h = c.matrix();
    Int idx = 1;
    for (std::size_t i = 0; i < dim; ++i) idx *= h.at(i, i);
    return abs(idx);
}

bool lattice_contains(const LatticeBasis& l, const IntVec& v) {
    if (v.size() != l.ambient_dim) return false;
    if (is_zero(v)) return true;
    if (l.basis.empty()) return false;
    // Solve x^T B = v exactly and demand integral coordinates.
    IntMatrix bt = l.matrix().transpose();
    auto x = solve_rational(bt, to_rational(v));
    if (!x) return false;
    for (const Rat& q : *x)
        if (!is_integral(q)) return false;
    return true;
}

// Recursive enumeration over an HNF basis. The pivot-column coordinate of
// a partial combination bounds the next coefficient exactly, and rows below
// level j leave the first pivots[j] coordinates untouched, so the l1 mass
// already accumulated there prunes the branch.
static void ball_rec(const std::vector<IntVec>& basis, const std::vector<std::size_t>& pivots,
                     const Int& radius, std::size_t j, IntVec& partial, std::vector<IntVec>& out) {
    Int fixed = 0;
    const std::size_t fixed_until = j < basis.size() ? pivots[j] : partial.size();
    for (std::size_t k = 0; k < fixed_until; ++k) fixed += abs(partial[k]);
    if (cmp(fixed, radius) > 0) return;
    if (j == basis.size()) {
        if (cmp(l1_norm(partial), radius) <= 0) out.push_back(partial);
        return;
    }
    const Int& p = basis[j][pivots[j]];
    // |partial[c_j] + lambda*p| <= radius - (mass fixed so far)
    Int budget = radius - fixed;
    Int lo_num = -budget - partial[pivots[j]];
    Int hi_num = budget - partial[pivots[j]];
    Int lo, hi;
    mpz_cdiv_q(lo.get_mpz_t(), lo_num.get_mpz_t(), p.get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), hi_num.get_mpz_t(), p.get_mpz_t());
    for (Int lam = lo; lam <= hi; ++lam) {
        IntVec next = partial;
        for (std::size_t k = 0; k < next.size(); ++k) next[k] += lam * basis[j][k];
        ball_rec(basis, pivots, radius, j + 1, next, out);
    }
}

std::vector<IntVec> lattice_ball_l1(const LatticeBasis& l, unsigned radius) {
    LatticeBasis c = canonical_basis(l.ambient_dim, l.basis);
    std::vector<IntVec> out;
    if (c.basis.empty()) {
        out.push_back(IntVec(l.ambient_dim, Int(0)));
        return out;
    }
    std::vector<std::size_t> pivots;
    for (const IntVec& row : c.basis) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        pivots.push_back(p);
    }
    IntVec zero(l.ambient_dim, Int(0));
    ball_rec(c.basis, pivots, Int(radius), 0, zero, out);
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

std::vector<IntVec> lattice_ball_l2(const LatticeBasis& l, const Int& bound) {
    LatticeBasis c = canonical_basis(l.ambient_dim, l.basis);
    std::vector<IntVec> out;
    if (c.basis.empty()) return out;
    // Coefficient box via z = v * G^{-1}: |z_i| <= |v|_2 * |col_i(G^{-1})|_2.
    const std::size_t k = c.rank();
    auto ginv = inverse(c.matrix().mul(c.matrix().transpose()));
    if (!ginv) throw std::logic_error("lattice_ball_l2: degenerate basis");
    // |z_i|^2 <= bound * (G G^T)^{-1}_{ii} is the exact ellipsoid bound.
    std::vector<Int> box(k);
    for (std::size_t i = 0; i < k; ++i) {
        Rat m2 = ginv->at(i, i) * Rat(bound);
        Int num_ceil = m2.get_num() / m2.get_den() + 1;
        Int r;
        mpz_sqrt(r.get_mpz_t(), num_ceil.get_mpz_t());
        box[i] = r + 1;
    }
    std::vector<Int> z(k, Int(0));
    for (std::size_t i = 0; i < k; ++i) z[i] = -box[i];
    while (true) {
        IntVec v(l.ambient_dim, Int(0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < l.ambient_dim; ++j) v[j] += z[i] * c.basis[i][j];
        if (!is_zero(v) && cmp(l2_norm_sq(v), bound) <= 0) out.push_back(v);
        std::size_t i = 0;
        while (i < k) {
            ++z[i];
            if (z[i] <= box[i]) break;
            z[i] = -box[i];
            ++i;
        }
        if (i == k) break;
    }
    std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
        Int na = l2_norm_sq(a), nb = l2_norm_sq(b);
        int cnorm = cmp(na, nb);
        if (cnorm != 0) return cnorm < 0;
        return LexLess{}(a, b);
    });
    return out;
}

std::optional<RatVec> solve_rational(const IntMatrix& m, const RatVec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve_rational: size mismatch");
    const std::size_t rows = m.rows(), cols = m.cols();
    RatMatrix a(rows, cols + 1);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a.at(i, j) = Rat(m.at(i, j));
        a.at(i, cols) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t p = rank;
        while (p < rows && a.at(p, col) == 0) ++p;
        if (p == rows) continue;
        for (std::size_t j = 0; j <= cols; ++j) std::swap(a.at(rank, j), a.at(p, j));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col) / a.at(rank, col);
            for (std::size_t j = col; j <= cols; ++j) a.at(i, j) -= f * a.at(rank, j);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (a.at(i, cols) != 0) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = a.at(i, cols) / a.at(i, pivot_col[i]);
    return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    RatMatrix a = m;
    RatMatrix inv = RatMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a.at(p, col) == 0) ++p;
        if (p == n) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a.at(col, j), a.at(p, j));
            std::swap(inv.at(col, j), inv.at(p, j));
        }
        Rat d = a.at(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(i, j) -= f * a.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

std::optional<RatMatrix> inverse(const IntMatrix& m) { return inverse(RatMatrix::from_int(m)); }

}  // namespace gkz
