#include "gkz/gkz.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gkz {

std::size_t AConfig::block_of(std::size_t j) const {
    std::size_t acc = 0;
    for (std::size_t i = 0; i < block_sizes.size(); ++i) {
        acc += block_sizes[i];
        if (j < acc) return i;
    }
    throw std::out_of_range("block_of: column index out of range");
}

IntVec AConfig::a_part(std::size_t j) const {
    return IntVec(columns[j].begin(), columns[j].begin() + r);
}

IntVec AConfig::w_part(std::size_t j) const {
    return IntVec(columns[j].begin() + r, columns[j].end());
}

IntMatrix AConfig::matrix() const { return IntMatrix::from_columns(columns); }

PointSet AConfig::column_points() const { return PointSet(r + n, columns); }

bool AConfig::operator==(const AConfig& other) const {
    return r == other.r && n == other.n && block_sizes == other.block_sizes &&
           columns == other.columns;
}

Beta beta_standard(std::size_t r, std::size_t n) {
    Beta b(r + n, Rat(0));
    for (std::size_t i = 0; i < r; ++i) b[i] = -1;
    return b;
}

AConfig build_config(const std::vector<PointSet>& deltas) {
    if (deltas.empty()) throw std::invalid_argument("build_config: need at least one polytope");
    const std::size_t r = deltas.size();
    const std::size_t n = deltas.front().dim;
    for (const PointSet& d : deltas)
        if (d.dim != n) throw std::invalid_argument("build_config: polytope dimensions differ");

    AConfig c;
    c.r = r;
    c.n = n;
    for (std::size_t i = 0; i < r; ++i) {
        PointSet pts = lattice_points(convex_hull(deltas[i]));
        c.block_sizes.push_back(pts.size());
        for (const IntVec& w : pts.points) {
            IntVec col(r + n, Int(0));
            col[i] = 1;
            for (std::size_t k = 0; k < n; ++k) col[r + k] = w[k];
            c.columns.push_back(col);
        }
    }
    if (rational_rank(c.matrix()) != r + n)
        throw std::invalid_argument("build_config: rank-deficient polytope family");
    return c;
}

bool check_homogeneous(const AConfig& c) {
    for (std::size_t j = 0; j < c.N(); ++j) {
        IntVec a = c.a_part(j);
        std::size_t blk = c.block_of(j);
        for (std::size_t i = 0; i < c.r; ++i)
            if (a[i] != (i == blk ? 1 : 0)) return false;
    }
    return true;
}

bool check_hypothesis(const AConfig& c) {
    RatVec q(c.r + c.n, Rat(0));
    for (std::size_t i = 0; i < c.r; ++i) q[i] = make_rat(1, Int(c.r));
    return contains_strict_interior(convex_hull(c.column_points()), q);
}

bool check_property_star(const AConfig& c) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < c.r; ++i) {
        bool has_zero = false;
        for (std::size_t k = 0; k < c.block_sizes[i]; ++k, ++j)
            if (is_zero(c.w_part(j))) has_zero = true;
        if (!has_zero) return false;
    }
    return true;
}

Int BoxOperator::degree() const {
    Int dp = 0, dm = 0;
    for (const Int& x : nu_plus) dp += x;
    for (const Int& x : nu_minus) dm += x;
    return dp > dm ? dp : dm;
}

std::string BoxOperator::to_string() const {
    auto part = [](const IntVec& nu) {
        std::ostringstream os;
        bool any = false;
        for (std::size_t j = 0; j < nu.size(); ++j) {
            if (nu[j] == 0) continue;
            any = true;
            os << "D" << (j + 1);
            if (nu[j] != 1) os << "^" << nu[j].get_str();
        }
        return any ? os.str() : std::string("1");
    };
    return part(nu_plus) + " - " + part(nu_minus);
}

std::vector<BoxOperator> box_operators(const AConfig& c, unsigned degree_bound) {
    if (degree_bound < 1) throw std::invalid_argument("box_operators: degree bound must be >= 1");
    LatticeBasis kernel = kernel_lattice(c.matrix());
    std::vector<BoxOperator> out;
    if (kernel.rank() == 0) return out;

    std::vector<IntVec> ball = lattice_ball_l1(kernel, 2 * degree_bound);
    std::set<IntVec, LexLess> seen;
    for (const IntVec& u : ball) {
        if (is_zero(u)) continue;
        IntVec plus(u.size(), Int(0)), minus(u.size(), Int(0));
        Int dp = 0, dm = 0;
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (u[j] > 0) {
                plus[j] = u[j];
                dp += u[j];
            } else if (u[j] < 0) {
                minus[j] = -u[j];
                dm -= u[j];
            }
        }
        if (dp > degree_bound || dm > degree_bound) continue;
        // u and -u describe the same generator; keep nu_plus lex-smaller.
        if (LexLess{}(minus, plus)) std::swap(plus, minus);
        if (!seen.insert(sub(plus, minus)).second) continue;
        out.push_back(BoxOperator{plus, minus});
    }
    std::sort(out.begin(), out.end(), [](const BoxOperator& a, const BoxOperator& b) {
        int cd = cmp(a.degree(), b.degree());
        if (cd != 0) return cd < 0;
        if (a.nu_plus != b.nu_plus) return LexLess{}(a.nu_plus, b.nu_plus);
        return LexLess{}(a.nu_minus, b.nu_minus);
    });
    return out;
}

std::vector<EulerOperator> euler_operators(const AConfig& c, const Beta& beta) {
    if (beta.size() != c.r + c.n) throw std::invalid_argument("euler_operators: beta length mismatch");
    IntMatrix m = c.matrix();
    std::vector<EulerOperator> out;
    for (std::size_t l = 0; l < c.r + c.n; ++l)
        out.push_back(EulerOperator{m.row(l), l, beta[l]});
    return out;
}

GkzSystem make_system(const AConfig& c, const Beta& beta, unsigned degree_bound) {
    return GkzSystem{c, beta, box_operators(c, degree_bound), euler_operators(c, beta)};
}

namespace {

// First nonzero entry positive.
bool lex_positive(const IntVec& v) {
    for (const Int& x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false;
}

// The chosen vectors, in w-lattice coordinates, must span a saturated
// subgroup so that the greedy selection always extends to a full basis.
bool saturated_in(const LatticeBasis& lattice, const std::vector<IntVec>& chosen) {
    IntMatrix bt = lattice.matrix().transpose();
    std::vector<IntVec> coords;
    for (const IntVec& v : chosen) {
        auto z = solve_rational(bt, to_rational(v));
        if (!z) return false;
        IntVec zi(z->size());
        for (std::size_t i = 0; i < z->size(); ++i) {
            if (!is_integral((*z)[i])) return false;
            zi[i] = (*z)[i].get_num();
        }
        coords.push_back(zi);
    }
    IntMatrix m = IntMatrix::from_rows(coords, lattice.rank());
    if (rational_rank(m) != coords.size()) return false;
    SnfResult s = snf(m);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (s.s.at(i, i) != 1) return false;
    return true;
}

// Greedy reduced basis of the w-column lattice; see normalize_basis docs.
std::vector<IntVec> reduced_basis(const LatticeBasis& lattice, std::size_t n) {
    Int bound = 1;
    for (const IntVec& row : lattice.basis) {
        Int norm = l2_norm_sq(row);
        if (norm > bound) bound = norm;
    }
    while (true) {
        std::vector<IntVec> candidates = lattice_ball_l2(lattice, bound);
        std::vector<IntVec> chosen;
        for (const IntVec& v : candidates) {
            if (chosen.size() == n) break;
            if (chosen.empty() && !lex_positive(v)) continue;
            std::vector<IntVec> trial = chosen;
            trial.push_back(v);
            if (!saturated_in(lattice, trial)) continue;
            if (trial.size() == n && sgn(det(IntMatrix::from_columns(trial))) <= 0) continue;
            chosen = trial;
        }
        if (chosen.size() == n) return chosen;
        bound *= 4;
    }
}

}  // namespace

NormalizeResult normalize_basis(const AConfig& c) {
    if (rational_rank(c.matrix()) != c.r + c.n)
        throw std::invalid_argument("normalize_basis: configuration is rank deficient");
    if (!check_property_star(c))
        throw std::invalid_argument("normalize_basis: property (*) fails (no constant column in some block)");

    std::vector<IntVec> w_cols;
    for (std::size_t j = 0; j < c.N(); ++j) w_cols.push_back(c.w_part(j));
    LatticeBasis w_lattice = lattice_from_generators(c.n, w_cols);
    auto idx = lattice_index(w_lattice, c.n);
    if (!idx) throw std::invalid_argument("normalize_basis: w-columns do not span");

    NormalizeResult res;
    if (*idx == 1) {
        res.b_inverse = IntMatrix::identity(c.n);
        res.b_matrix = RatMatrix::identity(c.n);
        res.r_matrix = RatMatrix::identity(c.r + c.n);
        res.normalized = c;
        return res;
    }

    std::vector<IntVec> basis = reduced_basis(w_lattice, c.n);
    res.b_inverse = IntMatrix::from_columns(basis);
    auto b = inverse(res.b_inverse);
    assert(b);
    res.b_matrix = *b;

    res.r_matrix = RatMatrix::identity(c.r + c.n);
    for (std::size_t i = 0; i < c.n; ++i)
        for (std::size_t j = 0; j < c.n; ++j) res.r_matrix.at(c.r + i, c.r + j) = b->at(i, j);

    AConfig cp = c;
    for (std::size_t j = 0; j < c.N(); ++j) {
        RatVec w_new = b->mul(to_rational(c.w_part(j)));
        for (std::size_t i = 0; i < c.n; ++i) {
            if (!is_integral(w_new[i]))
                throw std::logic_error("normalize_basis: non-integral normalized column");
            cp.columns[j][c.r + i] = w_new[i].get_num();
        }
    }
    res.normalized = cp;
    return res;
}

NonresonanceVerdict check_semi_nonresonant_sufficient(const AConfig& c, const Beta& beta) {
    if (beta.size() != c.r + c.n)
        throw std::invalid_argument("check_semi_nonresonant_sufficient: beta length mismatch");
    ConeFacets cf = cone_facets(c.column_points());
    if (cf.facet_normals.empty()) return NonresonanceVerdict::Indeterminate;
    for (const IntVec& phi : cf.facet_normals)
        if (dot(phi, beta) >= 0) return NonresonanceVerdict::Indeterminate;
    return NonresonanceVerdict::Pass;
}

}  // namespace gkz
