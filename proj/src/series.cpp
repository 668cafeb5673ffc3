#include "gkz/series.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace gkz {

namespace {

Int fact(const Int& n) {
    assert(n >= 0 && n.fits_ulong_p());
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n.get_ui());
    return r;
}

// Gamma(v+1)/Gamma(v+u+1) as an epsilon-valuation: `order` counts net pole
// cancellations under v -> v + eps, `value` is the finite leading part.
struct GammaQuotient {
    long order = 0;
    Rat value = 1;
};

// Product over an integer range [lo, hi] (empty when lo > hi).
Rat int_range_product(const Int& lo, const Int& hi) {
    Rat p = 1;
    for (Int i = lo; i <= hi; ++i) p *= Rat(i);
    return p;
}

GammaQuotient gamma_quotient(const Rat& v, const Int& u) {
    GammaQuotient q;
    if (u == 0) return q;
    if (!is_integral(v)) {
        // Gamma(a)/Gamma(a+u) for non-integral a: plain Pochhammer quotient.
        Rat a = v + 1;
        if (u > 0) {
            Rat denom = 1;
            for (Int i = 0; i < u; ++i) denom *= a + Rat(i);
            q.value = 1 / denom;
        } else {
            Rat num = 1;
            for (Int i = 1; i <= -u; ++i) num *= a - Rat(i);
            q.value = num;
        }
        return q;
    }
    Int a = v.get_num() + 1;  // argument of the numerator Gamma
    Int b = a + u;            // argument of the denominator Gamma
    const bool pa = a <= 0, pb = b <= 0;
    if (!pa && !pb) {
        if (b <= a)
            q.value = int_range_product(b, a - 1);
        else
            q.value = 1 / int_range_product(a, b - 1);
    } else if (!pa && pb) {
        // 1/Gamma(b + eps) ~ eps * (-1)^{-b} * (-b)!
        q.order = 1;
        Int sign = (((-b) % 2) == 0) ? 1 : -1;
        q.value = Rat(fact(Int(a - 1))) * Rat(sign * fact(Int(-b)));
    } else if (pa && !pb) {
        // Gamma(a + eps) ~ (-1)^{-a} / ((-a)! * eps)
        q.order = -1;
        Int sign = (((-a) % 2) == 0) ? 1 : -1;
        q.value = Rat(sign) / (Rat(fact(Int(-a))) * Rat(fact(Int(b - 1))));
    } else {
        // Both arguments on poles: the eps-quotient is finite and nonzero.
        if (b < a)
            q.value = int_range_product(b, a - 1);
        else if (a < b)
            q.value = 1 / int_range_product(a, b - 1);
    }
    return q;
}

// Falling-factorial coefficient of d^nu applied to x^w.
Rat falling_product(const RatVec& w, const IntVec& nu) {
    Rat p = 1;
    for (std::size_t j = 0; j < nu.size(); ++j)
        for (Int i = 0; i < nu[j]; ++i) p *= w[j] - Rat(i);
    return p;
}

// Representatives of Z^k modulo the row lattice of a full-rank HNF matrix:
// the box prod [0, h_ii).
std::vector<IntVec> hnf_box_transversal(const IntMatrix& h) {
    const std::size_t k = h.rows();
    for (std::size_t i = 0; i < k; ++i)
        if (h.at(i, i) <= 0) throw std::logic_error("hnf_box_transversal: not full rank");
    std::vector<IntVec> out;
    IntVec cur(k, Int(0));
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0) {
            --i;
            ++cur[i];
            if (cur[i] < h.at(i, i)) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

bool same_coset(const LatticeBasis& kernel, const RatVec& a, const RatVec& b) {
    IntVec diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rat d = a[i] - b[i];
        if (!is_integral(d)) return false;
        diff[i] = d.get_num();
    }
    return lattice_contains(kernel, diff);
}

bool rat_vec_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c < 0;
    }
    return a.size() < b.size();
}

}  // namespace

std::vector<RatVec> initial_exponents(const AConfig& c, const Beta& beta, const Triangulation& t) {
    const std::size_t dim = c.r + c.n;
    if (beta.size() != dim) throw std::invalid_argument("initial_exponents: beta length mismatch");
    LatticeBasis kernel = kernel_lattice(c.matrix());

    std::vector<RatVec> seeds;
    for (const auto& simplex : t.simplices) {
        if (simplex.size() != dim)
            throw std::invalid_argument("initial_exponents: simplex size must be r+n");
        std::vector<IntVec> cols;
        for (std::size_t j : simplex) cols.push_back(c.columns[j]);
        IntMatrix a_sigma = IntMatrix::from_columns(cols);
        if (det(a_sigma) == 0)
            throw std::invalid_argument("initial_exponents: singular simplex in triangulation");

        std::vector<std::size_t> off;
        for (std::size_t j = 0; j < c.N(); ++j)
            if (std::find(simplex.begin(), simplex.end(), j) == simplex.end()) off.push_back(j);

        // Kernel lattice restricted to the off-simplex coordinates: its
        // cosets in Z^off enumerate the seeds of this simplex.
        std::vector<IntVec> restricted;
        for (const IntVec& g : kernel.basis) {
            IntVec rg(off.size());
            for (std::size_t i = 0; i < off.size(); ++i) rg[i] = g[off[i]];
            restricted.push_back(rg);
        }
        std::vector<IntVec> reps;
        if (off.empty()) {
            reps.push_back({});
        } else {
            IntMatrix h = hnf(IntMatrix::from_rows(restricted, off.size())).h;
            if (h.rows() != off.size() || rational_rank(h) != off.size())
                throw std::logic_error("initial_exponents: restricted kernel not full rank");
            reps = hnf_box_transversal(h);
        }

        for (const IntVec& x : reps) {
            RatVec rhs = beta;
            for (std::size_t i = 0; i < off.size(); ++i)
                for (std::size_t l = 0; l < dim; ++l)
                    rhs[l] -= Rat(x[i]) * Rat(c.columns[off[i]][l]);
            auto sol = solve_rational(a_sigma, rhs);
            assert(sol);
            RatVec v(c.N(), Rat(0));
            for (std::size_t i = 0; i < simplex.size(); ++i) v[simplex[i]] = (*sol)[i];
            for (std::size_t i = 0; i < off.size(); ++i) v[off[i]] = Rat(x[i]);
            bool dup = false;
            for (const RatVec& prev : seeds)
                if (same_coset(kernel, prev, v)) {
                    dup = true;
                    break;
                }
            if (!dup) seeds.push_back(v);
        }
    }
    std::sort(seeds.begin(), seeds.end(), rat_vec_less);
    return seeds;
}

FormalSeries gamma_series(const RatVec& v, const LatticeBasis& kernel, unsigned order) {
    FormalSeries s;
    s.base_exponent = v;
    s.truncation_order = order;
    s.base_offset = IntVec(v.size(), Int(0));

    std::vector<IntVec> offsets = lattice_ball_l1(kernel, order);
    std::vector<long> pole_order(offsets.size());
    std::vector<Rat> raw(offsets.size());
    long min_order = 0;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        long ord = 0;
        Rat val = 1;
        for (std::size_t j = 0; j < v.size(); ++j) {
            GammaQuotient q = gamma_quotient(v[j], offsets[k][j]);
            ord += q.order;
            val *= q.value;
        }
        pole_order[k] = ord;
        raw[k] = val;
        if (ord < min_order) min_order = ord;
    }

    // Normalize at u = 0 when possible, otherwise at the first offset
    // realizing the deepest pole order.
    std::size_t base = offsets.size();
    for (std::size_t k = 0; k < offsets.size(); ++k) {
        if (pole_order[k] != min_order) continue;
        if (is_zero(offsets[k])) {
            base = k;
            break;
        }
        if (base == offsets.size()) base = k;
    }
    assert(base < offsets.size());
    s.renormalized = !is_zero(offsets[base]);
    s.base_offset = offsets[base];

    for (std::size_t k = 0; k < offsets.size(); ++k) {
        if (pole_order[k] != min_order) continue;  // higher order: coefficient 0
        Rat coeff = raw[k] / raw[base];
        if (coeff != 0) s.terms.emplace(offsets[k], coeff);
    }
    return s;
}

FormalSeries apply_box(const FormalSeries& s, const BoxOperator& b) {
    const std::size_t n = s.base_exponent.size();
    if (b.nu_plus.size() != n) throw std::invalid_argument("apply_box: size mismatch");
    IntVec g = b.lattice_vector();
    Int deg = b.degree();
    FormalSeries out;
    for (std::size_t j = 0; j < n; ++j)
        out.base_exponent.push_back(s.base_exponent[j] - Rat(b.nu_plus[j]));
    unsigned window = 0;
    if (Int(s.truncation_order) > deg) window = static_cast<unsigned>(Int(Int(s.truncation_order) - deg).get_ui());
    out.truncation_order = window;
    out.base_offset = IntVec(n, Int(0));

    std::map<IntVec, Rat, LexLess> acc;
    for (const auto& [u, c] : s.terms) {
        RatVec w(n);
        for (std::size_t j = 0; j < n; ++j) w[j] = s.base_exponent[j] + Rat(u[j]);
        acc[u] += c * falling_product(w, b.nu_plus);
        acc[add(u, g)] -= c * falling_product(w, b.nu_minus);
    }
    for (const auto& [u, c] : acc) {
        if (c == 0) continue;
        // Keep only offsets whose both source terms were inside the input
        // truncation; elsewhere the value is not trustworthy.
        if (cmp(l1_norm(u), Int(window)) > 0) continue;
        if (cmp(l1_norm(sub(u, g)), Int(s.truncation_order)) > 0) continue;
        out.terms.emplace(u, c);
    }
    return out;
}

FormalSeries apply_euler(const FormalSeries& s, const EulerOperator& e) {
    const std::size_t n = s.base_exponent.size();
    if (e.weights.size() != n) throw std::invalid_argument("apply_euler: size mismatch");
    FormalSeries out;
    out.base_exponent = s.base_exponent;
    out.truncation_order = s.truncation_order;
    out.base_offset = IntVec(n, Int(0));
    for (const auto& [u, c] : s.terms) {
        Rat factor = -e.beta_value;
        for (std::size_t j = 0; j < n; ++j)
            factor += Rat(e.weights[j]) * (s.base_exponent[j] + Rat(u[j]));
        if (factor != 0) out.terms.emplace(u, c * factor);
    }
    return out;
}

AnnihilationVerdict verify_annihilation(const FormalSeries& s, const GkzSystem& sys) {
    AnnihilationVerdict verdict;
    verdict.pass = true;
    verdict.max_checked_order = s.truncation_order;

    for (const EulerOperator& e : sys.eulers) {
        FormalSeries res = apply_euler(s, e);
        if (!res.is_zero()) {
            verdict.pass = false;
            std::ostringstream os;
            os << "E" << (e.level + 1) << " - beta_" << (e.level + 1);
            verdict.first_failure = {os.str(), res.terms.begin()->first};
            return verdict;
        }
    }
    for (const BoxOperator& b : sys.boxes) {
        FormalSeries res = apply_box(s, b);
        if (res.truncation_order < verdict.max_checked_order)
            verdict.max_checked_order = res.truncation_order;
        if (!res.is_zero()) {
            verdict.pass = false;
            verdict.first_failure = {b.to_string(), res.terms.begin()->first};
            return verdict;
        }
    }
    return verdict;
}

SeriesFamily build_family(const AConfig& c, const Beta& beta, const Triangulation& t,
                          unsigned order) {
    SeriesFamily fam;
    fam.config = c;
    fam.beta = beta;
    LatticeBasis kernel = kernel_lattice(c.matrix());
    for (const RatVec& v : initial_exponents(c, beta, t))
        fam.members.push_back(gamma_series(v, kernel, order));
    return fam;
}

std::size_t count_independent(const SeriesFamily& f) {
    LatticeBasis kernel = kernel_lattice(f.config.matrix());
    std::vector<RatVec> classes;
    for (const FormalSeries& s : f.members) {
        bool dup = false;
        for (const RatVec& prev : classes)
            if (same_coset(kernel, prev, s.base_exponent)) {
                dup = true;
                break;
            }
        if (!dup) classes.push_back(s.base_exponent);
    }
    return classes.size();
}

}  // namespace gkz
