#pragma once

#include "gkz/gkz.hpp"
#include "gkz/linalg.hpp"
#include "gkz/polytope.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gkz {

// Truncated formal series sum_u c(u) x^{v+u} over kernel-lattice offsets u
// with |u|_1 <= truncation_order. Only nonzero coefficients are stored.
struct FormalSeries {
    RatVec base_exponent;                 // v, with A v = beta
    std::map<IntVec, Rat, LexLess> terms;
    unsigned truncation_order = 0;
    // When the seed sits on a deeper Gamma pole than some other offset, the
    // series is renormalized at the deepest-pole offset instead of u = 0.
    bool renormalized = false;
    IntVec base_offset;

    bool is_zero() const { return terms.empty(); }
};

// Seed exponents of the Gamma-series attached to a triangulation: for each
// maximal simplex, one seed per coset of the kernel lattice restricted to
// the off-simplex coordinates. Deduplicated modulo the kernel lattice and
// sorted. Throws on singular simplices.
std::vector<RatVec> initial_exponents(const AConfig& c, const Beta& beta, const Triangulation& t);

// Gamma-series truncation with exact rational coefficients, computed via
// Gamma-quotient valuations so that integer seeds on poles stay exact.
FormalSeries gamma_series(const RatVec& v, const LatticeBasis& kernel, unsigned order);

// Formal box-operator image. Coefficients are kept only where both source
// offsets lie inside the input truncation, clipped to |u|_1 <=
// order - degree; this window is exactly where the result is reliable.
FormalSeries apply_box(const FormalSeries& s, const BoxOperator& b);

// Formal Euler-operator image; exactly zero on well-formed series.
FormalSeries apply_euler(const FormalSeries& s, const EulerOperator& e);

struct AnnihilationVerdict {
    bool pass = false;
    unsigned max_checked_order = 0;
    // (operator description, offending offset)
    std::optional<std::pair<std::string, IntVec>> first_failure;
};

AnnihilationVerdict verify_annihilation(const FormalSeries& s, const GkzSystem& sys);

struct SeriesFamily {
    std::vector<FormalSeries> members;
    AConfig config;
    Beta beta;
};

SeriesFamily build_family(const AConfig& c, const Beta& beta, const Triangulation& t,
                          unsigned order);

// Number of members with pairwise distinct base exponents modulo the
// kernel lattice.
std::size_t count_independent(const SeriesFamily& f);

}  // namespace gkz
