#pragma once

#include "gkz/linalg.hpp"
#include "gkz/polytope.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace gkz {

// Block-structured configuration matrix. Column j of block i carries
// a_part = e_i and an integer torus weight w_part.
struct AConfig {
    std::size_t r = 0;  // number of blocks
    std::size_t n = 0;  // torus rank
    std::vector<std::size_t> block_sizes;
    std::vector<IntVec> columns;  // N vectors of length r + n

    std::size_t N() const { return columns.size(); }
    std::size_t block_of(std::size_t j) const;
    IntVec a_part(std::size_t j) const;
    IntVec w_part(std::size_t j) const;
    IntMatrix matrix() const;         // (r+n) x N
    PointSet column_points() const;   // columns as points in Z^{r+n}
    bool operator==(const AConfig& other) const;
};

using Beta = RatVec;

// (-1, ..., -1, 0, ..., 0) with r entries of -1 and n zeros.
Beta beta_standard(std::size_t r, std::size_t n);

// One block per polytope: a column for every lattice point of conv(delta_i).
// Throws when the resulting matrix is rank deficient.
AConfig build_config(const std::vector<PointSet>& deltas);

bool check_homogeneous(const AConfig& c);

// Whether (1/r, ..., 1/r, 0, ..., 0) lies in the relative interior of the
// column hull.
bool check_hypothesis(const AConfig& c);

// Every block contains a column with zero torus weight.
bool check_property_star(const AConfig& c);

struct BoxOperator {
    IntVec nu_plus;
    IntVec nu_minus;

    IntVec lattice_vector() const { return sub(nu_plus, nu_minus); }
    Int degree() const;  // max of the two total degrees
    std::string to_string() const;
};

// All kernel-lattice vectors whose positive and negative parts both have
// total degree <= degree_bound, one operator per +-pair, sorted by
// (degree, nu_plus, nu_minus). An empty list means the bound is too small.
std::vector<BoxOperator> box_operators(const AConfig& c, unsigned degree_bound);

struct EulerOperator {
    IntVec weights;     // row `level` of the configuration matrix
    std::size_t level;
    Rat beta_value;
};

std::vector<EulerOperator> euler_operators(const AConfig& c, const Beta& beta);

struct GkzSystem {
    AConfig config;
    Beta beta;
    std::vector<BoxOperator> boxes;
    std::vector<EulerOperator> eulers;
};

GkzSystem make_system(const AConfig& c, const Beta& beta, unsigned degree_bound);

struct NormalizeResult {
    RatMatrix r_matrix;   // block diagonal (I_r, B)
    RatMatrix b_matrix;   // B
    IntMatrix b_inverse;  // B^{-1}, columns form a reduced basis of the w-lattice
    AConfig normalized;   // R * c, integral by construction
};

// Integral change of torus basis making the w-columns generate Z^n.
// B^{-1} columns are a reduced basis of the w-column lattice: chosen
// greedily by ascending (|.|_2^2, lex), first vector normalized to a
// positive leading entry, saturation enforced at every step, and the final
// vector oriented so det(B^{-1}) > 0. Identity when the lattice is already
// all of Z^n. Requires full rank and property (*).
NormalizeResult normalize_basis(const AConfig& c);

enum class NonresonanceVerdict { Pass, Indeterminate };

// Sufficient facet test: Pass when every facet-supporting functional of
// the column cone is negative on beta. Pass is sound; anything else is
// reported as Indeterminate, never as failure.
NonresonanceVerdict check_semi_nonresonant_sufficient(const AConfig& c, const Beta& beta);

}  // namespace gkz
