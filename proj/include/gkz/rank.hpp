#pragma once

#include "gkz/gkz.hpp"
#include "gkz/linalg.hpp"

#include <string>

namespace gkz {

enum class RankJustification { GenericVolume, RankOnePoint };

struct RankReport {
    Int predicted_rank;
    RankJustification justification;
    bool hypothesis_ok = false;
    NonresonanceVerdict semi_nonresonance = NonresonanceVerdict::Indeterminate;
    Int lattice_index_used;
    std::string note;
};

// Generic-point rank prediction: normalized volume of the column polytope
// measured against the lattice generated by the columns.
RankReport predicted_rank_generic(const AConfig& c);

struct RankOnePoint {
    IntVec coefficients;  // length N, selects one constant column per block
    RankReport report;
};

// Coefficient vector supported on the first zero-weight column of each
// block; the solution space there has rank one. Requires property (*).
RankOnePoint rank_one_point(const AConfig& c);

}  // namespace gkz
