#include "gkz/rank.hpp"

#include <stdexcept>

namespace gkz {

RankReport predicted_rank_generic(const AConfig& c) {
    RankReport rep;
    rep.justification = RankJustification::GenericVolume;
    rep.hypothesis_ok = check_hypothesis(c);
    rep.semi_nonresonance = check_semi_nonresonant_sufficient(c, beta_standard(c.r, c.n));

    PointSet cols = c.column_points();
    LatticeBasis column_lattice = lattice_from_generators(c.r + c.n, c.columns);
    rep.lattice_index_used = direction_lattice_index(cols, column_lattice);
    rep.predicted_rank = normalized_volume(cols, column_lattice);
    rep.note = "normalized volume of the column polytope in the column lattice";
    return rep;
}

RankOnePoint rank_one_point(const AConfig& c) {
    if (!check_property_star(c))
        throw std::invalid_argument(
            "rank_one_point: property (*) fails, some block has no constant column");
    RankOnePoint out;
    out.coefficients.assign(c.N(), Int(0));
    std::size_t j = 0;
    for (std::size_t i = 0; i < c.r; ++i) {
        std::size_t chosen = c.N();
        for (std::size_t k = 0; k < c.block_sizes[i]; ++k, ++j)
            if (chosen == c.N() && is_zero(c.w_part(j))) chosen = j;
        out.coefficients[chosen] = 1;
    }
    out.report.predicted_rank = 1;
    out.report.justification = RankJustification::RankOnePoint;
    out.report.hypothesis_ok = check_hypothesis(c);
    out.report.semi_nonresonance = check_semi_nonresonant_sufficient(c, beta_standard(c.r, c.n));
    out.report.lattice_index_used = 1;
    out.report.note =
        "coefficients select the constant monomial of each block; the complement of the "
        "corresponding section is the dense torus, whose middle homology has rank one";
    return out;
}

}  // namespace gkz
