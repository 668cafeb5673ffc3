#pragma once

#include "gkz/linalg.hpp"

#include <cstddef>
#include <vector>

namespace gkz {

// Finite set of lattice points; duplicates are dropped on construction,
// keeping the first occurrence so indices stay stable.
struct PointSet {
    std::size_t dim = 0;
    std::vector<IntVec> points;

    PointSet() = default;
    PointSet(std::size_t d, std::vector<IntVec> pts);
    std::size_t size() const { return points.size(); }
};

// Inequality <normal, x> >= offset with a primitive integer normal.
struct Facet {
    IntVec normal;
    Int offset;
};

struct HullDescription {
    std::size_t dim = 0;         // ambient dimension
    std::size_t affine_dim = 0;  // dimension of the affine span
    IntVec base_point;
    std::vector<IntVec> span_basis;      // saturated direction lattice, HNF rows
    std::vector<IntVec> span_equations;  // integer equations vanishing on the span
    std::vector<Facet> facets;           // ambient-coordinate facet inequalities
    std::vector<Facet> local_facets;     // same facets in span coordinates
    PointSet points;                     // deduplicated generators
    std::vector<IntVec> local_points;    // coordinates w.r.t. span_basis
};

HullDescription convex_hull(const PointSet& p);

// Relative-interior membership: q lies in the affine span and satisfies
// every facet inequality strictly. A zero-dimensional hull contains only
// its single point.
bool contains_strict_interior(const HullDescription& h, const RatVec& q);

// Indices (into h.points) of the vertices of the hull.
std::vector<std::size_t> hull_vertex_indices(const HullDescription& h);

struct ConeFacets {
    std::vector<IntVec> facet_normals;   // primitive, >= 0 on every generator
    std::vector<IntVec> span_equations;  // vanish on the linear span
};

// Facet-supporting functionals of the cone spanned by the points.
ConeFacets cone_facets(const PointSet& p);

// Simplices are index subsets of size affine_dim + 1 into the generating
// point set.
struct Triangulation {
    std::size_t affine_dim = 0;
    std::vector<std::vector<std::size_t>> simplices;
};

// Deterministic incremental triangulation: points are inserted in
// lexicographic coordinate order, coning each new point over the visible
// boundary faces. Affine dimension zero yields an empty triangulation.
Triangulation placing_triangulation(const PointSet& p);

// Triangulation of the hull restricted to its vertex set.
Triangulation vertex_triangulation(const PointSet& p);

// (affine_dim)! times the volume of conv(p), measured against the
// saturated lattice of the direction space. Single points give 0.
Int normalized_volume(const PointSet& p);

// Volume measured against lat intersected with the direction space;
// throws when the result would not be an integer or lat is too small.
Int normalized_volume(const PointSet& p, const LatticeBasis& lat);

// Index of (lat ∩ direction space) inside the saturated direction lattice.
Int direction_lattice_index(const PointSet& p, const LatticeBasis& lat);

PointSet minkowski_sum(const PointSet& p, const PointSet& q);

// All lattice points of the hull, in lexicographic scan order.
PointSet lattice_points(const HullDescription& h);

}  // namespace gkz
