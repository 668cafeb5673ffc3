#include "gkz/polytope.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>

namespace gkz {

PointSet::PointSet(std::size_t d, std::vector<IntVec> pts) : dim(d) {
    std::set<IntVec, LexLess> seen;
    for (auto& p : pts) {
        if (p.size() != d) throw std::invalid_argument("PointSet: point dimension mismatch");
        if (seen.insert(p).second) points.push_back(std::move(p));
    }
}

namespace {

// Affine frame of a point set: saturated direction lattice, span equations,
// and integer coordinates of every point inside the span.
struct Frame {
    PointSet pts;
    std::size_t dim = 0;
    std::size_t affine_dim = 0;
    IntVec base;
    std::vector<IntVec> span_basis;
    std::vector<IntVec> span_eqs;
    std::vector<IntVec> local;
};

IntVec span_coords(const std::vector<IntVec>& span_basis, std::size_t dim, const IntVec& v) {
    if (span_basis.empty()) {
        if (!is_zero(v)) throw std::logic_error("span_coords: vector outside trivial span");
        return {};
    }
    IntMatrix bt = IntMatrix::from_rows(span_basis, dim).transpose();
    auto y = solve_rational(bt, to_rational(v));
    if (!y) throw std::logic_error("span_coords: vector outside span");
    IntVec r(y->size());
    for (std::size_t i = 0; i < y->size(); ++i) {
        if (!is_integral((*y)[i])) throw std::logic_error("span_coords: non-integral coordinate");
        r[i] = (*y)[i].get_num();
    }
    return r;
}

Frame make_frame(const PointSet& p) {
    if (p.points.empty()) throw std::invalid_argument("make_frame: empty point set");
    Frame f;
    f.pts = p;
    f.dim = p.dim;
    f.base = p.points.front();
    std::vector<IntVec> diffs;
    for (std::size_t i = 1; i < f.pts.points.size(); ++i)
        diffs.push_back(sub(f.pts.points[i], f.base));
    LatticeBasis eqs = diffs.empty()
                           ? kernel_lattice(IntMatrix(0, f.dim))
                           : kernel_lattice(IntMatrix::from_rows(diffs, f.dim));
    f.span_eqs = eqs.basis;
    LatticeBasis span = kernel_lattice(IntMatrix::from_rows(f.span_eqs, f.dim));
    f.span_basis = span.basis;
    f.affine_dim = f.span_basis.size();
    for (const IntVec& pt : f.pts.points)
        f.local.push_back(span_coords(f.span_basis, f.dim, sub(pt, f.base)));
    return f;
}

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

// Primitive normal of the hyperplane through the given local points
// (affine); empty when the points do not span a hyperplane.
std::optional<IntVec> hyperplane_normal(const std::vector<IntVec>& pts) {
    const std::size_t d = pts.front().size();
    std::vector<IntVec> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts.front()));
    LatticeBasis k = kernel_lattice(IntMatrix::from_rows(diffs, d));
    if (k.rank() != 1) return std::nullopt;
    return k.basis.front();
}

// Primitive normal vanishing on the linear span of the given local points.
std::optional<IntVec> linear_normal(const std::vector<IntVec>& pts, std::size_t d) {
    LatticeBasis k = kernel_lattice(IntMatrix::from_rows(pts, d));
    if (k.rank() != 1) return std::nullopt;
    return k.basis.front();
}

// Lift a local functional to a primitive ambient one agreeing on the span.
IntVec lift_functional(const std::vector<IntVec>& span_basis, std::size_t dim, const IntVec& n_loc) {
    IntMatrix b = IntMatrix::from_rows(span_basis, dim);
    IntMatrix gram = b.mul(b.transpose());
    auto alpha = solve_rational(gram, to_rational(n_loc));
    if (!alpha) throw std::logic_error("lift_functional: singular Gram matrix");
    RatVec phi(dim, Rat(0));
    for (std::size_t k = 0; k < span_basis.size(); ++k)
        for (std::size_t j = 0; j < dim; ++j) phi[j] += (*alpha)[k] * Rat(span_basis[k][j]);
    return primitive_from_rational(phi);
}

}  // namespace

HullDescription convex_hull(const PointSet& p) {
    Frame f = make_frame(p);
    HullDescription h;
    h.dim = f.dim;
    h.affine_dim = f.affine_dim;
    h.base_point = f.base;
    h.span_basis = f.span_basis;
    h.span_equations = f.span_eqs;
    h.points = f.pts;
    h.local_points = f.local;

    const std::size_t d = f.affine_dim;
    const std::size_t m = f.local.size();
    if (d == 0) return h;

    std::map<IntVec, Int, LexLess> found;  // local normal -> local offset
    for_each_combination(m, d, [&](const std::vector<std::size_t>& idx) {
        std::vector<IntVec> subset;
        for (std::size_t i : idx) subset.push_back(f.local[i]);
        auto n = hyperplane_normal(subset);
        if (!n) return;
        Int c = dot(*n, subset.front());
        bool above = true, below = true;
        for (const IntVec& q : f.local) {
            int s = cmp(dot(*n, q), c);
            if (s < 0) above = false;
            if (s > 0) below = false;
            if (!above && !below) return;
        }
        if (above)
            found.emplace(*n, c);
        else if (below)
            found.emplace(negate(*n), -c);
    });

    for (const auto& [n_loc, c_loc] : found) {
        h.local_facets.push_back(Facet{n_loc, c_loc});
        IntVec phi = lift_functional(f.span_basis, f.dim, n_loc);
        Int off;
        bool first = true;
        for (const IntVec& pt : f.pts.points) {
            Int val = dot(phi, pt);
            if (first || val < off) off = val;
            first = false;
        }
        h.facets.push_back(Facet{phi, off});
    }
    return h;
}

bool contains_strict_interior(const HullDescription& h, const RatVec& q) {
    if (q.size() != h.dim) throw std::invalid_argument("contains_strict_interior: dimension mismatch");
    // Membership in the affine span: every span equation vanishes on q - base.
    for (const IntVec& eq : h.span_equations) {
        Rat v = 0;
        for (std::size_t j = 0; j < h.dim; ++j) v += Rat(eq[j]) * (q[j] - Rat(h.base_point[j]));
        if (v != 0) return false;
    }
    if (h.affine_dim == 0) {
        for (std::size_t j = 0; j < h.dim; ++j)
            if (q[j] != Rat(h.base_point[j])) return false;
        return true;
    }
    for (const Facet& fc : h.facets)
        if (dot(fc.normal, q) <= Rat(fc.offset)) return false;
    return true;
}

std::vector<std::size_t> hull_vertex_indices(const HullDescription& h) {
    std::vector<std::size_t> out;
    if (h.affine_dim == 0) {
        out.push_back(0);
        return out;
    }
    for (std::size_t i = 0; i < h.local_points.size(); ++i) {
        std::vector<IntVec> tight;
        for (const Facet& fc : h.local_facets)
            if (dot(fc.normal, h.local_points[i]) == fc.offset) tight.push_back(fc.normal);
        if (!tight.empty() &&
            rational_rank(IntMatrix::from_rows(tight, h.affine_dim)) == h.affine_dim)
            out.push_back(i);
    }
    return out;
}

ConeFacets cone_facets(const PointSet& p) {
    if (p.points.empty()) throw std::invalid_argument("cone_facets: empty point set");
    ConeFacets out;
    LatticeBasis eqs = kernel_lattice(IntMatrix::from_rows(p.points, p.dim));
    out.span_equations = eqs.basis;
    LatticeBasis span = kernel_lattice(IntMatrix::from_rows(eqs.basis, p.dim));
    const std::size_t s = span.rank();
    if (s == 0) return out;  // cone is the origin

    std::vector<IntVec> local;
    for (const IntVec& pt : p.points) local.push_back(span_coords(span.basis, p.dim, pt));

    std::set<IntVec, LexLess> found;
    const std::size_t m = local.size();
    for_each_combination(m, s - 1, [&](const std::vector<std::size_t>& idx) {
        std::vector<IntVec> subset;
        for (std::size_t i : idx) subset.push_back(local[i]);
        auto n = s == 1 ? std::optional<IntVec>(IntVec{Int(1)})
                        : linear_normal(subset, s);
        if (!n) return;
        bool nonneg = true, nonpos = true;
        for (const IntVec& q : local) {
            int sg = sgn(dot(*n, q));
            if (sg < 0) nonneg = false;
            if (sg > 0) nonpos = false;
            if (!nonneg && !nonpos) return;
        }
        if (nonneg)
            found.insert(*n);
        else if (nonpos)
            found.insert(negate(*n));
    });

    for (const IntVec& n_loc : found)
        out.facet_normals.push_back(lift_functional(span.basis, p.dim, n_loc));
    std::sort(out.facet_normals.begin(), out.facet_normals.end(), LexLess{});
    return out;
}

namespace {

// Core insertion loop of the placing triangulation, in full-dimensional
// local coordinates. Returns simplices as index sets into `local`.
std::vector<std::vector<std::size_t>> place_points(const std::vector<IntVec>& local,
                                                   const std::vector<std::size_t>& order,
                                                   std::size_t d) {
    // Greedy initial simplex: first d+1 points of increasing affine rank.
    std::vector<std::size_t> seed;
    for (std::size_t i : order) {
        if (seed.empty()) {
            seed.push_back(i);
            continue;
        }
        std::vector<IntVec> diffs;
        for (std::size_t k = 1; k < seed.size(); ++k)
            diffs.push_back(sub(local[seed[k]], local[seed[0]]));
        diffs.push_back(sub(local[i], local[seed[0]]));
        if (rational_rank(IntMatrix::from_rows(diffs, d)) == diffs.size()) seed.push_back(i);
        if (seed.size() == d + 1) break;
    }
    assert(seed.size() == d + 1);
    std::sort(seed.begin(), seed.end());

    std::vector<std::vector<std::size_t>> tri{seed};
    std::set<std::size_t> used(seed.begin(), seed.end());

    for (std::size_t pi : order) {
        if (used.count(pi)) continue;
        // Boundary (d-1)-faces of the current triangulation.
        std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> faces;
        for (std::size_t si = 0; si < tri.size(); ++si) {
            for (std::size_t drop = 0; drop < tri[si].size(); ++drop) {
                std::vector<std::size_t> face;
                for (std::size_t k = 0; k < tri[si].size(); ++k)
                    if (k != drop) face.push_back(tri[si][k]);
                auto [it, fresh] = faces.emplace(face, std::make_pair(1, si));
                if (!fresh) it->second.first++;
            }
        }
        std::vector<std::vector<std::size_t>> fresh_simplices;
        for (const auto& [face, info] : faces) {
            if (info.first != 1) continue;
            std::vector<IntVec> fpts;
            for (std::size_t k : face) fpts.push_back(local[k]);
            auto n = hyperplane_normal(fpts);
            assert(n);
            Int c = dot(*n, fpts.front());
            // Opposite vertex of the owning simplex fixes the inner side.
            std::size_t opp = 0;
            for (std::size_t k : tri[info.second])
                if (std::find(face.begin(), face.end(), k) == face.end()) opp = k;
            int side_in = sgn(Int(dot(*n, local[opp]) - c));
            int side_p = sgn(Int(dot(*n, local[pi]) - c));
            if (side_p != 0 && side_p == -side_in) {
                std::vector<std::size_t> s = face;
                s.push_back(pi);
                std::sort(s.begin(), s.end());
                fresh_simplices.push_back(std::move(s));
            }
        }
        for (auto& s : fresh_simplices) tri.push_back(std::move(s));
    }
    return tri;
}

}  // namespace

Triangulation placing_triangulation(const PointSet& p) {
    Frame f = make_frame(p);
    Triangulation t;
    t.affine_dim = f.affine_dim;
    if (f.affine_dim == 0) return t;

    std::vector<std::size_t> order(f.pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return LexLess{}(f.pts.points[a], f.pts.points[b]);
    });
    t.simplices = place_points(f.local, order, f.affine_dim);
    return t;
}

Triangulation vertex_triangulation(const PointSet& p) {
    HullDescription h = convex_hull(p);
    std::vector<std::size_t> verts = hull_vertex_indices(h);
    std::vector<IntVec> vpts;
    for (std::size_t i : verts) vpts.push_back(h.points.points[i]);
    Triangulation t = placing_triangulation(PointSet(p.dim, vpts));
    for (auto& s : t.simplices)
        for (auto& i : s) i = verts[i];
    return t;
}

Int normalized_volume(const PointSet& p) {
    Frame f = make_frame(p);
    if (f.affine_dim == 0) return 0;
    Triangulation t = placing_triangulation(p);
    Int vol = 0;
    for (const auto& s : t.simplices) {
        std::vector<IntVec> edges;
        for (std::size_t k = 1; k < s.size(); ++k)
            edges.push_back(sub(f.local[s[k]], f.local[s[0]]));
        vol += abs(det(IntMatrix::from_rows(edges, f.affine_dim)));
    }
    return vol;
}

Int direction_lattice_index(const PointSet& p, const LatticeBasis& lat) {
    if (lat.ambient_dim != p.dim)
        throw std::invalid_argument("direction_lattice_index: dimension mismatch");
    Frame f = make_frame(p);
    if (f.affine_dim == 0) return 1;
    // lat ∩ direction space: integer combinations of lat annihilated by the
    // span equations.
    std::vector<IntVec> inter;
    if (f.span_eqs.empty()) {
        inter = lat.basis;
    } else {
        IntMatrix c = IntMatrix::from_rows(f.span_eqs, p.dim);
        IntMatrix g = lat.matrix();
        LatticeBasis coeffs = kernel_lattice(c.mul(g.transpose()));
        for (const IntVec& z : coeffs.basis) {
            IntVec v(p.dim, Int(0));
            for (std::size_t i = 0; i < z.size(); ++i)
                for (std::size_t j = 0; j < p.dim; ++j) v[j] += z[i] * lat.basis[i][j];
            inter.push_back(v);
        }
    }
    std::vector<IntVec> local;
    for (const IntVec& v : inter) local.push_back(span_coords(f.span_basis, p.dim, v));
    auto idx = lattice_index(lattice_from_generators(f.affine_dim, local), f.affine_dim);
    if (!idx)
        throw std::invalid_argument("direction_lattice_index: lattice does not span the direction space");
    return *idx;
}

Int normalized_volume(const PointSet& p, const LatticeBasis& lat) {
    Int ambient = normalized_volume(p);
    if (ambient == 0) return 0;
    Int idx = direction_lattice_index(p, lat);
    if (ambient % idx != 0)
        throw std::logic_error("normalized_volume: volume not integral in the given lattice");
    return ambient / idx;
}

PointSet minkowski_sum(const PointSet& p, const PointSet& q) {
    if (p.dim != q.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    std::vector<IntVec> sums;
    for (const IntVec& a : p.points)
        for (const IntVec& b : q.points) sums.push_back(add(a, b));
    return PointSet(p.dim, sums);
}

PointSet lattice_points(const HullDescription& h) {
    if (h.points.points.empty())
        throw std::invalid_argument("lattice_points: hull has no generating points (unbounded use)");
    const std::size_t dim = h.dim;
    IntVec lo = h.points.points.front(), hi = lo;
    for (const IntVec& p : h.points.points)
        for (std::size_t j = 0; j < dim; ++j) {
            if (p[j] < lo[j]) lo[j] = p[j];
            if (p[j] > hi[j]) hi[j] = p[j];
        }
    std::vector<IntVec> out;
    IntVec cur = lo;
    while (true) {
        bool ok = true;
        for (const IntVec& eq : h.span_equations) {
            if (dot(eq, sub(cur, h.base_point)) != 0) {
                ok = false;
                break;
            }
        }
        if (ok)
            for (const Facet& fc : h.facets) {
                if (dot(fc.normal, cur) < fc.offset) {
                    ok = false;
                    break;
                }
            }
        if (ok) out.push_back(cur);
        std::size_t j = dim;
        while (j > 0) {
            --j;
            ++cur[j];
            if (cur[j] <= hi[j]) break;
            cur[j] = lo[j];
            if (j == 0) return PointSet(dim, out);
        }
        if (dim == 0) return PointSet(dim, out);
    }
}

}  // namespace gkz
