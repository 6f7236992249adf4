#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ibody/linalg.hpp"
#include "ibody/polytope.hpp"

namespace ibody {

// Normals of the central hyperplane arrangement spanned by the nonzero
// vertex directions of a polytope, deduplicated up to nonzero scaling
// (v and -v merged). Each normal is scaled to coprime integers with first
// nonzero entry positive; the list is sorted lexicographically.
struct NormalSet {
    std::vector<RatVec> normals;
    std::size_t m() const { return normals.size(); }
};

// One maximal open cone of the arrangement complement.
// signs[i] is the sign of <normals[i], x> throughout the chamber; id is the
// chamber's rank in the canonical order (sign vectors sorted with +1 before
// -1, lexicographically); witness is the exact margin-maximizing interior
// point from the arrangement LP; rays are the extreme rays of the closure,
// scaled to coprime integers.
struct Chamber {
    std::size_t id = 0;
    std::vector<int> signs;
    RatVec witness;
    std::vector<RatVec> rays;
};

// locate() outcome: either the chamber whose open cone contains the point,
// or the indices of all hyperplanes the point lies on.
struct LocateResult {
    std::optional<std::size_t> chamber_id;
    std::vector<std::size_t> on_walls;
    bool on_wall() const { return !on_walls.empty(); }
};

NormalSet build_normals(const VPolytope& p);

// The same directions viewed as generators of the zonotope sum of segments
// [-v, v]: the arrangement fan is the normal fan of that zonotope.
std::vector<RatVec> zonotope_generators(const VPolytope& p);

// Upper bound sum_{j=0..d} C(m, j) on the chamber count of any central
// arrangement of m hyperplanes in dimension d.
std::size_t chamber_count_bound(std::size_t m, std::size_t d);

// All maximal open chambers, by incremental hyperplane insertion with one
// strict-feasibility LP per new sign extension. Each returned chamber has
// its canonical witness and extreme rays filled in; the list is sorted by
// sign vector (+1 before -1) and ids are positions in that order.
std::vector<Chamber> enumerate_chambers(const NormalSet& ns);

// Extreme rays of one chamber's closed cone: candidates are the kernels of
// rank-(d-1) subsets of normals, kept when they satisfy every chamber sign
// non-strictly (so each returned ray lies on >= d-1 independent hyperplanes).
std::vector<RatVec> chamber_rays(const NormalSet& ns, const Chamber& c);

// Pairs of chamber ids sharing a full-dimensional wall: sign vectors differ
// in exactly one coordinate and a strict-margin LP inside the separating
// hyperplane certifies the wall is (d-1)-dimensional.
std::vector<std::pair<std::size_t, std::size_t>> adjacency_graph(
    const NormalSet& ns, const std::vector<Chamber>& chambers);

// Exact point location by sign evaluation. x must be nonzero.
LocateResult locate(const NormalSet& ns, const std::vector<Chamber>& chambers,
                    const RatVec& x);

} // namespace ibody
