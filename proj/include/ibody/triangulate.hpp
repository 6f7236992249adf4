#pragma once

#include <cstddef>
#include <vector>

#include "ibody/linalg.hpp"

namespace ibody {

// Exact coordinates of each point in an affine chart of the points' affine
// hull; output vectors all have length r = affine dimension of the set.
// The chart is deterministic (basis greedily extracted in input order).
std::vector<RatVec> affine_coordinates(const std::vector<RatVec>& points);

// Deterministic exact triangulation of a finite point set by regular
// subdivision: point i is lifted to height base^exponents[i], the cells are
// the lower-hull facets of the lifted set. Non-simplex cells (ties in the
// lifting) fall back to a pulling triangulation from their lowest-index
// point, so the result is always a list of simplices, each a sorted
// (r+1)-tuple of indices into `points` where r is the affine dimension.
std::vector<std::vector<std::size_t>> triangulate_points(
    const std::vector<RatVec>& points, unsigned base,
    const std::vector<std::size_t>& exponents);

} // namespace ibody
