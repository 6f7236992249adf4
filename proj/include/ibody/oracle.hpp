#pragma once

#include <cstdint>

#include "ibody/intersection_body.hpp"
#include "ibody/polytope.hpp"

namespace ibody {

// W(x) = |x| * Vol_{d-1}(P meet x-perp), exact. Recomputes the section from
// scratch: concrete crossing points, grouped by facet, each group
// triangulated via a lifted lower hull with heights lift_base^i assigned in
// (reverse-)sorted point order. Sharing no code with the symbolic pipeline
// makes this a genuinely independent check: for an open-chamber direction,
// p_tilde(x) * |x|^2 == q(x) * W(x) in the Euclidean-area normalization.
// Requires x nonzero and off every arrangement wall.
Rat section_volume_scaled(const VPolytope& p, const RatVec& x,
                          unsigned lift_base = 2, bool reverse_order = true);

// True iff the signed-pyramid decomposition from a strictly exterior apex
// reproduces the volume exactly.
bool lemma31_check(const VPolytope& p, const RatVec& apex);

// Dimension-2 law: the body's radial function equals factor * rho_P(R x)
// where R is a quarter turn and rho_P comes straight from the facet
// inequalities. factor = 2 for the Euclidean-area normalization, 1 for the
// cone normalization. Checked at `count` seeded random rational points;
// requires a centrally symmetric polygon.
bool rotate2d_check(const IntersectionBody& body, std::uint64_t seed,
                    int count = 100);

struct MonteCarloEstimate {
    double estimate;       // Vol_{d-1}(P meet x-perp)
    double standard_error; // hit-or-miss binomial error, same units
    std::size_t hits;
    std::size_t samples;
};

// Hit-or-miss estimate of the section volume: samples a box spanning the
// section inside the hyperplane x-perp. Counter-based RNG keyed by seed, so
// results are reproducible. Probabilistic cross-check only; no exactness.
MonteCarloEstimate montecarlo_section_volume(const VPolytope& p,
                                             const RatVec& x, std::size_t n,
                                             std::uint64_t seed);

} // namespace ibody
