#pragma once

#include <optional>
#include <vector>

#include "ibody/rational.hpp"

namespace ibody {

using RatVec = std::vector<Rat>;
// Row-major; all rows share one length. Checked on every operation.
using RatMat = std::vector<RatVec>;

Rat dot(const RatVec& a, const RatVec& b);

bool is_zero_vec(const RatVec& v);

// The unique positive multiple with integer coprime entries; when
// first_nonzero_positive the sign is fixed too. Canonical representative of
// a direction, used for normals, rays, and denominator linear forms.
RatVec scale_to_coprime_integers(const RatVec& v,
                                 bool first_nonzero_positive = true);

// Exact determinant: denominators cleared per row, then fraction-free
// (Bareiss) elimination over the integers with first-nonzero pivoting.
Rat det(const RatMat& m);

// Unique solution of m*x = rhs when m is square nonsingular; absent when
// singular.
std::optional<RatVec> solve(const RatMat& m, const RatVec& rhs);

// Basis of the right kernel of m, each vector scaled to coprime integers
// with the first nonzero entry positive. Empty for full column rank.
std::vector<RatVec> kernel_basis(const RatMat& m);

struct MarginRow {
    RatVec normal;
    int sign; // +1 or -1
};

struct MarginPoint {
    RatVec x; // inside the box [-1,1]^d
    Rat t;    // best margin; > 0 iff the open cone is nonempty
};

// Exact LP: maximize t subject to sign_i * <normal_i, x> >= t for every row
// and -1 <= x_j <= 1. Two-phase simplex over the rationals with Bland's
// rule, so it cannot cycle and is fully deterministic. The box makes the
// objective bounded; chambers are cones, so feasibility is scale-invariant
// and the box loses nothing. Every returned pair satisfies all constraints
// at margin >= t exactly (verified before returning).
MarginPoint max_margin_point(const std::vector<MarginRow>& rows);

} // namespace ibody
