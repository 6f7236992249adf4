#include "ibody/triangulate.hpp"

#include <algorithm>
#include <set>

#include "ibody/errors.hpp"

namespace ibody {

namespace {

// Incremental row-reduction tracker used to extract a deterministic affine
// basis from difference vectors.
struct BasisTracker {
    struct Row {
        RatVec vec;            // reduced, pivot entry normalized to 1
        std::size_t pivot_col;
    };
    std::vector<Row> rows;

    // Reduces v against the stored rows in place.
    void reduce(RatVec& v) const {
        for (const Row& row : rows) {
            const Rat& c = v[row.pivot_col];
            if (c == 0) continue;
            Rat f = c; // row has pivot 1
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row.vec[j];
        }
    }

    // Returns true (and absorbs v) when v extends the span.
    bool add(RatVec v) {
        reduce(v);
        std::size_t pc = v.size();
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] != 0) { pc = j; break; }
        }
        if (pc == v.size()) return false;
        Rat inv = v[pc];
        for (Rat& e : v) e /= inv;
        rows.push_back({std::move(v), pc});
        return true;
    }
};

RatVec subtract(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
    return out;
}

// Enumerates sorted k-subsets of {0..n-1} in lexicographic order.
struct SubsetIter {
    std::size_t n, k;
    std::vector<std::size_t> idx;
    bool done = false;

    SubsetIter(std::size_t n_, std::size_t k_) : n(n_), k(k_) {
        if (k > n) { done = true; return; }
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    }
    void advance() {
        if (k == 0) { done = true; return; }
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] + (k - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return;
            }
        }
        done = true;
    }
};

// Normal of the hyperplane through the points indexed by `sub` (within
// `pts`, all of dimension m), or empty when they are affinely dependent.
// Scaled to coprime integers with first nonzero entry positive.
RatVec hyperplane_normal(const std::vector<RatVec>& pts,
                         const std::vector<std::size_t>& sub) {
    const std::size_t m = pts[sub[0]].size();
    RatMat diffs;
    diffs.reserve(sub.size() - 1);
    for (std::size_t i = 1; i < sub.size(); ++i)
        diffs.push_back(subtract(pts[sub[i]], pts[sub[0]]));
    std::vector<RatVec> kern = kernel_basis(diffs);
    if (kern.size() != 1) return {};
    return kern[0];
}

void pulling_triangulate(const std::vector<RatVec>& pts,
                         const std::vector<std::size_t>& cell,
                         std::vector<std::vector<std::size_t>>& sink) {
    std::vector<RatVec> sub_pts;
    sub_pts.reserve(cell.size());
    for (std::size_t i : cell) sub_pts.push_back(pts[i]);
    std::vector<RatVec> coords = affine_coordinates(sub_pts);
    const std::size_t r = coords[0].size();
    if (cell.size() == r + 1) {
        sink.push_back(cell);
        return;
    }
    if (r == 0)
        throw InternalError("pulling triangulation hit duplicate points");

    // Facets of the cell polytope, each as a sorted index set into `cell`.
    std::set<std::vector<std::size_t>> facets;
    for (SubsetIter it(cell.size(), r); !it.done; it.advance()) {
        RatVec nu = hyperplane_normal(coords, it.idx);
        if (nu.empty()) continue;
        int side = 0;
        bool supporting = true;
        std::vector<std::size_t> on_plane = it.idx;
        std::vector<bool> in_sub(cell.size(), false);
        for (std::size_t i : it.idx) in_sub[i] = true;
        for (std::size_t u = 0; u < cell.size() && supporting; ++u) {
            if (in_sub[u]) continue;
            Rat val = dot(nu, subtract(coords[u], coords[it.idx[0]]));
            int s = sign_of(val);
            if (s == 0) {
                on_plane.push_back(u);
            } else if (side == 0) {
                side = s;
            } else if (s != side) {
                supporting = false;
            }
        }
        if (!supporting || side == 0) continue;
        std::sort(on_plane.begin(), on_plane.end());
        facets.insert(std::move(on_plane));
    }

    const std::size_t apex_local = 0; // lowest original index in sorted cell
    for (const std::vector<std::size_t>& facet_local : facets) {
        if (std::find(facet_local.begin(), facet_local.end(), apex_local) !=
            facet_local.end())
            continue;
        std::vector<std::size_t> facet_global;
        facet_global.reserve(facet_local.size());
        for (std::size_t i : facet_local) facet_global.push_back(cell[i]);
        std::vector<std::vector<std::size_t>> pieces;
        pulling_triangulate(pts, facet_global, pieces);
        for (std::vector<std::size_t>& piece : pieces) {
            piece.push_back(cell[apex_local]);
            std::sort(piece.begin(), piece.end());
            sink.push_back(std::move(piece));
        }
    }
}

} // namespace

std::vector<RatVec> affine_coordinates(const std::vector<RatVec>& points) {
    if (points.empty())
        throw ValidationError("affine_coordinates: empty point set");
    const std::size_t d = points[0].size();
    for (const RatVec& p : points)
        if (p.size() != d)
            throw ValidationError("affine_coordinates: inconsistent dimensions");

    BasisTracker tracker;
    std::vector<RatVec> basis; // original (unreduced) difference vectors
    for (std::size_t i = 1; i < points.size(); ++i) {
        RatVec v = subtract(points[i], points[0]);
        if (tracker.add(v)) basis.push_back(std::move(v));
    }
    const std::size_t r = basis.size();
    if (r == 0) return std::vector<RatVec>(points.size());

    std::vector<std::size_t> pivot_cols;
    pivot_cols.reserve(r);
    for (const BasisTracker::Row& row : tracker.rows)
        pivot_cols.push_back(row.pivot_col);

    // Solve c * B = y restricted to the pivot columns, i.e. B_J^T c = y_J.
    RatMat bt(r, RatVec(r));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) bt[l][k] = basis[k][pivot_cols[l]];

    std::vector<RatVec> coords(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        RatVec y = subtract(points[i], points[0]);
        RatVec yj(r);
        for (std::size_t l = 0; l < r; ++l) yj[l] = y[pivot_cols[l]];
        std::optional<RatVec> c = solve(bt, yj);
        if (!c)
            throw InternalError("affine_coordinates: chart system singular");
        for (std::size_t j = 0; j < d; ++j) {
            Rat acc = 0;
            for (std::size_t k = 0; k < r; ++k) acc += (*c)[k] * basis[k][j];
            if (acc != y[j])
                throw InternalError(
                    "affine_coordinates: point outside the spanned subspace");
        }
        coords[i] = std::move(*c);
    }
    return coords;
}

std::vector<std::vector<std::size_t>> triangulate_points(
    const std::vector<RatVec>& points, unsigned base,
    const std::vector<std::size_t>& exponents) {
    if (points.empty())
        throw ValidationError("triangulate_points: empty point set");
    if (exponents.size() != points.size())
        throw ValidationError("triangulate_points: exponents size mismatch");
    if (base < 2)
        throw ValidationError("triangulate_points: lifting base must be >= 2");

    const std::size_t n = points.size();
    std::vector<RatVec> coords = affine_coordinates(points);
    const std::size_t r = coords[0].size();

    if (r == 0) {
        if (n > 1)
            throw ValidationError("triangulate_points: duplicate points");
        return {{0}};
    }
    if (n == r + 1) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        return {all};
    }

    // Lift: append height base^exponents[i].
    std::vector<RatVec> lifted(n);
    for (std::size_t i = 0; i < n; ++i) {
        lifted[i] = coords[i];
        Int h = boost::multiprecision::pow(Int(base),
                                           static_cast<unsigned>(exponents[i]));
        lifted[i].push_back(Rat(h));
    }

    // Lower-hull scan over (r+1)-subsets; each lower facet, extended by the
    // points coplanar with it, is one cell of the subdivision.
    std::set<std::vector<std::size_t>> cells;
    std::vector<bool> in_sub(n, false);
    for (SubsetIter it(n, r + 1); !it.done; it.advance()) {
        RatVec nu = hyperplane_normal(lifted, it.idx);
        if (nu.empty()) continue;
        if (nu[r] == 0) continue; // vertical: not a lower/upper facet
        if (nu[r] < 0)
            for (Rat& e : nu) e = -e;
        // nu now points upward; a lower facet has every other lifted point
        // weakly above its hyperplane.
        for (std::size_t i : it.idx) in_sub[i] = true;
        bool lower = true;
        std::vector<std::size_t> cell = it.idx;
        for (std::size_t u = 0; u < n && lower; ++u) {
            if (in_sub[u]) continue;
            int s = sign_of(dot(nu, subtract(lifted[u], lifted[it.idx[0]])));
            if (s < 0)
                lower = false;
            else if (s == 0)
                cell.push_back(u);
        }
        for (std::size_t i : it.idx) in_sub[i] = false;
        if (!lower) continue;
        std::sort(cell.begin(), cell.end());
        cells.insert(std::move(cell));
    }
    if (cells.empty())
        throw InternalError("triangulate_points: no lower-hull cells found");

    std::vector<std::vector<std::size_t>> out;
    for (const std::vector<std::size_t>& cell : cells) {
        if (cell.size() == r + 1)
            out.push_back(cell);
        else
            pulling_triangulate(coords, cell, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ibody
