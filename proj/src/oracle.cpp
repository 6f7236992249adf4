#include "ibody/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "ibody/errors.hpp"
#include "ibody/rng.hpp"

namespace ibody {

namespace {

// ---- Section geometry, recomputed from scratch ----------------------------

struct ConcreteSection {
    // One concrete crossing point per strictly crossed edge, keyed by edge
    // index, plus the polytope vertices lying exactly on the hyperplane.
    std::vector<std::pair<std::size_t, RatVec>> crossings;
    std::vector<std::size_t> on_plane_vertices;
};

ConcreteSection concrete_section(const VPolytope& p, const RatVec& x,
                                 bool reject_walls) {
    if (x.size() != p.dimension())
        throw ValidationError("direction dimension mismatch");
    if (is_zero_vec(x)) throw ValidationError("direction must be nonzero");

    std::vector<Rat> height(p.vertices().size());
    ConcreteSection out;
    for (std::size_t i = 0; i < p.vertices().size(); ++i) {
        height[i] = dot(p.vertices()[i], x);
        if (height[i] == 0) {
            if (reject_walls && !is_zero_vec(p.vertices()[i]))
                throw ValidationError(
                    "direction lies on an arrangement wall");
            out.on_plane_vertices.push_back(i);
        }
    }
    for (std::size_t e = 0; e < p.edges().size(); ++e) {
        const Rat& ha = height[p.edges()[e].a];
        const Rat& hb = height[p.edges()[e].b];
        if (!(ha < 0 && hb > 0) && !(ha > 0 && hb < 0)) continue;
        // v = lambda*a + (1-lambda)*b with lambda = <b,x> / <b-a,x>.
        Rat lambda = hb / (hb - ha);
        const RatVec& a = p.vertices()[p.edges()[e].a];
        const RatVec& b = p.vertices()[p.edges()[e].b];
        RatVec v(a.size());
        for (std::size_t j = 0; j < a.size(); ++j)
            v[j] = lambda * a[j] + (1 - lambda) * b[j];
        out.crossings.emplace_back(e, std::move(v));
    }
    return out;
}

// ---- Stand-alone lifted-lower-hull triangulation --------------------------
// Written independently of the main subdivision code: chart via pivot-column
// projection, recursive subset enumeration, and a local dense solver. A
// non-simplicial hull cell is retriangulated on its own with the next lift
// base — any triangulation of a cell has the same total volume.

// Indices of a maximal set of linearly independent columns of m.
std::vector<std::size_t> pivot_columns(RatMat m) {
    std::vector<std::size_t> cols;
    if (m.empty()) return cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m[0].size() && row < m.size(); ++col) {
        std::size_t found = row;
        while (found < m.size() && m[found][col] == 0) ++found;
        if (found == m.size()) continue;
        std::swap(m[found], m[row]);
        for (std::size_t i = row + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[row][col];
            for (std::size_t j = col; j < m[0].size(); ++j)
                m[i][j] -= f * m[row][j];
        }
        cols.push_back(col);
        ++row;
    }
    return cols;
}

// Gaussian elimination with partial (first-nonzero) pivoting; empty result
// means singular.
std::optional<RatVec> dense_solve(RatMat m, RatVec rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m[i][col] == 0) continue;
            Rat f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
            rhs[i] -= f * rhs[col];
        }
    }
    RatVec sol(n);
    for (std::size_t i = 0; i < n; ++i) sol[i] = rhs[i] / m[i][i];
    return sol;
}

void enumerate_subsets(std::size_t n, std::size_t k,
                       std::vector<std::size_t>& cur,
                       const std::function<void(
                           const std::vector<std::size_t>&)>& visit) {
    if (cur.size() == k) {
        visit(cur);
        return;
    }
    std::size_t start = cur.empty() ? 0 : cur.back() + 1;
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        enumerate_subsets(n, k, cur, visit);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> hull_triangulate(
    const std::vector<RatVec>& pts, unsigned base, bool reverse_order);

// Triangulates one lower-hull cell (given by indices into pts) by lifting it
// again with a different base, then maps local indices back.
void emit_cell(const std::vector<RatVec>& pts,
               const std::vector<std::size_t>& cell, std::size_t simplex_size,
               unsigned base, bool reverse_order,
               std::vector<std::vector<std::size_t>>& out) {
    if (cell.size() == simplex_size) {
        out.push_back(cell);
        return;
    }
    if (base > 50)
        throw InternalError("cell refuses to become simplicial");
    std::vector<RatVec> sub;
    sub.reserve(cell.size());
    for (std::size_t i : cell) sub.push_back(pts[i]);
    for (auto& local : hull_triangulate(sub, base + 1, reverse_order)) {
        std::vector<std::size_t> mapped;
        mapped.reserve(local.size());
        for (std::size_t i : local) mapped.push_back(cell[i]);
        std::sort(mapped.begin(), mapped.end());
        out.push_back(std::move(mapped));
    }
}

std::vector<std::vector<std::size_t>> hull_triangulate(
    const std::vector<RatVec>& pts, unsigned base, bool reverse_order) {
    const std::size_t n = pts.size();
    if (n == 0) return {};
    if (n == 1) return {{0}};

    // Chart: restrict to a set of coordinates on which the affine hull
    // projects injectively.
    RatMat diffs;
    for (std::size_t i = 1; i < n; ++i) {
        RatVec row(pts[i].size());
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = pts[i][j] - pts[0][j];
        diffs.push_back(std::move(row));
    }
    std::vector<std::size_t> cols = pivot_columns(diffs);
    const std::size_t r = cols.size();
    std::vector<RatVec> chart(n, RatVec(r));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r; ++j) chart[i][j] = pts[i][cols[j]];

    std::vector<std::vector<std::size_t>> out;
    if (n == r + 1) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        out.push_back(all);
        return out;
    }

    // Heights base^j assigned along the (reverse-)sorted chart order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return reverse_order ? chart[b] < chart[a] : chart[a] < chart[b];
    });
    std::vector<Rat> lift(n);
    Rat h(1);
    for (std::size_t j = 0; j < n; ++j) {
        lift[order[j]] = h;
        h *= base;
    }

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::size_t> cur;
    enumerate_subsets(n, r + 1, cur, [&](const std::vector<std::size_t>& s) {
        // Affine function through the lifted subset: h(c) = <alpha, c> + beta.
        RatMat m;
        RatVec rhs;
        for (std::size_t i : s) {
            RatVec row = chart[i];
            row.push_back(1);
            m.push_back(std::move(row));
            rhs.push_back(lift[i]);
        }
        auto fn = dense_solve(std::move(m), std::move(rhs));
        if (!fn) return;
        std::vector<std::size_t> cell;
        bool lower = true;
        for (std::size_t i = 0; i < n && lower; ++i) {
            Rat predicted = (*fn)[r];
            for (std::size_t j = 0; j < r; ++j)
                predicted += (*fn)[j] * chart[i][j];
            if (lift[i] < predicted)
                lower = false;
            else if (lift[i] == predicted)
                cell.push_back(i);
        }
        if (!lower) return;
        if (!seen.insert(cell).second) return;
        emit_cell(pts, cell, r + 1, base, reverse_order, out);
    });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) throw InternalError("lifted hull produced no cells");
    return out;
}

} // namespace

Rat section_volume_scaled(const VPolytope& p, const RatVec& x,
                          unsigned lift_base, bool reverse_order) {
    if (lift_base < 2) throw ValidationError("lift base must be at least 2");
    const std::size_t d = p.dimension();
    ConcreteSection section = concrete_section(p, x, /*reject_walls=*/true);

    Rat fact(1);
    for (std::size_t i = 2; i < d; ++i) fact *= Rat(i);

    Rat total(0);
    for (const HFacet& facet : p.facets()) {
        int fsign = sign_of(facet.offset);
        if (fsign == 0) continue; // cone from the origin is degenerate
        std::vector<RatVec> group;
        for (const auto& [e, v] : section.crossings) {
            const Edge& edge = p.edges()[e];
            if (std::binary_search(facet.vertex_indices.begin(),
                                   facet.vertex_indices.end(), edge.a) &&
                std::binary_search(facet.vertex_indices.begin(),
                                   facet.vertex_indices.end(), edge.b))
                group.push_back(v);
        }
        if (group.size() < d - 1) continue;
        for (const auto& cell :
             hull_triangulate(group, lift_base, reverse_order)) {
            if (cell.size() != d - 1)
                throw InternalError("section cell has wrong size");
            RatMat m;
            for (std::size_t i : cell) m.push_back(group[i]);
            m.push_back(x);
            Rat dt = det(m);
            total += Rat(fsign) * (dt < 0 ? -dt : dt) / fact;
        }
    }
    return total;
}

bool lemma31_check(const VPolytope& p, const RatVec& apex) {
    return p.signed_pyramid_volume(apex) == p.volume();
}

bool rotate2d_check(const IntersectionBody& body, std::uint64_t seed,
                    int count) {
    const VPolytope& p = body.polytope();
    if (p.dimension() != 2)
        throw ValidationError("rotation law is specific to dimension 2");
    std::set<RatVec> verts(p.vertices().begin(), p.vertices().end());
    for (const RatVec& v : p.vertices()) {
        RatVec neg = {-v[0], -v[1]};
        if (!verts.count(neg))
            throw ValidationError("polygon must be centrally symmetric");
    }
    Rat factor =
        body.mode() == NormalizationMode::TrueVolume ? Rat(2) : Rat(1);

    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        RatVec x = {Rat(rng.range(-19, 19), 1 + rng.range(0, 6)),
                    Rat(rng.range(-19, 19), 1 + rng.range(0, 6))};
        if (x[0] == 0 && x[1] == 0) continue;
        RatVec rx = {-x[1], x[0]};
        // Radial function of the polygon itself, straight from its facets.
        Rat best(0);
        bool have = false;
        for (const HFacet& f : p.facets()) {
            Rat denom = dot(f.normal, rx);
            if (denom <= 0) continue;
            Rat cand = f.offset / denom;
            if (!have || cand < best) {
                best = cand;
                have = true;
            }
        }
        if (!have) return false;
        RadialValue rho = body.evaluate_radial(x);
        if (rho.is_infinite || rho.value != factor * best) return false;
    }
    return true;
}

MonteCarloEstimate montecarlo_section_volume(const VPolytope& p,
                                             const RatVec& x, std::size_t n,
                                             std::uint64_t seed) {
    if (n == 0) throw ValidationError("sample count must be positive");
    const std::size_t d = p.dimension();
    ConcreteSection section = concrete_section(p, x, /*reject_walls=*/false);

    // All section vertices: strict crossings plus on-plane polytope vertices.
    std::vector<RatVec> pts;
    for (auto& [e, v] : section.crossings) pts.push_back(v);
    for (std::size_t i : section.on_plane_vertices)
        pts.push_back(p.vertices()[i]);
    if (pts.size() < d) return {0.0, 0.0, 0, n}; // measure-zero section

    std::vector<RatVec> basis = kernel_basis({x});
    if (basis.size() != d - 1) throw InternalError("hyperplane basis failed");

    // Coordinates of a point y in the basis: solve Gram * c = B y.
    RatMat gram(d - 1, RatVec(d - 1));
    for (std::size_t i = 0; i < d - 1; ++i)
        for (std::size_t j = 0; j < d - 1; ++j)
            gram[i][j] = dot(basis[i], basis[j]);
    std::vector<double> lo(d - 1), hi(d - 1);
    bool first = true;
    for (const RatVec& y : pts) {
        RatVec rhs(d - 1);
        for (std::size_t i = 0; i < d - 1; ++i) rhs[i] = dot(basis[i], y);
        auto c = solve(gram, rhs);
        if (!c) throw InternalError("Gram matrix is singular");
        for (std::size_t i = 0; i < d - 1; ++i) {
            double ci = (*c)[i].convert_to<double>();
            if (first || ci < lo[i]) lo[i] = ci;
            if (first || ci > hi[i]) hi[i] = ci;
        }
        first = false;
    }

    // Box volume in the ambient metric: coordinate volume times the volume
    // distortion sqrt(det Gram) of the basis parallelepiped.
    double box = std::sqrt(det(gram).convert_to<double>());
    for (std::size_t i = 0; i < d - 1; ++i) box *= hi[i] - lo[i];
    if (box == 0.0) return {0.0, 0.0, 0, n};

    std::vector<std::vector<double>> bd(d - 1, std::vector<double>(d));
    for (std::size_t i = 0; i < d - 1; ++i)
        for (std::size_t j = 0; j < d; ++j)
            bd[i][j] = basis[i][j].convert_to<double>();
    struct FacetD {
        std::vector<double> normal;
        double offset;
    };
    std::vector<FacetD> facets;
    for (const HFacet& f : p.facets()) {
        FacetD fd;
        fd.offset = f.offset.convert_to<double>();
        for (const Rat& c : f.normal)
            fd.normal.push_back(c.convert_to<double>());
        facets.push_back(std::move(fd));
    }

    std::size_t hits = 0;
    std::vector<double> y(d);
    std::uint64_t ctr = 0;
    constexpr double inv64 = 1.0 / 18446744073709551616.0; // 2^-64
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(y.begin(), y.end(), 0.0);
        for (std::size_t i = 0; i < d - 1; ++i) {
            double u = static_cast<double>(counter_rng(seed, ctr++)) * inv64;
            double ci = lo[i] + u * (hi[i] - lo[i]);
            for (std::size_t j = 0; j < d; ++j) y[j] += ci * bd[i][j];
        }
        bool inside = true;
        for (const FacetD& f : facets) {
            double lhs = 0;
            for (std::size_t j = 0; j < d; ++j) lhs += f.normal[j] * y[j];
            if (lhs > f.offset) {
                inside = false;
                break;
            }
        }
        if (inside) ++hits;
    }

    double phat = static_cast<double>(hits) / static_cast<double>(n);
    return {box * phat,
            box * std::sqrt(phat * (1.0 - phat) / static_cast<double>(n)),
            hits, n};
}

} // namespace ibody
