#include "ibody/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ibody/errors.hpp"
#include "ibody/triangulate.hpp"

namespace ibody {

namespace {

RatVec subtract(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
    return out;
}

struct SubsetIter {
    std::size_t n, k;
    std::vector<std::size_t> idx;
    bool done = false;

    SubsetIter(std::size_t n_, std::size_t k_) : n(n_), k(k_) {
        if (k > n || k == 0) { done = true; return; }
        idx.resize(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    }
    void advance() {
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

// |det| of the d x d matrix with rows (pts[i] - apex).
Rat simplex_pyramid_det(const std::vector<const RatVec*>& pts,
                        const RatVec& apex) {
    RatMat m;
    m.reserve(pts.size());
    for (const RatVec* p : pts) m.push_back(subtract(*p, apex));
    Rat val = det(m);
    if (val < 0) val = -val;
    return val;
}

Rat factorial(std::size_t n) {
    Rat f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= Rat(i);
    return f;
}

} // namespace

VPolytope::VPolytope(std::vector<RatVec> vertices, std::string name)
    : name_(std::move(name)), vertices_(std::move(vertices)) {
    if (vertices_.empty())
        throw ValidationError("polytope: empty vertex list");
    dim_ = vertices_[0].size();
    if (dim_ < 2)
        throw ValidationError("polytope: ambient dimension must be at least 2");
    for (const RatVec& v : vertices_)
        if (v.size() != dim_)
            throw ValidationError("polytope: inconsistent vertex dimensions");
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            if (vertices_[i] == vertices_[j])
                throw ValidationError("polytope: duplicate vertices");
    if (vertices_.size() < dim_ + 1)
        throw ValidationError("polytope: not full-dimensional");
    std::vector<RatVec> coords = affine_coordinates(vertices_);
    if (coords[0].size() != dim_)
        throw ValidationError("polytope: not full-dimensional");

    compute_facets();

    // Every input point must be a vertex: the outer normals of the facets it
    // lies on must span the full space, otherwise the point sits inside a
    // face of positive dimension (or in the interior) and is redundant.
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        RatMat active;
        for (const HFacet& f : facets_)
            if (dot(f.normal, vertices_[i]) == f.offset)
                active.push_back(f.normal);
        bool is_vertex = false;
        if (active.size() >= dim_) {
            std::vector<RatVec> kern = kernel_basis(active);
            is_vertex = kern.empty();
        }
        if (!is_vertex)
            throw ValidationError(
                "polytope: input point " + std::to_string(i) +
                " is not a vertex of the convex hull");
    }

    compute_edges();
}

void VPolytope::compute_facets() {
    const std::size_t n = vertices_.size();
    const std::size_t d = dim_;
    std::map<std::pair<RatVec, Rat>, std::vector<std::size_t>> found;

    for (SubsetIter it(n, d); !it.done; it.advance()) {
        RatMat diffs;
        diffs.reserve(d - 1);
        for (std::size_t i = 1; i < d; ++i)
            diffs.push_back(
                subtract(vertices_[it.idx[i]], vertices_[it.idx[0]]));
        std::vector<RatVec> kern = kernel_basis(diffs);
        if (kern.size() != 1) continue; // affinely dependent subset
        RatVec nu = kern[0];
        Rat offset = dot(nu, vertices_[it.idx[0]]);
        int side = 0;
        bool supporting = true;
        for (std::size_t u = 0; u < n && supporting; ++u) {
            int s = sign_of(dot(nu, vertices_[u]) - offset);
            if (s == 0) continue;
            if (side == 0)
                side = s;
            else if (s != side)
                supporting = false;
        }
        if (!supporting || side == 0) continue;
        if (side > 0) { // make nu the outer normal
            for (Rat& e : nu) e = -e;
            offset = -offset;
        }
        auto key = std::make_pair(std::move(nu), std::move(offset));
        if (found.count(key)) continue;
        std::vector<std::size_t> on_facet;
        for (std::size_t u = 0; u < n; ++u)
            if (dot(key.first, vertices_[u]) == key.second)
                on_facet.push_back(u);
        found.emplace(std::move(key), std::move(on_facet));
    }

    if (found.empty())
        throw ValidationError("polytope: degenerate input, no facets found");
    facets_.clear();
    facets_.reserve(found.size());
    for (auto& [key, idxs] : found)
        facets_.push_back(HFacet{key.first, key.second, std::move(idxs)});
}

void VPolytope::compute_edges() {
    const std::size_t n = vertices_.size();
    // Facet incidence per vertex, as sorted facet-index lists.
    std::vector<std::vector<std::size_t>> vert_facets(n);
    for (std::size_t f = 0; f < facets_.size(); ++f)
        for (std::size_t v : facets_[f].vertex_indices)
            vert_facets[v].push_back(f);

    edges_.clear();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<std::size_t> common;
            std::set_intersection(vert_facets[i].begin(), vert_facets[i].end(),
                                  vert_facets[j].begin(), vert_facets[j].end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            // The face generated by {i, j} is an edge exactly when no third
            // vertex lies on every facet containing both endpoints.
            bool is_edge = true;
            for (std::size_t u = 0; u < n && is_edge; ++u) {
                if (u == i || u == j) continue;
                bool on_all = true;
                for (std::size_t f : common) {
                    const auto& vi = facets_[f].vertex_indices;
                    if (!std::binary_search(vi.begin(), vi.end(), u)) {
                        on_all = false;
                        break;
                    }
                }
                if (on_all) is_edge = false;
            }
            if (is_edge) edges_.push_back(Edge{i, j});
        }
    }
}

OriginClassification VPolytope::classify_origin() const {
    OriginClassification out;
    bool outside = false, on_boundary = false;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
        int s = sign_of(facets_[f].offset);
        if (s < 0) outside = true;
        if (s == 0) {
            on_boundary = true;
            out.facets_through_origin.push_back(f);
        }
    }
    if (outside)
        out.location = OriginLocation::Exterior;
    else if (on_boundary)
        out.location = OriginLocation::Boundary;
    else
        out.location = OriginLocation::Interior;

    RatVec zero(dim_, Rat(0));
    out.origin_is_vertex =
        std::find(vertices_.begin(), vertices_.end(), zero) != vertices_.end();
    return out;
}

Rat VPolytope::facet_pyramid_volume(const HFacet& facet,
                                    const RatVec& apex) const {
    // Triangulate the facet's vertex set, listed by descending vertex index,
    // lifting position i to height 3^i.
    std::vector<std::size_t> order(facet.vertex_indices.rbegin(),
                                   facet.vertex_indices.rend());
    std::vector<RatVec> pts;
    pts.reserve(order.size());
    for (std::size_t v : order) pts.push_back(vertices_[v]);
    std::vector<std::size_t> exps(pts.size());
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = i;
    auto simplices = triangulate_points(pts, 3, exps);

    Rat total = 0;
    for (const std::vector<std::size_t>& s : simplices) {
        if (s.size() != dim_)
            throw InternalError("facet triangulation produced a cell of "
                                "unexpected dimension");
        std::vector<const RatVec*> rows;
        rows.reserve(dim_);
        for (std::size_t i : s) rows.push_back(&pts[i]);
        total += simplex_pyramid_det(rows, apex);
    }
    return total / factorial(dim_);
}

Rat VPolytope::volume() const {
    RatVec bary(dim_, Rat(0));
    for (const RatVec& v : vertices_)
        for (std::size_t j = 0; j < dim_; ++j) bary[j] += v[j];
    for (Rat& e : bary) e /= Rat(vertices_.size());

    Rat total = 0;
    for (const HFacet& f : facets_) total += facet_pyramid_volume(f, bary);
    return total;
}

Rat VPolytope::signed_pyramid_volume(const RatVec& apex) const {
    if (apex.size() != dim_)
        throw ValidationError("signed_pyramid_volume: apex dimension mismatch");
    bool strictly_outside = false;
    for (const HFacet& f : facets_)
        if (dot(f.normal, apex) > f.offset) strictly_outside = true;
    if (!strictly_outside)
        throw ValidationError(
            "signed_pyramid_volume: apex must be strictly outside");

    Rat total = 0;
    for (const HFacet& f : facets_) {
        int s = sign_of(f.offset - dot(f.normal, apex));
        if (s == 0) continue;
        total += Rat(s) * facet_pyramid_volume(f, apex);
    }
    return total;
}

} // namespace ibody
