#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ibody/linalg.hpp"

namespace ibody {

// One facet-defining inequality <normal, x> <= offset. The normal is an
// outer normal scaled to coprime integers with first nonzero entry positive
// times the sign that makes it outer; vertex_indices lists the vertices on
// the facet, sorted ascending.
struct HFacet {
    RatVec normal;
    Rat offset;
    std::vector<std::size_t> vertex_indices;
};

// Edge of the polytope as a sorted vertex-index pair.
struct Edge {
    std::size_t a = 0;
    std::size_t b = 0;
};

enum class OriginLocation { Interior, Boundary, Exterior };

struct OriginClassification {
    OriginLocation location = OriginLocation::Interior;
    bool origin_is_vertex = false;
    // Indices of facets whose affine span passes through the origin.
    std::vector<std::size_t> facets_through_origin;
};

// Full-dimensional polytope given by the exact list of its vertices.
// Construction validates the input: every point must be a vertex of the
// convex hull (duplicates or redundant interior/face points are rejected),
// and the hull must be full-dimensional. Facets and edges are computed
// eagerly so accessors are cheap and deterministic.
class VPolytope {
public:
    explicit VPolytope(std::vector<RatVec> vertices, std::string name = "");

    std::size_t dimension() const { return dim_; }
    const std::string& name() const { return name_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    const std::vector<HFacet>& facets() const { return facets_; }
    const std::vector<Edge>& edges() const { return edges_; }

    // (number of vertices, number of edges)
    std::pair<std::size_t, std::size_t> f01() const {
        return {vertices_.size(), edges_.size()};
    }

    OriginClassification classify_origin() const;

    // Exact d-dimensional volume via pyramids from the vertex barycenter
    // over triangulated facets.
    Rat volume() const;

    // Signed decomposition of the volume from an exterior apex: each facet
    // pyramid enters with sign +1 when the apex is on the inner side of the
    // facet hyperplane, -1 on the outer side, 0 (skipped) on the hyperplane.
    // Throws unless the apex is strictly outside the polytope.
    Rat signed_pyramid_volume(const RatVec& apex) const;

private:
    std::size_t dim_ = 0;
    std::string name_;
    std::vector<RatVec> vertices_;
    std::vector<HFacet> facets_;
    std::vector<Edge> edges_;

    void compute_facets();
    void compute_edges();
    Rat facet_pyramid_volume(const HFacet& facet, const RatVec& apex) const;
};

} // namespace ibody
