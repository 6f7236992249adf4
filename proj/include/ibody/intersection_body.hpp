#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ibody/arrangement.hpp"
#include "ibody/polynomial.hpp"
#include "ibody/polytope.hpp"

namespace ibody {

// TrueVolume scales the radial function so that rho(u) is the Euclidean
// (d-1)-volume of the hyperplane section at a unit direction u (validated
// against the direct-volume oracle). ConeVolume instead reports the
// d-volume of the cone over the section with unit apex height — i.e. the
// section volume divided by the ambient dimension d.
enum class NormalizationMode { TrueVolume, ConeVolume };

// Exact symbolic crossing point of the hyperplane x-perp with the segment
// [a, b]: entry k is (<b,x> a_k - <a,x> b_k) / <b - a, x>. All d entries
// share the single linear denominator form.
struct SymbolicVertex {
    std::vector<Poly> numerators; // d linear forms
    RatVec denominator;           // coefficient vector of <b - a, x>
};

// Combinatorial data of the hyperplane section over one chamber: which
// edges are crossed, how the crossing points group into section facets
// (one per polytope facet not through the origin), and the per-facet
// triangulation cells with their volume signs.
struct SectionCombinatorics {
    std::size_t chamber_id = 0;
    std::vector<std::size_t> crossed_edges; // edge indices, ascending
    // (facet index, crossed edges on that facet) for facets with at least
    // one crossed edge and nonzero offset; edge lists ascending.
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> section_facets;
    std::vector<std::vector<std::size_t>> cells; // edge-index tuples, size d-1
    std::vector<int> cell_signs;                 // sign(offset) of host facet
};

// The radial function restricted to one chamber: rho(x) = p_tilde(x)/q(x),
// with boundary_poly = normalize(q - p_tilde) cutting out the boundary of
// the body inside the chamber's cone.
struct ChamberPiece {
    std::size_t chamber_id = 0;
    Poly p_tilde;
    Poly q;
    Poly boundary_poly;
    std::size_t degree = 0;
    std::size_t crossed_edge_count = 0; // f0 of the section over this chamber
    bool is_zero_piece = false;
    NormalizationMode mode = NormalizationMode::TrueVolume;
};

struct RadialValue {
    bool is_infinite = false; // only for x = 0 inside the body
    Rat value = 0;
};

struct DegreeReport {
    std::map<std::size_t, std::size_t> histogram; // nonzero pieces only
    std::size_t global_bound = 0;   // f1 - (d-1), halved when P = -P
    bool centrally_symmetric = false;
    bool satisfied = false;
    std::vector<std::size_t> per_chamber_bound; // #crossed edges, by id
};

struct BoundaryComponent {
    std::size_t chamber_id = 0;
    Poly boundary;
    std::size_t degree = 0;
};

struct BoundarySummary {
    std::vector<BoundaryComponent> components; // nonzero pieces, by chamber
    // Distinct boundary polynomials with the sorted chamber ids sharing them.
    std::vector<std::pair<Poly, std::vector<std::size_t>>> distinct;
};

// Triangle mesh of the body's boundary (3d only): exact rational vertex
// positions with per-triangle chamber ids.
struct BoundaryMesh {
    std::vector<RatVec> vertices;
    struct Tri {
        std::size_t v[3];
        std::size_t chamber_id;
    };
    std::vector<Tri> triangles;
};

SymbolicVertex symbolic_vertex(const RatVec& a, const RatVec& b);

SectionCombinatorics section_combinatorics(const VPolytope& p,
                                           const Chamber& c);

ChamberPiece chamber_radial(const VPolytope& p, const Chamber& c,
                            const SectionCombinatorics& sc,
                            NormalizationMode mode);

// One piece per chamber in canonical id order; jobs > 1 computes chambers
// concurrently (the result is independent of scheduling).
std::vector<ChamberPiece> radial_function(const VPolytope& p,
                                          const NormalSet& ns,
                                          const std::vector<Chamber>& chambers,
                                          NormalizationMode mode,
                                          unsigned jobs = 1);

// Bundles the polytope, its arrangement, and the per-chamber radial pieces.
class IntersectionBody {
public:
    explicit IntersectionBody(VPolytope p,
                              NormalizationMode mode = NormalizationMode::TrueVolume,
                              unsigned jobs = 1);

    const VPolytope& polytope() const { return polytope_; }
    const NormalSet& normals() const { return normals_; }
    const std::vector<Chamber>& chambers() const { return chambers_; }
    const std::vector<ChamberPiece>& pieces() const { return pieces_; }
    NormalizationMode mode() const { return mode_; }

    // rho(x): piecewise rational, homogeneous of degree -1. On a wall the
    // maximum over the adjacent nonzero pieces is returned (closure
    // convention); x = 0 reports the infinite value of a star body's center.
    RadialValue evaluate_radial(const RatVec& x) const;

    // x in IP  <=>  rho(x) >= 1 (0 is always inside).
    bool membership(const RatVec& x) const;

    DegreeReport degree_table() const;
    BoundarySummary boundary_components() const;

    // d = 3 only: per-chamber spherical patches, fan-triangulated and
    // barycentrically refined `refinement` times, every sample direction w
    // pushed exactly to rho(w) * w on the boundary.
    BoundaryMesh mesh_boundary(unsigned refinement) const;

private:
    VPolytope polytope_;
    NormalizationMode mode_;
    NormalSet normals_;
    std::vector<Chamber> chambers_;
    std::vector<ChamberPiece> pieces_;
};

} // namespace ibody
