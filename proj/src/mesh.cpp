#include <algorithm>
#include <map>

#include "ibody/errors.hpp"
#include "ibody/intersection_body.hpp"

namespace ibody {

namespace {

// Exact counterclockwise-angle comparison of two nonzero 2d vectors around
// the origin, starting from the positive x axis.
bool angle_less(const std::pair<Rat, Rat>& a, const std::pair<Rat, Rat>& b) {
    auto half = [](const std::pair<Rat, Rat>& v) {
        // 0: upper half plane (including positive x axis), 1: lower.
        return (v.second > 0 || (v.second == 0 && v.first > 0)) ? 0 : 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rat cross = a.first * b.second - a.second * b.first;
    return cross > 0;
}

struct DirTriangle {
    RatVec a, b, c;
};

} // namespace

BoundaryMesh IntersectionBody::mesh_boundary(unsigned refinement) const {
    if (polytope_.dimension() != 3)
        throw ValidationError("mesh_boundary: only 3-dimensional bodies "
                              "have a triangle-mesh boundary");

    BoundaryMesh mesh;
    std::map<RatVec, std::size_t> vertex_index;
    auto weld = [&](const RatVec& x) {
        auto it = vertex_index.find(x);
        if (it != vertex_index.end()) return it->second;
        std::size_t id = mesh.vertices.size();
        mesh.vertices.push_back(x);
        vertex_index.emplace(x, id);
        return id;
    };

    for (const Chamber& chamber : chambers_) {
        const ChamberPiece& piece = pieces_[chamber.id];
        if (piece.is_zero_piece) continue;
        const std::vector<RatVec>& rays = chamber.rays;
        if (rays.size() < 3)
            throw InternalError("mesh_boundary: chamber cone has fewer than "
                                "3 extreme rays");

        // A direction c with <c, r> > 0 for every ray: the witness if it
        // works, otherwise a strict-margin LP over the rays.
        RatVec c = chamber.witness;
        bool witness_ok = true;
        for (const RatVec& r : rays)
            if (!(dot(c, r) > 0)) { witness_ok = false; break; }
        if (!witness_ok) {
            std::vector<MarginRow> rows;
            rows.reserve(rays.size());
            for (const RatVec& r : rays) rows.push_back(MarginRow{r, +1});
            MarginPoint opt = max_margin_point(rows);
            if (!(opt.t > 0))
                throw InternalError("mesh_boundary: chamber cone is not "
                                    "pointed");
            c = std::move(opt.x);
        }

        // Gnomonic projection of the rays onto the plane <c, y> = 1, then an
        // exact cyclic sort around their centroid in a 2d chart of c-perp.
        std::vector<RatVec> plane_pts;
        plane_pts.reserve(rays.size());
        for (const RatVec& r : rays) {
            Rat s = dot(c, r);
            RatVec y(3);
            for (std::size_t j = 0; j < 3; ++j) y[j] = r[j] / s;
            plane_pts.push_back(std::move(y));
        }
        RatMat c_row{c};
        std::vector<RatVec> basis = kernel_basis(c_row);
        if (basis.size() != 2)
            throw InternalError("mesh_boundary: projection basis failure");
        RatVec centroid(3, Rat(0));
        for (const RatVec& y : plane_pts)
            for (std::size_t j = 0; j < 3; ++j) centroid[j] += y[j];
        for (Rat& e : centroid) e /= Rat(plane_pts.size());

        std::vector<std::pair<Rat, Rat>> coords(plane_pts.size());
        std::vector<std::size_t> order(plane_pts.size());
        for (std::size_t i = 0; i < plane_pts.size(); ++i) {
            RatVec diff(3);
            for (std::size_t j = 0; j < 3; ++j)
                diff[j] = plane_pts[i][j] - centroid[j];
            coords[i] = {dot(basis[0], diff), dot(basis[1], diff)};
            if (coords[i].first == 0 && coords[i].second == 0)
                throw InternalError("mesh_boundary: ray projects onto the "
                                    "patch centroid");
            order[i] = i;
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t i, std::size_t j) {
                      return angle_less(coords[i], coords[j]);
                  });

        // Fan triangulation of the spherical polygon, on plane points.
        std::vector<DirTriangle> tris;
        for (std::size_t i = 1; i + 1 < order.size(); ++i)
            tris.push_back(DirTriangle{plane_pts[order[0]],
                                       plane_pts[order[i]],
                                       plane_pts[order[i + 1]]});

        // Barycentric refinement: each level splits a triangle into 4 via
        // edge midpoints (taken on the projection plane, so directions stay
        // rational).
        for (unsigned level = 0; level < refinement; ++level) {
            std::vector<DirTriangle> finer;
            finer.reserve(tris.size() * 4);
            auto mid = [](const RatVec& u, const RatVec& v) {
                RatVec m(3);
                for (std::size_t j = 0; j < 3; ++j)
                    m[j] = (u[j] + v[j]) / 2;
                return m;
            };
            for (const DirTriangle& t : tris) {
                RatVec ab = mid(t.a, t.b), bc = mid(t.b, t.c),
                       ca = mid(t.c, t.a);
                finer.push_back(DirTriangle{t.a, ab, ca});
                finer.push_back(DirTriangle{ab, t.b, bc});
                finer.push_back(DirTriangle{ca, bc, t.c});
                finer.push_back(DirTriangle{ab, bc, ca});
            }
            tris = std::move(finer);
        }

        // Push every sample direction to the boundary: x* = rho(w) * w.
        // rho(w) = 0 is legitimate: where the section degenerates on a wall
        // the body pinches and its boundary passes through the origin, so
        // those samples all weld to one origin vertex (triangles that
        // collapse there are dropped below).
        auto push_out = [&](const RatVec& w) {
            RadialValue rv = evaluate_radial(w);
            if (rv.is_infinite || rv.value < 0)
                throw InternalError("mesh_boundary: sample direction has no "
                                    "boundary point");
            RatVec x(3);
            for (std::size_t j = 0; j < 3; ++j) x[j] = rv.value * w[j];
            return x;
        };
        for (const DirTriangle& t : tris) {
            std::size_t ia = weld(push_out(t.a));
            std::size_t ib = weld(push_out(t.b));
            std::size_t ic = weld(push_out(t.c));
            if (ia == ib || ib == ic || ia == ic) continue; // collapsed
            // Orient outward: positive determinant = counterclockwise seen
            // from outside a body star-shaped around the origin.
            RatMat m{mesh.vertices[ia], mesh.vertices[ib], mesh.vertices[ic]};
            if (det(m) < 0) std::swap(ib, ic);
            mesh.triangles.push_back(BoundaryMesh::Tri{{ia, ib, ic},
                                                       chamber.id});
        }
    }
    return mesh;
}

} // namespace ibody
