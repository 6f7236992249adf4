#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ibody/errors.hpp"
#include "ibody/intersection_body.hpp"
#include "ibody/rng.hpp"

using namespace ibody;

namespace {

RatVec rv(std::vector<long> xs) {
    RatVec v;
    v.reserve(xs.size());
    for (long x : xs) v.emplace_back(x);
    return v;
}

std::vector<RatVec> cube_vertices(std::size_t d, long lo, long hi) {
    std::vector<RatVec> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        RatVec v(d);
        for (std::size_t j = 0; j < d; ++j)
            v[j] = (mask >> j & 1) ? Rat(hi) : Rat(lo);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<RatVec> tetra_vertices() {
    return {rv({1, 1, 1}), rv({1, -1, -1}), rv({-1, 1, -1}), rv({-1, -1, 1})};
}

Poly parsed(const std::string& text, std::size_t nvars) {
    return parse_poly(text, nvars);
}

const ChamberPiece& piece_at(const IntersectionBody& body, const RatVec& x) {
    LocateResult loc = locate(body.normals(), body.chambers(), x);
    REQUIRE(loc.chamber_id.has_value());
    return body.pieces()[*loc.chamber_id];
}

// p(-x) as a polynomial.
Poly negate_vars(const Poly& p) {
    Poly out(p.nvars());
    for (const auto& [mono, coeff] : p.terms()) {
        unsigned deg = 0;
        for (auto e : mono) deg += e;
        out.add_term(mono, (deg % 2 == 0) ? coeff : -coeff);
    }
    return out;
}

} // namespace

TEST_CASE("symbolic vertex of a cube edge") {
    SymbolicVertex v = symbolic_vertex(rv({1, 1, -1}), rv({1, 1, 1}));
    REQUIRE(v.numerators.size() == 3);
    CHECK(v.numerators[0] == parsed("2*z", 3));
    CHECK(v.numerators[1] == parsed("2*z", 3));
    CHECK(v.numerators[2] == parsed("-2*x - 2*y", 3));
    CHECK(v.denominator == rv({0, 0, 2}));

    // <v(x), x> is identically zero: sum_k numerator_k * x_k == 0.
    Poly acc(3);
    for (std::size_t k = 0; k < 3; ++k)
        acc = acc + v.numerators[k] * Poly::variable(3, k);
    CHECK(acc.is_zero());

    CHECK_THROWS_AS(symbolic_vertex(rv({1, 2}), rv({1, 2})), ValidationError);
    CHECK_THROWS_AS(symbolic_vertex(rv({1, 2}), rv({1, 2, 3})),
                    ValidationError);
}

TEST_CASE("crossing identity holds for random edges") {
    Rng rng(7u);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t d = 2 + trial % 4;
        RatVec a(d), b(d);
        for (std::size_t j = 0; j < d; ++j) {
            a[j] = Rat(rng.range(-9, 9));
            b[j] = Rat(rng.range(-9, 9));
        }
        if (a == b) continue;
        SymbolicVertex v = symbolic_vertex(a, b);
        Poly acc(d);
        for (std::size_t k = 0; k < d; ++k)
            acc = acc + v.numerators[k] * Poly::variable(d, k);
        CHECK(acc.is_zero());
    }
}

TEST_CASE("cube sections: parallelogram and hexagon combinatorics") {
    VPolytope cube(cube_vertices(3, -1, 1), "cube3");
    NormalSet ns = build_normals(cube);
    auto chambers = enumerate_chambers(ns);

    auto sc_axis = section_combinatorics(
        cube, chambers[*locate(ns, chambers, rv({0, 0, 1})).chamber_id]);
    CHECK(sc_axis.crossed_edges.size() == 4);
    CHECK(sc_axis.section_facets.size() == 4);
    CHECK(sc_axis.cells.size() == 4);
    for (const auto& cell : sc_axis.cells) CHECK(cell.size() == 2);
    for (int s : sc_axis.cell_signs) CHECK(s == +1);
    // The crossed edges are exactly the 4 edges parallel to the z axis.
    for (std::size_t e : sc_axis.crossed_edges) {
        const Edge& edge = cube.edges()[e];
        RatVec diff(3);
        for (int j = 0; j < 3; ++j)
            diff[j] = cube.vertices()[edge.a][j] - cube.vertices()[edge.b][j];
        CHECK(diff[0] == 0);
        CHECK(diff[1] == 0);
        CHECK(diff[2] != 0);
    }

    auto sc_hex = section_combinatorics(
        cube, chambers[*locate(ns, chambers, rv({-1, 1, 1})).chamber_id]);
    CHECK(sc_hex.crossed_edges.size() == 6);
    CHECK(sc_hex.section_facets.size() == 6);
    CHECK(sc_hex.cells.size() == 6);
    for (int s : sc_hex.cell_signs) CHECK(s == +1);
}

TEST_CASE("corner cube: facets through the origin are excluded, two zero "
          "pieces") {
    VPolytope corner(cube_vertices(3, 0, 2), "corner");
    IntersectionBody body(corner, NormalizationMode::TrueVolume);
    REQUIRE(body.pieces().size() == 32);
    std::size_t zero_count = 0;
    for (const ChamberPiece& piece : body.pieces()) {
        if (piece.is_zero_piece) {
            ++zero_count;
            CHECK(piece.p_tilde.is_zero());
            CHECK(piece.q == Poly::constant(3, 1));
            CHECK(piece.degree == 0);
        }
    }
    CHECK(zero_count == 2);

    // No section facet ever lies on a facet whose hyperplane contains 0.
    for (const Chamber& c : body.chambers()) {
        auto sc = section_combinatorics(corner, c);
        for (const auto& [f, edges] : sc.section_facets)
            CHECK(corner.facets()[f].offset != 0);
    }
}

TEST_CASE("cube radial pieces in both normalizations") {
    VPolytope cube(cube_vertices(3, -1, 1), "cube3");

    IntersectionBody tv(cube, NormalizationMode::TrueVolume);
    const ChamberPiece& axis_tv = piece_at(tv, rv({0, 0, 1}));
    CHECK(axis_tv.p_tilde == parsed("4", 3));
    CHECK(axis_tv.q == parsed("z", 3));
    CHECK(axis_tv.boundary_poly == parsed("z - 4", 3));
    CHECK(axis_tv.degree == 1);

    IntersectionBody cv(cube, NormalizationMode::ConeVolume);
    const ChamberPiece& axis_cv = piece_at(cv, rv({0, 0, 1}));
    CHECK(axis_cv.p_tilde == parsed("4", 3));
    CHECK(axis_cv.q == parsed("3*z", 3));
    CHECK(axis_cv.boundary_poly == parsed("3*z - 4", 3));

    // Hexagonal chamber: cubic boundary.
    const ChamberPiece& hex_cv = piece_at(cv, rv({-1, 1, 1}));
    Poly expected = normalize(parsed("6*x*y*z - 2*x^2 - 4*x*y - 2*y^2 "
                                     "- 4*x*z + 4*y*z - 2*z^2",
                                     3))
                        .first;
    CHECK(hex_cv.boundary_poly == expected);
    CHECK(hex_cv.degree == 3);

    // Degree data: 6 linear pieces (axis chambers), 8 cubic (corner).
    DegreeReport report = tv.degree_table();
    CHECK(report.histogram ==
          std::map<std::size_t, std::size_t>{{1, 6}, {3, 8}});
    CHECK(report.global_bound == 5);
    CHECK(report.centrally_symmetric);
    CHECK(report.satisfied);
}

TEST_CASE("tetrahedron: quartic boundary piece and exact values") {
    VPolytope tet(tetra_vertices(), "tetra");
    IntersectionBody cv(tet, NormalizationMode::ConeVolume);

    const ChamberPiece& c1 = piece_at(cv, rv({0, 0, 1}));
    // 6(x+z)(x-z)(y+z)(y-z) + 4x^2 z + 4y^2 z - 4z^3, expanded and
    // content-normalized.
    Poly expected = normalize(parsed("6*x^2*y^2 - 6*x^2*z^2 - 6*y^2*z^2 "
                                     "+ 6*z^4 + 4*x^2*z + 4*y^2*z - 4*z^3",
                                     3))
                        .first;
    CHECK(c1.boundary_poly == expected);
    CHECK(c1.degree == 4);

    RadialValue v_cone = cv.evaluate_radial(rv({0, 0, 1}));
    CHECK(v_cone.value == Rat(2, 3));

    IntersectionBody tv(tet, NormalizationMode::TrueVolume);
    CHECK(tv.evaluate_radial(rv({0, 0, 1})).value == Rat(2));
    // Degrees are normalization-independent.
    CHECK(tv.degree_table().histogram == cv.degree_table().histogram);
}

TEST_CASE("evaluate_radial: homogeneity, walls, center") {
    VPolytope cube(cube_vertices(3, -1, 1), "cube3");
    IntersectionBody body(cube, NormalizationMode::TrueVolume);

    CHECK(body.evaluate_radial(rv({0, 0, 1})).value == Rat(4));
    CHECK(body.evaluate_radial(rv({0, 0, 2})).value == Rat(2));
    CHECK(body.evaluate_radial(rv({0, 0, 4})).value == Rat(1));
    CHECK(body.evaluate_radial(rv({-1, 1, 1})).value == Rat(3));

    // (1,1,0) lies on a wall; the rectangle section has area 4*sqrt(2),
    // and dividing by the norm gives exactly 4.
    LocateResult loc = locate(body.normals(), body.chambers(), rv({1, 1, 0}));
    CHECK(loc.on_wall());
    CHECK(body.evaluate_radial(rv({1, 1, 0})).value == Rat(4));

    RadialValue center = body.evaluate_radial(rv({0, 0, 0}));
    CHECK(center.is_infinite);

    CHECK_THROWS_AS(body.evaluate_radial(rv({1, 0})), ValidationError);
}

TEST_CASE("membership: inside, outside, exact boundary") {
    VPolytope cube(cube_vertices(3, -1, 1), "cube3");
    IntersectionBody body(cube, NormalizationMode::TrueVolume);

    CHECK(body.membership(rv({0, 0, 3})));
    CHECK_FALSE(body.membership(rv({0, 0, 5})));
    CHECK(body.membership(rv({0, 0, 4}))); // exactly on the boundary
    CHECK(body.membership(rv({0, 0, 0})));

    // Antipodal consistency on random points (the body is centrally
    // symmetric no matter the polytope).
    Rng rng(99u);
    for (int i = 0; i < 200; ++i) {
        RatVec x(3);
        bool zero = true;
        for (int j = 0; j < 3; ++j) {
            x[j] = Rat(rng.range(-6, 6), 1 + rng.range(0, 3));
            if (x[j] != 0) zero = false;
        }
        if (zero) continue;
        RatVec nx(3);
        for (int j = 0; j < 3; ++j) nx[j] = -x[j];
        CHECK(body.membership(x) == body.membership(nx));
    }
}

TEST_CASE("pieces of antipodal chambers match under the sign action") {
    for (auto mode : {NormalizationMode::TrueVolume,
                      NormalizationMode::ConeVolume}) {
        for (bool corner : {false, true}) {
            VPolytope poly(cube_vertices(3, corner ? 0 : -1, corner ? 2 : 1));
            IntersectionBody body(poly, mode);
            const auto& chambers = body.chambers();
            for (const Chamber& c : chambers) {
                std::vector<int> neg(c.signs.size());
                for (std::size_t i = 0; i < neg.size(); ++i)
                    neg[i] = -c.signs[i];
                auto it = std::find_if(
                    chambers.begin(), chambers.end(),
                    [&](const Chamber& o) { return o.signs == neg; });
                REQUIRE(it != chambers.end());
                const ChamberPiece& a = body.pieces()[c.id];
                const ChamberPiece& b = body.pieces()[it->id];
                CHECK(a.is_zero_piece == b.is_zero_piece);
                if (a.is_zero_piece) continue;
                CHECK(negate_vars(b.p_tilde) == a.p_tilde);
                CHECK(negate_vars(b.q) == a.q);
            }
        }
    }
}

TEST_CASE("wall continuity for a body with interior origin") {
    VPolytope cube(cube_vertices(3, -1, 1), "cube3");
    IntersectionBody body(cube, NormalizationMode::TrueVolume);
    auto adj = adjacency_graph(body.normals(), body.chambers());
    Rng rng(5150u);

    for (auto [ia, ib] : adj) {
        const Chamber& ca = body.chambers()[ia];
        const Chamber& cb = body.chambers()[ib];
        std::size_t k = 0;
        for (std::size_t i = 0; i < ca.signs.size(); ++i)
            if (ca.signs[i] != cb.signs[i]) k = i;
        const RatVec& nk = body.normals().normals[k];

        // A strict interior point of each chamber: witness plus a random
        // nonnegative combination of rays.
        auto interior_point = [&](const Chamber& c) {
            RatVec x = c.witness;
            for (const RatVec& r : c.rays) {
                Rat lambda(rng.range(0, 5), 1 + rng.range(0, 2));
                for (std::size_t j = 0; j < 3; ++j) x[j] += lambda * r[j];
            }
            return x;
        };
        RatVec pa = interior_point(ca);
        RatVec pb = interior_point(cb);
        // Exact crossing of the segment [pa, pb] with the wall.
        Rat da = dot(nk, pa), db = dot(nk, pb);
        REQUIRE(sign_of(da) * sign_of(db) == -1);
        Rat t = da / (da - db);
        RatVec wall(3);
        for (std::size_t j = 0; j < 3; ++j)
            wall[j] = pa[j] + t * (pb[j] - pa[j]);
        CHECK(dot(nk, wall) == 0);

        // Cross-multiplied equality of the two adjacent pieces at the wall.
        const ChamberPiece& fa = body.pieces()[ia];
        const ChamberPiece& fb = body.pieces()[ib];
        CHECK(fa.p_tilde.evaluate(wall) * fb.q.evaluate(wall) ==
              fb.p_tilde.evaluate(wall) * fa.q.evaluate(wall));
    }
}

TEST_CASE("square body: explicit pieces and the rotation-dilation law") {
    VPolytope square(cube_vertices(2, -1, 1), "square");
    IntersectionBody body(square, NormalizationMode::TrueVolume);
    REQUIRE(body.pieces().size() == 4);

    const ChamberPiece& px = piece_at(body, rv({1, 0}));
    CHECK(px.p_tilde == parsed("2", 2));
    CHECK(px.q == parsed("x", 2));
    CHECK(px.boundary_poly == parsed("x - 2", 2));
    for (const ChamberPiece& piece : body.pieces()) CHECK(piece.degree == 1);

    // rho_body(x) = 2 * rho_square(R x) with R a quarter turn.
    Rng rng(31u);
    for (int i = 0; i < 100; ++i) {
        RatVec x(2);
        x[0] = Rat(rng.range(-9, 9), 1 + rng.range(0, 4));
        x[1] = Rat(rng.range(-9, 9), 1 + rng.range(0, 4));
        if (x[0] == 0 && x[1] == 0) continue;
        RatVec rx = {-x[1], x[0]};
        // Radial function of the square itself from its facet inequalities.
        Rat best = -1;
        for (const HFacet& f : square.facets()) {
            Rat denom = dot(f.normal, rx);
            if (denom <= 0) continue;
            Rat cand = f.offset / denom;
            if (best < 0 || cand < best) best = cand;
        }
        REQUIRE(best > 0);
        CHECK(body.evaluate_radial(x).value == 2 * best);
    }
}

TEST_CASE("degree-one pieces sit exactly in the axis chambers") {
    for (std::size_t d : {2u, 3u}) {
        VPolytope cube(cube_vertices(d, -1, 1));
        IntersectionBody body(cube, NormalizationMode::TrueVolume);
        std::size_t linear = 0;
        for (const ChamberPiece& piece : body.pieces())
            if (!piece.is_zero_piece && piece.degree == 1) ++linear;
        CHECK(linear == 2 * d);
        Rat half_facet = boost::multiprecision::pow(Int(2), int(d) - 1);
        for (std::size_t j = 0; j < d; ++j) {
            for (int s : {1, -1}) {
                RatVec e(d, Rat(0));
                e[j] = s;
                const ChamberPiece& piece = piece_at(body, e);
                CHECK(piece.degree == 1);
                // Boundary is x_j - 2^(d-1) (resp. x_j + 2^(d-1)).
                RatVec coeff(d, Rat(0));
                coeff[j] = 1;
                Poly expect = Poly::linear_form(coeff) -
                              Poly::constant(d, Rat(s) * half_facet);
                CHECK(piece.boundary_poly == normalize(expect).first);
            }
        }
    }
}

TEST_CASE("corner cube degree table") {
    VPolytope corner(cube_vertices(3, 0, 2), "corner");
    IntersectionBody body(corner, NormalizationMode::ConeVolume);
    DegreeReport report = body.degree_table();
    // Six chambers near the +-axis directions see a tilted copy of a facet,
    // so their piece degenerates to constant/linear (boundary degree 1).
    CHECK(report.histogram ==
          std::map<std::size_t, std::size_t>{{1, 6}, {2, 18}, {3, 6}});
    CHECK_FALSE(report.centrally_symmetric);
    CHECK(report.global_bound == 10);
}

TEST_CASE("boundary summary groups equal polynomials") {
    VPolytope cube(cube_vertices(3, -1, 1), "cube3");
    IntersectionBody body(cube, NormalizationMode::TrueVolume);
    BoundarySummary summary = body.boundary_components();
    CHECK(summary.components.size() == 14);
    // 6 distinct linear walls and 8 distinct cubics.
    CHECK(summary.distinct.size() == 14);
    std::size_t covered = 0;
    for (const auto& [poly, ids] : summary.distinct) covered += ids.size();
    CHECK(covered == 14);
}

TEST_CASE("radial_function is independent of the job count") {
    VPolytope corner(cube_vertices(3, 0, 2), "corner");
    NormalSet ns = build_normals(corner);
    auto chambers = enumerate_chambers(ns);
    auto seq = radial_function(corner, ns, chambers,
                               NormalizationMode::TrueVolume, 1);
    auto par = radial_function(corner, ns, chambers,
                               NormalizationMode::TrueVolume, 4);
    REQUIRE(seq.size() == par.size());
    for (std::size_t i = 0; i < seq.size(); ++i) {
        CHECK(seq[i].p_tilde == par[i].p_tilde);
        CHECK(seq[i].q == par[i].q);
        CHECK(seq[i].boundary_poly == par[i].boundary_poly);
        CHECK(seq[i].is_zero_piece == par[i].is_zero_piece);
    }
}

TEST_CASE("boundary mesh of the cube body") {
    VPolytope cube(cube_vertices(3, -1, 1), "cube3");
    IntersectionBody body(cube, NormalizationMode::TrueVolume);

    BoundaryMesh mesh0 = body.mesh_boundary(0);
    // 6 four-ray chambers give 2 triangles each, 8 three-ray chambers one.
    CHECK(mesh0.triangles.size() == 20);
    std::set<std::size_t> groups;
    for (const auto& t : mesh0.triangles) groups.insert(t.chamber_id);
    CHECK(groups.size() == 14);

    // Every vertex lies exactly on the boundary.
    for (const RatVec& v : mesh0.vertices) {
        RadialValue rho = body.evaluate_radial(v);
        CHECK(rho.value == Rat(1));
    }

    // The axis chambers produce flat patches at |coordinate| = 4.
    LocateResult loc = locate(body.normals(), body.chambers(), rv({0, 0, 1}));
    for (const auto& t : mesh0.triangles) {
        if (t.chamber_id != *loc.chamber_id) continue;
        for (std::size_t corner : {t.v[0], t.v[1], t.v[2]})
            CHECK(mesh0.vertices[corner][2] == Rat(4));
    }

    BoundaryMesh mesh1 = body.mesh_boundary(1);
    CHECK(mesh1.triangles.size() == 80);
    for (const RatVec& v : mesh1.vertices)
        CHECK(body.evaluate_radial(v).value == Rat(1));

    // Outward orientation: every triangle's determinant is positive.
    for (const auto& t : mesh1.triangles) {
        RatMat m{mesh1.vertices[t.v[0]], mesh1.vertices[t.v[1]],
                 mesh1.vertices[t.v[2]]};
        CHECK(det(m) > 0);
    }

    VPolytope square(cube_vertices(2, -1, 1), "square");
    IntersectionBody flat(square, NormalizationMode::TrueVolume);
    CHECK_THROWS_AS(flat.mesh_boundary(0), ValidationError);
}

TEST_CASE("corner cube mesh skips the zero chambers") {
    VPolytope corner(cube_vertices(3, 0, 2), "corner");
    IntersectionBody body(corner, NormalizationMode::TrueVolume);
    BoundaryMesh mesh = body.mesh_boundary(0);
    std::set<std::size_t> groups;
    for (const auto& t : mesh.triangles) groups.insert(t.chamber_id);
    CHECK(groups.size() == 30);

    // Refinement samples wall directions where the section degenerates to
    // an edge (e.g. (0,1,1)): there rho = 0 and the boundary passes through
    // the origin, so the mesh welds those samples to one origin vertex.
    BoundaryMesh fine = body.mesh_boundary(1);
    RatVec origin(3, Rat(0));
    std::size_t origin_count = 0;
    for (const RatVec& v : fine.vertices) {
        if (v == origin) {
            ++origin_count;
        } else {
            CHECK(body.evaluate_radial(v).value == Rat(1));
        }
    }
    CHECK(origin_count == 1);
    CHECK(fine.triangles.size() > mesh.triangles.size());
}
