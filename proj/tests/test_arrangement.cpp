#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ibody/arrangement.hpp"
#include "ibody/errors.hpp"
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

const Chamber& chamber_of(const NormalSet& ns,
                          const std::vector<Chamber>& chambers,
                          const RatVec& x) {
    LocateResult loc = locate(ns, chambers, x);
    REQUIRE(loc.chamber_id.has_value());
    return chambers[*loc.chamber_id];
}

} // namespace

TEST_CASE("normals of the cube family") {
    VPolytope c3(cube_vertices(3, -1, 1), "cube3");
    NormalSet ns = build_normals(c3);
    CHECK(ns.m() == 4);
    std::set<RatVec> expect = {rv({1, -1, -1}), rv({1, -1, 1}),
                               rv({1, 1, -1}), rv({1, 1, 1})};
    CHECK(std::set<RatVec>(ns.normals.begin(), ns.normals.end()) == expect);
    CHECK(std::is_sorted(ns.normals.begin(), ns.normals.end()));

    // The tetrahedron with alternating cube vertices spans the same normals.
    VPolytope tet({rv({1, 1, 1}), rv({1, -1, -1}), rv({-1, 1, -1}),
                   rv({-1, -1, 1})},
                  "tetra");
    CHECK(build_normals(tet).normals == ns.normals);
    CHECK(zonotope_generators(tet) == ns.normals);

    // Corner cube: the origin vertex contributes no direction.
    VPolytope corner(cube_vertices(3, 0, 2), "corner");
    CHECK(build_normals(corner).m() == 7);
    CHECK(build_normals(VPolytope(cube_vertices(4, -1, 1))).m() == 8);
    CHECK(build_normals(VPolytope(cube_vertices(5, -1, 1))).m() == 16);
}

TEST_CASE("chamber count bound") {
    CHECK(chamber_count_bound(4, 3) == 15);
    CHECK(chamber_count_bound(7, 3) == 64);
    CHECK(chamber_count_bound(8, 4) == 163);
    CHECK(chamber_count_bound(16, 5) == 6885);
    CHECK(chamber_count_bound(1, 2) == 2); // 1 + 1 (j capped at m)
}

TEST_CASE("single hyperplane arrangement") {
    NormalSet ns{{rv({1, 0})}};
    auto chambers = enumerate_chambers(ns);
    REQUIRE(chambers.size() == 2);
    CHECK(chambers[0].signs == std::vector<int>{+1});
    CHECK(chambers[1].signs == std::vector<int>{-1});
    CHECK(dot(ns.normals[0], chambers[0].witness) > 0);
    CHECK(dot(ns.normals[0], chambers[1].witness) < 0);
    // Both boundary rays of the halfplane are kept.
    CHECK(chambers[0].rays == std::vector<RatVec>{rv({0, -1}), rv({0, 1})});
    CHECK(chambers[1].rays == std::vector<RatVec>{rv({0, -1}), rv({0, 1})});

    auto adj = adjacency_graph(ns, chambers);
    REQUIRE(adj.size() == 1);
    CHECK(adj[0] == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("cube arrangement: 14 chambers with the documented rays") {
    VPolytope c3(cube_vertices(3, -1, 1), "cube3");
    NormalSet ns = build_normals(c3);
    auto chambers = enumerate_chambers(ns);
    REQUIRE(chambers.size() == 14);

    for (const Chamber& c : chambers) {
        REQUIRE(c.signs.size() == 4);
        // Witness strictly on the declared side of every hyperplane.
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(sign_of(dot(ns.normals[i], c.witness)) == c.signs[i]);
        // Rays satisfy all constraints non-strictly and lie on >= 2
        // independent hyperplanes (they came from rank-2 kernels).
        for (const RatVec& r : c.rays) {
            std::size_t zeros = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                int s = sign_of(dot(ns.normals[i], r));
                CHECK(s * c.signs[i] >= 0);
                if (s == 0) ++zeros;
            }
            CHECK(zeros >= 2);
        }
    }

    const Chamber& c1 = chamber_of(ns, chambers, rv({0, 0, 1}));
    std::vector<RatVec> expect1 = {rv({-1, 0, 1}), rv({0, -1, 1}),
                                   rv({0, 1, 1}), rv({1, 0, 1})};
    CHECK(c1.rays == expect1);

    const Chamber& c2 = chamber_of(ns, chambers, rv({-1, 1, 1}));
    std::vector<RatVec> expect2 = {rv({-1, 0, 1}), rv({-1, 1, 0}),
                                   rv({0, 1, 1})};
    CHECK(c2.rays == expect2);

    // Ray counts: 6 axis chambers with 4 rays, 8 corner chambers with 3.
    std::map<std::size_t, int> ray_hist;
    for (const Chamber& c : chambers) ray_hist[c.rays.size()]++;
    CHECK(ray_hist == std::map<std::size_t, int>{{3, 8}, {4, 6}});

    // Antipodal pairing: sign vectors negate, witnesses negate, ids cover.
    for (const Chamber& c : chambers) {
        std::vector<int> neg(4);
        for (std::size_t i = 0; i < 4; ++i) neg[i] = -c.signs[i];
        auto match = std::find_if(chambers.begin(), chambers.end(),
                                  [&](const Chamber& o) {
                                      return o.signs == neg;
                                  });
        REQUIRE(match != chambers.end());
        RatVec negated(3);
        for (std::size_t j = 0; j < 3; ++j) negated[j] = -c.witness[j];
        CHECK(match->witness == negated);
    }

    // Same normal set (tetrahedron) gives the identical chamber list.
    VPolytope tet({rv({1, 1, 1}), rv({1, -1, -1}), rv({-1, 1, -1}),
                   rv({-1, -1, 1})},
                  "tetra");
    auto chambers_tet = enumerate_chambers(build_normals(tet));
    REQUIRE(chambers_tet.size() == 14);
    for (std::size_t i = 0; i < 14; ++i) {
        CHECK(chambers_tet[i].signs == chambers[i].signs);
        CHECK(chambers_tet[i].witness == chambers[i].witness);
        CHECK(chambers_tet[i].rays == chambers[i].rays);
    }
}

TEST_CASE("cube arrangement adjacency is the rhombic-dodecahedral fan") {
    VPolytope c3(cube_vertices(3, -1, 1), "cube3");
    NormalSet ns = build_normals(c3);
    auto chambers = enumerate_chambers(ns);
    auto adj = adjacency_graph(ns, chambers);
    CHECK(adj.size() == 24);

    std::map<std::size_t, std::size_t> degree;
    for (auto [a, b] : adj) {
        degree[a]++;
        degree[b]++;
    }
    for (const Chamber& c : chambers) {
        // 4-ray chambers have 4 neighbors, 3-ray chambers have 3.
        CHECK(degree[c.id] == c.rays.size());
    }

    // Adjacent chambers share exactly d-1 = 2 rays.
    for (auto [a, b] : adj) {
        std::vector<RatVec> shared;
        std::set_intersection(chambers[a].rays.begin(), chambers[a].rays.end(),
                              chambers[b].rays.begin(), chambers[b].rays.end(),
                              std::back_inserter(shared));
        CHECK(shared.size() == 2);
        // And they differ in exactly one sign.
        std::size_t diff = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (chambers[a].signs[i] != chambers[b].signs[i]) ++diff;
        CHECK(diff == 1);
    }

    // Antipodal chambers are never adjacent for m > 1.
    for (auto [a, b] : adj) {
        std::size_t diff = 0;
        for (std::size_t i = 0; i < 4; ++i)
            if (chambers[a].signs[i] != chambers[b].signs[i]) ++diff;
        CHECK(diff != 4);
    }
}

TEST_CASE("corner cube and 4-cube chamber counts") {
    VPolytope corner(cube_vertices(3, 0, 2), "corner");
    auto ch = enumerate_chambers(build_normals(corner));
    CHECK(ch.size() == 32);

    VPolytope c4(cube_vertices(4, -1, 1), "cube4");
    auto ch4 = enumerate_chambers(build_normals(c4));
    CHECK(ch4.size() == 104);
}

TEST_CASE("locate: chambers, walls, and validation") {
    VPolytope c3(cube_vertices(3, -1, 1), "cube3");
    NormalSet ns = build_normals(c3);
    auto chambers = enumerate_chambers(ns);

    LocateResult a = locate(ns, chambers, rv({0, 0, 1}));
    CHECK(a.chamber_id.has_value());
    CHECK_FALSE(a.on_wall());

    // (1,1,1) is proportional to a normal but orthogonal to none.
    LocateResult b = locate(ns, chambers, rv({1, 1, 1}));
    CHECK(b.chamber_id.has_value());

    // (1,-1,0) is orthogonal to (1,1,1) and (1,1,-1) — wall point.
    LocateResult w = locate(ns, chambers, rv({1, -1, 0}));
    CHECK_FALSE(w.chamber_id.has_value());
    REQUIRE(w.on_wall());
    std::set<RatVec> wall_normals;
    for (std::size_t i : w.on_walls) wall_normals.insert(ns.normals[i]);
    CHECK(wall_normals ==
          std::set<RatVec>{rv({1, 1, -1}), rv({1, 1, 1})});

    CHECK_THROWS_AS(locate(ns, chambers, rv({0, 0, 0})), ValidationError);
    CHECK_THROWS_AS(locate(ns, chambers, rv({1, 0})), ValidationError);

    // Scaling invariance: locate depends only on the ray through x.
    RatVec scaled = rv({0, 0, 7});
    CHECK(*locate(ns, chambers, scaled).chamber_id == *a.chamber_id);
}

TEST_CASE("random directions partition into chambers and walls") {
    VPolytope corner(cube_vertices(3, 0, 2), "corner");
    NormalSet ns = build_normals(corner);
    auto chambers = enumerate_chambers(ns);
    REQUIRE(chambers.size() == 32);

    Rng rng(0x1b0d1e5u);
    std::size_t in_chamber = 0, on_wall = 0;
    for (int i = 0; i < 10000; ++i) {
        RatVec x(3);
        bool zero = true;
        for (int j = 0; j < 3; ++j) {
            x[j] = Rat(rng.range(-20, 20));
            if (x[j] != 0) zero = false;
        }
        if (zero) continue;
        LocateResult loc = locate(ns, chambers, x);
        if (loc.on_wall()) {
            ++on_wall;
            CHECK_FALSE(loc.chamber_id.has_value());
        } else {
            ++in_chamber;
            // The assignment is exactly sign-vector agreement.
            const Chamber& c = chambers[*loc.chamber_id];
            for (std::size_t k = 0; k < ns.m(); ++k)
                CHECK(sign_of(dot(ns.normals[k], x)) == c.signs[k]);
        }
    }
    CHECK(in_chamber + on_wall > 9000);
    CHECK(in_chamber > 0);
    CHECK(on_wall > 0);
}

TEST_CASE("chamber_rays standalone matches the enumerated rays") {
    VPolytope c3(cube_vertices(3, -1, 1), "cube3");
    NormalSet ns = build_normals(c3);
    auto chambers = enumerate_chambers(ns);
    for (const Chamber& c : chambers)
        CHECK(chamber_rays(ns, c) == c.rays);
}
