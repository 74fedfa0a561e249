#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "test_helpers.hpp"
#include "toricdef/closedform.hpp"
#include "toricdef/hilbert.hpp"
#include "toricdef/hodge.hpp"

using namespace toricdef;

namespace {

LVec random_degree(std::mt19937_64& gen, std::size_t n, long long lo, long long hi) {
    LVec r(n);
    for (auto& x : r) x = testutil::draw(gen, lo, hi);
    return r;
}

Cone dp6_cone() { return cone_over_polytope(testutil::hexagon(), 1); }

// Cone over the doubled square: Gorenstein but with non-unimodular facets,
// so every 2-face carries its own surface singularity.
Cone pyramid_cone() { return Cone(3, {{1, 1, 1}, {-1, 1, 1}, {-1, -1, 1}, {1, -1, 1}}); }

// Four extreme rays with no common pairing level.
Cone non_qgor_cone() { return Cone(3, {{0, 0, 1}, {1, 0, 2}, {1, 1, 1}, {0, 1, 2}}); }

bool is_two_face(const Cone& c, std::size_t j, std::size_t k) {
    for (const auto& f : c.faces_of_dim(2))
        if (f.ray_indices == std::vector<std::size_t>{std::min(j, k), std::max(j, k)})
            return true;
    return false;
}

}  // namespace

TEST_CASE("pairing weights clamp to the three-level scale") {
    CHECK(W(3) == 2);
    CHECK(W(2) == 2);
    CHECK(W(1) == 1);
    CHECK(W(0) == 0);
    CHECK(W(-4) == 0);
}

TEST_CASE("cross-section polyhedra record vertices and compact edges") {
    Cone c = testutil::conifold();

    SECTION("all pairings one gives the full compact square") {
        QPolyhedron q = q_polyhedron(c, {0, 0, 1});
        CHECK(q.vertex_rays == std::vector<std::size_t>{0, 1, 2, 3});
        CHECK(q.compact);
        CHECK(q.compact_edges.size() == 4);
        for (const auto& [j, k] : q.compact_edges) CHECK(is_two_face(c, j, k));
        CHECK(q.vertices[1] == std::vector<Rat>{Rat(1), Rat(0), Rat(1)});
    }
    SECTION("doubling the degree halves the vertices") {
        QPolyhedron q = q_polyhedron(c, {0, 0, 2});
        CHECK(q.compact);
        CHECK(q.vertices[1] == std::vector<Rat>{Rat(1, 2), Rat(0), Rat(1, 2)});
    }
    SECTION("sideways degree leaves one compact edge") {
        QPolyhedron q = q_polyhedron(c, {1, 0, 0});
        CHECK(q.vertex_rays == std::vector<std::size_t>{1, 2});
        CHECK_FALSE(q.compact);
        CHECK(q.compact_edges == std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}});
    }
    SECTION("negative degree empties the polyhedron") {
        QPolyhedron q = q_polyhedron(c, {0, 0, -1});
        CHECK(q.vertex_rays.empty());
        CHECK(q.compact_edges.empty());
        CHECK_FALSE(q.compact);
    }
    SECTION("degree length must match the lattice rank") {
        CHECK_THROWS_AS(q_polyhedron(c, {1, 2}), std::invalid_argument);
    }
}

TEST_CASE("chamber counts are maximal cyclic runs above one") {
    CHECK(chamber_count({2, 1, 3, 1}) == 2);
    CHECK(chamber_count({1, 0, -2}) == 0);
    CHECK(chamber_count({2, 3, 4}) == 1);
    CHECK(chamber_count({2, 2, 1, 2}) == 1);
    CHECK(chamber_count({}) == 0);

    SECTION("rotation and reflection invariance") {
        std::mt19937_64 gen(41);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t len = static_cast<std::size_t>(testutil::draw(gen, 3, 8));
            std::vector<long long> v(len);
            for (auto& x : v) x = testutil::draw(gen, -2, 4);
            std::size_t base = chamber_count(v);
            std::size_t shift = static_cast<std::size_t>(testutil::draw(gen, 1, 7)) % len;
            std::vector<long long> rot(v.begin() + shift, v.end());
            rot.insert(rot.end(), v.begin(), v.begin() + shift);
            CHECK(chamber_count(rot) == base);
            std::vector<long long> rev(v.rbegin(), v.rend());
            CHECK(chamber_count(rev) == base);
        }
    }
    SECTION("cone pairings are read in boundary order") {
        Cone c = testutil::conifold();
        CHECK(chamber_data(c, {0, 0, 1}).chambers == 0);
        CHECK(chamber_data(c, {0, 0, 2}).chambers == 1);
        CHECK(chamber_data(c, {1, 0, 1}).chambers == 1);
        auto order = cyclic_ray_order(c);
        REQUIRE(order.size() == 4);
        CHECK(order[0] == 0);
        for (std::size_t t = 0; t < 4; ++t)
            CHECK(is_two_face(c, order[t], order[(t + 1) % 4]));
    }
    SECTION("rays of the cone over the octahedron do not form a cycle") {
        Cone c = cone_over_polytope(testutil::octahedron(), 1);
        CHECK_THROWS_AS(cyclic_ray_order(c), std::domain_error);
    }
}

TEST_CASE("surface dimension counts match the chain normal form") {
    SECTION("diagonal multiples on the basic quotient chain") {
        for (long long n = 1; n <= 4; ++n) {
            for (long long l = 0; l <= n + 3; ++l) {
                std::size_t expected = (l >= 2 && l <= n + 1) ? 1 : 0;
                CHECK(surface_t1(n + 1, n, {l, l}, 2) == expected);
                CHECK(surface_t1(n + 1, n, {l, l}, 1) == expected);
            }
        }
    }
    SECTION("frozen values on the two-step chain") {
        CHECK(surface_t1(7, 3, {1, 1}, 1) == 1);
        CHECK(surface_t1(7, 3, {2, 1}, 1) == 1);
        CHECK(surface_t1(7, 3, {4, 2}, 1) == 1);
        CHECK(surface_t1(7, 3, {4, 2}, 2) == 1);
        CHECK(surface_t1(7, 3, {6, 3}, 1) == 1);
        CHECK(surface_t1(7, 3, {6, 3}, 2) == 1);
        CHECK(surface_t1(7, 3, {2, 2}, 1) == 0);
        CHECK(surface_t1(7, 3, {2, 2}, 2) == 0);
        CHECK(surface_t1(7, 3, {8, 4}, 2) == 0);
        CHECK(surface_t1(7, 3, {5, 2}, 2) == 0);
    }
    SECTION("weights beyond two vanish and weight zero is rejected") {
        CHECK(surface_t1(5, 2, {3, 1}, 3) == 0);
        CHECK(surface_t1(5, 2, {3, 1}, 7) == 0);
        CHECK_THROWS_AS(surface_t1(5, 2, {3, 1}, 0), std::invalid_argument);
    }
    SECTION("agreement with the complex cohomology") {
        std::mt19937_64 gen(57);
        for (auto [n, q] : std::vector<std::pair<long long, long long>>{
                 {5, 2}, {7, 3}, {11, 4}, {11, 7}}) {
            Cone c = testutil::surface_cone(n, q);
            HilbertBasis e = hilbert_basis(c);
            std::vector<LVec> degrees = surface_candidate_degrees(n, q);
            for (int trial = 0; trial < 40; ++trial)
                degrees.push_back(random_degree(gen, 2, -6, 8));
            for (const auto& r : degrees) {
                HodgeDims h = t_dims(c, e, Degree{r}, 1);
                CHECK(h.get(1) == surface_t1(n, q, r, 1));
                CHECK(h.get(2) == surface_t1(n, q, r, 2));
                CHECK(surface_t1(n, q, r, 3) == 0);
            }
        }
    }
}

TEST_CASE("threefold counts at isolated singularities") {
    Cone c = testutil::conifold();
    HilbertBasis e = hilbert_basis(c);

    SECTION("conifold values at the canonical degree") {
        CHECK(threefold_t1(c, e, {0, 0, 1}, 1) == 1);
        CHECK(threefold_t1(c, e, {0, 0, 1}, 2) == 1);
        CHECK(threefold_t1(c, e, {0, 0, 1}, 3) == 0);
        CHECK(threefold_t1(c, e, {0, 0, 1}, 4) == 0);
        CHECK(threefold_t1(c, {0, 0, 1}, 1) == 1);
    }
    SECTION("hexagon cone values at the canonical degree") {
        Cone h = dp6_cone();
        HilbertBasis he = hilbert_basis(h);
        CHECK(threefold_t1(h, he, {0, 0, 1}, 1) == 3);
        CHECK(threefold_t1(h, he, {0, 0, 1}, 2) == 3);
        CHECK(threefold_t1(h, he, {0, 0, 1}, 3) == 0);
    }
    SECTION("rank and isolation are enforced") {
        CHECK_THROWS_AS(threefold_t1(testutil::surface_cone(5, 2), {1, 1}, 1),
                        std::invalid_argument);
        CHECK_THROWS_WITH(threefold_t1(pyramid_cone(), {0, 0, 1}, 1),
                          "threefold_t1: singular locus is not isolated");
    }
}

TEST_CASE("planar counts agree with the complex cohomology") {
    SECTION("smooth orthant vanishes everywhere") {
        Cone c = testutil::orthant(3);
        HilbertBasis e = hilbert_basis(c);
        for (std::size_t i = 1; i <= 3; ++i) {
            CHECK(planar_t1(c, e, {1, 1, 1}, i) == 0);
            CHECK(planar_t1(c, e, {2, 1, 3}, i) == 0);
        }
    }
    SECTION("conifold box sweep") {
        Cone c = testutil::conifold();
        HilbertBasis e = hilbert_basis(c);
        for (long long x = -1; x <= 1; ++x)
            for (long long y = -1; y <= 1; ++y)
                for (long long z = -1; z <= 2; ++z) {
                    HodgeDims h = t_dims(c, e, Degree{{x, y, z}}, 1);
                    for (std::size_t i = 1; i <= 3; ++i)
                        CHECK(planar_t1(c, e, {x, y, z}, i) == h.get(i));
                }
    }
    SECTION("hexagon cone box sweep") {
        Cone c = dp6_cone();
        HilbertBasis e = hilbert_basis(c);
        for (long long x = -1; x <= 1; ++x)
            for (long long y = -1; y <= 1; ++y)
                for (long long z = 0; z <= 2; ++z) {
                    HodgeDims h = t_dims(c, e, Degree{{x, y, z}}, 1);
                    for (std::size_t i = 1; i <= 3; ++i)
                        CHECK(planar_t1(c, e, {x, y, z}, i) == h.get(i));
                }
    }
    SECTION("singular edges feed the edge correction") {
        Cone c = pyramid_cone();
        HilbertBasis e = hilbert_basis(c);
        for (long long x = -1; x <= 1; ++x)
            for (long long y = -1; y <= 1; ++y)
                for (long long z = 0; z <= 2; ++z) {
                    HodgeDims h = t_dims(c, e, Degree{{x, y, z}}, 1);
                    for (std::size_t i = 1; i <= 3; ++i)
                        CHECK(planar_t1(c, e, {x, y, z}, i) == h.get(i));
                }
    }
    SECTION("edge spans decompose as perpendicular part plus surface part") {
        std::mt19937_64 gen(73);
        for (const Cone& c : {testutil::conifold(), pyramid_cone(), dp6_cone()}) {
            HilbertBasis e = hilbert_basis(c);
            for (int trial = 0; trial < 15; ++trial) {
                LVec r = random_degree(gen, 3, -2, 3);
                QPolyhedron q = q_polyhedron(c, r);
                DegreeGeometry g = degree_geometry(c, e, Degree{r});
                for (const auto& [j, k] : q.compact_edges) {
                    long long wj = static_cast<long long>(W(dot(c.ray(j), r)));
                    long long wk = static_cast<long long>(W(dot(c.ray(k), r)));
                    long long te = static_cast<long long>(detail::edge_t1(c, j, k, r));
                    std::size_t expected =
                        1 + static_cast<std::size_t>(std::max(0LL, wj + wk - 2 - te));
                    for (const auto& fg : g.faces[2])
                        if (fg.face.ray_indices == std::vector<std::size_t>{j, k})
                            CHECK(fg.span_basis.cols() == expected);
                }
            }
        }
    }
    SECTION("non-planar cross-sections are refused") {
        Cone c = cone_over_polytope(testutil::octahedron(), 1);
        HilbertBasis e = hilbert_basis(c);
        CHECK_THROWS_WITH(planar_t1(c, e, {0, 0, 0, 1}, 2),
                          "planar_t1: compact part of Q(R) is not planar; use bounds");
    }
}

TEST_CASE("bounds bracket the dimension and respect trees") {
    Cone c = testutil::conifold();
    HilbertBasis e = hilbert_basis(c);

    SECTION("conifold bracket at the canonical degree") {
        Bounds b = t1_bounds(c, e, {0, 0, 1}, 1);
        CHECK(b.lower_raw == 1);
        CHECK(b.upper_raw == 2);
        CHECK(b.lower == 1);
        CHECK(b.upper == 2);
    }
    SECTION("explicit trees tighten or loosen the upper bound") {
        using EdgeList = std::vector<std::pair<std::size_t, std::size_t>>;
        Bounds full = t1_bounds(c, e, {0, 0, 1}, 1, EdgeList{{0, 1}, {1, 2}, {2, 3}});
        CHECK(full.upper_raw == 2);
        Bounds sparse = t1_bounds(c, e, {0, 0, 1}, 1, EdgeList{{0, 1}});
        CHECK(sparse.upper_raw == 4);
        CHECK_THROWS_WITH(
            t1_bounds(c, e, {0, 0, 1}, 1, EdgeList{{0, 1}, {1, 2}, {2, 3}, {0, 3}}),
            "t1_bounds: tree contains a cycle");
        CHECK_THROWS_WITH(t1_bounds(c, e, {0, 0, 1}, 1, EdgeList{{0, 2}}),
                          "t1_bounds: tree edge is not a compact edge");
    }
    SECTION("acyclic edge graphs pinch the bounds together") {
        Bounds b = t1_bounds(c, e, {1, 0, 0}, 1);
        CHECK(b.lower_raw == b.upper_raw);
        CHECK(b.lower == t_dims(c, e, Degree{{1, 0, 0}}, 1).get(1));
    }
    SECTION("octahedron cone sandwich") {
        Cone oc = cone_over_polytope(testutil::octahedron(), 1);
        HilbertBasis oe = hilbert_basis(oc);
        HodgeDims star = t_dims(oc, oe, Degree{{0, 0, 0, 1}}, 1);
        CHECK(star.get(2) == 0);
        CHECK(star.get(3) == 2);
        for (long long x = -1; x <= 1; ++x)
            for (long long y = -1; y <= 1; ++y)
                for (long long z = -1; z <= 1; ++z)
                    for (long long w = 1; w <= 2; ++w) {
                        HodgeDims h = t_dims(oc, oe, Degree{{x, y, z, w}}, 1);
                        for (std::size_t i = 1; i <= 3; ++i) {
                            Bounds b = t1_bounds(oc, oe, {x, y, z, w}, i);
                            CHECK(b.lower <= h.get(i));
                            CHECK(h.get(i) <= b.upper);
                        }
                    }
    }
}

TEST_CASE("vanishing certificate matches annihilation") {
    Cone h = dp6_cone();
    HilbertBasis he = hilbert_basis(h);

    SECTION("certificate on the hexagon cone") {
        CHECK(qgor_vanishing_applies(h, {0, 0, 2}));
        CHECK_FALSE(qgor_vanishing_applies(h, {0, 0, 1}));
        CHECK(qgor_vanishing_applies(h, {0, 1, 2}));
        CHECK(t_dims(h, he, Degree{{0, 0, 2}}, 1).all_zero());
        CHECK(t_dims(h, he, Degree{{0, 1, 2}}, 1).all_zero());
    }
    SECTION("certified degrees vanish across a box") {
        for (long long x = -1; x <= 1; ++x)
            for (long long y = -1; y <= 1; ++y)
                for (long long z = 0; z <= 3; ++z) {
                    if (!qgor_vanishing_applies(h, {x, y, z})) continue;
                    CHECK(t_dims(h, he, Degree{{x, y, z}}, 1).all_zero());
                }
    }
    SECTION("hypotheses are all required") {
        Cone c = testutil::conifold();
        HilbertBasis e = hilbert_basis(c);
        CHECK(qgor_vanishing_applies(c, {0, 0, 2}));
        CHECK(t_dims(c, e, Degree{{0, 0, 2}}, 1).all_zero());
        CHECK(threefold_t1(c, e, {0, 0, 2}, 1) == 0);
        CHECK_FALSE(qgor_vanishing_applies(non_qgor_cone(), {1, 1, 1}));
        CHECK_FALSE(qgor_vanishing_applies(non_qgor_cone(), {2, 2, 2}));
        CHECK_FALSE(qgor_vanishing_applies(pyramid_cone(), {0, 0, 2}));
    }
}

TEST_CASE("cone over a smooth reflexive polytope has pinned dimensions") {
    SECTION("hexagon cone concentrates in weights one and two") {
        HodgeDims d = fano_t1(dp6_cone());
        CHECK(d.get(1) == 3);
        CHECK(d.get(2) == 3);
        CHECK(d.get(3) == 0);
    }
    SECTION("conifold matches its complex cohomology") {
        HodgeDims d = fano_t1(testutil::conifold());
        CHECK(d.get(1) == 1);
        CHECK(d.get(2) == 1);
        CHECK(d.get(3) == 0);
    }
    SECTION("simplex cone is rigid") {
        Cone c(3, {{1, 0, 1}, {0, 1, 1}, {-1, -1, 1}});
        CHECK(fano_t1(c).all_zero());
    }
    SECTION("octahedron cone concentrates in the top proper weight") {
        HodgeDims d = fano_t1(cone_over_polytope(testutil::octahedron(), 1));
        CHECK(d.get(1) == 0);
        CHECK(d.get(2) == 0);
        CHECK(d.get(3) == 2);
        CHECK(d.get(4) == 0);
    }
    SECTION("hypotheses are enforced") {
        CHECK_THROWS_AS(fano_t1(pyramid_cone()), std::domain_error);
        CHECK_THROWS_AS(fano_t1(non_qgor_cone()), std::domain_error);
        CHECK_THROWS_AS(fano_t1(testutil::surface_cone(5, 2)), std::domain_error);
    }
}
