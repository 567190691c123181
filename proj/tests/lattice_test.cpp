#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "coamoeba/lattice.hpp"

using namespace coamoeba;

namespace {

/* Independent area oracle: fan triangulation from vertices[0]. */
std::int64_t fan_double_area(const LatticePolygon& p) {
    std::int64_t total = 0;
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
        total += cross(p.vertices[i] - p.vertices[0], p.vertices[i + 1] - p.vertices[0]);
    return total;
}

std::vector<LatticeVector> facet_edges(const LatticePolygon& p) {
    std::vector<LatticeVector> out;
    for (const auto& f : p.facets) out.push_back(f.edge);
    return out;
}

bool cyclically_equal(std::vector<LatticeVector> a, const std::vector<LatticeVector>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (a == b) return true;
        std::rotate(a.begin(), a.begin() + 1, a.end());
    }
    return false;
}

}  // namespace

TEST_CASE("unit square hull") {
    auto p = newton_polygon({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    REQUIRE(p.vertices.size() == 4);
    CHECK(p.vertices[0] == LatticePoint{0, 0});
    CHECK(p.vertices[1] == LatticePoint{1, 0});
    CHECK(p.vertices[2] == LatticePoint{1, 1});
    CHECK(p.vertices[3] == LatticePoint{0, 1});
    REQUIRE(p.facets.size() == 4);
    for (const auto& f : p.facets) CHECK(f.lattice_length == 1);
    CHECK(p.double_area() == 2);
}

TEST_CASE("hull ignores interior and edge-interior points, merges collinear runs") {
    auto p = newton_polygon({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}, {2, 2}, {0, 3}});
    // Hull of the above: (0,0), (2,0), (2,2), (0,3).
    REQUIRE(p.vertices.size() == 4);
    CHECK(p.vertices[0] == LatticePoint{0, 0});
    CHECK(p.vertices[1] == LatticePoint{2, 0});
    CHECK(p.vertices[2] == LatticePoint{2, 2});
    CHECK(p.vertices[3] == LatticePoint{0, 3});
    CHECK(p.facets[0].lattice_length == 2);
    CHECK(p.facets[0].direction == LatticeVector{1, 0});
    CHECK(p.facets[1].lattice_length == 2);
    CHECK(p.facets[3].lattice_length == 3);
}

TEST_CASE("degenerate supports are rejected") {
    CHECK_THROWS_AS(newton_polygon({}), DegenerateSupport);
    CHECK_THROWS_AS(newton_polygon({{2, 5}}), DegenerateSupport);
    CHECK_THROWS_AS(newton_polygon({{0, 0}, {3, 1}}), DegenerateSupport);
    CHECK_THROWS_AS(newton_polygon({{0, 0}, {1, 1}, {2, 2}, {5, 5}}), DegenerateSupport);
    // Duplicated points do not add dimension.
    CHECK_THROWS_AS(newton_polygon({{0, 0}, {1, 0}, {1, 0}, {0, 0}}), DegenerateSupport);
}

TEST_CASE("tiered pentagon facets and area") {
    auto p2 = tiered_pentagon(2);
    REQUIRE(p2.vertices.size() == 5);
    CHECK(p2.vertices[0] == LatticePoint{0, 0});
    CHECK(cyclically_equal(facet_edges(p2),
                           {{1, 0}, {2, 1}, {-2, 1}, {-1, -1}, {0, -1}}));
    for (std::int64_t k = 1; k <= 8; ++k) {
        auto p = tiered_pentagon(k);
        CHECK(p.double_area() == 2 * k + 3);
        CHECK(p.double_area() == fan_double_area(p));
        CHECK(cyclically_equal(facet_edges(p),
                               {{1, 0}, {k, 1}, {-k, 1}, {-1, -1}, {0, -1}}));
    }
    CHECK_THROWS_AS(tiered_pentagon(0), std::invalid_argument);
}

TEST_CASE("quadrilateral with a length-two facet") {
    auto p = newton_polygon({{0, 0}, {2, 0}, {0, 1}, {1, 1}});
    REQUIRE(p.vertices.size() == 4);
    CHECK(p.double_area() == 3);
    CHECK(p.facets[0].edge == LatticeVector{2, 0});
    CHECK(p.facets[0].lattice_length == 2);
    CHECK(p.facets[0].direction == LatticeVector{1, 0});
    CHECK(p.facets[0].normal == LatticeVector{0, -2});
}

TEST_CASE("facet normal examples and properties") {
    CHECK(facet_normal({1, 0}) == LatticeVector{0, -1});
    CHECK(facet_normal({-1, 1}) == LatticeVector{1, 1});
    CHECK(facet_normal({4, 1}) == LatticeVector{1, -4});
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<std::int64_t> coord(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        LatticeVector g{coord(rng), coord(rng)};
        if (g.x == 0 && g.y == 0) continue;
        CHECK(cross(facet_normal(g), g) == dot(g, g));
        CHECK(quarter_turn_ccw(facet_normal(g)) == g);
    }
}

TEST_CASE("facet vectors of random hulls sum to zero and turn left") {
    std::mt19937_64 rng(977001);
    std::uniform_int_distribution<std::int64_t> coord(-6, 6);
    std::uniform_int_distribution<int> count(3, 12);
    int built = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::vector<LatticePoint> pts;
        int n = count(rng);
        for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
        LatticePolygon p;
        try {
            p = newton_polygon(pts);
        } catch (const DegenerateSupport&) {
            continue;
        }
        ++built;
        LatticeVector sum{0, 0};
        for (const auto& f : p.facets) {
            sum = sum + f.edge;
            CHECK(f.edge == f.lattice_length * f.direction);
            CHECK(lattice_gcd(f.direction.x, f.direction.y) == 1);
            CHECK(f.normal == facet_normal(f.edge));
        }
        CHECK(sum == LatticeVector{0, 0});
        std::size_t m = p.facets.size();
        for (std::size_t i = 0; i < m; ++i)
            CHECK(cross(p.facets[i].edge, p.facets[(i + 1) % m].edge) > 0);
        CHECK(p.double_area() == fan_double_area(p));
        CHECK(p.double_area() > 0);
        // Every support point lies inside or on the hull.
        for (const auto& q : pts)
            for (const auto& f : p.facets)
                CHECK(cross(f.edge, q - f.from) >= 0);
    }
    CHECK(built > 60);
}

TEST_CASE("edge sparsity detection") {
    CHECK(is_sparse_along_edges({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    CHECK_FALSE(is_sparse_along_edges({{0, 0}, {1, 0}, {2, 0}, {0, 1}}));
    CHECK_FALSE(is_sparse_along_edges({{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}}));
    // Missing midpoint of a length-two facet.
    CHECK(is_sparse_along_edges({{0, 0}, {2, 0}, {0, 1}, {1, 1}}));
    CHECK(is_sparse_along_edges({{0, 0}, {1, 0}, {0, 1}}));
    // Two-argument form agrees with the single-argument one.
    std::vector<LatticePoint> s{{0, 0}, {1, 0}, {2, 0}, {0, 2}};
    CHECK(is_sparse_along_edges(s, newton_polygon(s)) == is_sparse_along_edges(s));
}

TEST_CASE("canonical translate moves the smallest vertex to the origin") {
    auto p = newton_polygon({{3, 4}, {5, 4}, {3, 6}, {5, 6}});
    auto q = canonical_translate(p);
    CHECK(q.vertices[0] == LatticePoint{0, 0});
    CHECK(q.double_area() == p.double_area());
    CHECK(cyclically_equal(facet_edges(q), facet_edges(p)));
    auto r = canonical_translate(q);
    CHECK(r == q);
}
