#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "coamoeba/arrangement.hpp"

using namespace coamoeba;

namespace {

const double PI = 0.5 * kTwoPi;

LatticePolygon simplex() { return newton_polygon({{0, 0}, {1, 0}, {0, 1}}); }
LatticePolygon unit_square() { return newton_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
LatticePolygon dilated_simplex() { return newton_polygon({{0, 0}, {2, 0}, {0, 2}}); }
LatticePolygon harnack_quad() { return newton_polygon({{0, 0}, {2, 0}, {1, 1}, {0, 1}}); }

TorusArrangement simplex_shell() {
    return dual_arrangement(simplex(), {{PI}, {PI}, {PI}});
}

/* Shell of 1 + z + w + izw: vertical lines theta1 in {pi/2, pi}, horizontal in {pi/2, pi}. */
TorusArrangement square_shell() {
    return dual_arrangement(unit_square(), {{PI}, {PI / 2}, {3 * PI / 2}, {PI}});
}

/* Shell of 1 + 2z + z^2 - w + zw: doubled line theta1 = pi plus three simple lines. */
TorusArrangement harnack_shell() {
    BuildOptions opts;
    opts.allow_degenerate = true;
    return dual_arrangement(harnack_quad(), {{PI, PI}, {PI}, {0.0}, {0.0}}, opts);
}

std::multiset<int> value_multiset(const IndexMap& idx) {
    return {idx.value.begin(), idx.value.end()};
}

int value_at(const TorusArrangement& arr, const IndexMap& idx, Vec2 p) {
    int f = arr.face_at(p);
    REQUIRE(f >= 0);
    return idx.value[f];
}

/* Offsets drawn uniformly, the last one solved so the half-turn balance holds. */
std::vector<std::vector<double>> random_balanced_offsets(const LatticePolygon& p,
                                                         std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    std::vector<std::vector<double>> offsets;
    double sum = 0;
    int m = 0;
    for (const auto& f : p.facets) {
        offsets.emplace_back();
        for (std::int64_t i = 0; i < f.lattice_length; ++i) {
            offsets.back().push_back(uni(rng));
            sum += offsets.back().back();
            m += 1;
        }
    }
    offsets.back().back() = wrap_2pi(offsets.back().back() + PI * m - sum);
    return offsets;
}

std::int64_t expected_vertex_count(const TorusArrangement& arr) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < arr.curves.size(); ++i)
        for (std::size_t j = i + 1; j < arr.curves.size(); ++j)
            v += std::abs(cross(arr.curves[i].homology, arr.curves[j].homology));
    return v;
}

}  // namespace

TEST_CASE("geodesic curves carry their line data") {
    auto c = geodesic_curve({1, 0}, PI);
    CHECK(c.directions[0] == LatticeVector{0, -1});
    CHECK(c.homology == LatticeVector{0, -1});
    CHECK(c.conormal() == LatticeVector{1, 0});
    CHECK(c.line_offset() == doctest::Approx(PI));
    c.validate();

    auto d = geodesic_curve({-1, 1}, PI);
    CHECK(d.directions[0] == LatticeVector{1, 1});
    CHECK(d.conormal() == LatticeVector{-1, 1});
    CHECK(d.line_offset() == doctest::Approx(PI));

    CHECK_THROWS_AS(geodesic_curve({0, 0}, 1.0), ZeroVector);
    CHECK_THROWS_AS(geodesic_curve({2, 2}, 1.0), ZeroVector);
}

TEST_CASE("two transverse geodesics: one vertex, two arcs, one cell") {
    auto arr = build_arrangement({geodesic_curve({1, 0}, 1.0), geodesic_curve({0, 1}, 2.0)});
    CHECK(arr.vertices.size() == 1);
    CHECK(arr.edge_count() == 2);
    CHECK(arr.faces.size() == 1);
    CHECK(arr.faces[0].area == doctest::Approx(kTwoPi * kTwoPi));
    // Total homology (0,-1) + (1,0) is nonzero: no consistent index map exists.
    CHECK_THROWS_AS(relative_index_map(arr), InconsistentCrossing);
}

TEST_CASE("simplex shell: combinatorics, areas, canonical index") {
    auto arr = simplex_shell();
    CHECK(arr.vertices.size() == 3);
    CHECK(arr.edge_count() == 6);
    CHECK(arr.faces.size() == 3);
    CHECK(arr.simple());

    std::vector<Vec2> expected{{PI, PI}, {PI, 0}, {0, PI}};
    for (const auto& want : expected) {
        bool found = false;
        for (const auto& v : arr.vertices)
            found = found || (std::abs(wrap_pm_pi(v.pos.x - want.x)) < 1e-9 &&
                              std::abs(wrap_pm_pi(v.pos.y - want.y)) < 1e-9);
        CHECK(found);
    }

    std::multiset<double> areas;
    for (const auto& f : arr.faces) areas.insert(f.area);
    auto it = areas.begin();
    CHECK(*it++ == doctest::Approx(PI * PI / 2));
    CHECK(*it++ == doctest::Approx(PI * PI / 2));
    CHECK(*it == doctest::Approx(3 * PI * PI));

    auto idx = canonical_index_map(arr);
    CHECK(idx.calibrated);
    CHECK(value_multiset(idx) == std::multiset<int>{-1, 0, 1});
    CHECK(value_at(arr, idx, {0.3, 0.3}) == 0);  // hexagon
    // The triangles flank the hexagon across each line.
    CHECK(std::abs(value_at(arr, idx, {PI - 0.3, PI + 0.1})) == 1);
    CHECK(std::abs(value_at(arr, idx, {PI + 0.3, PI - 0.1})) == 1);

    CHECK(is_admissible(arr));
    auto rec = theorem1_predicates(arr, idx);
    CHECK(rec.zero_cells == 1);
    CHECK(rec.double_area == 1);
    CHECK(rec.lhs);
    CHECK(rec.rhs);
}

TEST_CASE("simplex shell: angle diagnostics") {
    auto arr = simplex_shell();
    auto idx = canonical_index_map(arr);
    auto diag = angle_diagnostics(arr, idx);
    REQUIRE(diag.rows.size() == 3);
    for (const auto& r : diag.rows) {
        CHECK(r.theta_n + r.theta_o == doctest::Approx(PI));
        CHECK(r.pair_index == 0);  // every equal pair is the hexagon against itself
    }
    std::multiset<double> tho;
    for (const auto& r : diag.rows) tho.insert(std::round(r.theta_o * 8 / PI));
    CHECK(tho == std::multiset<double>{2, 2, 4});  // pi/4, pi/4, pi/2
    CHECK(diag.total_theta_o == doctest::Approx(PI));
    CHECK(2 * diag.total_theta_o == doctest::Approx(kTwoPi * 1.0));  // 4 pi area
}

TEST_CASE("square shell: combinatorics and hand-computed index profile") {
    auto arr = square_shell();
    CHECK(arr.vertices.size() == 4);
    CHECK(arr.edge_count() == 8);
    CHECK(arr.faces.size() == 4);

    auto idx = canonical_index_map(arr);
    CHECK(value_multiset(idx) == std::multiset<int>{-1, 0, 0, 1});
    CHECK(value_at(arr, idx, {3 * PI / 4, 3 * PI / 4}) == 0);   // small square
    CHECK(value_at(arr, idx, {2 * PI - 0.3, 2 * PI - 0.3}) == 0);  // big cell
    CHECK(value_at(arr, idx, {3 * PI / 4, PI / 4}) == 1);
    CHECK(value_at(arr, idx, {3 * PI / 2, 3 * PI / 4}) == -1);

    // Zero cells: areas pi^2/4 and 9 pi^2/4.
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        if (idx.value[f] != 0) continue;
        double a = arr.faces[f].area;
        CHECK((std::abs(a - PI * PI / 4) < 1e-9 || std::abs(a - 9 * PI * PI / 4) < 1e-9));
    }

    CHECK(is_admissible(arr));
    auto rec = theorem1_predicates(arr, idx);
    CHECK(rec.zero_cells == 2);
    CHECK(rec.double_area == 2);
    CHECK(rec.lhs);
    CHECK(rec.rhs);

    auto diag = angle_diagnostics(arr, idx);
    for (const auto& r : diag.rows) {
        CHECK(r.theta_n == doctest::Approx(PI / 2));
        CHECK(r.pair_index == 0);
    }
    CHECK(2 * diag.total_theta_o == doctest::Approx(2 * kTwoPi));  // 4 pi area, area 1
    // Orientation-count form: Theta_n(-1) + 2 Theta_o(0) + Theta_n(1) attains 4 pi area.
    double lhs52 = diag.theta_n_sum[-1] + 2 * diag.theta_o_sum[0] + diag.theta_n_sum[1];
    CHECK(lhs52 == doctest::Approx(2 * kTwoPi));
}

TEST_CASE("square shell: crossing counts and incoming sectors") {
    auto arr = square_shell();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            int expect = int(std::abs(cross(arr.curves[i].homology, arr.curves[j].homology)));
            if (i == j) expect = 0;
            CHECK(arr.crossings_between(int(i), int(j)) == expect);
        }
    auto idx = canonical_index_map(arr);
    for (int v = 0; v < int(arr.vertices.size()); ++v) {
        int s = arr.in_in_sector(v);
        auto faces = arr.sector_faces(v);
        // The incoming and outgoing sectors form the equal-index diagonal.
        CHECK(idx.value[faces[s]] == idx.value[faces[(s + 2) % 4]]);
        CHECK(idx.value[faces[s]] == 0);
    }
}

TEST_CASE("doubled-line quadrilateral shell (degenerate)") {
    CHECK_THROWS_AS(dual_arrangement(harnack_quad(), {{PI, PI}, {PI}, {0.0}, {0.0}}),
                    NonSimpleArrangement);

    auto arr = harnack_shell();
    CHECK_FALSE(arr.simple());
    REQUIRE(arr.curves.size() == 4);
    CHECK(arr.curves[0].weight == 2);
    CHECK(arr.vertices.size() == 3);
    CHECK(arr.edge_count() == 7);
    CHECK(arr.faces.size() == 4);

    int triple = -1;
    for (int v = 0; v < int(arr.vertices.size()); ++v)
        if (arr.vertices[v].strand_count == 3) triple = v;
    REQUIRE(triple >= 0);
    CHECK(std::abs(arr.vertices[triple].pos.x - PI) < 1e-9);
    CHECK(std::abs(wrap_pm_pi(arr.vertices[triple].pos.y)) < 1e-9);

    auto idx = canonical_index_map(arr);  // weighted balance: 2pi + pi + 0 + 0 == 5pi (mod 2pi)
    CHECK(value_multiset(idx) == std::multiset<int>{-1, 0, 0, 1});
    CHECK(value_at(arr, idx, {PI / 2, PI / 4}) == 1);
    CHECK(value_at(arr, idx, {3 * PI / 2, 3 * PI / 4}) == -1);
    CHECK(value_at(arr, idx, {PI / 4, 7 * PI / 4}) == 0);
    CHECK(value_at(arr, idx, {3 * PI / 2, PI / 4}) == 0);

    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        if (idx.value[f] == 0) {
            CHECK(arr.faces[f].is_triangle());
            CHECK(arr.faces[f].area == doctest::Approx(PI * PI / 2));
        } else {
            CHECK(arr.faces[f].boundary.size() == 4);
            CHECK(arr.faces[f].area == doctest::Approx(3 * PI * PI / 2));
        }
    }

    auto rec = theorem1_predicates(arr, idx);
    CHECK(rec.zero_cells == 2);
    CHECK(rec.double_area == 3);
    CHECK_FALSE(rec.lhs);  // the degenerate shell misses maximality
    CHECK(rec.rhs);

    CHECK_THROWS_AS(angle_diagnostics(arr, idx), NonSimpleArrangement);
}

TEST_CASE("dual arrangement input validation") {
    CHECK_THROWS_AS(dual_arrangement(simplex(), {{PI}, {PI}}), OffsetCountMismatch);
    CHECK_THROWS_AS(dual_arrangement(harnack_quad(), {{PI}, {PI}, {0.0}, {0.0}}),
                    OffsetCountMismatch);
    // Three concurrent lines through the origin: a triple point.
    CHECK_THROWS_AS(dual_arrangement(simplex(), {{0.0}, {0.0}, {0.0}}), NonSimpleArrangement);
}

TEST_CASE("tier obstruction formula") {
    CHECK(tier_obstruction(2).m == 3);
    CHECK_FALSE(tier_obstruction(2).obstructed);
    CHECK(tier_obstruction(3).m == 3);
    CHECK_FALSE(tier_obstruction(3).obstructed);
    CHECK(tier_obstruction(4).m == 4);
    CHECK_FALSE(tier_obstruction(4).obstructed);
    for (int k = 5; k <= 12; ++k) {
        auto t = tier_obstruction(k);
        CHECK(t.m == (k + 2) / 2 + 1);
        CHECK(t.obstructed);
    }
}

TEST_CASE("dilated simplex and pentagon: vertex-count goldens") {
    std::mt19937_64 rng(420771);
    auto arr = dual_arrangement(dilated_simplex(), random_balanced_offsets(dilated_simplex(), rng));
    CHECK(arr.vertices.size() == 12);
    CHECK(arr.edge_count() == 24);
    CHECK(arr.faces.size() == 12);

    auto pent = tiered_pentagon(1);
    auto parr = dual_arrangement(pent, random_balanced_offsets(pent, rng));
    CHECK(parr.vertices.size() == 11);
    CHECK(parr.faces.size() == 11);

    auto pent3 = tiered_pentagon(3);
    auto parr3 = dual_arrangement(pent3, random_balanced_offsets(pent3, rng));
    CHECK(parr3.vertices.size() == 23);
}

TEST_CASE("random balanced arrangements satisfy the structural laws") {
    std::mt19937_64 rng(118329);
    std::vector<LatticePolygon> polygons{simplex(), unit_square(), dilated_simplex(),
                                         tiered_pentagon(1), harnack_quad()};
    int built = 0;
    for (const auto& poly : polygons) {
        for (int trial = 0; trial < 20; ++trial) {
            TorusArrangement arr;
            try {
                arr = dual_arrangement(poly, random_balanced_offsets(poly, rng));
            } catch (const NonSimpleArrangement&) {
                continue;  // measure-zero coincidences
            }
            built += 1;

            CHECK(std::int64_t(arr.vertices.size()) == expected_vertex_count(arr));
            CHECK(int(arr.vertices.size()) - arr.edge_count() + int(arr.faces.size()) == 0);
            double total = 0;
            for (const auto& f : arr.faces) total += f.area;
            CHECK(total == doctest::Approx(kTwoPi * kTwoPi));

            auto idx = canonical_index_map(arr);
            // Crossing rule across every arc: higher by the weight on the right of travel.
            for (int h = 0; h < int(arr.halfedges.size()); h += 2) {
                const auto& he = arr.halfedges[h];
                int left = he.along ? he.face : arr.halfedges[he.twin].face;
                int right = he.along ? arr.halfedges[he.twin].face : he.face;
                CHECK(idx.value[right] - idx.value[left] == arr.curves[he.curve].weight);
            }
            // Around each vertex the four sector indices form the two-step pattern.
            for (int v = 0; v < int(arr.vertices.size()); ++v) {
                auto fs = arr.sector_faces(v);
                std::array<int, 4> vals;
                for (int i = 0; i < 4; ++i) vals[i] = idx.value[fs[i]];
                CHECK(vals[0] + vals[2] == vals[1] + vals[3]);
                bool eq02 = vals[0] == vals[2], eq13 = vals[1] == vals[3];
                CHECK(eq02 != eq13);
                int s = arr.in_in_sector(v);
                CHECK(idx.value[fs[s]] == idx.value[fs[(s + 2) % 4]]);
            }

            auto rec = theorem1_predicates(arr, idx);
            CHECK(rec.double_area == poly.double_area());
            CHECK(rec.zero_cells <= rec.double_area);
            CHECK(rec.lhs == rec.rhs);

            int max_abs = 0;
            for (int v : idx.value) max_abs = std::max(max_abs, std::abs(v));
            CHECK(is_admissible(arr) == (max_abs <= 1));

            auto diag = angle_diagnostics(arr, idx);
            for (const auto& r : diag.rows) CHECK(r.theta_n + r.theta_o == doctest::Approx(PI));
            CHECK(2 * diag.total_theta_o ==
                  doctest::Approx(kTwoPi * double(poly.double_area())).epsilon(1e-9));

            auto rel = relative_index_map(arr);
            for (std::size_t f = 0; f < arr.faces.size(); ++f)
                CHECK(idx.value[f] - rel.value[f] == idx.value[0] - rel.value[0]);
        }
    }
    CHECK(built >= 95);
}

TEST_CASE("combinatorics-only build mode") {
    BuildOptions light;
    light.geometry = false;
    auto arr = dual_arrangement(simplex(), {{PI}, {PI}, {PI}}, light);
    CHECK(arr.vertices.size() == 3);
    CHECK(arr.edge_count() == 6);
    CHECK(arr.faces.size() == 3);
    CHECK(is_admissible(arr));
    CHECK_THROWS_AS(arr.face_at({0.3, 0.3}), NonSimpleArrangement);
    CHECK_THROWS_AS(canonical_index_map(arr), UncalibratedIndex);
}

TEST_CASE("canonical map refuses unbalanced offsets") {
    auto arr = dual_arrangement(simplex(), {{1.0}, {2.0}, {2.5}});
    CHECK_THROWS_AS(canonical_index_map(arr), UncalibratedIndex);
    CHECK_NOTHROW(relative_index_map(arr));
}
