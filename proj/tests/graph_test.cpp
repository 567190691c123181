#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "coamoeba/graph.hpp"

using namespace coamoeba;

namespace {

const double PI = 0.5 * kTwoPi;

LatticePolygon simplex() { return newton_polygon({{0, 0}, {1, 0}, {0, 1}}); }
LatticePolygon unit_square() { return newton_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
LatticePolygon dilated_simplex() { return newton_polygon({{0, 0}, {2, 0}, {0, 2}}); }
LatticePolygon harnack_quad() { return newton_polygon({{0, 0}, {2, 0}, {1, 1}, {0, 1}}); }

TorusArrangement simplex_shell() { return dual_arrangement(simplex(), {{PI}, {PI}, {PI}}); }

TorusArrangement square_shell() {
    return dual_arrangement(unit_square(), {{PI}, {PI / 2}, {3 * PI / 2}, {PI}});
}

TorusArrangement harnack_shell() {
    BuildOptions opts;
    opts.allow_degenerate = true;
    return dual_arrangement(harnack_quad(), {{PI, PI}, {PI}, {0.0}, {0.0}}, opts);
}

/* Offsets of three doubled facet directions tuned so the shell carries exactly
   two index-two triangles, well separated from every other crossing. */
TorusArrangement two_site_shell() {
    return dual_arrangement(dilated_simplex(),
                            {{3.7827056105088563, 3.5783514087400663},
                             {4.954577811159961, 0.67667328530370097},
                             {5.7806082792045395, 0.076639526621633536}});
}

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

bool near(Vec2 a, Vec2 b) {
    return std::abs(wrap_pm_pi(a.x - b.x)) < 1e-9 && std::abs(wrap_pm_pi(a.y - b.y)) < 1e-9;
}

}  // namespace

TEST_CASE("crossing graphs of the simplex shell") {
    auto arr = simplex_shell();
    auto idx = canonical_index_map(arr);

    auto odd = index_graph(arr, idx, GraphParity::Odd);
    REQUIRE(odd.cells.size() == 2);
    CHECK(odd.edges.size() == 3);
    CHECK(std::count(odd.white.begin(), odd.white.end(), true) == 1);
    std::set<int> odd_cells(odd.cells.begin(), odd.cells.end());
    for (const auto& e : odd.edges) {
        CHECK_FALSE(e.directed);
        CHECK(odd_cells.count(e.from));
        CHECK(odd_cells.count(e.to));
        CHECK(idx.value[e.from] == -1);
        CHECK(idx.value[e.to] == 1);
    }

    auto even = index_graph(arr, idx, GraphParity::Even);
    REQUIRE(even.cells.size() == 1);
    CHECK(even.white[0]);
    CHECK(even.edges.size() == 3);
    for (const auto& e : even.edges) {
        CHECK(e.directed);
        CHECK(e.from == even.cells[0]);
        CHECK(e.to == even.cells[0]);
    }
}

TEST_CASE("crossing graphs of the square shell") {
    auto arr = square_shell();
    auto idx = canonical_index_map(arr);
    const int aa = arr.face_at({0.75 * PI, 0.75 * PI});
    const int bb = arr.face_at({1.75 * PI, 1.75 * PI});
    REQUIRE(aa >= 0);
    REQUIRE(bb >= 0);

    auto odd = index_graph(arr, idx, GraphParity::Odd);
    CHECK(odd.cells.size() == 2);
    REQUIRE(odd.edges.size() == 4);
    for (const auto& e : odd.edges) {
        CHECK_FALSE(e.directed);
        CHECK(idx.value[e.from] == -1);
        CHECK(idx.value[e.to] == 1);
    }

    auto even = index_graph(arr, idx, GraphParity::Even);
    CHECK(even.cells.size() == 2);
    CHECK(std::count(even.white.begin(), even.white.end(), true) == 2);
    REQUIRE(even.edges.size() == 4);
    // Both strands run into the small square at two crossings and out of it at
    // the other two, so the directed edges split evenly.
    for (const auto& e : even.edges) {
        CHECK(e.directed);
        Vec2 v = arr.vertices[e.crossing].pos;
        if (near(v, {PI, PI / 2}) || near(v, {PI / 2, PI})) {
            CHECK(e.from == aa);
            CHECK(e.to == bb);
        } else {
            REQUIRE((near(v, {PI, PI}) || near(v, {PI / 2, PI / 2})));
            CHECK(e.from == bb);
            CHECK(e.to == aa);
        }
    }
}

TEST_CASE("dimer graph of the simplex shell") {
    auto g = dimerize(simplex_shell());
    REQUIRE(g.vertices.size() == 2);
    CHECK(g.edges.size() == 3);
    CHECK(g.zero_cells == 1);
    CHECK(g.vertices[0].white != g.vertices[1].white);
    for (const auto& v : g.vertices) {
        CHECK(g.index.value[v.cell] == (v.white ? 1 : -1));
        REQUIRE(v.rotation.size() == 3);
        CHECK(std::set<int>(v.rotation.begin(), v.rotation.end()).size() == 3);
    }
    for (const auto& e : g.edges) {
        CHECK(g.vertices[e.tail].white);
        CHECK_FALSE(g.vertices[e.head].white);
        CHECK(e.weight == GaussianRational(1));
    }
    // Three distinct windings feed three distinct matching monomials later.
    std::set<std::pair<std::int64_t, std::int64_t>> wraps;
    for (const auto& e : g.edges) wraps.insert({e.wrap.x, e.wrap.y});
    CHECK(wraps.size() == 3);

    auto faces = rotation_faces(g);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].size() == 6);
    CHECK(has_perfect_matching(g));

    auto q = quiver_orientation(g);
    CHECK(q.face_count == 1);
    REQUIRE(q.arrows.size() == 3);
    for (const auto& a : q.arrows) {
        CHECK(a.from == 0);
        CHECK(a.to == 0);
    }
}

TEST_CASE("dimer graph and quiver of the square shell") {
    auto g = dimerize(square_shell());
    REQUIRE(g.vertices.size() == 2);
    CHECK(g.edges.size() == 4);
    CHECK(g.zero_cells == 2);
    for (const auto& v : g.vertices) CHECK(v.rotation.size() == 4);
    std::set<std::pair<std::int64_t, std::int64_t>> wraps;
    for (const auto& e : g.edges) wraps.insert({e.wrap.x, e.wrap.y});
    CHECK(wraps.size() == 4);

    auto faces = rotation_faces(g);
    REQUIRE(faces.size() == 2);
    CHECK(faces[0].size() + faces[1].size() == 8);
    CHECK(has_perfect_matching(g));

    auto q = quiver_orientation(g);
    CHECK(q.face_count == 2);
    REQUIRE(q.arrows.size() == 4);
    int forward = 0;
    for (const auto& a : q.arrows) {
        CHECK(a.from != a.to);
        if (a.from == 0) forward += 1;
    }
    CHECK(forward == 2);
}

TEST_CASE("triangle flips on the two-site shell") {
    auto arr = two_site_shell();
    auto idx = canonical_index_map(arr);
    REQUIRE(arr.vertices.size() == 12);
    REQUIRE(arr.edge_count() == 24);
    REQUIRE(arr.faces.size() == 12);

    int zeros = 0, odd = 0, twos = 0;
    for (int v : idx.value) {
        if (v == 0) zeros += 1;
        if (std::abs(v) == 1) odd += 1;
        if (std::abs(v) == 2) twos += 1;
    }
    CHECK(zeros == 4);
    CHECK(odd == 6);
    CHECK(twos == 2);

    auto sites = yang_baxter_sites(arr, idx);
    REQUIRE(sites.size() == 2);
    for (int f : sites) CHECK(arr.faces[f].is_triangle());

    int zero_cell = -1;
    for (int f = 0; f < int(arr.faces.size()); ++f)
        if (idx.value[f] == 0) zero_cell = f;
    CHECK_THROWS_AS(apply_yang_baxter(arr, zero_cell, &idx), NotAYangBaxterSite);

    auto yb = apply_yang_baxter(arr, sites[0]);
    CHECK(yb.vertices.size() == 12);
    CHECK(yb.edge_count() == 24);
    CHECK(yb.faces.size() == 12);
    CHECK(yb.pair_crossings == arr.pair_crossings);
    REQUIRE(yb.rewrite_probe.has_value());
    int bent = 0;
    for (const auto& c : yb.curves)
        if (!c.pure_geodesic()) bent += 1;
    CHECK(bent == 1);

    // The probe cell kept its index; transferring through it removes one site.
    Vec2 probe = *yb.rewrite_probe;
    auto idx2 = calibrate_by_reference(yb, relative_index_map(yb), yb.face_at(probe),
                                       idx.value[arr.face_at(probe)]);
    auto left = yang_baxter_sites(yb, idx2);
    REQUIRE(left.size() == 1);

    // The bent curve has no closed-form index, so the map must come from the caller.
    CHECK_THROWS_AS(apply_yang_baxter(yb, left[0]), UncalibratedIndex);
    auto yb2 = apply_yang_baxter(yb, left[0], &idx2);
    CHECK(yb2.faces.size() == 12);

    CHECK(is_consistent(arr));
    CHECK(is_consistent(yb));
}

TEST_CASE("dimer graph of the two-site shell") {
    auto arr = two_site_shell();
    auto g = dimerize(arr);
    REQUIRE(g.vertices.size() == 8);
    CHECK(g.edges.size() == 12);
    CHECK(g.zero_cells == 4);
    CHECK(std::count_if(g.vertices.begin(), g.vertices.end(),
                        [](const DimerVertex& v) { return v.white; }) == 4);
    for (int v : g.index.value) CHECK(std::abs(v) <= 1);
    std::size_t total_rotation = 0;
    for (const auto& v : g.vertices) total_rotation += v.rotation.size();
    CHECK(total_rotation == 24);

    CHECK(rotation_faces(g).size() == 4);
    CHECK(has_perfect_matching(g));
    CHECK(is_consistent(g.geometry));

    auto idx = canonical_index_map(arr);
    auto g2 = dimerize(arr, &idx);
    CHECK(g2.vertices.size() == 8);
    CHECK(g2.edges.size() == 12);
}

TEST_CASE("consistency of curve families") {
    // A curve meeting itself once.
    TorusCurve self;
    self.anchors = {{0, 0}, {PI, 2 * PI}};
    self.directions = {{1, 2}, {-1, 2}};
    self.homology = {0, 2};
    CHECK_FALSE(is_consistent(std::vector<TorusCurve>{self}));

    // A null-homologous loop.
    TorusCurve loop;
    loop.anchors = {{0, 0}, {PI, 0}, {PI, PI}, {0, PI}};
    loop.directions = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    loop.homology = {0, 0};
    CHECK_FALSE(is_consistent(std::vector<TorusCurve>{loop}));

    // A tall tent over a horizontal line: four crossings, but each pair of
    // same-sign ones separates into different lift classes.
    TorusCurve tent;
    tent.anchors = {{0, 0}, {PI, 3 * PI}};
    tent.directions = {{1, 3}, {1, -3}};
    tent.homology = {1, 0};
    auto line = geodesic_curve({0, 1}, 2.0);
    CHECK(is_consistent(std::vector<TorusCurve>{tent, line}));

    // Two tents in one period hit the same lift class twice with one sign.
    TorusCurve double_tent;
    double_tent.anchors = {{0, 0}, {PI / 2, 3 * PI}, {PI, 0}, {3 * PI / 2, 3 * PI}};
    double_tent.directions = {{1, 6}, {1, -6}, {1, 6}, {1, -6}};
    double_tent.homology = {1, 0};
    CHECK_FALSE(is_consistent(std::vector<TorusCurve>{double_tent, line}));

    CHECK(is_consistent(simplex_shell()));
    CHECK(is_consistent(square_shell()));
    // The doubled facet line makes a weight-two curve.
    CHECK_FALSE(is_consistent(harnack_shell()));
}

TEST_CASE("component census of the fixed shells") {
    {
        auto arr = simplex_shell();
        auto cc = combinatorial_coamoeba(arr, canonical_index_map(arr));
        CHECK(cc.covered_count == 1);
        CHECK(cc.complement_count == 1);
    }
    {
        auto arr = square_shell();
        auto idx = canonical_index_map(arr);
        auto cc = combinatorial_coamoeba(arr, idx);
        CHECK(cc.covered_count == 1);
        CHECK(cc.complement_count == 2);
        int aa = arr.face_at({0.75 * PI, 0.75 * PI});
        int bb = arr.face_at({1.75 * PI, 1.75 * PI});
        CHECK(cc.complement_component[aa] != cc.complement_component[bb]);
        CHECK(cc.covered_component[aa] == -1);
        for (int f = 0; f < int(arr.faces.size()); ++f)
            if (idx.value[f] != 0) CHECK(cc.covered_component[f] == 0);
    }
    {
        // Even through a point where three curves meet, the covered closures join.
        auto arr = harnack_shell();
        auto cc = combinatorial_coamoeba(arr, canonical_index_map(arr));
        CHECK(cc.covered_count == 1);
        CHECK(cc.complement_count == 2);
    }
}

TEST_CASE("graph preconditions") {
    auto arr = simplex_shell();
    auto rel = relative_index_map(arr);
    CHECK_THROWS_AS(index_graph(arr, rel, GraphParity::Odd), UncalibratedIndex);
    CHECK_THROWS_AS(yang_baxter_sites(arr, rel), UncalibratedIndex);
    CHECK_THROWS_AS(combinatorial_coamoeba(arr, rel), UncalibratedIndex);

    auto idx = canonical_index_map(arr);
    CHECK_THROWS_AS(apply_yang_baxter(arr, 0, &idx), NotAYangBaxterSite);
    CHECK_THROWS_AS(apply_yang_baxter(arr, 99, &idx), NotAFace);

    auto h = harnack_shell();
    auto hidx = canonical_index_map(h);
    CHECK_THROWS_AS(index_graph(h, hidx, GraphParity::Odd), NonSimpleArrangement);
    CHECK_THROWS_AS(dimerize(h), NotDimerizable);
}

TEST_CASE("random square shells always dimerize to the same combinatorics") {
    std::mt19937_64 rng(553177);
    auto p = unit_square();
    int built = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto offsets = random_balanced_offsets(p, rng);
        TorusArrangement arr;
        try {
            arr = dual_arrangement(p, offsets);
        } catch (const NonSimpleArrangement&) {
            continue;
        }
        built += 1;
        auto idx = canonical_index_map(arr);
        std::multiset<int> values(idx.value.begin(), idx.value.end());
        CHECK(values == std::multiset<int>{-1, 0, 0, 1});
        auto g = dimerize(arr, &idx);
        CHECK(g.vertices.size() == 2);
        CHECK(g.edges.size() == 4);
        CHECK(g.zero_cells == 2);
        CHECK(rotation_faces(g).size() == 2);
        CHECK(has_perfect_matching(g));
        CHECK(is_consistent(arr));
    }
    CHECK(built >= 18);
}

TEST_CASE("random dilated shells: rewrites preserve the counting invariants") {
    std::mt19937_64 rng(902217);
    auto p = dilated_simplex();
    int built = 0, dimerized = 0, rewrites_used = 0;
    for (int trial = 0; trial < 12; ++trial) {
        auto offsets = random_balanced_offsets(p, rng);
        TorusArrangement arr;
        try {
            arr = dual_arrangement(p, offsets);
        } catch (const NonSimpleArrangement&) {
            continue;
        }
        built += 1;
        IndexMap idx;
        try {
            idx = canonical_index_map(arr);
        } catch (const UncalibratedIndex&) {
            continue;
        }
        auto sites = yang_baxter_sites(arr, idx);
        try {
            auto g = dimerize(arr, &idx);
            dimerized += 1;
            if (!sites.empty()) rewrites_used += 1;
            CHECK(g.edges.size() == 12);
            CHECK(int(g.vertices.size()) + g.zero_cells == 12);
            CHECK(rotation_faces(g).size() == std::size_t(g.zero_cells));
            CHECK(has_perfect_matching(g));
            CHECK(is_consistent(g.geometry));
        } catch (const NotDimerizable&) {
        }
    }
    CHECK(built >= 10);
    CHECK(dimerized >= 3);
    CHECK(rewrites_used >= 1);
}
