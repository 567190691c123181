#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "coamoeba/kasteleyn.hpp"

using namespace coamoeba;

namespace {

const double PI = 0.5 * kTwoPi;

LatticePolygon simplex() { return newton_polygon({{0, 0}, {1, 0}, {0, 1}}); }
LatticePolygon unit_square() { return newton_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
LatticePolygon dilated_simplex() { return newton_polygon({{0, 0}, {2, 0}, {0, 2}}); }

DimerGraph simplex_dimer() {
    return dimerize(dual_arrangement(simplex(), {{PI}, {PI}, {PI}}));
}

DimerGraph square_dimer() {
    return dimerize(dual_arrangement(unit_square(), {{PI}, {PI / 2}, {3 * PI / 2}, {PI}}));
}

DimerGraph two_site_dimer() {
    return dimerize(dual_arrangement(dilated_simplex(),
                                     {{3.7827056105088563, 3.5783514087400663},
                                      {4.954577811159961, 0.67667328530370097},
                                      {5.7806082792045395, 0.076639526621633536}}));
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

void check_face_rule(const DimerGraph& g, const SignAssignment& s) {
    for (const auto& face : rotation_faces(g)) {
        int k = int(face.size()) / 2;
        int prod = 1;
        for (int d : face) prod *= s.sign[d / 2];
        CHECK(prod == (k % 2 == 0 ? -1 : 1));
    }
}

/* Independent matching-polynomial oracle: enumerate all perfect matchings and
   bin them by total quarter-turned winding. */
std::map<std::pair<std::int64_t, std::int64_t>, long> matching_classes(const DimerGraph& g) {
    std::vector<int> whites;
    for (int v = 0; v < int(g.vertices.size()); ++v)
        if (g.vertices[v].white) whites.push_back(v);
    std::map<std::pair<std::int64_t, std::int64_t>, long> counts;
    std::set<int> used;
    auto rec = [&](auto&& self, std::size_t level, std::int64_t a, std::int64_t b) -> void {
        if (level == whites.size()) {
            counts[{a, b}] += 1;
            return;
        }
        for (const auto& e : g.edges) {
            if (e.tail != whites[level] || used.count(e.head)) continue;
            used.insert(e.head);
            self(self, level + 1, a + e.wrap.y, b - e.wrap.x);
            used.erase(e.head);
        }
    };
    rec(rec, 0, 0, 0);
    return counts;
}

void check_against_enumeration(const DimerGraph& g) {
    auto counts = matching_classes(g);
    auto det = characteristic_polynomial(g);
    REQUIRE(det.term_count() == counts.size());
    long total = 0;
    for (const auto& [cls, n] : counts) {
        const GaussianRational* c = det.coefficient({cls.first, cls.second});
        REQUIRE(c != nullptr);
        CHECK(c->im == 0);
        CHECK(c->abs() == doctest::Approx(double(n)));
        total += n;
    }
    CHECK(matching_count(g) == total);
}

}  // namespace

TEST_CASE("sign rule on the fixed dimer graphs") {
    for (const DimerGraph& g : {simplex_dimer(), square_dimer(), two_site_dimer()}) {
        auto s = kasteleyn_signs(g);
        REQUIRE(s.sign.size() == g.edges.size());
        check_face_rule(g, s);
        // At most two free cycle signs on a torus embedding; a generator whose
        // edge borders a single face is sign-free and not reported.
        CHECK(s.leftover.size() <= 2);
        CHECK(s.twist.size() == s.leftover.size());
    }
}

TEST_CASE("matching polynomial agrees with enumeration") {
    check_against_enumeration(simplex_dimer());
    check_against_enumeration(square_dimer());
    check_against_enumeration(two_site_dimer());
}

TEST_CASE("characteristic polygons reproduce the source polygons") {
    {
        auto g = simplex_dimer();
        auto det = characteristic_polynomial(g);
        CHECK(det.term_count() == 3);
        CHECK(characteristic_polygon(g) == canonical_translate(simplex()));
        CHECK(matching_count(g) == 3);
    }
    {
        auto g = square_dimer();
        auto det = characteristic_polynomial(g);
        CHECK(det.term_count() == 4);
        CHECK(characteristic_polygon(g) == canonical_translate(unit_square()));
        CHECK(matching_count(g) == 4);
    }
    {
        auto g = two_site_dimer();
        CHECK(characteristic_polygon(g) == canonical_translate(dilated_simplex()));
    }
}

TEST_CASE("polygon is gauge invariant") {
    auto g = square_dimer();
    auto polygon = characteristic_polygon(g);
    auto count = matching_count(g);

    // Re-anchor one white cell frame: every edge leaving it shifts its winding.
    DimerGraph shifted = square_dimer();
    int w = shifted.vertices[0].white ? 0 : 1;
    for (auto& e : shifted.edges)
        if (e.tail == w) e.wrap = {e.wrap.x + 1, e.wrap.y + 2};
    CHECK(characteristic_polygon(shifted) == polygon);
    CHECK(matching_count(shifted) == count);

    // Same for a black cell frame, with the opposite shift sense.
    DimerGraph shifted2 = square_dimer();
    int b = shifted2.vertices[0].white ? 1 : 0;
    for (auto& e : shifted2.edges)
        if (e.head == b) e.wrap = {e.wrap.x - 3, e.wrap.y + 1};
    CHECK(characteristic_polygon(shifted2) == polygon);
    CHECK(matching_count(shifted2) == count);
}

TEST_CASE("edge weights scale exactly their matchings") {
    auto g = simplex_dimer();
    g.edges[0].weight = GaussianRational(3);
    auto det = characteristic_polynomial(g);
    REQUIRE(det.term_count() == 3);
    int scaled = 0;
    for (auto p : det.support())
        if (det.coefficient(p)->abs() == doctest::Approx(3.0)) scaled += 1;
    CHECK(scaled == 1);
    CHECK(det.eval_abs_at_ones() == doctest::Approx(5.0));
}

TEST_CASE("kasteleyn preconditions") {
    DimerGraph bad;
    bad.vertices.resize(2);
    bad.vertices[0].white = true;
    bad.vertices[1].white = true;
    DimerEdge e;
    e.tail = 0;
    e.head = 1;
    bad.edges.push_back(e);
    CHECK_THROWS_AS(kasteleyn_signs(bad), NotBipartite);

    DimerGraph empty;
    empty.vertices.resize(2);
    empty.vertices[0].white = true;
    empty.vertices[1].white = false;
    CHECK_THROWS_AS(characteristic_polygon(empty), ZeroDeterminant);
}

TEST_CASE("random dilated shells round-trip their polygon") {
    std::mt19937_64 rng(771199);
    auto p = dilated_simplex();
    int round_trips = 0;
    for (int trial = 0; trial < 10; ++trial) {
        auto offsets = random_balanced_offsets(p, rng);
        TorusArrangement arr;
        try {
            arr = dual_arrangement(p, offsets);
        } catch (const NonSimpleArrangement&) {
            continue;
        }
        DimerGraph g;
        try {
            g = dimerize(arr);
        } catch (const NotDimerizable&) {
            continue;
        } catch (const UncalibratedIndex&) {
            continue;
        }
        auto s = kasteleyn_signs(g);
        check_face_rule(g, s);
        check_against_enumeration(g);
        CHECK(characteristic_polygon(g) == canonical_translate(p));
        round_trips += 1;
    }
    CHECK(round_trips >= 4);
}
