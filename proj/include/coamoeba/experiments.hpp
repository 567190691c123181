#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coamoeba/arrangement.hpp"
#include "coamoeba/numeric.hpp"
#include "coamoeba/poly.hpp"

namespace coamoeba {

struct NamedPolygon {
    std::string name;
    LatticePolygon polygon;
};

/* The five fixed sweep inputs: simplex, unit square, twice-dilated simplex,
   the wide quadrilateral (0,0)(2,0)(1,1)(0,1), pentagon tier 1. */
std::vector<NamedPolygon> standard_sweep_polygons();

/* One offset per geodesic, uniform, with the last one solved so the weighted
   sum is pi times the curve count: exactly the offset class realized by
   shells, where the absolute index formula applies. */
std::vector<std::vector<double>> random_balanced_offsets(const LatticePolygon& p,
                                                         std::mt19937_64& rng);

struct SweepSample {
    int polygon = 0;
    int draw = 0;
    int resamples = 0;  // non-simple draws discarded before this arrangement
    bool built = false;
    Theorem1Record record;
    double angle_residual = 0.0;  // |2 sum theta_o - 2 pi double_area|
};

struct SweepReport {
    std::vector<NamedPolygon> polygons;
    std::vector<SweepSample> samples;  // polygon-major, draw-minor order
    int discrepancies = 0;             // samples with lhs != rhs
    int bound_violations = 0;          // zero cells above twice the area
    int unbuilt = 0;                   // resample budget exhausted
    double max_angle_residual = 0.0;
};

/* The cell-count/index-profile equivalence and the vertex-angle identity over
   random dual arrangements. Deterministic for a fixed seed under both
   policies: every sample owns a counter-derived RNG stream. */
SweepReport theorem1_sweep(const std::vector<NamedPolygon>& polygons, int samples_per_polygon,
                           std::uint64_t seed, ExecPolicy policy = ExecPolicy::Parallel);

/* Tier of the pentagon family realizing this polygon, if any. */
std::optional<std::int64_t> pentagon_tier(const LatticePolygon& p);

struct AdmissibleSearch {
    bool found = false;
    bool obstructed = false;  // certificate: no arrangement with few enough curves exists
    int certificate_m = 0;
    int attempts = 0;  // candidates consumed, including the successful one
    int non_simple = 0;
    int inadmissible = 0;
    std::vector<std::vector<double>> offsets;  // per facet, set when found
    std::uint64_t seed = 0;
    int budget = 0;
};

/* Randomized restarts over uniform offsets, checking simplicity and
   admissibility; pentagon tiers five and up short-circuit with the counting
   certificate. The reported success is the lowest attempt index that
   succeeds, so the result is policy-independent. */
AdmissibleSearch search_admissible(const LatticePolygon& p, int budget, std::uint64_t seed,
                                   ExecPolicy policy = ExecPolicy::Parallel);

struct CircuitSample {
    std::string label;
    SupportedPolynomial f;
};

/* Random tetranomials supported on circuits: unit squares, quadrilaterals in
   convex position, and triangles with one interior lattice point, cycled in
   that order, with coefficients of log-uniform modulus and uniform phase. */
std::vector<CircuitSample> circuit_corpus(int count, std::uint64_t seed);

struct CircuitOutcome {
    std::string label;
    bool generic = false;  // simple shell with a calibrated index
    std::string reason;    // exclusion reason otherwise
    std::int64_t double_area = 0;
    int complement = 0;
    bool matched = false;  // complement == double_area
};

struct CircuitReport {
    std::vector<CircuitOutcome> rows;
    int generic = 0, matched = 0, excluded = 0;
};

/* Complement count of the combinatorial coamoeba against twice the area. */
CircuitReport circuit_check(const std::vector<CircuitSample>& corpus,
                            ExecPolicy policy = ExecPolicy::Parallel);

struct BijectionOutcome {
    std::string label;
    bool generic = false;
    std::string reason;
    std::int64_t double_area = 0;
    ArgBijectionReport report;
    bool success = false;  // bijective with the full critical-point count
};

struct BijectionReport {
    std::vector<BijectionOutcome> rows;
    int generic = 0, successes = 0, boundary_flagged = 0;
};

/* Arg-bijection search over the corpus; failures must be boundary-flagged. */
BijectionReport bijection_experiment(const std::vector<CircuitSample>& corpus,
                                     ExecPolicy policy = ExecPolicy::Parallel);

struct ParityProbe {
    int sample = -1;  // corpus row
    Vec2 theta;
    int index = 0;
    int fiber = 0;
    bool ok = false;  // fiber matches index parity and dominates its magnitude
};

struct ParityReport {
    std::vector<ParityProbe> probes;
    int violations = 0;
};

/* Random interior probes of fiber count against the calibrated index. */
ParityReport parity_experiment(const std::vector<CircuitSample>& corpus, int probes,
                               std::uint64_t seed, ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace coamoeba
