#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coamoeba/errors.hpp"
#include "coamoeba/lattice.hpp"

namespace coamoeba {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Vec2 {
    double x = 0.0, y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline Vec2 to_vec(LatticeVector v) { return {double(v.x), double(v.y)}; }
double norm(Vec2 v);

double wrap_2pi(double x);   // representative in [0, 2pi)
double wrap_pm_pi(double x); // representative in (-pi, pi]
Vec2 wrap_torus(Vec2 p);

/* Closed oriented curve on T^2: a cyclic chain of straight pieces, each along a
   primitive lattice direction. anchors[i] starts segment i; segment i ends at
   anchors[i+1], the last one at anchors[0] + 2pi*homology. */
struct TorusCurve {
    std::vector<Vec2> anchors;
    std::vector<LatticeVector> directions;
    LatticeVector homology{0, 0};
    int weight = 1;
    int parent_facet = -1;

    bool pure_geodesic() const { return anchors.size() == 1; }
    LatticeVector conormal() const;  // delta with <delta, theta> constant on the curve
    double line_offset() const;      // that constant, reduced to [0, 2pi)
    Vec2 segment_start(std::size_t i) const;
    Vec2 segment_end(std::size_t i) const;
    void validate() const;  // segment chain closes with the stated homology
};

/* The geodesic {theta : <delta, theta> == c (mod 2pi)}, traveled along (delta.y, -delta.x). */
TorusCurve geodesic_curve(LatticeVector delta, double offset, int weight = 1, int parent_facet = -1);

struct ArrVertex {
    Vec2 pos;                    // in [0, 2pi)^2
    std::vector<int> out;        // outgoing half-edges, CCW by direction
    int strand_count = 0;
};

/* One strand of a curve passing through a vertex. `lift` is the crossing point in
   the curve's own lift frame (the frame its anchors are written in). */
struct Strand {
    int curve = -1;
    int segment = 0;
    double t = 0.0;  // parameter within the segment, in [0, 1)
    Vec2 lift;
};

struct HalfEdge {
    int twin = -1, next = -1, prev = -1;
    int origin = -1, target = -1;
    int curve = -1;
    bool along = true;           // follows the curve's travel orientation
    int face = -1;
    std::vector<Vec2> lift;      // polyline, origin lift first; breakpoints included
    Vec2 dir_out() const { return lift[1] - lift[0]; }
    Vec2 dir_in() const { return lift[lift.size() - 1] - lift[lift.size() - 2]; }
};

struct ArrFace {
    int halfedge = -1;
    std::vector<int> boundary;       // half-edge cycle (next order)
    std::vector<Vec2> polygon;       // lifted boundary, CCW, closes exactly
    double area = 0.0;
    Vec2 centroid;                   // on the torus
    Vec2 interior_point;             // guaranteed strictly inside
    std::vector<double> corner_angles;  // per boundary half-edge junction
    bool is_triangle() const { return boundary.size() == 3; }
};

struct BuildOptions {
    bool allow_degenerate = false;  // merge coincident same-orientation geodesics, keep multi-strand vertices
    double eps = 1e-9;
    bool geometry = true;           // false: combinatorics only (no areas/angles/point location)
};

struct TorusArrangement {
    std::vector<TorusCurve> curves;
    std::vector<ArrVertex> vertices;
    std::vector<std::vector<Strand>> vertex_strands;  // parallel to vertices
    std::vector<HalfEdge> halfedges;
    std::vector<ArrFace> faces;
    int base_face = -1;
    bool has_geometry = true;
    std::optional<LatticePolygon> source_polygon;  // set when built from a polygon
    std::optional<Vec2> rewrite_probe;  // set by apply_yang_baxter: a point whose cell kept its index

    int edge_count() const { return int(halfedges.size()) / 2; }
    bool simple() const;  // every vertex a transverse double point, all weights 1
    int total_weight() const;
    int crossings_between(int ci, int cj) const;  // strand pairs meeting on the torus
    int face_at(Vec2 theta) const;                // -1 if within eps of the 1-skeleton
    double distance_to_curves(Vec2 theta) const;
    /* At a transverse double point: the four faces between consecutive CCW rays;
       entry i sits between out[i] and out[i+1]. */
    std::array<int, 4> sector_faces(int vertex) const;
    /* Sector whose both bounding strands point into the vertex. */
    int in_in_sector(int vertex) const;

    std::vector<std::vector<int>> pair_crossings;  // [ci][cj] strand-pair counts
};

TorusArrangement build_arrangement(std::vector<TorusCurve> curves, const BuildOptions& opts = {});

/* One geodesic per offset; facet f with primitive direction delta and offset c
   contributes {<delta, theta> == c}, traveled along the outward normal. */
TorusArrangement dual_arrangement(const LatticePolygon& p,
                                  const std::vector<std::vector<double>>& offsets_per_facet,
                                  const BuildOptions& opts = {});

struct IndexMap {
    std::vector<int> value;  // per face
    bool calibrated = false;
};

/* Crossing rule: the index is higher by the curve weight on the right of travel.
   Base cell (containing (0,0), else largest area) gets 0. */
IndexMap relative_index_map(const TorusArrangement& arr);

/* Absolute index from the fractional-part sum over geodesics; defined when all
   curves are pure geodesics and the offsets satisfy the half-turn balance
   sum(w_i c_i) == pi * sum(w_i) (mod 2pi). */
IndexMap canonical_index_map(const TorusArrangement& arr, double tol = 1e-6);

/* Shift a relative map so that `face` takes value `value`. */
IndexMap calibrate_by_reference(const TorusArrangement& arr, const IndexMap& relative,
                                int face, int value);

struct VertexAngles {
    int vertex = -1;
    int pair_index = 0;      // common index of the equal diagonal pair
    double theta_n = 0.0;    // angle of the equal-index cells
    double theta_o = 0.0;    // angle of the other two, pi - theta_n
};

struct AngleDiagnostics {
    std::vector<VertexAngles> rows;
    std::map<int, std::vector<int>> classes;      // pair_index -> vertex ids
    std::map<int, double> theta_n_sum, theta_o_sum;
    double total_theta_o = 0.0;
};

AngleDiagnostics angle_diagnostics(const TorusArrangement& arr, const IndexMap& idx);

/* Every arc borders at least one cell whose boundary is coherently oriented. */
bool is_admissible(const TorusArrangement& arr);

struct Theorem1Record {
    int zero_cells = 0;
    std::int64_t double_area = 0;
    bool lhs = false;  // zero_cells == double_area
    bool rhs = false;  // max |index| <= 2 and every |index| = 2 cell is a triangle
};

Theorem1Record theorem1_predicates(const TorusArrangement& arr, const IndexMap& idx);

struct TierObstruction {
    int m = 0;
    bool obstructed = false;
};

/* Obstruction certificate for the tiered pentagon family. */
TierObstruction tier_obstruction(int k);

}  // namespace coamoeba
