#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace coamoeba {

struct DegenerateSupport : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LatticePoint {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
    friend LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
    friend LatticePoint operator*(std::int64_t s, LatticePoint a) { return {s * a.x, s * a.y}; }
    LatticePoint operator-() const { return {-x, -y}; }
    /* lexicographic, used for canonical vertex ordering */
    friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

using LatticeVector = LatticePoint;

inline std::int64_t cross(LatticeVector a, LatticeVector b) { return a.x * b.y - a.y * b.x; }
inline std::int64_t dot(LatticeVector a, LatticeVector b) { return a.x * b.x + a.y * b.y; }

/* Quarter turn clockwise; maps a counterclockwise edge vector to the outward normal. */
inline LatticeVector facet_normal(LatticeVector edge) { return {edge.y, -edge.x}; }
/* Inverse quarter turn (counterclockwise). */
inline LatticeVector quarter_turn_ccw(LatticeVector v) { return {-v.y, v.x}; }

std::int64_t lattice_gcd(std::int64_t a, std::int64_t b);

struct Facet {
    LatticePoint from;
    LatticePoint to;
    LatticeVector edge;       // to - from
    LatticeVector direction;  // primitive: edge / lattice_length
    LatticeVector normal;     // outward, = facet_normal(edge)
    std::int64_t lattice_length = 0;
};

struct LatticePolygon {
    /* Counterclockwise corner vertices, starting at the lexicographically smallest.
       Collinear boundary points are never listed; they show up as lattice_length > 1. */
    std::vector<LatticePoint> vertices;
    std::vector<Facet> facets;  // facet k joins vertices[k] to vertices[(k+1) % n]

    std::int64_t double_area() const;
    bool operator==(const LatticePolygon& o) const { return vertices == o.vertices; }
};

/* Twice the signed shoelace area of the vertex cycle (positive for counterclockwise). */
std::int64_t double_area(const std::vector<LatticePoint>& cycle);

/* Convex hull of the support with two-dimensionality enforced. */
LatticePolygon newton_polygon(const std::vector<LatticePoint>& support);

/* True iff no facet's relative-interior lattice point belongs to the support. */
bool is_sparse_along_edges(const std::vector<LatticePoint>& support);
bool is_sparse_along_edges(const std::vector<LatticePoint>& support, const LatticePolygon& polygon);

/* Translate so the lexicographically smallest vertex sits at the origin. */
LatticePolygon canonical_translate(const LatticePolygon& p);

/* Pentagon family with facet vectors (1,0), (k,1), (-k,1), (-1,-1), (0,-1); k >= 1.
   Twice its area is 2k + 3. */
LatticePolygon tiered_pentagon(std::int64_t k);

}  // namespace coamoeba
