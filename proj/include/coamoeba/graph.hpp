#pragma once

#include <vector>

#include "coamoeba/arrangement.hpp"
#include "coamoeba/rational.hpp"

namespace coamoeba {

enum class GraphParity { Odd, Even };

/* One edge per double point. A crossing whose equal-index pair carries the
   selected parity joins those two cells, directed from the sector both strands
   enter to the sector both leave; otherwise it joins the two cells of the
   unequal pair, undirected. */
struct MixedEdge {
    int from = -1, to = -1;  // arrangement face ids
    bool directed = false;
    int crossing = -1;  // arrangement vertex id
};

struct MixedGraph {
    GraphParity parity = GraphParity::Odd;
    std::vector<int> cells;   // face ids whose index has the selected parity
    std::vector<bool> white;  // per cells entry: index == (Odd ? 1 : 0) mod 4
    std::vector<MixedEdge> edges;
};

MixedGraph index_graph(const TorusArrangement& arr, const IndexMap& idx, GraphParity parity);

/* Cells eligible for the triangle-flip rewrite: triangles of index +-2. */
std::vector<int> yang_baxter_sites(const TorusArrangement& arr, const IndexMap& idx);

/* Slide the curve opposite the triangle's lexicographically smallest corner
   across that corner. Preserves all vertex/edge/face counts, the pairwise
   crossing matrix and the index of every surviving cell; the site itself is
   replaced by a triangle of index -sign/|.|. The returned arrangement carries
   rewrite_probe, a point whose cell kept its index across the rewrite, for
   transferring calibration. Pass the current index map when the arrangement is
   not made of pure geodesics. */
TorusArrangement apply_yang_baxter(const TorusArrangement& arr, int cell,
                                   const IndexMap* idx = nullptr);

struct DimerVertex {
    int cell = -1;  // face id in `geometry`
    bool white = false;
    Vec2 position;
    std::vector<int> rotation;  // incident edge ids, counterclockwise
};

struct DimerEdge {
    int tail = -1, head = -1;  // vertex ids: tail white, head black
    int crossing = -1;         // vertex id in `geometry`
    Vec2 position;
    LatticeVector wrap;  // fundamental-domain seams crossed walking white to black
    GaussianRational weight{1};
};

struct DimerGraph {
    std::vector<DimerVertex> vertices;
    std::vector<DimerEdge> edges;
    TorusArrangement geometry;  // the fully rewritten arrangement
    IndexMap index;             // calibrated index on `geometry`
    int zero_cells = 0;
};

/* Eliminate every rewrite site, then read the bipartite graph off the odd
   cells: one edge per crossing, cyclic order from the cell boundary walk.
   Checks Euler count zero and face count equal to the zero cells. */
DimerGraph dimerize(const TorusArrangement& arr, const IndexMap* idx = nullptr);

/* Faces traced from the rotation system. Dart 2e runs tail->head of edge e,
   dart 2e+1 the reverse; after each dart the trace turns onto the next edge
   counterclockwise at the landing vertex, so every orbit keeps one face on
   the right of its darts. */
std::vector<std::vector<int>> rotation_faces(const DimerGraph& g);

bool has_perfect_matching(const DimerGraph& g);

/* Arrows of the dual graph: one per dimer edge, from the face right of the
   white-to-black dart to the face on its left. */
struct QuiverArrow {
    int from = -1, to = -1;  // face ids from rotation_faces order
    int edge = -1;
};

struct Quiver {
    int face_count = 0;
    std::vector<QuiverArrow> arrows;
};

Quiver quiver_orientation(const DimerGraph& g);

/* A curve family is consistent when every curve has nonzero homology, nothing
   overlaps or self-crosses, and each pair meets at most once per homotopy
   class and crossing sign (classes: lift differences modulo both homology
   lattices). */
bool is_consistent(const TorusArrangement& arr);
bool is_consistent(const std::vector<TorusCurve>& curves);

/* Closures of the nonzero cells (the combinatorial picture of the argument
   image) and its complement. Covered components merge across shared arcs and
   shared corners; complement components only merge across arcs with zero on
   both sides, since corners on the shell separate them. */
struct CoamoebaComponents {
    std::vector<int> covered_component;     // per face, -1 on zero cells
    std::vector<int> complement_component;  // per face, -1 on nonzero cells
    int covered_count = 0;
    int complement_count = 0;
};

CoamoebaComponents combinatorial_coamoeba(const TorusArrangement& arr, const IndexMap& idx);

}  // namespace coamoeba
