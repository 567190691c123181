#pragma once

#include <cstdint>
#include <vector>

#include "coamoeba/graph.hpp"
#include "coamoeba/laurent.hpp"

namespace coamoeba {

/* Edge signs making the product around every embedded face with 2k sides equal
   (-1)^(k+1). Tree edges are fixed positive, faces are solved by propagation
   over a dual spanning tree, and the two leftover cycle edges are tried in all
   four sign twists; the chosen twist and the leftover edges are reported. */
struct SignAssignment {
    std::vector<int> sign;      // per edge, +1 or -1
    std::vector<int> leftover;  // edge ids carrying the free cycle signs
    std::vector<int> twist;     // chosen sign per leftover edge
};

SignAssignment kasteleyn_signs(const DimerGraph& g);

/* White-by-black adjacency matrix; each edge contributes sign times weight
   times the monomial of its quarter-turned winding. */
std::vector<std::vector<LaurentPolynomial2>> kasteleyn_matrix(const DimerGraph& g,
                                                              const SignAssignment& s);

LaurentPolynomial2 characteristic_polynomial(const DimerGraph& g);

/* Newton polygon of the characteristic polynomial, canonically translated so
   the choice of fundamental domain drops out. */
LatticePolygon characteristic_polygon(const DimerGraph& g);

/* Perfect matchings of one fundamental domain, counted as the coefficient
   magnitudes of the characteristic polynomial summed over its support. */
std::int64_t matching_count(const DimerGraph& g);

}  // namespace coamoeba
