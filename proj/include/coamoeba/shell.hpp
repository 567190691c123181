#pragma once

#include <optional>

#include "coamoeba/arrangement.hpp"
#include "coamoeba/numeric.hpp"
#include "coamoeba/poly.hpp"

namespace coamoeba {

/* Geodesic arrangement dual to the Newton polygon: each facet contributes one
   curve per root of its edge polynomial, offset by the argument of the root and
   weighted by its multiplicity. Repeated or concurrent curves are kept, so the
   result may be non-simple; check simple() before relying on double points. */
TorusArrangement shell(const SupportedPolynomial& f, double tol = 1e-9);

struct CalibrateOptions {
    SampleOptions sampling;
    FiberOptions fiber;
    int max_fiber_probes = 6;
    double min_uncovered_area = -1.0;  // defaults to 50 (2pi / grid)^2
};

/* The shift making relative values absolute, from fiber counts alone: the true
   index i + s obeys n >= |i + s| and n == i + s (mod 2), since a fiber with n
   points contributes n signed crossings. Empty optional when not unique. */
std::optional<int> unique_index_shift(const std::vector<int>& relative,
                                      const std::vector<int>& fiber_counts);

/* Absolute index map measured from the polynomial rather than from offsets:
   cells missed by the argument image of the zero set carry index zero; when
   every cell is hit, fall back to fiber counts over the largest cells. */
IndexMap calibrate_index(const TorusArrangement& arr, const SupportedPolynomial& f,
                         const CalibrateOptions& opts = {});

}  // namespace coamoeba
