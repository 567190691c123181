#include "coamoeba/shell.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coamoeba/errors.hpp"

namespace coamoeba {

TorusArrangement shell(const SupportedPolynomial& f, double tol) {
    LatticePolygon p = f.newton();
    std::vector<TorusCurve> curves;
    for (int fi = 0; fi < int(p.facets.size()); ++fi) {
        auto ep = edge_polynomial(f, fi);
        for (const auto& rc : univariate_roots(ep.coefficients, tol)) {
            double c = std::atan2(rc.value.imag(), rc.value.real());
            curves.push_back(geodesic_curve(p.facets[fi].direction, c, rc.multiplicity, fi));
        }
    }
    BuildOptions opts;
    opts.allow_degenerate = true;
    auto arr = build_arrangement(std::move(curves), opts);
    arr.source_polygon = p;
    return arr;
}

std::optional<int> unique_index_shift(const std::vector<int>& relative,
                                      const std::vector<int>& fiber_counts) {
    if (relative.size() != fiber_counts.size() || relative.empty()) return std::nullopt;
    int bound = 0;
    for (std::size_t i = 0; i < relative.size(); ++i)
        bound = std::max(bound, fiber_counts[i] + std::abs(relative[i]));
    std::vector<int> feasible;
    for (int s = -bound; s <= bound; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < relative.size(); ++i) {
            int v = relative[i] + s;
            ok = ok && fiber_counts[i] >= std::abs(v) && (fiber_counts[i] - v) % 2 == 0;
        }
        if (ok) feasible.push_back(s);
    }
    if (feasible.size() != 1) return std::nullopt;
    return feasible[0];
}

IndexMap calibrate_index(const TorusArrangement& arr, const SupportedPolynomial& f,
                         const CalibrateOptions& opts) {
    if (!arr.has_geometry) throw UncalibratedIndex("geometry required for calibration");
    IndexMap rel = relative_index_map(arr);

    auto smp = sample_coamoeba(f, arr, opts.sampling);
    double min_area = opts.min_uncovered_area;
    if (min_area <= 0) {
        double h = kTwoPi / opts.sampling.grid;
        min_area = 50.0 * h * h;
    }
    std::vector<int> uncovered;
    for (int fi = 0; fi < int(arr.faces.size()); ++fi)
        if (smp.hits[std::size_t(fi)] == 0 && arr.faces[std::size_t(fi)].area > min_area)
            uncovered.push_back(fi);
    if (!uncovered.empty()) {
        for (int fi : uncovered)
            if (rel.value[std::size_t(fi)] != rel.value[std::size_t(uncovered[0])])
                throw AmbiguousCalibration("cells missed by the argument image disagree");
        return calibrate_by_reference(arr, rel, uncovered[0], 0);
    }

    std::vector<int> order(arr.faces.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return arr.faces[std::size_t(a)].area > arr.faces[std::size_t(b)].area; });
    if (int(order.size()) > opts.max_fiber_probes) order.resize(std::size_t(opts.max_fiber_probes));
    std::vector<int> rs, ns;
    for (int fi : order) {
        rs.push_back(rel.value[std::size_t(fi)]);
        ns.push_back(fiber_count(f, arr.faces[std::size_t(fi)].interior_point, opts.fiber));
    }
    auto s = unique_index_shift(rs, ns);
    if (!s) throw AmbiguousCalibration("fiber counts do not pin a unique shift");
    return calibrate_by_reference(arr, rel, order[0], rs[0] + *s);
}

}  // namespace coamoeba
