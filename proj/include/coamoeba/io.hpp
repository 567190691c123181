#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "coamoeba/arrangement.hpp"
#include "coamoeba/graph.hpp"
#include "coamoeba/kasteleyn.hpp"
#include "coamoeba/poly.hpp"

namespace coamoeba {

/* Term-per-line text format: "ex ey re im", blank lines and '#' comments
   allowed. Printing is canonical (support order), so parse(format(f)) == f. */
SupportedPolynomial parse_polynomial_text(const std::string& text);
std::string format_polynomial_text(const SupportedPolynomial& f);
SupportedPolynomial load_polynomial(const std::string& path);

/* Angle tokens: decimals, "pi", "3pi/2", "0.75pi", "pi/6". */
double parse_angle(const std::string& token);

nlohmann::json polygon_json(const LatticePolygon& p);
LatticePolygon polygon_from_json(const nlohmann::json& j);
LatticePolygon load_polygon(const std::string& path);

nlohmann::json arrangement_json(const TorusArrangement& arr, const IndexMap* idx = nullptr);
nlohmann::json mixed_graph_json(const MixedGraph& g);
nlohmann::json dimer_json(const DimerGraph& g);
nlohmann::json laurent_json(const LaurentPolynomial2& p);

/* Decimated Arg samples of the zero set, for rendering only. */
std::vector<Vec2> argument_cloud(const SupportedPolynomial& f, int grid = 96, double radius = 8.0);

struct RenderOptions {
    double scale = 110.0;  // pixels per radian
    bool index_labels = true;
    const IndexMap* index = nullptr;
    const MixedGraph* graph = nullptr;
    const DimerGraph* dimer = nullptr;
    const std::vector<Vec2>* cloud = nullptr;
};

/* One fundamental domain [0,2pi)^2, curves with orientation arrowheads and
   per-cell index labels; optional crossing-graph, dimer and cloud overlays. */
std::string render_svg(const TorusArrangement& arr, const RenderOptions& opts = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace coamoeba
