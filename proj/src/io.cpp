#include "coamoeba/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace coamoeba {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/* Fixed decimals for SVG coordinates; keeps files small and diffs stable. */
std::string svgnum(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

SupportedPolynomial parse_polynomial_text(const std::string& text) {
    std::vector<Term> terms;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno += 1;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        long long ex, ey;
        double re, im;
        if (!(row >> ex)) continue;  // blank or comment-only
        if (!(row >> ey >> re >> im))
            throw std::invalid_argument("polynomial text line " + std::to_string(lineno) +
                                        ": expected \"ex ey re im\"");
        std::string extra;
        if (row >> extra)
            throw std::invalid_argument("polynomial text line " + std::to_string(lineno) +
                                        ": trailing token '" + extra + "'");
        terms.push_back({{ex, ey}, {re, im}});
    }
    return make_polynomial(std::move(terms));
}

std::string format_polynomial_text(const SupportedPolynomial& f) {
    std::string out = "# ex ey re im\n";
    for (const auto& t : f.terms) {
        out += std::to_string(t.exponent.x) + " " + std::to_string(t.exponent.y) + " " +
               num(t.coefficient.real()) + " " + num(t.coefficient.imag()) + "\n";
    }
    return out;
}

SupportedPolynomial load_polynomial(const std::string& path) {
    return parse_polynomial_text(read_file(path));
}

double parse_angle(const std::string& token) {
    const double pi = 0.5 * kTwoPi;
    auto pos = token.find("pi");
    if (pos == std::string::npos) return std::stod(token);
    std::string pre = token.substr(0, pos), post = token.substr(pos + 2);
    double factor = 1.0;
    if (pre == "-")
        factor = -1.0;
    else if (!pre.empty())
        factor = std::stod(pre);
    double value = factor * pi;
    if (!post.empty()) {
        if (post[0] != '/') throw std::invalid_argument("bad angle token '" + token + "'");
        value /= std::stod(post.substr(1));
    }
    return value;
}

nlohmann::json polygon_json(const LatticePolygon& p) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : p.vertices) verts.push_back({v.x, v.y});
    return {{"vertices", verts}, {"double_area", p.double_area()}};
}

LatticePolygon polygon_from_json(const nlohmann::json& j) {
    if (!j.contains("vertices")) throw std::invalid_argument("polygon json: missing 'vertices'");
    std::vector<LatticePoint> pts;
    for (const auto& v : j["vertices"])
        pts.push_back({v.at(0).get<std::int64_t>(), v.at(1).get<std::int64_t>()});
    return newton_polygon(pts);
}

LatticePolygon load_polygon(const std::string& path) {
    return polygon_from_json(nlohmann::json::parse(read_file(path)));
}

nlohmann::json arrangement_json(const TorusArrangement& arr, const IndexMap* idx) {
    nlohmann::json curves = nlohmann::json::array();
    for (const auto& c : arr.curves) {
        nlohmann::json jc{{"homology", {c.homology.x, c.homology.y}},
                          {"weight", c.weight},
                          {"facet", c.parent_facet}};
        nlohmann::json anchors = nlohmann::json::array(), dirs = nlohmann::json::array();
        for (const auto& a : c.anchors) anchors.push_back({a.x, a.y});
        for (const auto& d : c.directions) dirs.push_back({d.x, d.y});
        jc["anchors"] = anchors;
        jc["directions"] = dirs;
        if (c.pure_geodesic()) {
            jc["conormal"] = {c.conormal().x, c.conormal().y};
            jc["offset"] = c.line_offset();
        }
        curves.push_back(jc);
    }
    nlohmann::json faces = nlohmann::json::array();
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        nlohmann::json jf{{"sides", arr.faces[f].boundary.size()}};
        if (arr.has_geometry) {
            jf["area"] = arr.faces[f].area;
            jf["interior"] = {arr.faces[f].interior_point.x, arr.faces[f].interior_point.y};
        }
        if (idx && idx->value.size() == arr.faces.size()) jf["index"] = idx->value[f];
        faces.push_back(jf);
    }
    nlohmann::json j{{"curves", curves},
                     {"vertex_count", arr.vertices.size()},
                     {"edge_count", arr.edge_count()},
                     {"face_count", arr.faces.size()},
                     {"faces", faces},
                     {"simple", arr.simple()}};
    if (idx) j["calibrated"] = idx->calibrated;
    if (arr.source_polygon) j["polygon"] = polygon_json(*arr.source_polygon);
    return j;
}

nlohmann::json mixed_graph_json(const MixedGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"directed", e.directed}, {"crossing", e.crossing}});
    nlohmann::json white = nlohmann::json::array();
    for (bool w : g.white) white.push_back(w);
    return {{"parity", g.parity == GraphParity::Odd ? "odd" : "even"},
            {"cells", g.cells},
            {"white", white},
            {"edges", edges}};
}

nlohmann::json dimer_json(const DimerGraph& g) {
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : g.vertices)
        verts.push_back({{"cell", v.cell},
                         {"white", v.white},
                         {"position", {v.position.x, v.position.y}},
                         {"rotation", v.rotation}});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"tail", e.tail},
                         {"head", e.head},
                         {"crossing", e.crossing},
                         {"position", {e.position.x, e.position.y}},
                         {"wrap", {e.wrap.x, e.wrap.y}},
                         {"weight", to_string(e.weight)}});
    return {{"vertices", verts},
            {"edges", edges},
            {"zero_cells", g.zero_cells},
            {"face_cycles", rotation_faces(g).size()}};
}

nlohmann::json laurent_json(const LaurentPolynomial2& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms)
        terms.push_back({{"exponent", {e.x, e.y}}, {"coefficient", to_string(c)}});
    return {{"terms", terms}};
}

std::vector<Vec2> argument_cloud(const SupportedPolynomial& f, int grid, double radius) {
    std::vector<Vec2> cloud;
    const double logr = std::log(radius);
    std::int64_t lo = f.terms.front().exponent.y, hi = lo;
    for (const auto& t : f.terms) {
        lo = std::min(lo, t.exponent.y);
        hi = std::max(hi, t.exponent.y);
    }
    for (int i = 0; i < grid; ++i) {
        double rho = -logr + 2.0 * logr * (i + 0.5) / grid;
        for (int k = 0; k < grid; ++k) {
            double theta = kTwoPi * k / grid;
            Complex z = std::polar(std::exp(rho), theta);
            std::vector<Complex> coeffs(std::size_t(hi - lo + 1));
            for (const auto& t : f.terms)
                coeffs[std::size_t(t.exponent.y - lo)] += t.coefficient * std::pow(z, double(t.exponent.x));
            while (!coeffs.empty() && std::abs(coeffs.back()) < 1e-14) coeffs.pop_back();
            std::size_t lead = 0;
            while (lead < coeffs.size() && std::abs(coeffs[lead]) < 1e-14) ++lead;
            coeffs.erase(coeffs.begin(), coeffs.begin() + std::ptrdiff_t(lead));
            if (coeffs.size() < 2) continue;
            try {
                for (const auto& rc : univariate_roots(coeffs))
                    if (std::abs(rc.value) > 1e-12)
                        cloud.push_back(wrap_torus({theta, std::atan2(rc.value.imag(), rc.value.real())}));
            } catch (const IllConditioned&) {
            }
        }
    }
    return cloud;
}

namespace {

struct Mapper {
    double scale, margin, side;
    explicit Mapper(double s) : scale(s), margin(0.35 * s), side(kTwoPi * s) {}
    double width() const { return side + 2 * margin; }
    /* SVG y grows downward; the torus picture keeps y up. */
    double mx(double x) const { return margin + scale * x; }
    double my(double y) const { return margin + side - scale * y; }
};

/* Cut a lifted segment at the fundamental-domain seams and return the wrapped
   pieces; each piece stays inside [0,2pi]^2. */
std::vector<std::pair<Vec2, Vec2>> torus_pieces(Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    std::vector<double> ts{0.0, 1.0};
    for (int axis = 0; axis < 2; ++axis) {
        double p0 = axis ? a.y : a.x, dd = axis ? d.y : d.x;
        if (std::abs(dd) < 1e-15) continue;
        double q0 = p0, q1 = p0 + dd;
        int k0 = int(std::floor(std::min(q0, q1) / kTwoPi)) - 1;
        int k1 = int(std::ceil(std::max(q0, q1) / kTwoPi)) + 1;
        for (int k = k0; k <= k1; ++k) {
            double t = (k * kTwoPi - p0) / dd;
            if (t > 1e-12 && t < 1.0 - 1e-12) ts.push_back(t);
        }
    }
    std::sort(ts.begin(), ts.end());
    std::vector<std::pair<Vec2, Vec2>> pieces;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (ts[i + 1] - ts[i] < 1e-12) continue;
        Vec2 mid = a + (0.5 * (ts[i] + ts[i + 1])) * d;
        Vec2 shift{kTwoPi * std::floor(mid.x / kTwoPi), kTwoPi * std::floor(mid.y / kTwoPi)};
        pieces.push_back({a + ts[i] * d - shift, a + ts[i + 1] * d - shift});
    }
    return pieces;
}

std::string curve_color(std::size_t i) {
    int hue = int(47.0 * double(i)) % 360;  // golden-angle spacing keeps neighbors distinct
    return "hsl(" + std::to_string(hue) + ",70%,38%)";
}

void draw_line(std::string& svg, const Mapper& m, Vec2 a, Vec2 b, const std::string& style) {
    svg += "<line x1=\"" + svgnum(m.mx(a.x)) + "\" y1=\"" + svgnum(m.my(a.y)) + "\" x2=\"" +
           svgnum(m.mx(b.x)) + "\" y2=\"" + svgnum(m.my(b.y)) + "\" " + style + "/>\n";
}

void draw_wrapped(std::string& svg, const Mapper& m, Vec2 from, Vec2 to, const std::string& style) {
    Vec2 d{wrap_pm_pi(to.x - from.x), wrap_pm_pi(to.y - from.y)};
    for (const auto& [a, b] : torus_pieces(from, from + d)) draw_line(svg, m, a, b, style);
}

void draw_dot(std::string& svg, const Mapper& m, Vec2 p, double r, const std::string& style) {
    svg += "<circle cx=\"" + svgnum(m.mx(p.x)) + "\" cy=\"" + svgnum(m.my(p.y)) + "\" r=\"" +
           svgnum(r) + "\" " + style + "/>\n";
}

void draw_text(std::string& svg, const Mapper& m, Vec2 p, const std::string& text, int size,
               const std::string& fill) {
    svg += "<text x=\"" + svgnum(m.mx(p.x)) + "\" y=\"" + svgnum(m.my(p.y)) +
           "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"sans-serif\" "
           "font-size=\"" +
           std::to_string(size) + "\" fill=\"" + fill + "\">" + text + "</text>\n";
}

}  // namespace

std::string render_svg(const TorusArrangement& arr, const RenderOptions& opts) {
    Mapper m(opts.scale);
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           svgnum(m.width()) + "\" height=\"" + svgnum(m.width()) + "\" viewBox=\"0 0 " +
           svgnum(m.width()) + " " + svgnum(m.width()) + "\">\n<defs>\n";
    for (std::size_t c = 0; c < arr.curves.size(); ++c)
        svg += "<marker id=\"arrow" + std::to_string(c) +
               "\" viewBox=\"0 0 10 10\" refX=\"7\" refY=\"5\" markerWidth=\"6.5\" "
               "markerHeight=\"6.5\" orient=\"auto\"><path d=\"M 0 1 L 9 5 L 0 9 z\" fill=\"" +
               curve_color(c) + "\"/></marker>\n";
    svg += "<marker id=\"arrowg\" viewBox=\"0 0 10 10\" refX=\"7\" refY=\"5\" markerWidth=\"7\" "
           "markerHeight=\"7\" orient=\"auto\"><path d=\"M 0 1 L 9 5 L 0 9 z\" "
           "fill=\"#444\"/></marker>\n</defs>\n";
    svg += "<rect x=\"" + svgnum(m.margin) + "\" y=\"" + svgnum(m.margin) + "\" width=\"" +
           svgnum(m.side) + "\" height=\"" + svgnum(m.side) +
           "\" fill=\"white\" stroke=\"#999\" stroke-width=\"1\"/>\n";

    if (opts.cloud) {
        std::size_t step = std::max<std::size_t>(1, opts.cloud->size() / 20000);
        for (std::size_t i = 0; i < opts.cloud->size(); i += step)
            draw_dot(svg, m, (*opts.cloud)[i], 1.4, "fill=\"#8a8a8a\" fill-opacity=\"0.30\"");
    }

    for (std::size_t c = 0; c < arr.curves.size(); ++c) {
        const auto& curve = arr.curves[c];
        std::string style = "stroke=\"" + curve_color(c) + "\" stroke-width=\"" +
                            (curve.weight > 1 ? std::string("4.5") : std::string("2")) + "\"";
        std::pair<Vec2, Vec2> longest{{0, 0}, {0, 0}};
        double best = -1.0;
        for (std::size_t s = 0; s < curve.anchors.size(); ++s)
            for (const auto& piece : torus_pieces(curve.segment_start(s), curve.segment_end(s))) {
                draw_line(svg, m, piece.first, piece.second, style);
                double len = norm(piece.second - piece.first);
                if (len > best) {
                    best = len;
                    longest = piece;
                }
            }
        if (best > 0) {
            Vec2 a = longest.first + 0.42 * (longest.second - longest.first);
            Vec2 b = longest.first + 0.58 * (longest.second - longest.first);
            draw_line(svg, m, a, b, style + " marker-end=\"url(#arrow" + std::to_string(c) + ")\"");
        }
    }

    if (opts.graph) {
        const auto& g = *opts.graph;
        for (const auto& e : g.edges) {
            Vec2 pf = arr.faces[std::size_t(e.from)].interior_point;
            Vec2 pt = arr.faces[std::size_t(e.to)].interior_point;
            Vec2 px = arr.vertices[std::size_t(e.crossing)].pos;
            std::string style = "stroke=\"#444\" stroke-width=\"1.6\" stroke-dasharray=\"5 3\"";
            draw_wrapped(svg, m, pf, px, style);
            draw_wrapped(svg, m, px, pt,
                         style + (e.directed ? " marker-end=\"url(#arrowg)\"" : ""));
        }
        for (std::size_t i = 0; i < g.cells.size(); ++i) {
            Vec2 p = arr.faces[std::size_t(g.cells[i])].interior_point;
            draw_dot(svg, m, p, 6.5,
                     g.white[i] ? "fill=\"white\" stroke=\"black\" stroke-width=\"1.6\""
                                : "fill=\"black\"");
        }
    }

    if (opts.dimer) {
        const auto& g = *opts.dimer;
        for (const auto& e : g.edges) {
            std::string style = "stroke=\"#222\" stroke-width=\"2.4\"";
            draw_wrapped(svg, m, g.vertices[std::size_t(e.tail)].position, e.position, style);
            draw_wrapped(svg, m, e.position, g.vertices[std::size_t(e.head)].position, style);
        }
        for (const auto& v : g.vertices)
            draw_dot(svg, m, v.position, 7.0,
                     v.white ? "fill=\"white\" stroke=\"black\" stroke-width=\"1.8\""
                             : "fill=\"black\"");
    }

    if (opts.index_labels && opts.index && opts.index->value.size() == arr.faces.size() &&
        arr.has_geometry) {
        for (std::size_t f = 0; f < arr.faces.size(); ++f) {
            int v = opts.index->value[f];
            std::string label = (v > 0 ? "+" : "") + std::to_string(v);
            draw_text(svg, m, wrap_torus(arr.faces[f].interior_point), label, 15, "#111");
        }
    }

    svg += "</svg>\n";
    return svg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

}  // namespace coamoeba
