#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "coamoeba/experiments.hpp"
#include "coamoeba/io.hpp"
#include "coamoeba/kasteleyn.hpp"
#include "coamoeba/shell.hpp"

using namespace coamoeba;
using nlohmann::json;

namespace {

/* Exit contract: 0 success, 1 usage, 2 verification failure, 3 degenerate input. */
constexpr int kOk = 0, kUsage = 1, kVerifyFail = 2, kDegenerate = 3;

LatticePolygon named_polygon(const std::string& spec) {
    if (spec == "simplex") return newton_polygon({{0, 0}, {1, 0}, {0, 1}});
    if (spec == "square") return newton_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    if (spec == "double-simplex") return newton_polygon({{0, 0}, {2, 0}, {0, 2}});
    if (spec == "wide-quad") return newton_polygon({{0, 0}, {2, 0}, {1, 1}, {0, 1}});
    if (spec.rfind("pentagon:", 0) == 0) return tiered_pentagon(std::stoll(spec.substr(9)));
    return load_polygon(spec);  // anything else is a file path
}

std::vector<std::vector<double>> parse_offsets(const LatticePolygon& p, const std::string& list) {
    std::vector<double> flat;
    std::string token;
    std::istringstream in(list);
    while (std::getline(in, token, ',')) flat.push_back(parse_angle(token));
    std::vector<std::vector<double>> offsets;
    std::size_t at = 0;
    for (const auto& f : p.facets) {
        offsets.emplace_back();
        for (std::int64_t i = 0; i < f.lattice_length; ++i) {
            if (at >= flat.size()) throw std::invalid_argument("too few offsets for the polygon");
            offsets.back().push_back(flat[at++]);
        }
    }
    if (at != flat.size()) throw std::invalid_argument("too many offsets for the polygon");
    return offsets;
}

Vec2 parse_translation(const std::string& spec) {
    auto comma = spec.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--translate expects a,b");
    return {std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1))};
}

void emit(const json& j, const std::string& path) {
    if (path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_file(path, j.dump(2) + "\n");
}

struct ShellBundle {
    SupportedPolynomial f;
    TorusArrangement arr;
    IndexMap idx;
};

ShellBundle build_shell(const std::string& poly_path, double tol, bool allow_degenerate) {
    ShellBundle b{load_polynomial(poly_path), {}, {}};
    b.arr = shell(b.f, tol);
    if (!b.arr.simple() && !allow_degenerate)
        throw DegenerateSystem("shell is not simple (repeated or concurrent geodesics); "
                               "pass --allow-degenerate to proceed");
    b.idx = canonical_index_map(b.arr);
    return b;
}

json sweep_json(const SweepReport& rep) {
    json polys = json::array();
    for (const auto& np : rep.polygons) {
        json jp = polygon_json(np.polygon);
        jp["name"] = np.name;
        polys.push_back(jp);
    }
    json samples = json::array();
    for (const auto& s : rep.samples)
        samples.push_back({{"polygon", s.polygon},
                           {"draw", s.draw},
                           {"built", s.built},
                           {"resamples", s.resamples},
                           {"zero_cells", s.record.zero_cells},
                           {"double_area", s.record.double_area},
                           {"lhs", s.record.lhs},
                           {"rhs", s.record.rhs},
                           {"angle_residual", s.angle_residual}});
    return {{"polygons", polys},
            {"samples", samples},
            {"discrepancies", rep.discrepancies},
            {"bound_violations", rep.bound_violations},
            {"unbuilt", rep.unbuilt},
            {"max_angle_residual", rep.max_angle_residual}};
}

json bijection_json(const ArgBijectionReport& rep) {
    json images = json::array(), comps = json::array();
    for (const auto& p : rep.images) images.push_back({p.x, p.y});
    for (int c : rep.component) comps.push_back(c);
    return {{"translation", {rep.translation.x, rep.translation.y}},
            {"bijective", rep.bijective},
            {"critical_count", rep.critical_count},
            {"component_count", rep.component_count},
            {"boundary_degenerate", rep.boundary_degenerate},
            {"images", images},
            {"components", comps}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coamoeba: oriented geodesic arrangements of bivariate polynomials on the torus"};
    app.require_subcommand(1);

    std::string poly_path, polygon_spec, offsets_list, svg_path, json_path, parity_name = "odd";
    std::string translate_spec;
    double tol = 1e-9;
    int samples = 100, budget = 10000, count = 20, grid = 96, k_tier = 0;
    std::uint64_t seed = 1;
    bool allow_degenerate = false;

    auto add_poly = [&](CLI::App* sub) {
        sub->add_option("--poly", poly_path, "polynomial file: lines \"ex ey re im\"")->required();
        sub->add_option("--tol", tol, "root clustering tolerance");
        sub->add_flag("--allow-degenerate", allow_degenerate, "accept non-simple shells");
    };
    auto add_out = [&](CLI::App* sub, bool with_svg = true) {
        sub->add_option("--json", json_path, "write the JSON report here (default: stdout)");
        if (with_svg) sub->add_option("--svg", svg_path, "write an SVG picture here");
    };

    auto* cmd_shell = app.add_subcommand("shell", "build the dual geodesic arrangement");
    add_poly(cmd_shell);
    add_out(cmd_shell);

    auto* cmd_index = app.add_subcommand("index", "calibrated cell indices of the shell");
    add_poly(cmd_index);
    add_out(cmd_index);

    auto* cmd_graph = app.add_subcommand("graph", "crossing graph on cells of one index parity");
    add_poly(cmd_graph);
    add_out(cmd_graph);
    cmd_graph->add_option("--parity", parity_name, "odd|even")
        ->check(CLI::IsMember({"odd", "even"}));

    auto* cmd_dimer = app.add_subcommand("dimerize", "bipartite dimer graph of the shell");
    add_poly(cmd_dimer);
    add_out(cmd_dimer);

    auto* cmd_char = app.add_subcommand("charpoly", "Kasteleyn characteristic polynomial");
    add_poly(cmd_char);
    add_out(cmd_char, false);

    auto* cmd_thm1 = app.add_subcommand("verify-thm1", "cell-count/index-profile equivalence sweep");
    cmd_thm1->add_option("--polygon", polygon_spec,
                         "file, or simplex|square|double-simplex|wide-quad|pentagon:K")
        ->required();
    cmd_thm1->add_option("--random-offsets,--samples", samples, "random arrangements to draw");
    cmd_thm1->add_option("--offsets", offsets_list,
                         "comma list of offsets (angle tokens) for one explicit arrangement");
    cmd_thm1->add_option("--seed", seed, "RNG seed");
    add_out(cmd_thm1, false);

    auto* cmd_render = app.add_subcommand("coamoeba-render", "SVG of the shell and Arg samples");
    add_poly(cmd_render);
    cmd_render->add_option("--svg", svg_path, "output SVG path")->required();
    cmd_render->add_option("--grid", grid, "sampling grid per axis");

    auto* cmd_circuit = app.add_subcommand(
        "circuit-check", "complement count and critical-point bijection for circuit tetranomials");
    cmd_circuit->add_option("--poly", poly_path, "check one polynomial instead of a random corpus");
    cmd_circuit->add_option("--count", count, "corpus size");
    cmd_circuit->add_option("--seed", seed, "RNG seed");
    cmd_circuit->add_option("--translate", translate_spec, "a,b: fix the translation (single mode)");
    cmd_circuit->add_option("--tol", tol, "critical-point residual tolerance");
    add_out(cmd_circuit, false);

    auto* cmd_search = app.add_subcommand("search-admissible",
                                          "randomized search for admissible dual arrangements");
    cmd_search->add_option("--polygon", polygon_spec, "file or named polygon")->required();
    cmd_search->add_option("--budget", budget, "candidates to try");
    cmd_search->add_option("--seed", seed, "RNG seed");
    add_out(cmd_search, false);

    auto* cmd_obstruction =
        app.add_subcommand("obstruction", "counting certificate for the pentagon family");
    cmd_obstruction->add_option("--k", k_tier, "tier, at least 2")->required();
    add_out(cmd_obstruction, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return kUsage;
    }

    try {
        if (cmd_shell->parsed() || cmd_index->parsed()) {
            auto b = build_shell(poly_path, tol, allow_degenerate);
            json j = arrangement_json(b.arr, &b.idx);
            if (cmd_index->parsed()) {
                auto comps = combinatorial_coamoeba(b.arr, b.idx);
                int zero = 0;
                for (int v : b.idx.value) zero += v == 0;
                j["zero_cells"] = zero;
                j["complement_components"] = comps.complement_count;
                j["covered_components"] = comps.covered_count;
            }
            emit(j, json_path);
            if (!svg_path.empty()) {
                RenderOptions ro;
                ro.index = &b.idx;
                write_file(svg_path, render_svg(b.arr, ro));
            }
            return kOk;
        }
        if (cmd_graph->parsed()) {
            auto b = build_shell(poly_path, tol, allow_degenerate);
            auto g = index_graph(b.arr, b.idx,
                                 parity_name == "odd" ? GraphParity::Odd : GraphParity::Even);
            emit(mixed_graph_json(g), json_path);
            if (!svg_path.empty()) {
                RenderOptions ro;
                ro.index = &b.idx;
                ro.graph = &g;
                write_file(svg_path, render_svg(b.arr, ro));
            }
            return kOk;
        }
        if (cmd_dimer->parsed()) {
            auto b = build_shell(poly_path, tol, allow_degenerate);
            auto g = dimerize(b.arr, &b.idx);
            emit(dimer_json(g), json_path);
            if (!svg_path.empty()) {
                RenderOptions ro;
                ro.index = &g.index;
                ro.dimer = &g;
                write_file(svg_path, render_svg(g.geometry, ro));
            }
            return kOk;
        }
        if (cmd_char->parsed()) {
            auto b = build_shell(poly_path, tol, allow_degenerate);
            auto g = dimerize(b.arr, &b.idx);
            auto cp = characteristic_polynomial(g);
            auto cpoly = characteristic_polygon(g);
            json j = laurent_json(cp);
            j["polygon"] = polygon_json(cpoly);
            j["input_polygon"] = polygon_json(canonical_translate(b.f.newton()));
            bool match = cpoly == canonical_translate(b.f.newton());
            j["matches_input_polygon"] = match;
            j["matchings"] = matching_count(g);
            emit(j, json_path);
            return match ? kOk : kVerifyFail;
        }
        if (cmd_thm1->parsed()) {
            auto poly = named_polygon(polygon_spec);
            if (!offsets_list.empty()) {
                auto arr = dual_arrangement(poly, parse_offsets(poly, offsets_list));
                auto idx = canonical_index_map(arr);
                auto rec = theorem1_predicates(arr, idx);
                auto ang = angle_diagnostics(arr, idx);
                double residual =
                    std::abs(2.0 * ang.total_theta_o - kTwoPi * double(rec.double_area));
                json j{{"zero_cells", rec.zero_cells},   {"double_area", rec.double_area},
                       {"lhs", rec.lhs},                 {"rhs", rec.rhs},
                       {"equivalent", rec.lhs == rec.rhs}, {"angle_residual", residual}};
                emit(j, json_path);
                return (rec.lhs == rec.rhs && residual < 1e-9) ? kOk : kVerifyFail;
            }
            auto rep = theorem1_sweep({{polygon_spec, poly}}, samples, seed);
            emit(sweep_json(rep), json_path);
            bool ok = rep.discrepancies == 0 && rep.bound_violations == 0 && rep.unbuilt == 0 &&
                      rep.max_angle_residual < 1e-9;
            return ok ? kOk : kVerifyFail;
        }
        if (cmd_render->parsed()) {
            auto b = build_shell(poly_path, tol, allow_degenerate);
            auto cloud = argument_cloud(b.f, grid);
            RenderOptions ro;
            ro.index = &b.idx;
            ro.cloud = &cloud;
            write_file(svg_path, render_svg(b.arr, ro));
            return kOk;
        }
        if (cmd_circuit->parsed()) {
            if (!poly_path.empty()) {
                auto b = build_shell(poly_path, tol, allow_degenerate);
                auto comps = combinatorial_coamoeba(b.arr, b.idx);
                std::int64_t d = b.f.newton().double_area();
                json j{{"double_area", d}, {"complement_components", comps.complement_count}};
                ArgBijectionReport rep;
                if (!translate_spec.empty()) {
                    CriticalOptions co;
                    co.tol = tol;
                    Vec2 t = parse_translation(translate_spec);
                    auto pts = critical_points(b.f, t, co);
                    rep = arg_bijection_at(b.f, b.arr, b.idx, t);
                    json crit = json::array();
                    for (const auto& [z, w] : pts)
                        crit.push_back({{"z", {z.real(), z.imag()}}, {"w", {w.real(), w.imag()}}});
                    j["critical_points"] = crit;
                } else {
                    rep = arg_bijection_check(b.f, b.arr, b.idx);
                }
                j["bijection"] = bijection_json(rep);
                bool ok = comps.complement_count == int(d) && rep.bijective;
                emit(j, json_path);
                return ok ? kOk : kVerifyFail;
            }
            auto corpus = circuit_corpus(count, seed);
            auto cc = circuit_check(corpus);
            auto bj = bijection_experiment(corpus);
            json rows = json::array();
            for (std::size_t i = 0; i < cc.rows.size(); ++i) {
                const auto& o = cc.rows[i];
                json row{{"label", o.label},
                         {"generic", o.generic},
                         {"double_area", o.double_area}};
                if (o.generic) {
                    row["complement_components"] = o.complement;
                    row["matched"] = o.matched;
                    row["bijection"] = bijection_json(bj.rows[i].report);
                } else {
                    row["excluded"] = o.reason;
                }
                rows.push_back(row);
            }
            json j{{"rows", rows},
                   {"generic", cc.generic},
                   {"matched", cc.matched},
                   {"excluded", cc.excluded},
                   {"bijective", bj.successes},
                   {"boundary_flagged", bj.boundary_flagged}};
            emit(j, json_path);
            bool ok = cc.matched == cc.generic &&
                      10 * bj.successes >= 9 * bj.generic &&
                      bj.successes + bj.boundary_flagged == bj.generic;
            return ok ? kOk : kVerifyFail;
        }
        if (cmd_search->parsed()) {
            auto poly = named_polygon(polygon_spec);
            auto rep = search_admissible(poly, budget, seed);
            json j{{"found", rep.found},
                   {"obstructed", rep.obstructed},
                   {"attempts", rep.attempts},
                   {"non_simple", rep.non_simple},
                   {"inadmissible", rep.inadmissible},
                   {"budget", rep.budget},
                   {"seed", rep.seed}};
            if (rep.obstructed) j["m"] = rep.certificate_m;
            if (rep.found) j["offsets"] = rep.offsets;
            emit(j, json_path);
            return (rep.found || rep.obstructed) ? kOk : kVerifyFail;
        }
        if (cmd_obstruction->parsed()) {
            auto cert = tier_obstruction(k_tier);
            emit(json{{"k", k_tier}, {"m", cert.m}, {"obstructed", cert.obstructed}}, json_path);
            return kOk;
        }
    } catch (const DegenerateSupport& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kDegenerate;
    } catch (const DegenerateSystem& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kDegenerate;
    } catch (const NonSimpleArrangement& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kDegenerate;
    } catch (const NotDimerizable& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kDegenerate;
    } catch (const AmbiguousCalibration& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kDegenerate;
    } catch (const UncalibratedIndex& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kDegenerate;
    } catch (const IllConditioned& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
