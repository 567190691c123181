#include "coamoeba/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "coamoeba/errors.hpp"
#include "coamoeba/graph.hpp"
#include "coamoeba/shell.hpp"

namespace coamoeba {

namespace {

const double PI = 0.5 * kTwoPi;

/* Counter-mixed seeds give every sample its own stream, so parallel and
   serial schedules see identical randomness. */
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t salt, std::uint64_t counter) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(salt * 0x9e3779b97f4a7c15ULL + counter)));
}

template <typename Work>
void run_indexed(int total, ExecPolicy policy, const Work& work) {
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < total; ++i) work(i);
    } else {
        for (int i = 0; i < total; ++i) work(i);
    }
}

}  // namespace

std::vector<NamedPolygon> standard_sweep_polygons() {
    return {{"simplex", newton_polygon({{0, 0}, {1, 0}, {0, 1}})},
            {"square", newton_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})},
            {"double-simplex", newton_polygon({{0, 0}, {2, 0}, {0, 2}})},
            {"wide-quad", newton_polygon({{0, 0}, {2, 0}, {1, 1}, {0, 1}})},
            {"pentagon-1", tiered_pentagon(1)}};
}

std::vector<std::vector<double>> random_balanced_offsets(const LatticePolygon& p,
                                                         std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    std::vector<std::vector<double>> offsets;
    double sum = 0;
    int m = 0;
    for (const auto& f : p.facets) {
        offsets.emplace_back();
        for (std::int64_t i = 0; i < f.lattice_length; ++i) {
            offsets.back().push_back(uni(rng));
            sum += offsets.back().back();
            m += 1;
        }
    }
    offsets.back().back() = wrap_2pi(offsets.back().back() + PI * m - sum);
    return offsets;
}

SweepReport theorem1_sweep(const std::vector<NamedPolygon>& polygons, int samples_per_polygon,
                           std::uint64_t seed, ExecPolicy policy) {
    SweepReport rep;
    rep.polygons = polygons;
    const int total = int(polygons.size()) * samples_per_polygon;
    rep.samples.assign(std::size_t(total), {});
    run_indexed(total, policy, [&](int t) {
        SweepSample s;
        s.polygon = t / samples_per_polygon;
        s.draw = t % samples_per_polygon;
        const auto& poly = polygons[std::size_t(s.polygon)].polygon;
        auto rng = stream(seed, 0x51, std::uint64_t(t));
        for (int tries = 0; tries < 100 && !s.built; ++tries) {
            auto offsets = random_balanced_offsets(poly, rng);
            try {
                auto arr = dual_arrangement(poly, offsets);
                auto idx = canonical_index_map(arr);
                s.record = theorem1_predicates(arr, idx);
                auto ang = angle_diagnostics(arr, idx);
                s.angle_residual =
                    std::abs(2.0 * ang.total_theta_o - kTwoPi * double(s.record.double_area));
                s.built = true;
            } catch (const NonSimpleArrangement&) {
                s.resamples += 1;
            } catch (const UncalibratedIndex&) {
                s.resamples += 1;
            }
        }
        rep.samples[std::size_t(t)] = s;
    });
    for (const auto& s : rep.samples) {
        if (!s.built) {
            rep.unbuilt += 1;
            continue;
        }
        if (s.record.lhs != s.record.rhs) rep.discrepancies += 1;
        if (s.record.zero_cells > s.record.double_area) rep.bound_violations += 1;
        rep.max_angle_residual = std::max(rep.max_angle_residual, s.angle_residual);
    }
    return rep;
}

std::optional<std::int64_t> pentagon_tier(const LatticePolygon& p) {
    std::int64_t d = p.double_area();
    if (d < 5 || (d - 3) % 2 != 0) return std::nullopt;
    std::int64_t k = (d - 3) / 2;
    if (canonical_translate(p) == canonical_translate(tiered_pentagon(k))) return k;
    return std::nullopt;
}

namespace {

std::vector<std::vector<double>> uniform_offsets(const LatticePolygon& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, kTwoPi);
    std::vector<std::vector<double>> offsets;
    for (const auto& f : p.facets) {
        offsets.emplace_back();
        for (std::int64_t i = 0; i < f.lattice_length; ++i) offsets.back().push_back(uni(rng));
    }
    return offsets;
}

}  // namespace

AdmissibleSearch search_admissible(const LatticePolygon& p, int budget, std::uint64_t seed,
                                   ExecPolicy policy) {
    AdmissibleSearch out;
    out.budget = budget;
    out.seed = seed;
    if (auto k = pentagon_tier(p); k && *k >= 2) {
        auto cert = tier_obstruction(int(*k));
        out.certificate_m = cert.m;
        if (cert.obstructed) {
            out.obstructed = true;
            return out;
        }
    }
    // outcome per attempt: 0 inadmissible, 1 non-simple, 2 admissible
    std::vector<signed char> outcome(std::size_t(budget), -1);
    auto attempt = [&](int a) {
        auto rng = stream(seed, 0xAD, std::uint64_t(a));
        auto offsets = uniform_offsets(p, rng);
        BuildOptions bo;
        bo.geometry = false;
        try {
            auto arr = dual_arrangement(p, offsets, bo);
            outcome[std::size_t(a)] = is_admissible(arr) ? 2 : 0;
        } catch (const NonSimpleArrangement&) {
            outcome[std::size_t(a)] = 1;
        }
    };
    int winner = -1;
    const int chunk = 1024;
    for (int base = 0; base < budget && winner < 0; base += chunk) {
        const int hi = std::min(budget, base + chunk);
        run_indexed(hi - base, policy, [&](int i) { attempt(base + i); });
        for (int a = base; a < hi && winner < 0; ++a)
            if (outcome[std::size_t(a)] == 2) winner = a;
    }
    const int scanned = winner >= 0 ? winner + 1 : budget;
    out.attempts = scanned;
    for (int a = 0; a < scanned; ++a) {
        if (outcome[std::size_t(a)] == 1) out.non_simple += 1;
        if (outcome[std::size_t(a)] == 0) out.inadmissible += 1;
    }
    if (winner >= 0) {
        out.found = true;
        auto rng = stream(seed, 0xAD, std::uint64_t(winner));
        out.offsets = uniform_offsets(p, rng);
    }
    return out;
}

namespace {

/* Strictly interior lattice points of a counterclockwise polygon. */
std::vector<LatticePoint> interior_points(const LatticePolygon& p) {
    std::int64_t x0 = p.vertices[0].x, x1 = x0, y0 = p.vertices[0].y, y1 = y0;
    for (const auto& v : p.vertices) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
    }
    std::vector<LatticePoint> inside;
    for (std::int64_t x = x0 + 1; x < x1; ++x)
        for (std::int64_t y = y0 + 1; y < y1; ++y) {
            LatticePoint q{x, y};
            bool strict = true;
            for (const auto& fc : p.facets) strict = strict && cross(fc.edge, q - fc.from) > 0;
            if (strict) inside.push_back(q);
        }
    return inside;
}

}  // namespace

std::vector<CircuitSample> circuit_corpus(int count, std::uint64_t seed) {
    std::vector<CircuitSample> corpus;
    for (int i = 0; i < count; ++i) {
        auto rng = stream(seed, 0xC0, std::uint64_t(i));
        std::vector<LatticePoint> support;
        std::string label;
        const int type = i % 3;
        if (type == 0) {
            support = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
            label = "square#" + std::to_string(i);
        } else if (type == 1) {
            label = "quad#" + std::to_string(i);
            std::uniform_int_distribution<std::int64_t> coord(0, 3);
            for (int tries = 0; tries < 2000 && support.empty(); ++tries) {
                std::vector<LatticePoint> pts;
                for (int j = 0; j < 4; ++j) pts.push_back({coord(rng), coord(rng)});
                try {
                    auto hull = newton_polygon(pts);
                    if (hull.vertices.size() == 4 && hull.double_area() <= 8) support = pts;
                } catch (const DegenerateSupport&) {
                }
            }
            if (support.empty()) support = {{0, 0}, {2, 0}, {1, 1}, {0, 1}};
        } else {
            label = "tri#" + std::to_string(i);
            std::uniform_int_distribution<std::int64_t> coord(0, 4);
            for (int tries = 0; tries < 2000 && support.empty(); ++tries) {
                std::vector<LatticePoint> pts;
                for (int j = 0; j < 3; ++j) pts.push_back({coord(rng), coord(rng)});
                try {
                    auto hull = newton_polygon(pts);
                    if (hull.vertices.size() != 3 || hull.double_area() > 10) continue;
                    auto inside = interior_points(hull);
                    if (inside.empty()) continue;
                    support = pts;
                    support.push_back(inside[rng() % inside.size()]);
                } catch (const DegenerateSupport&) {
                }
            }
            if (support.empty()) support = {{0, 0}, {2, 0}, {1, 2}, {1, 1}};
        }
        std::uniform_real_distribution<double> logmod(-std::log(2.0), std::log(2.0));
        std::uniform_real_distribution<double> phase(0.0, kTwoPi);
        std::vector<Term> terms;
        for (const auto& e : support)
            terms.push_back({e, std::polar(std::exp(logmod(rng)), phase(rng))});
        corpus.push_back({label, make_polynomial(std::move(terms))});
    }
    return corpus;
}

CircuitReport circuit_check(const std::vector<CircuitSample>& corpus, ExecPolicy policy) {
    CircuitReport rep;
    rep.rows.assign(corpus.size(), {});
    run_indexed(int(corpus.size()), policy, [&](int i) {
        CircuitOutcome o;
        o.label = corpus[std::size_t(i)].label;
        const auto& f = corpus[std::size_t(i)].f;
        o.double_area = f.newton().double_area();
        try {
            auto arr = shell(f);
            if (!arr.simple()) {
                o.reason = "non-simple shell";
            } else {
                auto idx = canonical_index_map(arr);
                o.generic = true;
                o.complement = combinatorial_coamoeba(arr, idx).complement_count;
                o.matched = o.complement == int(o.double_area);
            }
        } catch (const IllConditioned& e) {
            o.reason = std::string("edge roots: ") + e.what();
        } catch (const UncalibratedIndex& e) {
            o.reason = std::string("calibration: ") + e.what();
        }
        rep.rows[std::size_t(i)] = o;
    });
    for (const auto& o : rep.rows) {
        if (!o.generic) {
            rep.excluded += 1;
            continue;
        }
        rep.generic += 1;
        if (o.matched) rep.matched += 1;
    }
    return rep;
}

BijectionReport bijection_experiment(const std::vector<CircuitSample>& corpus, ExecPolicy policy) {
    BijectionReport rep;
    rep.rows.assign(corpus.size(), {});
    run_indexed(int(corpus.size()), policy, [&](int i) {
        BijectionOutcome o;
        o.label = corpus[std::size_t(i)].label;
        const auto& f = corpus[std::size_t(i)].f;
        o.double_area = f.newton().double_area();
        try {
            auto arr = shell(f);
            if (!arr.simple()) {
                o.reason = "non-simple shell";
            } else {
                auto idx = canonical_index_map(arr);
                o.generic = true;
                o.report = arg_bijection_check(f, arr, idx);
                o.success = o.report.bijective && o.report.critical_count == int(o.double_area);
            }
        } catch (const IllConditioned& e) {
            o.reason = std::string("edge roots: ") + e.what();
        } catch (const UncalibratedIndex& e) {
            o.reason = std::string("calibration: ") + e.what();
        }
        rep.rows[std::size_t(i)] = o;
    });
    for (const auto& o : rep.rows) {
        if (!o.generic) continue;
        rep.generic += 1;
        if (o.success)
            rep.successes += 1;
        else if (o.report.boundary_degenerate > 0)
            rep.boundary_flagged += 1;
    }
    return rep;
}

ParityReport parity_experiment(const std::vector<CircuitSample>& corpus, int probes,
                               std::uint64_t seed, ExecPolicy policy) {
    struct Row {
        const SupportedPolynomial* f = nullptr;
        TorusArrangement arr;
        IndexMap idx;
    };
    std::vector<Row> usable;
    for (const auto& s : corpus) {
        try {
            Row r;
            r.arr = shell(s.f);
            if (!r.arr.simple()) continue;
            r.idx = canonical_index_map(r.arr);
            r.f = &s.f;
            usable.push_back(std::move(r));
        } catch (const IllConditioned&) {
        } catch (const UncalibratedIndex&) {
        }
    }
    ParityReport rep;
    if (usable.empty()) return rep;
    rep.probes.assign(std::size_t(probes), {});
    run_indexed(probes, policy, [&](int i) {
        ParityProbe pr;
        pr.sample = i % int(usable.size());
        const Row& row = usable[std::size_t(pr.sample)];
        auto rng = stream(seed, 0xF1, std::uint64_t(i));
        std::uniform_real_distribution<double> uni(0.0, kTwoPi);
        /* The default 64 starts can miss a fiber point on the wider circuits;
           512 keeps every count stable under further refinement. */
        FiberOptions fo;
        fo.starts = 512;
        for (int tries = 0; tries < 200; ++tries) {
            Vec2 theta{uni(rng), uni(rng)};
            if (row.arr.distance_to_curves(theta) < 2e-2) continue;
            int face = row.arr.face_at(theta);
            if (face < 0) continue;
            int iota = row.idx.value[std::size_t(face)];
            int fiber = 0;
            try {
                fiber = fiber_count(*row.f, theta, fo);
            } catch (const BudgetExceeded&) {
                continue;
            }
            pr.theta = theta;
            pr.index = iota;
            pr.fiber = fiber;
            pr.ok = std::abs(fiber - iota) % 2 == 0 && fiber >= std::abs(iota);
            break;
        }
        rep.probes[std::size_t(i)] = pr;
    });
    for (const auto& pr : rep.probes)
        if (!pr.ok) rep.violations += 1;
    return rep;
}

}  // namespace coamoeba
