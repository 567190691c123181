#include "coamoeba/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace coamoeba {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double wrap_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}

double wrap_pm_pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r <= -0.5 * kTwoPi) r += kTwoPi;
    if (r > 0.5 * kTwoPi) r -= kTwoPi;
    return r;
}

Vec2 wrap_torus(Vec2 p) { return {wrap_2pi(p.x), wrap_2pi(p.y)}; }

namespace {

Vec2 left_normal(Vec2 d) {
    double n = norm(d);
    return {-d.y / n, d.x / n};
}

bool near_lattice_shift(Vec2 shift, double tol) {
    double kx = shift.x / kTwoPi, ky = shift.y / kTwoPi;
    return std::abs(kx - std::round(kx)) < tol && std::abs(ky - std::round(ky)) < tol;
}

bool point_in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        if ((poly[i].y > p.y) != (poly[j].y > p.y)) {
            double xint = poly[j].x +
                          (p.y - poly[j].y) / (poly[i].y - poly[j].y) * (poly[i].x - poly[j].x);
            if (p.x < xint) in = !in;
        }
    }
    return in;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double len2 = dot(d, d);
    if (len2 == 0) return norm(p - a);
    double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return norm(p - (a + t * d));
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

LatticeVector TorusCurve::conormal() const {
    if (!pure_geodesic()) throw NonSimpleArrangement("conormal undefined for piecewise curve");
    LatticeVector d = directions[0];
    return {-d.y, d.x};
}

double TorusCurve::line_offset() const {
    LatticeVector delta = conormal();
    return wrap_2pi(delta.x * anchors[0].x + delta.y * anchors[0].y);
}

Vec2 TorusCurve::segment_start(std::size_t i) const { return anchors[i]; }

Vec2 TorusCurve::segment_end(std::size_t i) const {
    if (i + 1 < anchors.size()) return anchors[i + 1];
    return anchors[0] + kTwoPi * to_vec(homology);
}

void TorusCurve::validate() const {
    if (anchors.empty() || anchors.size() != directions.size())
        throw NonSimpleArrangement("curve anchor/direction mismatch");
    if (weight < 1) throw NonSimpleArrangement("curve weight must be positive");
    Vec2 total{0, 0};
    for (std::size_t i = 0; i < anchors.size(); ++i) {
        LatticeVector d = directions[i];
        if ((d.x == 0 && d.y == 0) || lattice_gcd(d.x, d.y) != 1)
            throw NonSimpleArrangement("segment direction must be primitive");
        Vec2 disp = segment_end(i) - segment_start(i);
        if (std::abs(cross(disp, to_vec(d))) > 1e-9 * (1.0 + norm(disp)) ||
            dot(disp, to_vec(d)) <= 0)
            throw NonSimpleArrangement("segment displacement disagrees with its direction");
        total = total + disp;
    }
    Vec2 expect = kTwoPi * to_vec(homology);
    if (norm(total - expect) > 1e-9 * (1.0 + norm(expect)))
        throw NonSimpleArrangement("curve does not close with the stated homology");
}

TorusCurve geodesic_curve(LatticeVector delta, double offset, int weight, int parent_facet) {
    if (delta.x == 0 && delta.y == 0) throw ZeroVector("geodesic conormal is zero");
    if (lattice_gcd(delta.x, delta.y) != 1) throw ZeroVector("geodesic conormal must be primitive");
    TorusCurve c;
    double n2 = double(delta.x * delta.x + delta.y * delta.y);
    c.anchors = {Vec2{offset * delta.x / n2, offset * delta.y / n2}};
    c.directions = {LatticeVector{delta.y, -delta.x}};
    c.homology = c.directions[0];
    c.weight = weight;
    c.parent_facet = parent_facet;
    return c;
}

namespace {

/* One strand of one pairwise crossing, in its curve's lift frame. */
struct RawStrand {
    int curve, seg;
    double t;
    Vec2 lift;
    double global;
};

struct RawCrossing {
    RawStrand a, b;
    Vec2 torus_pos;
};

struct CurveGeometry {
    std::vector<Vec2> start, end;
    std::vector<double> len, prefix;
};

CurveGeometry curve_geometry(const TorusCurve& c) {
    CurveGeometry g;
    double acc = 0;
    for (std::size_t i = 0; i < c.anchors.size(); ++i) {
        g.start.push_back(c.segment_start(i));
        g.end.push_back(c.segment_end(i));
        g.len.push_back(norm(g.end.back() - g.start.back()));
        g.prefix.push_back(acc);
        acc += g.len.back();
    }
    return g;
}

std::string curve_pair_label(int i, int j) {
    std::ostringstream os;
    os << "curves " << i << " and " << j;
    return os.str();
}

}  // namespace

TorusArrangement build_arrangement(std::vector<TorusCurve> curves, const BuildOptions& opts) {
    const double eps = opts.eps;
    if (curves.empty()) throw NonSimpleArrangement("no curves");
    for (auto& c : curves) c.validate();

    // Coincident pure geodesics: merge parallel same-orientation copies into one
    // weighted curve (permissive mode); antiparallel overlap is always fatal.
    {
        std::vector<TorusCurve> merged;
        for (const auto& c : curves) {
            bool absorbed = false;
            if (c.pure_geodesic()) {
                LatticeVector dl = c.conormal();
                double off = c.line_offset();
                for (auto& m : merged) {
                    if (!m.pure_geodesic()) continue;
                    LatticeVector ml = m.conormal();
                    if (ml == dl && std::abs(wrap_pm_pi(m.line_offset() - off)) < eps) {
                        if (!opts.allow_degenerate)
                            throw NonSimpleArrangement("coincident geodesics");
                        m.weight += c.weight;
                        absorbed = true;
                        break;
                    }
                    if (ml == LatticeVector{-dl.x, -dl.y} &&
                        std::abs(wrap_pm_pi(m.line_offset() + off)) < eps)
                        throw NonSimpleArrangement("antiparallel coincident geodesics");
                }
            }
            if (!absorbed) merged.push_back(c);
        }
        curves = std::move(merged);
    }

    const int n = int(curves.size());
    std::vector<CurveGeometry> geo;
    geo.reserve(n);
    for (const auto& c : curves) geo.push_back(curve_geometry(c));

    TorusArrangement arr;
    arr.has_geometry = opts.geometry;
    arr.pair_crossings.assign(n, std::vector<int>(n, 0));

    // Pairwise segment intersections, enumerated over fundamental-domain translates.
    std::vector<RawCrossing> crossings;
    const double param_lo = -1e-12, param_hi = 1.0 - 1e-12;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            for (std::size_t a = 0; a < curves[i].anchors.size(); ++a) {
                std::size_t b0idx = (i == j) ? a : 0;
                for (std::size_t b = b0idx; b < curves[j].anchors.size(); ++b) {
                    Vec2 a0 = geo[i].start[a], da = geo[i].end[a] - a0;
                    Vec2 b0 = geo[j].start[b], db = geo[j].end[b] - b0;
                    std::int64_t dcross = cross(curves[i].directions[a], curves[j].directions[b]);
                    bool self_same = (i == j && a == b);
                    if (dcross == 0) {
                        // Parallel pieces: fatal only if they overlap along a common line.
                        double lox = a0.x - b0.x + std::min(0.0, da.x) + std::min(0.0, -db.x);
                        double hix = a0.x - b0.x + std::max(0.0, da.x) + std::max(0.0, -db.x);
                        double loy = a0.y - b0.y + std::min(0.0, da.y) + std::min(0.0, -db.y);
                        double hiy = a0.y - b0.y + std::max(0.0, da.y) + std::max(0.0, -db.y);
                        for (std::int64_t kx = std::int64_t(std::ceil(lox / kTwoPi - 1e-9));
                             kx <= std::int64_t(std::floor(hix / kTwoPi + 1e-9)); ++kx)
                            for (std::int64_t ky = std::int64_t(std::ceil(loy / kTwoPi - 1e-9));
                                 ky <= std::int64_t(std::floor(hiy / kTwoPi + 1e-9)); ++ky) {
                                if (self_same && kx == 0 && ky == 0) continue;
                                Vec2 shift{kTwoPi * kx, kTwoPi * ky};
                                Vec2 r = b0 + shift - a0;
                                double la = norm(da);
                                if (std::abs(cross(da, r)) / la > eps) continue;  // distinct lines
                                double t0 = dot(r, da) / (la * la);
                                double t1 = t0 + dot(db, da) / (la * la);
                                double overlap = std::min(std::max(t0, t1), 1.0) -
                                                 std::max(std::min(t0, t1), 0.0);
                                if (overlap * la > eps)
                                    throw NonSimpleArrangement("overlapping parallel pieces: " +
                                                               curve_pair_label(i, j));
                            }
                        continue;
                    }
                    double D = cross(da, db);
                    double lox = a0.x - b0.x + std::min(0.0, da.x) + std::min(0.0, -db.x);
                    double hix = a0.x - b0.x + std::max(0.0, da.x) + std::max(0.0, -db.x);
                    double loy = a0.y - b0.y + std::min(0.0, da.y) + std::min(0.0, -db.y);
                    double hiy = a0.y - b0.y + std::max(0.0, da.y) + std::max(0.0, -db.y);
                    for (std::int64_t kx = std::int64_t(std::ceil(lox / kTwoPi - 1e-9));
                         kx <= std::int64_t(std::floor(hix / kTwoPi + 1e-9)); ++kx)
                        for (std::int64_t ky = std::int64_t(std::ceil(loy / kTwoPi - 1e-9));
                             ky <= std::int64_t(std::floor(hiy / kTwoPi + 1e-9)); ++ky) {
                            if (self_same && kx == 0 && ky == 0) continue;
                            Vec2 r = b0 + Vec2{kTwoPi * kx, kTwoPi * ky} - a0;
                            double t = cross(r, db) / D;
                            double s = cross(r, da) / D;
                            if (t < param_lo || t >= param_hi || s < param_lo || s >= param_hi)
                                continue;
                            RawCrossing rc;
                            rc.a = {i, int(a), t, a0 + t * da, geo[i].prefix[a] + t * geo[i].len[a]};
                            rc.b = {j, int(b), s, b0 + s * db, geo[j].prefix[b] + s * geo[j].len[b]};
                            rc.torus_pos = wrap_torus(rc.a.lift);
                            crossings.push_back(rc);
                            arr.pair_crossings[i][j] += 1;
                            if (i != j) arr.pair_crossings[j][i] += 1;
                        }
                }
            }
        }
    }
    if (crossings.empty()) throw NonSimpleArrangement("arrangement has no crossings");

    // Cluster crossing points into vertices (torus metric).
    const int nc = int(crossings.size());
    DisjointSet ds(nc);
    for (int p = 0; p < nc; ++p)
        for (int q = p + 1; q < nc; ++q) {
            Vec2 d = crossings[p].torus_pos - crossings[q].torus_pos;
            if (std::abs(wrap_pm_pi(d.x)) < eps && std::abs(wrap_pm_pi(d.y)) < eps) ds.unite(p, q);
        }
    std::map<int, int> root_to_vertex;
    for (int p = 0; p < nc; ++p) {
        int r = ds.find(p);
        if (!root_to_vertex.count(r)) {
            root_to_vertex[r] = int(arr.vertices.size());
            arr.vertices.push_back({crossings[p].torus_pos, {}, 0});
            arr.vertex_strands.emplace_back();
        }
    }

    // Attach deduplicated strands to vertices.
    auto add_strand = [&](int v, const RawStrand& s) {
        for (const auto& e : arr.vertex_strands[v])
            if (e.curve == s.curve && e.segment == s.seg &&
                std::abs(e.t - s.t) * geo[s.curve].len[s.seg] < 4 * eps)
                return;
        arr.vertex_strands[v].push_back({s.curve, s.seg, s.t, s.lift});
    };
    std::vector<int> crossing_vertex(nc);
    for (int p = 0; p < nc; ++p) {
        int v = root_to_vertex[ds.find(p)];
        crossing_vertex[p] = v;
        add_strand(v, crossings[p].a);
        add_strand(v, crossings[p].b);
    }
    for (std::size_t v = 0; v < arr.vertices.size(); ++v) {
        arr.vertices[v].strand_count = int(arr.vertex_strands[v].size());
        if (arr.vertices[v].strand_count > 2 && !opts.allow_degenerate) {
            std::ostringstream os;
            os << "multiple strands through one point: curves";
            for (const auto& s : arr.vertex_strands[v]) os << ' ' << s.curve;
            throw NonSimpleArrangement(os.str());
        }
    }

    // Per-curve traversal order and the arcs between consecutive passages.
    struct Passage {
        int vertex, seg;
        double t, global;
        Vec2 lift;
    };
    std::vector<std::vector<Passage>> schedule(n);
    for (std::size_t v = 0; v < arr.vertices.size(); ++v)
        for (const auto& s : arr.vertex_strands[v])
            schedule[s.curve].push_back(
                {int(v), s.segment, s.t, geo[s.curve].prefix[s.segment] + s.t * geo[s.curve].len[s.segment],
                 s.lift});
    arr.curves = curves;
    for (int c = 0; c < n; ++c) {
        if (schedule[c].empty())
            throw NonSimpleArrangement("curve " + std::to_string(c) + " crosses nothing");
        std::sort(schedule[c].begin(), schedule[c].end(),
                  [](const Passage& x, const Passage& y) { return x.global < y.global; });
    }

    for (int c = 0; c < n; ++c) {
        const auto& sch = schedule[c];
        const std::size_t m = sch.size();
        const std::size_t nseg = curves[c].anchors.size();
        Vec2 period = kTwoPi * to_vec(curves[c].homology);
        for (std::size_t e = 0; e < m; ++e) {
            const Passage& from = sch[e];
            const Passage& to = sch[(e + 1) % m];
            std::vector<Vec2> pts{from.lift};
            bool direct = (e + 1 < m) && (to.seg == from.seg);
            if (direct) {
                pts.push_back(to.lift);
            } else {
                std::size_t steps = (std::size_t(to.seg) + nseg - std::size_t(from.seg)) % nseg;
                if (steps == 0) steps = nseg;  // wraps a full period
                Vec2 shift{0, 0};
                int seg = from.seg;
                for (std::size_t st = 0; st < steps; ++st) {
                    seg = (seg + 1) % int(nseg);
                    if (seg == 0) shift = shift + period;
                    pts.push_back(curves[c].anchors[seg] + shift);
                }
                pts.push_back(to.lift + shift);
            }
            // Drop zero-length lead-in/out when a passage sits exactly on a breakpoint.
            std::vector<Vec2> clean;
            for (const auto& p : pts)
                if (clean.empty() || norm(p - clean.back()) > 1e-12) clean.push_back(p);
            if (clean.size() < 2) throw NonSimpleArrangement("degenerate arc");

            HalfEdge along;
            along.origin = from.vertex;
            along.target = to.vertex;
            along.curve = c;
            along.along = true;
            along.lift = clean;
            HalfEdge against;
            against.origin = to.vertex;
            against.target = from.vertex;
            against.curve = c;
            against.along = false;
            against.lift = std::vector<Vec2>(clean.rbegin(), clean.rend());
            int ia = int(arr.halfedges.size());
            along.twin = ia + 1;
            against.twin = ia;
            arr.halfedges.push_back(std::move(along));
            arr.halfedges.push_back(std::move(against));
        }
    }

    // CCW order of outgoing half-edges at each vertex.
    for (int h = 0; h < int(arr.halfedges.size()); ++h)
        arr.vertices[arr.halfedges[h].origin].out.push_back(h);
    for (auto& v : arr.vertices) {
        std::sort(v.out.begin(), v.out.end(), [&](int ha, int hb) {
            Vec2 da = arr.halfedges[ha].dir_out(), db = arr.halfedges[hb].dir_out();
            return std::atan2(da.y, da.x) < std::atan2(db.y, db.x);
        });
        for (std::size_t i = 0; i + 1 < v.out.size(); ++i) {
            Vec2 da = arr.halfedges[v.out[i]].dir_out(), db = arr.halfedges[v.out[i + 1]].dir_out();
            if (std::abs(std::atan2(da.y, da.x) - std::atan2(db.y, db.x)) < 1e-12)
                throw NonSimpleArrangement("tangent strands at a vertex");
        }
    }

    // next(h): counterclockwise predecessor of twin(h) around the target vertex.
    for (int h = 0; h < int(arr.halfedges.size()); ++h) {
        const auto& out = arr.vertices[arr.halfedges[h].target].out;
        int twin = arr.halfedges[h].twin;
        auto it = std::find(out.begin(), out.end(), twin);
        std::size_t p = std::size_t(it - out.begin());
        int nxt = out[(p + out.size() - 1) % out.size()];
        arr.halfedges[h].next = nxt;
        arr.halfedges[nxt].prev = h;
    }

    // Trace faces.
    for (int h0 = 0; h0 < int(arr.halfedges.size()); ++h0) {
        if (arr.halfedges[h0].face >= 0) continue;
        ArrFace f;
        f.halfedge = h0;
        int fid = int(arr.faces.size());
        int h = h0;
        do {
            arr.halfedges[h].face = fid;
            f.boundary.push_back(h);
            h = arr.halfedges[h].next;
        } while (h != h0);
        arr.faces.push_back(std::move(f));
    }
    if (int(arr.vertices.size()) - arr.edge_count() + int(arr.faces.size()) != 0)
        throw NonSimpleArrangement("Euler characteristic violated");

    if (opts.geometry) {
        double total_area = 0;
        for (auto& f : arr.faces) {
            // Lift the boundary cycle coherently; a cell must close up exactly.
            Vec2 cur = arr.halfedges[f.boundary[0]].lift[0];
            Vec2 start = cur;
            for (int h : f.boundary) {
                const auto& lift = arr.halfedges[h].lift;
                Vec2 shift = cur - lift[0];
                if (!near_lattice_shift(shift, 1e-6))
                    throw NonSimpleArrangement("face boundary lift mismatch");
                for (std::size_t i = 0; i + 1 < lift.size(); ++i) f.polygon.push_back(lift[i] + shift);
                cur = lift.back() + shift;
            }
            if (norm(cur - start) > 1e-6) throw NonSimpleArrangement("face does not close to a disk");

            double twice = 0;
            Vec2 cen{0, 0};
            const auto& P = f.polygon;
            for (std::size_t i = 0, j = P.size() - 1; i < P.size(); j = i++) {
                double w = cross(P[j], P[i]);
                twice += w;
                cen = cen + w * (P[j] + P[i]);
            }
            f.area = 0.5 * twice;
            if (f.area <= 0) throw NonSimpleArrangement("non-positive face area");
            f.centroid = wrap_torus((1.0 / (3.0 * twice)) * cen);
            total_area += f.area;

            for (std::size_t i = 0; i < f.boundary.size(); ++i) {
                const auto& hin = arr.halfedges[f.boundary[(i + f.boundary.size() - 1) % f.boundary.size()]];
                const auto& hout = arr.halfedges[f.boundary[i]];
                Vec2 din = hin.dir_in(), dout = hout.dir_out();
                double ang = std::atan2(-din.y, -din.x) - std::atan2(dout.y, dout.x);
                ang = ang - kTwoPi * std::floor(ang / kTwoPi);
                if (ang < 1e-12) ang = kTwoPi;
                f.corner_angles.push_back(ang);
            }

            bool found = false;
            for (std::size_t e = 0; e < f.polygon.size() && !found; ++e) {
                Vec2 a = f.polygon[e], b = f.polygon[(e + 1) % f.polygon.size()];
                double len = norm(b - a);
                if (len < 1e-8) continue;
                Vec2 mid = 0.5 * (a + b), nl = left_normal(b - a);
                for (double fac : {0.25, 0.1, 0.02, 1e-3, 1e-4}) {
                    Vec2 cand = mid + (fac * std::min(len, std::sqrt(f.area))) * nl;
                    if (point_in_polygon(f.polygon, cand)) {
                        f.interior_point = wrap_torus(cand);
                        found = true;
                        break;
                    }
                }
            }
            if (!found) throw NonSimpleArrangement("no interior point found for a face");
        }
        if (std::abs(total_area - kTwoPi * kTwoPi) > 1e-6)
            throw NonSimpleArrangement("cell areas do not tile the torus");

        if (arr.distance_to_curves({0, 0}) > eps && (arr.base_face = arr.face_at({0, 0})) >= 0) {
            // base cell is the one containing the origin
        } else {
            int best = 0;
            for (int fi = 1; fi < int(arr.faces.size()); ++fi)
                if (arr.faces[fi].area > arr.faces[best].area + 1e-12) best = fi;
            arr.base_face = best;
        }
    } else {
        arr.base_face = 0;
    }
    return arr;
}

bool TorusArrangement::simple() const {
    for (const auto& c : curves)
        if (c.weight != 1) return false;
    for (const auto& v : vertices)
        if (v.strand_count != 2) return false;
    return true;
}

int TorusArrangement::total_weight() const {
    int m = 0;
    for (const auto& c : curves) m += c.weight;
    return m;
}

int TorusArrangement::crossings_between(int ci, int cj) const { return pair_crossings[ci][cj]; }

double TorusArrangement::distance_to_curves(Vec2 theta) const {
    double best = 1e30;
    for (const auto& c : curves) {
        if (c.pure_geodesic()) {
            LatticeVector dl = c.conormal();
            double val = dl.x * theta.x + dl.y * theta.y - c.line_offset();
            best = std::min(best, std::abs(wrap_pm_pi(val)) / norm(to_vec(dl)));
            continue;
        }
        for (std::size_t i = 0; i < c.anchors.size(); ++i) {
            Vec2 a = c.segment_start(i), b = c.segment_end(i);
            double lox = std::min(a.x, b.x) - theta.x, hix = std::max(a.x, b.x) - theta.x;
            double loy = std::min(a.y, b.y) - theta.y, hiy = std::max(a.y, b.y) - theta.y;
            for (std::int64_t kx = std::int64_t(std::floor(lox / kTwoPi)) - 0;
                 kx <= std::int64_t(std::ceil(hix / kTwoPi)); ++kx)
                for (std::int64_t ky = std::int64_t(std::floor(loy / kTwoPi));
                     ky <= std::int64_t(std::ceil(hiy / kTwoPi)); ++ky) {
                    Vec2 p = theta + Vec2{kTwoPi * kx, kTwoPi * ky};
                    best = std::min(best, point_segment_distance(p, a, b));
                }
        }
    }
    return best;
}

int TorusArrangement::face_at(Vec2 theta) const {
    if (!has_geometry) throw NonSimpleArrangement("arrangement built without geometry");
    for (int fi = 0; fi < int(faces.size()); ++fi) {
        const auto& P = faces[fi].polygon;
        double lox = 1e30, hix = -1e30, loy = 1e30, hiy = -1e30;
        for (const auto& p : P) {
            lox = std::min(lox, p.x);
            hix = std::max(hix, p.x);
            loy = std::min(loy, p.y);
            hiy = std::max(hiy, p.y);
        }
        for (std::int64_t kx = std::int64_t(std::ceil((lox - theta.x) / kTwoPi - 1e-9));
             kx <= std::int64_t(std::floor((hix - theta.x) / kTwoPi + 1e-9)); ++kx)
            for (std::int64_t ky = std::int64_t(std::ceil((loy - theta.y) / kTwoPi - 1e-9));
                 ky <= std::int64_t(std::floor((hiy - theta.y) / kTwoPi + 1e-9)); ++ky)
                if (point_in_polygon(P, theta + Vec2{kTwoPi * kx, kTwoPi * ky})) return fi;
    }
    return -1;
}

std::array<int, 4> TorusArrangement::sector_faces(int vertex) const {
    const auto& v = vertices[vertex];
    if (v.strand_count != 2 || v.out.size() != 4)
        throw NonSimpleArrangement("sector query at a non-transverse vertex");
    std::array<int, 4> f;
    for (int i = 0; i < 4; ++i) f[i] = halfedges[v.out[i]].face;
    return f;
}

int TorusArrangement::in_in_sector(int vertex) const {
    const auto& v = vertices[vertex];
    if (v.strand_count != 2 || v.out.size() != 4)
        throw NonSimpleArrangement("sector query at a non-transverse vertex");
    int found = -1;
    for (int i = 0; i < 4; ++i) {
        if (!halfedges[v.out[i]].along && !halfedges[v.out[(i + 1) % 4]].along) {
            if (found >= 0) throw NonSimpleArrangement("ambiguous incoming sector");
            found = i;
        }
    }
    if (found < 0) throw NonSimpleArrangement("no incoming sector");
    return found;
}

TorusArrangement dual_arrangement(const LatticePolygon& p,
                                  const std::vector<std::vector<double>>& offsets_per_facet,
                                  const BuildOptions& opts) {
    if (offsets_per_facet.size() != p.facets.size())
        throw OffsetCountMismatch("need one offset list per facet");
    std::vector<TorusCurve> curves;
    for (std::size_t j = 0; j < p.facets.size(); ++j) {
        if (std::int64_t(offsets_per_facet[j].size()) != p.facets[j].lattice_length)
            throw OffsetCountMismatch("facet " + std::to_string(j) + " expects " +
                                      std::to_string(p.facets[j].lattice_length) + " offsets");
        for (double c : offsets_per_facet[j])
            curves.push_back(geodesic_curve(p.facets[j].direction, c, 1, int(j)));
    }
    TorusArrangement arr = build_arrangement(std::move(curves), opts);
    arr.source_polygon = p;
    return arr;
}

IndexMap relative_index_map(const TorusArrangement& arr) {
    LatticeVector total{0, 0};
    for (const auto& c : arr.curves)
        total = total + LatticeVector{c.weight * c.homology.x, c.weight * c.homology.y};
    if (!(total == LatticeVector{0, 0}))
        throw InconsistentCrossing("total weighted homology is nonzero");

    IndexMap idx;
    idx.value.assign(arr.faces.size(), 0);
    std::vector<char> seen(arr.faces.size(), 0);
    std::vector<int> queue{arr.base_face};
    seen[arr.base_face] = 1;
    while (!queue.empty()) {
        int f = queue.back();
        queue.pop_back();
        for (int h : arr.faces[f].boundary) {
            const auto& he = arr.halfedges[h];
            // Crossing from the left of travel to the right raises the index by the weight.
            int other = arr.halfedges[he.twin].face;
            int delta = arr.curves[he.curve].weight * (he.along ? +1 : -1);
            int expect = idx.value[f] + delta;
            if (!seen[other]) {
                seen[other] = 1;
                idx.value[other] = expect;
                queue.push_back(other);
            } else if (idx.value[other] != expect) {
                throw InconsistentCrossing("index jump mismatch across an arc");
            }
        }
    }
    for (char s : seen)
        if (!s) throw InconsistentCrossing("cell adjacency graph is disconnected");
    return idx;
}

IndexMap calibrate_by_reference(const TorusArrangement& arr, const IndexMap& relative, int face,
                                int value) {
    IndexMap out = relative;
    int shift = value - relative.value[face];
    for (auto& v : out.value) v += shift;
    out.calibrated = true;
    (void)arr;
    return out;
}

IndexMap canonical_index_map(const TorusArrangement& arr, double tol) {
    if (!arr.has_geometry) throw UncalibratedIndex("geometry required for calibration");
    double offset_sum = 0;
    int m = 0;
    std::vector<LatticeVector> conormals;
    std::vector<double> offsets;
    for (const auto& c : arr.curves) {
        if (!c.pure_geodesic())
            throw UncalibratedIndex("closed form needs pure geodesics");
        conormals.push_back(c.conormal());
        offsets.push_back(c.line_offset());
        offset_sum += c.weight * offsets.back();
        m += c.weight;
    }
    // Half-turn balance: the fractional parts below only sum to an integer shifted
    // by m/2 when sum(w c) == pi m (mod 2pi).
    if (std::abs(wrap_pm_pi(offset_sum - 0.5 * kTwoPi * m)) > tol)
        throw UncalibratedIndex("offsets do not satisfy the half-turn balance");

    IndexMap rel = relative_index_map(arr);
    Vec2 probe = arr.faces[arr.base_face].interior_point;
    double s = 0;
    for (std::size_t i = 0; i < conormals.size(); ++i) {
        double val = (conormals[i].x * probe.x + conormals[i].y * probe.y - offsets[i]) / kTwoPi;
        s += arr.curves[i].weight * (val - std::floor(val));
    }
    double raw = s - 0.5 * m;
    int base_value = int(std::lround(raw));
    if (std::abs(raw - base_value) > std::max(tol, 1e-7))
        throw UncalibratedIndex("closed-form index did not round to an integer");
    return calibrate_by_reference(arr, rel, arr.base_face, base_value);
}

AngleDiagnostics angle_diagnostics(const TorusArrangement& arr, const IndexMap& idx) {
    if (!arr.has_geometry) throw NonSimpleArrangement("geometry required for angle diagnostics");
    AngleDiagnostics diag;
    for (int v = 0; v < int(arr.vertices.size()); ++v) {
        auto faces = arr.sector_faces(v);
        std::array<double, 4> width;
        std::array<double, 4> ang;
        for (int i = 0; i < 4; ++i) {
            Vec2 d = arr.halfedges[arr.vertices[v].out[i]].dir_out();
            ang[i] = std::atan2(d.y, d.x);
        }
        for (int i = 0; i < 4; ++i) {
            double w = ang[(i + 1) % 4] - ang[i];
            if (i == 3) w += kTwoPi;
            width[i] = w - kTwoPi * std::floor(w / kTwoPi);
        }
        bool eq02 = idx.value[faces[0]] == idx.value[faces[2]];
        bool eq13 = idx.value[faces[1]] == idx.value[faces[3]];
        if (eq02 == eq13) throw InconsistentCrossing("no unique equal-index diagonal");
        int sec = eq02 ? 0 : 1;
        VertexAngles row;
        row.vertex = v;
        row.pair_index = idx.value[faces[sec]];
        row.theta_n = 0.5 * (width[sec] + width[sec + 2]);  // vertical angles agree
        row.theta_o = 0.5 * kTwoPi - row.theta_n;
        diag.rows.push_back(row);
        diag.classes[row.pair_index].push_back(v);
        diag.theta_n_sum[row.pair_index] += row.theta_n;
        diag.theta_o_sum[row.pair_index] += row.theta_o;
        diag.total_theta_o += row.theta_o;
    }
    return diag;
}

bool is_admissible(const TorusArrangement& arr) {
    std::vector<char> oriented(arr.faces.size(), 0);
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        bool all_along = true, all_against = true;
        for (int h : arr.faces[f].boundary) {
            if (arr.halfedges[h].along)
                all_against = false;
            else
                all_along = false;
        }
        oriented[f] = all_along || all_against;
    }
    for (int h = 0; h < int(arr.halfedges.size()); h += 2) {
        int f1 = arr.halfedges[h].face, f2 = arr.halfedges[h + 1].face;
        if (!oriented[f1] && !oriented[f2]) return false;
    }
    return true;
}

Theorem1Record theorem1_predicates(const TorusArrangement& arr, const IndexMap& idx) {
    if (!idx.calibrated) throw UncalibratedIndex("theorem predicates need an absolute index");
    Theorem1Record rec;
    if (arr.source_polygon) {
        rec.double_area = arr.source_polygon->double_area();
    } else {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < arr.curves.size(); ++i)
            for (std::size_t j = i + 1; j < arr.curves.size(); ++j)
                acc += arr.curves[i].weight * arr.curves[j].weight *
                       cross(arr.curves[i].homology, arr.curves[j].homology);
        rec.double_area = acc;
    }
    bool triangles_ok = true;
    int max_abs = 0;
    for (std::size_t f = 0; f < arr.faces.size(); ++f) {
        int v = idx.value[f];
        if (v == 0) rec.zero_cells += 1;
        max_abs = std::max(max_abs, std::abs(v));
        if (std::abs(v) == 2 && !arr.faces[f].is_triangle()) triangles_ok = false;
    }
    rec.lhs = (rec.zero_cells == rec.double_area);
    rec.rhs = (max_abs <= 2) && triangles_ok;
    return rec;
}

TierObstruction tier_obstruction(int k) {
    if (k < 2) throw NonSimpleArrangement("tier parameter must be at least 2");
    TierObstruction t;
    t.m = (k + 2) / 2 + 1;
    t.obstructed = t.m < k;
    return t;
}

}  // namespace coamoeba
