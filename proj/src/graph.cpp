#include "coamoeba/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace coamoeba {

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

LatticeVector primitive(LatticeVector v) {
    if (v.x == 0 && v.y == 0) throw ZeroVector("primitive part of the zero vector");
    std::int64_t g = lattice_gcd(v.x, v.y);
    return {v.x / g, v.y / g};
}

int mod4(int v) { return ((v % 4) + 4) % 4; }

/* Lift of each boundary corner (origin of boundary[k]) in the face's own frame,
   the one f.polygon is written in. */
std::vector<Vec2> face_corner_lifts(const TorusArrangement& arr, const ArrFace& f) {
    std::vector<Vec2> out;
    Vec2 cur = arr.halfedges[f.boundary[0]].lift[0];
    for (int h : f.boundary) {
        const auto& lift = arr.halfedges[h].lift;
        out.push_back(cur);
        cur = lift.back() + (cur - lift[0]);
    }
    return out;
}

double wrapped_distance(Vec2 a, Vec2 b) {
    return std::hypot(wrap_pm_pi(a.x - b.x), wrap_pm_pi(a.y - b.y));
}

int sign_of(double x) { return (x > 0) - (x < 0); }

}  // namespace

MixedGraph index_graph(const TorusArrangement& arr, const IndexMap& idx, GraphParity parity) {
    if (!arr.simple()) throw NonSimpleArrangement("index graph needs a simple arrangement");
    if (!idx.calibrated) throw UncalibratedIndex("index graph needs an absolute index");

    MixedGraph g;
    g.parity = parity;
    const int want = parity == GraphParity::Odd ? 1 : 0;
    for (int f = 0; f < int(arr.faces.size()); ++f) {
        if (mod4(idx.value[f]) % 2 != want) continue;
        g.cells.push_back(f);
        g.white.push_back(mod4(idx.value[f]) == want);
    }

    for (int v = 0; v < int(arr.vertices.size()); ++v) {
        int s = arr.in_in_sector(v);
        auto sec = arr.sector_faces(v);
        int b = idx.value[sec[s]];
        MixedEdge e;
        e.crossing = v;
        if (mod4(b) % 2 == want) {
            // Equal pair carries the parity: direct from where both strands
            // enter to where both leave.
            e.directed = true;
            e.from = sec[s];
            e.to = sec[(s + 2) % 4];
        } else {
            e.directed = false;
            int a = sec[(s + 1) % 4], c = sec[(s + 3) % 4];
            if (idx.value[a] > idx.value[c]) std::swap(a, c);
            e.from = a;
            e.to = c;
        }
        g.edges.push_back(e);
    }
    return g;
}

std::vector<int> yang_baxter_sites(const TorusArrangement& arr, const IndexMap& idx) {
    if (!idx.calibrated) throw UncalibratedIndex("site search needs an absolute index");
    std::vector<int> out;
    for (int f = 0; f < int(arr.faces.size()); ++f)
        if (std::abs(idx.value[f]) == 2 && arr.faces[f].is_triangle()) out.push_back(f);
    return out;
}

namespace {

struct RewriteResult {
    TorusArrangement arr;
    IndexMap idx;
};

IndexMap resolve_index(const TorusArrangement& arr, const IndexMap* idx, const char* who) {
    if (idx) {
        if (!idx->calibrated) throw UncalibratedIndex(std::string(who) + " needs an absolute index");
        return *idx;
    }
    try {
        return canonical_index_map(arr);
    } catch (const UncalibratedIndex& e) {
        throw UncalibratedIndex(std::string(who) + ": no index map supplied and the closed form "
                                                   "does not apply (" +
                                e.what() + ")");
    }
}

/* Slide the curve carrying the side opposite the lexicographically smallest
   corner across that corner, replacing one straight piece by a two-piece tent.
   Candidate tents are tried until the rebuilt arrangement reproduces every
   count, the pairwise crossing matrix, the surviving sites, and a triangle of
   opposite sign behind the apex. */
RewriteResult rewrite_once(const TorusArrangement& arr, int cell, const IndexMap& abs_idx) {
    if (!arr.has_geometry) throw NonSimpleArrangement("rewrite requires geometry");
    if (cell < 0 || cell >= int(arr.faces.size())) throw NotAFace("no such cell");
    const ArrFace& P = arr.faces[cell];
    if (!P.is_triangle() || std::abs(abs_idx.value[cell]) != 2)
        throw NotAYangBaxterSite("cell is not an index-two triangle");
    const int s = abs_idx.value[cell] > 0 ? 1 : -1;

    {
        std::set<int> side_curves;
        for (int h : P.boundary) side_curves.insert(arr.halfedges[h].curve);
        if (side_curves.size() != 3)
            throw NotDimerizable("triangle sides do not lie on three distinct curves");
    }

    // Apex: lexicographically smallest corner on the torus.
    int ia = 0;
    for (int k = 1; k < 3; ++k) {
        Vec2 a = arr.vertices[arr.halfedges[P.boundary[k]].origin].pos;
        Vec2 b = arr.vertices[arr.halfedges[P.boundary[ia]].origin].pos;
        if (a.x < b.x - 1e-12 || (std::abs(a.x - b.x) <= 1e-12 && a.y < b.y)) ia = k;
    }
    const std::vector<Vec2> corners = face_corner_lifts(arr, P);
    const Vec2 p1 = corners[ia];

    const int hb = P.boundary[(ia + 1) % 3];
    const HalfEdge& base_he = arr.halfedges[hb];
    const int c1 = base_he.curve;
    const HalfEdge& fwd = base_he.along ? base_he : arr.halfedges[base_he.twin];
    const TorusCurve& curve = arr.curves[c1];
    const std::size_t nseg = curve.anchors.size();

    // Base-arc endpoints in curve travel order; sF/eF are their face-frame lifts.
    const Vec2 sF = base_he.along ? corners[(ia + 1) % 3] : corners[(ia + 2) % 3];
    const Vec2 eF = base_he.along ? corners[(ia + 2) % 3] : corners[(ia + 1) % 3];

    // Matching strand at the forward start; fwd.lift[0] is its curve-frame lift.
    const Strand* start_strand = nullptr;
    for (const auto& st : arr.vertex_strands[fwd.origin])
        if (st.curve == c1 && norm(st.lift - fwd.lift[0]) < 1e-9) start_strand = &st;
    if (!start_strand) throw NotDimerizable("base strand not found at its corner");

    // Arc-length parameters along the curve.
    std::vector<double> seg_len(nseg), seg_prefix(nseg);
    double total_len = 0;
    for (std::size_t i = 0; i < nseg; ++i) {
        seg_prefix[i] = total_len;
        seg_len[i] = norm(curve.segment_end(i) - curve.segment_start(i));
        total_len += seg_len[i];
    }
    const int seg2 = start_strand->segment;
    const double g2 = seg_prefix[seg2] + start_strand->t * seg_len[seg2];
    double base_len = 0;
    for (std::size_t i = 0; i + 1 < fwd.lift.size(); ++i) base_len += norm(fwd.lift[i + 1] - fwd.lift[i]);
    const double g3 = g2 + base_len;

    if (nseg > 1) {
        // The splice replaces part of one straight segment; a base arc touching
        // a breakpoint would cut into an earlier tent.
        const Strand* end_strand = nullptr;
        for (const auto& st : arr.vertex_strands[fwd.target])
            if (st.curve == c1 && norm(st.lift - fwd.lift.back()) < 1e-9) end_strand = &st;
        if (!end_strand || end_strand->segment != seg2 || g3 <= g2 ||
            g3 > seg_prefix[seg2] + seg_len[seg2] + 1e-9)
            throw NotDimerizable("base arc spans a previous rewrite");
    }

    // Every passage of the curve, to keep the splice clear of other crossings.
    std::vector<double> events;
    for (const auto& strands : arr.vertex_strands)
        for (const auto& st : strands)
            if (st.curve == c1) events.push_back(seg_prefix[st.segment] + st.t * seg_len[st.segment]);
    double gap_prev = total_len, gap_next = total_len;
    for (double e : events) {
        double dp = g2 - e;
        dp -= total_len * std::floor(dp / total_len);
        if (dp > 1e-12) gap_prev = std::min(gap_prev, dp);
        double dn = e - (g3 - total_len * std::floor(g3 / total_len));
        dn -= total_len * std::floor(dn / total_len);
        if (dn > 1e-12) gap_next = std::min(gap_next, dn);
    }
    double m2_max = 0.999 * gap_prev, m3_max = 0.999 * gap_next;
    if (nseg > 1) {
        m2_max = std::min(m2_max, 0.999 * (g2 - seg_prefix[seg2]));
        m3_max = std::min(m3_max, 0.999 * (seg_prefix[seg2] + seg_len[seg2] - g3));
    }
    // With the period closing the curve, both margins eat the same complement.
    const double room = total_len - base_len;
    m2_max = std::min(m2_max, 0.4995 * room);
    m3_max = std::min(m3_max, 0.4995 * room);
    if (m2_max < 1e-9 || m3_max < 1e-9) throw NotDimerizable("no room beside the base arc");

    const LatticeVector d1 = curve.directions[seg2];
    const LatticeVector delta1 = quarter_turn_ccw(d1);
    const Vec2 d1v = to_vec(d1), delta1v = to_vec(delta1);
    const double d1n = norm(d1v);
    const Vec2 dhat = (1.0 / norm(eF - sF)) * (eF - sF);
    const Vec2 c_ref = 0.5 * (sF + eF);
    const int sigma = sign_of(dot(delta1v, p1 - c_ref));
    if (sigma == 0) throw NotDimerizable("degenerate site geometry");

    struct Cand {
        LatticeVector q;
        double angle, len;
    };
    std::vector<Cand> cands;
    const Vec2 toward = p1 - c_ref;
    const double toward_ang = std::atan2(toward.y, toward.x);
    for (int qx = -8; qx <= 8; ++qx)
        for (int qy = -8; qy <= 8; ++qy) {
            LatticeVector q{qx, qy};
            if ((qx == 0 && qy == 0) || lattice_gcd(qx, qy) != 1) continue;
            if (sign_of(double(dot(delta1, q))) != sigma) continue;
            // Both tent directions d1 +/- q must be nonzero vectors.
            if ((d1.x == q.x && d1.y == q.y) || (d1.x == -q.x && d1.y == -q.y)) continue;
            double ang = std::abs(wrap_pm_pi(std::atan2(double(qy), double(qx)) - toward_ang));
            cands.push_back({q, ang, norm(to_vec(q))});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        return a.angle != b.angle ? a.angle < b.angle : a.len < b.len;
    });

    const std::vector<int> old_sites = yang_baxter_sites(arr, abs_idx);

    for (const Cand& cand : cands) {
        for (double phi : {0.5, 0.25, 0.1, 0.04}) {
            const double m2 = phi * m2_max, m3 = phi * m3_max;
            const Vec2 xd = sF - m2 * dhat, yd = eF + m3 * dhat;
            const Vec2 c0 = 0.5 * (xd + yd);
            const double half_len = 0.5 * norm(yd - xd);
            const Vec2 u = c0 + (half_len / d1n) * to_vec(cand.q);
            // The tent apex must clear the corner it slides across.
            if ((half_len / d1n) * std::abs(double(dot(delta1, cand.q))) <=
                std::abs(dot(delta1v, p1 - c0)))
                continue;
            const Vec2 r_ref = 2.0 * u - p1;
            if (arr.distance_to_curves(wrap_torus(r_ref)) < 1e-6) continue;
            const int face_old = arr.face_at(wrap_torus(r_ref));
            if (face_old < 0) continue;

            // Splice in the curve frame; displacements carry over from the face frame.
            const Vec2 sC = fwd.lift[0];
            const Vec2 xdC = sC + (xd - sF), uC = sC + (u - sF), ydC = sC + (yd - sF);
            TorusCurve next = curve;
            if (nseg == 1) {
                next.anchors = {xdC, uC, ydC};
                next.directions = {primitive(d1 + cand.q), primitive(d1 - cand.q), d1};
            } else {
                next.anchors.clear();
                next.directions.clear();
                for (std::size_t i = 0; i < nseg; ++i) {
                    next.anchors.push_back(curve.anchors[i]);
                    next.directions.push_back(curve.directions[i]);
                    if (int(i) == seg2) {
                        next.anchors.insert(next.anchors.end(), {xdC, uC, ydC});
                        next.directions.insert(
                            next.directions.end(),
                            {primitive(d1 + cand.q), primitive(d1 - cand.q), d1});
                    }
                }
            }
            const Vec2 rebase = wrap_torus(next.anchors[0]) - next.anchors[0];
            for (auto& a : next.anchors) a = a + rebase;

            std::vector<TorusCurve> family = arr.curves;
            family[c1] = next;
            TorusArrangement out;
            try {
                out = build_arrangement(family, BuildOptions{});
            } catch (const std::exception&) {
                continue;
            }

            if (out.vertices.size() != arr.vertices.size() ||
                out.edge_count() != arr.edge_count() || out.faces.size() != arr.faces.size())
                continue;
            if (out.pair_crossings != arr.pair_crossings) continue;
            if (out.distance_to_curves(wrap_torus(r_ref)) < 1e-6) continue;
            const int face_new = out.face_at(wrap_torus(r_ref));
            if (face_new < 0) continue;

            IndexMap next_idx;
            try {
                next_idx = calibrate_by_reference(out, relative_index_map(out), face_new,
                                                  abs_idx.value[face_old]);
            } catch (const std::exception&) {
                continue;
            }

            const std::vector<int> new_sites = yang_baxter_sites(out, next_idx);
            if (new_sites.size() + 1 != old_sites.size()) continue;
            bool sites_match = true;
            for (int f : old_sites) {
                if (f == cell) continue;
                bool hit = false;
                for (int g : new_sites)
                    if (wrapped_distance(arr.faces[f].centroid, out.faces[g].centroid) < 1e-6)
                        hit = true;
                if (!hit) sites_match = false;
            }
            if (!sites_match) continue;

            // Behind the apex a triangle of the opposite sign must appear.
            const Vec2 qpt = wrap_torus(0.5 * (u + p1));
            const int fq = out.face_at(qpt);
            if (fq < 0 || !out.faces[fq].is_triangle() || next_idx.value[fq] != -s) continue;

            out.source_polygon = arr.source_polygon;
            out.rewrite_probe = wrap_torus(r_ref);
            return {std::move(out), std::move(next_idx)};
        }
    }
    throw NotDimerizable("no tent shape realizes the rewrite at this cell");
}

}  // namespace

TorusArrangement apply_yang_baxter(const TorusArrangement& arr, int cell, const IndexMap* idx) {
    IndexMap abs_idx = resolve_index(arr, idx, "rewrite");
    return rewrite_once(arr, cell, abs_idx).arr;
}

std::vector<std::vector<int>> rotation_faces(const DimerGraph& g) {
    const int E = int(g.edges.size());
    std::vector<std::map<int, int>> pos(g.vertices.size());
    for (int v = 0; v < int(g.vertices.size()); ++v)
        for (int i = 0; i < int(g.vertices[v].rotation.size()); ++i)
            pos[v][g.vertices[v].rotation[i]] = i;

    // Dart 2e runs tail->head, 2e+1 head->tail; successor turns onto the next
    // edge counterclockwise at the landing vertex, tracing the face on the
    // dart's right.
    auto next_dart = [&](int d) {
        int e = d / 2;
        int v = d % 2 == 0 ? g.edges[e].head : g.edges[e].tail;
        const auto& rot = g.vertices[v].rotation;
        int p = pos[v].at(e);
        int e2 = rot[(p + 1) % rot.size()];
        return g.edges[e2].tail == v ? 2 * e2 : 2 * e2 + 1;
    };

    std::vector<std::vector<int>> faces;
    std::vector<char> seen(2 * E, 0);
    for (int d0 = 0; d0 < 2 * E; ++d0) {
        if (seen[d0]) continue;
        std::vector<int> face;
        int d = d0;
        do {
            seen[d] = 1;
            face.push_back(d);
            d = next_dart(d);
        } while (d != d0);
        faces.push_back(std::move(face));
    }
    return faces;
}

bool has_perfect_matching(const DimerGraph& g) {
    std::vector<int> whites, blacks;
    std::vector<int> side(g.vertices.size(), -1);
    for (int v = 0; v < int(g.vertices.size()); ++v) {
        if (g.vertices[v].white) {
            side[v] = int(whites.size());
            whites.push_back(v);
        } else {
            side[v] = int(blacks.size());
            blacks.push_back(v);
        }
    }
    if (whites.size() != blacks.size()) return false;

    std::vector<std::vector<int>> adj(whites.size());
    for (const auto& e : g.edges) adj[side[e.tail]].push_back(side[e.head]);

    std::vector<int> match_black(blacks.size(), -1);
    std::vector<char> visited;
    auto augment = [&](auto&& self, int w) -> bool {
        for (int b : adj[w]) {
            if (visited[b]) continue;
            visited[b] = 1;
            if (match_black[b] < 0 || self(self, match_black[b])) {
                match_black[b] = w;
                return true;
            }
        }
        return false;
    };
    for (std::size_t w = 0; w < whites.size(); ++w) {
        visited.assign(blacks.size(), 0);
        if (!augment(augment, int(w))) return false;
    }
    return true;
}

DimerGraph dimerize(const TorusArrangement& arr, const IndexMap* idx) {
    if (!arr.has_geometry) throw NonSimpleArrangement("dimer synthesis requires geometry");
    IndexMap cur_idx = resolve_index(arr, idx, "dimer synthesis");
    TorusArrangement cur = arr;

    std::vector<int> sites = yang_baxter_sites(cur, cur_idx);
    const std::size_t guard = sites.size() + 8;
    std::size_t iterations = 0;
    while (!sites.empty()) {
        if (++iterations > guard) throw NotDimerizable("rewrite loop did not terminate");
        std::sort(sites.begin(), sites.end(), [&](int a, int b) {
            Vec2 ca = cur.faces[a].centroid, cb = cur.faces[b].centroid;
            if (std::abs(ca.x - cb.x) > 1e-9) return ca.x < cb.x;
            if (std::abs(ca.y - cb.y) > 1e-9) return ca.y < cb.y;
            return false;
        });
        RewriteResult r = rewrite_once(cur, sites[0], cur_idx);
        cur = std::move(r.arr);
        cur_idx = std::move(r.idx);
        sites = yang_baxter_sites(cur, cur_idx);
    }

    if (!cur.simple())
        throw NotDimerizable("a weighted curve or multiple point survives the rewrites");
    for (int v = 0; v < int(cur.vertices.size()); ++v) {
        int b = cur_idx.value[cur.sector_faces(v)[cur.in_in_sector(v)]];
        if (mod4(b) % 2 != 0) throw NotDimerizable("a crossing with an odd equal pair survives");
    }

    DimerGraph g;
    std::vector<int> vertex_of_face(cur.faces.size(), -1);
    for (int f = 0; f < int(cur.faces.size()); ++f) {
        int val = cur_idx.value[f];
        if (val == 0) g.zero_cells += 1;
        if (mod4(val) % 2 == 0) continue;
        DimerVertex dv;
        dv.cell = f;
        dv.white = mod4(val) == 1;
        dv.position = cur.faces[f].centroid;
        vertex_of_face[f] = int(g.vertices.size());
        g.vertices.push_back(std::move(dv));
    }

    // One edge per crossing, joining the two odd sectors; the winding of the
    // edge records how the two cells' lift frames place the crossing apart.
    std::vector<int> edge_at(cur.vertices.size(), -1);
    std::vector<std::map<int, Vec2>> corner_lift(cur.faces.size());
    for (int f = 0; f < int(cur.faces.size()); ++f) {
        if (vertex_of_face[f] < 0) continue;
        auto lifts = face_corner_lifts(cur, cur.faces[f]);
        for (std::size_t k = 0; k < lifts.size(); ++k)
            corner_lift[f][cur.halfedges[cur.faces[f].boundary[k]].origin] = lifts[k];
    }
    for (int v = 0; v < int(cur.vertices.size()); ++v) {
        int s = cur.in_in_sector(v);
        auto sec = cur.sector_faces(v);
        int a = sec[(s + 1) % 4], c = sec[(s + 3) % 4];
        if (mod4(cur_idx.value[a]) != 1) std::swap(a, c);
        DimerEdge e;
        e.tail = vertex_of_face[a];
        e.head = vertex_of_face[c];
        e.crossing = v;
        e.position = cur.vertices[v].pos;
        Vec2 diff = corner_lift[a].at(v) - corner_lift[c].at(v);
        e.wrap = {std::int64_t(std::llround(diff.x / kTwoPi)),
                  std::int64_t(std::llround(diff.y / kTwoPi))};
        edge_at[v] = int(g.edges.size());
        g.edges.push_back(std::move(e));
    }

    for (auto& dv : g.vertices)
        for (int h : cur.faces[dv.cell].boundary)
            dv.rotation.push_back(edge_at[cur.halfedges[h].origin]);

    g.geometry = std::move(cur);
    g.index = std::move(cur_idx);

    if (!has_perfect_matching(g)) throw NotDimerizable("the crossing graph has no perfect matching");
    const int F = int(rotation_faces(g).size());
    if (int(g.vertices.size()) - int(g.edges.size()) + F != 0)
        throw NotDimerizable("dimer embedding is not a torus map");
    if (F != g.zero_cells) throw NotDimerizable("dimer faces do not match the uncovered cells");
    return g;
}

Quiver quiver_orientation(const DimerGraph& g) {
    auto faces = rotation_faces(g);
    std::vector<int> face_of(2 * g.edges.size(), -1);
    for (int f = 0; f < int(faces.size()); ++f)
        for (int d : faces[f]) face_of[d] = f;
    Quiver q;
    q.face_count = int(faces.size());
    for (int e = 0; e < int(g.edges.size()); ++e)
        q.arrows.push_back({face_of[2 * e], face_of[2 * e + 1], e});
    return q;
}

bool is_consistent(const TorusArrangement& arr) {
    for (const auto& c : arr.curves)
        if (c.homology == LatticeVector{0, 0}) return false;
    for (const auto& c : arr.curves)
        if (c.weight > 1) return false;
    for (std::size_t i = 0; i < arr.curves.size(); ++i)
        if (arr.pair_crossings[i][i] > 0) return false;

    // Two curves may meet once per homotopy class of crossing and sign; the
    // class is the lift separation modulo both period lattices.
    std::map<std::tuple<int, int, std::int64_t, std::int64_t, int>, std::set<int>> buckets;
    for (std::size_t v = 0; v < arr.vertices.size(); ++v) {
        const auto& strands = arr.vertex_strands[v];
        for (std::size_t a = 0; a < strands.size(); ++a)
            for (std::size_t b = a + 1; b < strands.size(); ++b) {
                const Strand* si = &strands[a];
                const Strand* sj = &strands[b];
                if (si->curve == sj->curve) continue;
                if (si->curve > sj->curve) std::swap(si, sj);
                Vec2 di = to_vec(arr.curves[si->curve].directions[si->segment]);
                Vec2 dj = to_vec(arr.curves[sj->curve].directions[sj->segment]);
                int sgn = sign_of(cross(di, dj));
                LatticeVector cls{std::int64_t(std::llround((si->lift.x - sj->lift.x) / kTwoPi)),
                                  std::int64_t(std::llround((si->lift.y - sj->lift.y) / kTwoPi))};
                LatticeVector hi = arr.curves[si->curve].homology;
                LatticeVector hj = arr.curves[sj->curve].homology;
                std::int64_t det = cross(hi, hj);
                std::int64_t k1, k2;
                int tag;
                if (det != 0) {
                    std::int64_t m = det < 0 ? -det : det;
                    k1 = ((cross(cls, hj) % m) + m) % m;
                    k2 = ((cross(hi, cls) % m) + m) % m;
                    tag = 0;
                } else {
                    k1 = cross(cls, primitive(hi));
                    k2 = 0;
                    tag = 1;
                }
                auto& seen = buckets[{si->curve, sj->curve, k1, k2, tag}];
                if (seen.count(sgn)) return false;
                seen.insert(sgn);
            }
    }
    return true;
}

bool is_consistent(const std::vector<TorusCurve>& curves) {
    for (const auto& c : curves)
        if (c.homology == LatticeVector{0, 0}) return false;
    BuildOptions opts;
    opts.allow_degenerate = true;
    opts.geometry = false;
    TorusArrangement arr;
    try {
        arr = build_arrangement(curves, opts);
    } catch (const NonSimpleArrangement&) {
        return false;
    }
    return is_consistent(arr);
}

CoamoebaComponents combinatorial_coamoeba(const TorusArrangement& arr, const IndexMap& idx) {
    if (!idx.calibrated) throw UncalibratedIndex("component census needs an absolute index");
    const int n = int(arr.faces.size());
    DisjointSet covered(n), complement(n);

    // Closures of nonzero cells meet wherever they share a corner.
    for (const auto& v : arr.vertices) {
        int first = -1;
        for (int h : v.out) {
            int f = arr.halfedges[h].face;
            if (idx.value[f] == 0) continue;
            if (first < 0)
                first = f;
            else
                covered.unite(first, f);
        }
    }
    // Open zero cells only touch across an arc with zero on both sides.
    for (int h = 0; h < int(arr.halfedges.size()); h += 2) {
        int f1 = arr.halfedges[h].face, f2 = arr.halfedges[h + 1].face;
        if (idx.value[f1] == 0 && idx.value[f2] == 0) complement.unite(f1, f2);
    }

    CoamoebaComponents out;
    out.covered_component.assign(n, -1);
    out.complement_component.assign(n, -1);
    std::map<int, int> cid, zid;
    for (int f = 0; f < n; ++f) {
        if (idx.value[f] != 0) {
            int r = covered.find(f);
            if (!cid.count(r)) cid[r] = int(cid.size());
            out.covered_component[f] = cid[r];
        } else {
            int r = complement.find(f);
            if (!zid.count(r)) zid[r] = int(zid.size());
            out.complement_component[f] = zid[r];
        }
    }
    out.covered_count = int(cid.size());
    out.complement_count = int(zid.size());
    return out;
}

}  // namespace coamoeba
