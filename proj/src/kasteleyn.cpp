#include "coamoeba/kasteleyn.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "coamoeba/errors.hpp"

namespace coamoeba {

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

/* Winding to monomial exponent: the quarter turn that aligns edge windings
   with the source polygon frame. */
LatticePoint exponent_of(LatticeVector wrap) { return {wrap.y, -wrap.x}; }

}  // namespace

SignAssignment kasteleyn_signs(const DimerGraph& g) {
    const int E = int(g.edges.size());
    const int V = int(g.vertices.size());
    for (const auto& e : g.edges)
        if (!g.vertices[e.tail].white || g.vertices[e.head].white)
            throw NotBipartite("dimer edge does not join white to black");

    const auto faces = rotation_faces(g);
    const int F = int(faces.size());
    std::vector<int> face_of(2 * E, -1);
    for (int f = 0; f < F; ++f)
        for (int d : faces[f]) face_of[d] = f;

    // Tree edges stay positive; the rest carry the face conditions.
    std::vector<char> fixed(E, 0), x(E, 0);
    DisjointSet ds(V);
    for (int e = 0; e < E; ++e)
        if (ds.unite(g.edges[e].tail, g.edges[e].head)) fixed[e] = 1;

    // An edge with one face on both sides enters that face's product twice and
    // cancels, so its sign is free.
    for (int e = 0; e < E; ++e)
        if (!fixed[e] && face_of[2 * e] == face_of[2 * e + 1]) fixed[e] = 1;

    // Dual spanning tree over faces through the undecided edges.
    std::vector<int> parent_edge(F, -1), order;
    std::vector<char> seen(F, 0), in_dual(E, 0);
    std::queue<int> bfs;
    if (F > 0) {
        bfs.push(0);
        seen[0] = 1;
    }
    while (!bfs.empty()) {
        int f = bfs.front();
        bfs.pop();
        order.push_back(f);
        for (int d : faces[f]) {
            int e = d / 2;
            if (fixed[e] || in_dual[e]) continue;
            int other = face_of[d ^ 1];
            if (other < 0 || seen[other]) continue;
            seen[other] = 1;
            in_dual[e] = 1;
            parent_edge[other] = e;
            bfs.push(other);
        }
    }
    if (int(order.size()) != F)
        throw NoValidSignAssignment("embedded faces are not connected through free edges");

    std::vector<int> leftover;
    for (int e = 0; e < E; ++e)
        if (!fixed[e] && !in_dual[e]) leftover.push_back(e);

    // 1 iff the face product misses (-1)^(k+1).
    auto residue = [&](int f) {
        int k = int(faces[f].size()) / 2;
        int r = (k + 1) & 1;
        for (int d : faces[f]) r ^= x[d / 2];
        return r;
    };

    const int free_bits = int(std::min<std::size_t>(leftover.size(), 4));
    std::vector<int> violating;
    for (int mask = 0; mask < (1 << free_bits); ++mask) {
        for (std::size_t i = 0; i < leftover.size(); ++i)
            x[leftover[i]] = i < 4 ? char((mask >> i) & 1) : char(0);
        // Children first: each face is solved for its parent-link edge, which
        // occurs in it exactly once.
        for (int i = int(order.size()) - 1; i >= 1; --i) {
            int f = order[i];
            int e = parent_edge[f];
            x[e] = 0;
            x[e] = char(residue(f));
        }
        violating.clear();
        for (int f = 0; f < F; ++f)
            if (residue(f)) violating.push_back(f);
        if (violating.empty()) {
            SignAssignment out;
            out.sign.resize(E);
            for (int e = 0; e < E; ++e) out.sign[e] = x[e] ? -1 : 1;
            out.leftover = leftover;
            for (int e : leftover) out.twist.push_back(x[e] ? -1 : 1);
            return out;
        }
    }
    std::ostringstream msg;
    msg << "no sign twist satisfies the face rule; violating faces:";
    for (int f : violating) msg << ' ' << f;
    throw NoValidSignAssignment(msg.str());
}

std::vector<std::vector<LaurentPolynomial2>> kasteleyn_matrix(const DimerGraph& g,
                                                              const SignAssignment& s) {
    std::vector<int> row(g.vertices.size(), -1), col(g.vertices.size(), -1);
    int nw = 0, nb = 0;
    for (int v = 0; v < int(g.vertices.size()); ++v) {
        if (g.vertices[v].white)
            row[v] = nw++;
        else
            col[v] = nb++;
    }
    if (nw != nb) throw NotBipartite("unequal colour classes give no square matrix");

    std::vector<std::vector<LaurentPolynomial2>> K(nw, std::vector<LaurentPolynomial2>(nw));
    for (int e = 0; e < int(g.edges.size()); ++e) {
        const auto& ed = g.edges[e];
        GaussianRational c = s.sign[e] == 1 ? ed.weight : -ed.weight;
        K[row[ed.tail]][col[ed.head]].add_term(exponent_of(ed.wrap), c);
    }
    return K;
}

LaurentPolynomial2 characteristic_polynomial(const DimerGraph& g) {
    return determinant(kasteleyn_matrix(g, kasteleyn_signs(g)));
}

LatticePolygon characteristic_polygon(const DimerGraph& g) {
    LaurentPolynomial2 det = characteristic_polynomial(g);
    if (det.is_zero()) throw ZeroDeterminant("characteristic polynomial vanishes");
    return canonical_translate(support_polygon(det));
}

std::int64_t matching_count(const DimerGraph& g) {
    return std::llround(characteristic_polynomial(g).eval_abs_at_ones());
}

}  // namespace coamoeba
