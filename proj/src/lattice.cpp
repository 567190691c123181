#include "coamoeba/lattice.hpp"

#include <algorithm>
#include <set>

namespace coamoeba {

std::int64_t lattice_gcd(std::int64_t a, std::int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::int64_t double_area(const std::vector<LatticePoint>& cycle) {
    std::int64_t s = 0;
    const std::size_t n = cycle.size();
    for (std::size_t i = 0; i < n; ++i) s += cross(cycle[i], cycle[(i + 1) % n]);
    return s;
}

std::int64_t LatticePolygon::double_area() const { return coamoeba::double_area(vertices); }

static std::vector<Facet> make_facets(const std::vector<LatticePoint>& verts) {
    std::vector<Facet> facets;
    const std::size_t n = verts.size();
    facets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Facet f;
        f.from = verts[i];
        f.to = verts[(i + 1) % n];
        f.edge = f.to - f.from;
        f.lattice_length = lattice_gcd(f.edge.x, f.edge.y);
        f.direction = {f.edge.x / f.lattice_length, f.edge.y / f.lattice_length};
        f.normal = facet_normal(f.edge);
        facets.push_back(f);
    }
    return facets;
}

LatticePolygon newton_polygon(const std::vector<LatticePoint>& support) {
    std::vector<LatticePoint> pts(support);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw DegenerateSupport("newton_polygon: support spans fewer than 3 distinct points");

    /* Andrew monotone chain with strict turns: hull corners only. */
    auto build = [&](bool lower) {
        std::vector<LatticePoint> h;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const LatticePoint& p = pts[lower ? k : pts.size() - 1 - k];
            while (h.size() >= 2 && cross(h.back() - h[h.size() - 2], p - h.back()) <= 0) h.pop_back();
            h.push_back(p);
        }
        return h;
    };
    std::vector<LatticePoint> lo = build(true), hi = build(false);
    lo.pop_back();
    hi.pop_back();
    std::vector<LatticePoint> hull = lo;
    hull.insert(hull.end(), hi.begin(), hi.end());
    if (hull.size() < 3) throw DegenerateSupport("newton_polygon: support is one-dimensional");

    /* Monotone chain emits the lexicographically smallest point first already,
       but rotate defensively so the invariant never depends on that detail. */
    auto mn = std::min_element(hull.begin(), hull.end());
    std::rotate(hull.begin(), mn, hull.end());

    LatticePolygon poly;
    poly.vertices = std::move(hull);
    poly.facets = make_facets(poly.vertices);
    return poly;
}

bool is_sparse_along_edges(const std::vector<LatticePoint>& support, const LatticePolygon& np) {
    std::set<std::pair<std::int64_t, std::int64_t>> have;
    for (const auto& p : support) have.insert({p.x, p.y});
    for (const Facet& f : np.facets)
        for (std::int64_t j = 1; j < f.lattice_length; ++j) {
            LatticePoint q = f.from + j * f.direction;
            if (have.count({q.x, q.y})) return false;
        }
    return true;
}

bool is_sparse_along_edges(const std::vector<LatticePoint>& support) {
    return is_sparse_along_edges(support, newton_polygon(support));
}

LatticePolygon canonical_translate(const LatticePolygon& p) {
    LatticePoint base = p.vertices.front();  // lexicographically smallest by construction
    for (const auto& v : p.vertices)
        if (v < base) base = v;
    LatticePolygon out;
    out.vertices.reserve(p.vertices.size());
    for (const auto& v : p.vertices) out.vertices.push_back(v - base);
    auto mn = std::min_element(out.vertices.begin(), out.vertices.end());
    std::rotate(out.vertices.begin(), mn, out.vertices.end());
    out.facets = make_facets(out.vertices);
    return out;
}

LatticePolygon tiered_pentagon(std::int64_t k) {
    if (k < 1) throw DegenerateSupport("tiered_pentagon: k must be >= 1");
    return newton_polygon({{0, 0}, {1, 0}, {k + 1, 1}, {1, 2}, {0, 1}});
}

}  // namespace coamoeba
