#include "coamoeba/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace coamoeba {

namespace {

Complex ipow(Complex base, std::int64_t e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    Complex r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace

std::vector<LatticePoint> SupportedPolynomial::support() const {
    std::vector<LatticePoint> s;
    s.reserve(terms.size());
    for (const auto& t : terms) s.push_back(t.exponent);
    return s;
}

Complex SupportedPolynomial::coefficient(LatticePoint e) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), e,
                               [](const Term& t, const LatticePoint& p) { return t.exponent < p; });
    if (it != terms.end() && it->exponent == e) return it->coefficient;
    return {};
}

Complex SupportedPolynomial::eval(Complex z, Complex w) const {
    Complex acc = 0.0;
    for (const auto& t : terms) acc += t.coefficient * ipow(z, t.exponent.x) * ipow(w, t.exponent.y);
    return acc;
}

SupportedPolynomial SupportedPolynomial::z_dz() const {
    std::vector<Term> out;
    for (const auto& t : terms)
        if (t.exponent.x != 0) out.push_back({t.exponent, t.coefficient * double(t.exponent.x)});
    return {out};
}

SupportedPolynomial SupportedPolynomial::w_dw() const {
    std::vector<Term> out;
    for (const auto& t : terms)
        if (t.exponent.y != 0) out.push_back({t.exponent, t.coefficient * double(t.exponent.y)});
    return {out};
}

SupportedPolynomial SupportedPolynomial::swapped_variables() const {
    std::vector<Term> out;
    for (const auto& t : terms) out.push_back({{t.exponent.y, t.exponent.x}, t.coefficient});
    return make_polynomial(out);
}

SupportedPolynomial SupportedPolynomial::translated(LatticeVector tr) const {
    std::vector<Term> out;
    for (const auto& t : terms) out.push_back({t.exponent + tr, t.coefficient});
    return {out};
}

SupportedPolynomial make_polynomial(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    std::vector<Term> merged;
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().exponent == t.exponent)
            merged.back().coefficient += t.coefficient;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.coefficient == Complex{}; });
    if (merged.empty()) throw DegenerateSupport("make_polynomial: no nonzero terms");
    return {merged};
}

SupportedPolynomial truncate(const SupportedPolynomial& f, const Face& face) {
    LatticePolygon np = f.newton();
    std::vector<Term> kept;
    switch (face.kind) {
        case Face::Kind::Whole:
            return f;
        case Face::Kind::FacetIndex: {
            if (face.index < 0 || face.index >= static_cast<int>(np.facets.size()))
                throw NotAFace("truncate: facet index out of range");
            const Facet& fac = np.facets[face.index];
            for (const auto& t : f.terms) {
                LatticeVector d = t.exponent - fac.from;
                if (cross(fac.edge, d) != 0) continue;
                std::int64_t num = dot(d, fac.direction);
                if (num < 0 || num > fac.lattice_length * dot(fac.direction, fac.direction)) continue;
                if (num % dot(fac.direction, fac.direction) != 0) continue;
                kept.push_back(t);
            }
            break;
        }
        case Face::Kind::VertexIndex: {
            if (face.index < 0 || face.index >= static_cast<int>(np.vertices.size()))
                throw NotAFace("truncate: vertex index out of range");
            for (const auto& t : f.terms)
                if (t.exponent == np.vertices[face.index]) kept.push_back(t);
            break;
        }
    }
    if (kept.empty()) throw NotAFace("truncate: face carries no terms");
    return {kept};
}

EdgePolynomial edge_polynomial(const SupportedPolynomial& f, int facet_index) {
    LatticePolygon np = f.newton();
    if (facet_index < 0 || facet_index >= static_cast<int>(np.facets.size()))
        throw NotAFacet("edge_polynomial: facet index out of range");
    const Facet& fac = np.facets[facet_index];
    EdgePolynomial ep;
    ep.base = fac.from;
    ep.direction = fac.direction;
    ep.coefficients.resize(fac.lattice_length + 1);
    for (std::int64_t j = 0; j <= fac.lattice_length; ++j)
        ep.coefficients[j] = f.coefficient(fac.from + j * fac.direction);
    return ep;
}

std::vector<RootCluster> univariate_roots(const std::vector<Complex>& coefficients, double tol) {
    double scale = 0;
    for (const Complex& c : coefficients) scale = std::max(scale, std::abs(c));
    if (scale == 0) throw IllConditioned("univariate_roots: zero polynomial");
    const double zero_bar = 1e-13 * scale;

    int deg = static_cast<int>(coefficients.size()) - 1;
    while (deg > 0 && std::abs(coefficients[deg]) <= zero_bar) --deg;
    int low = 0;
    while (low < deg && std::abs(coefficients[low]) <= zero_bar) ++low;

    std::vector<RootCluster> clusters;
    if (low > 0) clusters.push_back({Complex{}, low});
    const int d = deg - low;
    if (d == 0) return clusters;

    std::vector<Complex> raw;
    if (d == 1) {
        raw.push_back(-coefficients[low] / coefficients[low + 1]);
    } else {
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -coefficients[low + i] / coefficients[low + d];
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
        if (solver.info() != Eigen::Success)
            throw IllConditioned("univariate_roots: eigenvalue iteration failed");
        for (int i = 0; i < d; ++i) raw.push_back(solver.eigenvalues()(i));
    }

    auto p_at = [&](Complex u) {
        Complex acc = 0.0;
        for (int i = deg; i >= low; --i) acc = acc * u + coefficients[i];
        return acc * ipow(u, low);
    };
    auto dp_at = [&](Complex u) {
        Complex acc = 0.0;
        for (int i = deg; i >= 1; --i) acc = acc * u + double(i) * coefficients[i];
        return acc;
    };
    for (Complex& u : raw)
        for (int step = 0; step < 2; ++step) {
            Complex pv = p_at(u), dv = dp_at(u);
            if (std::abs(dv) < 1e-12 * scale) break;  // multiple-root region: leave to clustering
            Complex next = u - pv / dv;
            if (std::abs(p_at(next)) < std::abs(pv)) u = next;
        }

    /* Companion eigenvalues of an exact m-fold root scatter at roughly the m-th root of
       machine epsilon, far beyond any reasonable tol, so the cluster radius keeps a floor. */
    auto radius = [&](Complex u) { return std::max(tol, 1e-6) * (1.0 + std::abs(u)); };
    std::vector<int> owner(raw.size());
    std::iota(owner.begin(), owner.end(), 0);
    auto find = [&](int i) {
        while (owner[i] != i) i = owner[i] = owner[owner[i]];
        return i;
    };
    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = i + 1; j < raw.size(); ++j)
            if (std::abs(raw[i] - raw[j]) <= std::max(radius(raw[i]), radius(raw[j])))
                owner[find(static_cast<int>(i))] = find(static_cast<int>(j));

    std::vector<std::vector<Complex>> groups(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) groups[find(static_cast<int>(i))].push_back(raw[i]);
    for (const auto& g : groups) {
        if (g.empty()) continue;
        Complex mean = std::accumulate(g.begin(), g.end(), Complex{}) / double(g.size());
        clusters.push_back({mean, static_cast<int>(g.size())});
    }

    int total = 0;
    for (const auto& c : clusters) total += c.multiplicity;
    if (total != deg) throw IllConditioned("univariate_roots: multiplicity bookkeeping failed");

    for (const auto& c : clusters) {
        if (low > 0 && c.value == Complex{}) continue;  // exact zero root from trailing gap
        double frame = scale * std::pow(1.0 + std::abs(c.value), deg);
        double cert = c.multiplicity == 1
                          ? std::max(tol, 1e-8)
                          : std::pow(2 * std::max(tol, 1e-6), c.multiplicity);
        if (std::abs(p_at(c.value)) > cert * frame)
            throw IllConditioned("univariate_roots: residual not certified");
    }
    return clusters;
}

}  // namespace coamoeba
