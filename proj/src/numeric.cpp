#include "coamoeba/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <set>
#include <string>

#include <Eigen/Dense>

#include "coamoeba/errors.hpp"
#include "coamoeba/graph.hpp"

namespace coamoeba {

namespace {

/* Coefficients of f(z, .) as a polynomial in the second variable, with the
   Laurent tail shifted away and near-vanishing end coefficients stripped.
   Stripping only discards roots that escaped to 0 or infinity. */
std::vector<Complex> second_variable_slice(const SupportedPolynomial& f, Complex z) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& t : f.terms) {
        lo = std::min(lo, t.exponent.y);
        hi = std::max(hi, t.exponent.y);
    }
    std::vector<Complex> c(std::size_t(hi - lo + 1), Complex{0, 0});
    for (const auto& t : f.terms) {
        Complex zp{1, 0};
        for (std::int64_t k = 0; k < t.exponent.x; ++k) zp *= z;
        for (std::int64_t k = 0; k > t.exponent.x; --k) zp /= z;
        c[std::size_t(t.exponent.y - lo)] += t.coefficient * zp;
    }
    double top = 0;
    for (const auto& v : c) top = std::max(top, std::abs(v));
    if (top == 0) return {};
    std::size_t b = 0, e = c.size();
    while (b < e && std::abs(c[b]) < 1e-12 * top) ++b;
    while (e > b && std::abs(c[e - 1]) < 1e-12 * top) --e;
    return {c.begin() + b, c.begin() + e};
}

struct SampleRow {
    std::vector<std::int64_t> hits;
    std::int64_t binned = 0, skipped = 0;
};

SampleRow sample_row(const SupportedPolynomial& f, const TorusArrangement& arr,
                     const SampleOptions& opts, int i) {
    SampleRow row;
    row.hits.assign(arr.faces.size(), 0);
    double theta1 = kTwoPi * i / opts.grid;
    Complex dir{std::cos(theta1), std::sin(theta1)};
    for (int j = 0; j < opts.grid; ++j) {
        double rho = std::pow(opts.radius, 2.0 * j / (opts.grid - 1) - 1.0);
        auto coeffs = second_variable_slice(f, rho * dir);
        if (coeffs.size() < 2) continue;
        std::vector<RootCluster> roots;
        try {
            roots = univariate_roots(coeffs, 1e-9);
        } catch (const IllConditioned&) {
            row.skipped += 1;
            continue;
        }
        for (const auto& rc : roots) {
            if (std::abs(rc.value) == 0) continue;
            Vec2 theta = wrap_torus({theta1, std::atan2(rc.value.imag(), rc.value.real())});
            if (arr.distance_to_curves(theta) <= opts.skin) {
                row.skipped += rc.multiplicity;
                continue;
            }
            int face = arr.face_at(theta);
            if (face < 0) {
                row.skipped += rc.multiplicity;
                continue;
            }
            row.hits[std::size_t(face)] += rc.multiplicity;
            row.binned += rc.multiplicity;
        }
    }
    return row;
}

}  // namespace

CoamoebaSample sample_coamoeba(const SupportedPolynomial& f, const TorusArrangement& arr,
                               const SampleOptions& opts, ExecPolicy policy) {
    if (!arr.has_geometry) throw NonSimpleArrangement("geometry required for sampling");
    if (opts.grid < 2) throw DegenerateSystem("sampling grid too small");
    std::vector<SampleRow> rows(std::size_t(opts.grid));
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < opts.grid; ++i) rows[std::size_t(i)] = sample_row(f, arr, opts, i);
    } else {
        for (int i = 0; i < opts.grid; ++i) rows[std::size_t(i)] = sample_row(f, arr, opts, i);
    }
    CoamoebaSample out;
    out.hits.assign(arr.faces.size(), 0);
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < out.hits.size(); ++k) out.hits[k] += row.hits[k];
        out.binned += row.binned;
        out.skipped += row.skipped;
    }
    return out;
}

namespace {

/* |f| evaluated with all coefficients and variables replaced by their moduli;
   the natural residual scale at that point. */
double magnitude_scale(const SupportedPolynomial& f, double x, double y) {
    double s = 0;
    for (const auto& t : f.terms)
        s += std::abs(t.coefficient) * std::exp(double(t.exponent.x) * x + double(t.exponent.y) * y);
    return s;
}

}  // namespace

int fiber_count(const SupportedPolynomial& f, Vec2 theta, const FiberOptions& opts) {
    const SupportedPolynomial fz = f.z_dz(), fw = f.w_dw();
    const Complex e1{std::cos(theta.x), std::sin(theta.x)};
    const Complex e2{std::cos(theta.y), std::sin(theta.y)};
    auto eval_at = [&](double x, double y) {
        return f.eval(std::exp(x) * e1, std::exp(y) * e2);
    };
    auto residual = [&](double x, double y) {
        double s = magnitude_scale(f, x, y);
        return s == 0 ? 0.0 : std::abs(eval_at(x, y)) / s;
    };

    const double L = std::log(opts.radius);
    const int side = std::max(2, int(std::lround(std::sqrt(double(opts.starts)))));
    struct End {
        double x, y, res;
        bool converged;
    };
    std::vector<End> ends;
    for (int a = 0; a < side; ++a)
        for (int b = 0; b < side; ++b) {
            double x = -L + 2 * L * (a + 0.5) / side;
            double y = -L + 2 * L * (b + 0.5) / side;
            double res = residual(x, y);
            bool ok = false;
            for (int it = 0; it < opts.max_iterations; ++it) {
                if (res < opts.tol) {
                    ok = true;
                    break;
                }
                Complex z = std::exp(x) * e1, w = std::exp(y) * e2;
                Complex F = f.eval(z, w), A = fz.eval(z, w), B = fw.eval(z, w);
                double det = A.real() * B.imag() - A.imag() * B.real();
                double scale = magnitude_scale(f, x, y);
                if (scale == 0 || std::abs(det) < 1e-280 * scale * scale) break;
                double dx = (F.real() * B.imag() - F.imag() * B.real()) / det;
                double dy = (A.real() * F.imag() - A.imag() * F.real()) / det;
                double lam = 1.0;
                bool moved = false;
                while (lam > 1.0 / 1024) {
                    double r2 = residual(x - lam * dx, y - lam * dy);
                    if (r2 < res) {
                        x -= lam * dx;
                        y -= lam * dy;
                        res = r2;
                        moved = true;
                        break;
                    }
                    lam *= 0.5;
                }
                if (!moved || std::abs(x) > 60 || std::abs(y) > 60) break;
            }
            if (res < opts.tol) ok = true;
            ends.push_back({x, y, res, ok});
        }

    std::vector<std::pair<double, double>> accepted;
    for (const auto& e : ends) {
        if (!e.converged) continue;
        bool dup = false;
        for (const auto& r : accepted)
            dup = dup || (std::abs(r.first - e.x) < opts.dedupe && std::abs(r.second - e.y) < opts.dedupe);
        if (!dup) accepted.push_back({e.x, e.y});
    }
    for (const auto& e : ends) {
        if (e.converged || e.res >= opts.gray_factor * opts.tol) continue;
        bool near = false;
        for (const auto& r : accepted)
            near = near || (std::abs(r.first - e.x) < 1e3 * opts.dedupe &&
                            std::abs(r.second - e.y) < 1e3 * opts.dedupe);
        if (!near) throw BudgetExceeded("undecided fiber residual away from accepted solutions");
    }
    return int(accepted.size());
}

namespace {

std::string translation_tag(Vec2 t) {
    auto num = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    return "(" + num(t.x) + ", " + num(t.y) + ")";
}

/* a f + z df/dz (axis 0) or b f + w df/dw (axis 1). Terms keep their exponent;
   the coefficient picks up the factor shift + exponent, so the result inherits
   sorted distinct exponents and an empty result means the equation vanishes
   identically. */
SupportedPolynomial critical_equation(const SupportedPolynomial& f, int axis, double shift) {
    SupportedPolynomial g;
    for (const auto& t : f.terms) {
        double m = shift + double(axis == 0 ? t.exponent.x : t.exponent.y);
        if (std::abs(m) > 1e-12) g.terms.push_back({t.exponent, t.coefficient * m});
    }
    return g;
}

/* g arranged as a polynomial in the second variable whose coefficients are
   polynomials in the first, both Laurent tails shifted away. Shifting
   multiplies g by a monomial and leaves the torus zero set unchanged. */
struct WSlices {
    std::vector<std::vector<Complex>> col;  // col[j][i]: coefficient of w^j z^i
    int wdeg = 0, zdeg = 0;
};

WSlices w_slices(const SupportedPolynomial& g) {
    auto lo = g.terms.front().exponent, hi = lo;
    for (const auto& t : g.terms) {
        lo.x = std::min(lo.x, t.exponent.x);
        lo.y = std::min(lo.y, t.exponent.y);
        hi.x = std::max(hi.x, t.exponent.x);
        hi.y = std::max(hi.y, t.exponent.y);
    }
    WSlices s;
    s.wdeg = int(hi.y - lo.y);
    s.zdeg = int(hi.x - lo.x);
    s.col.assign(std::size_t(s.wdeg + 1), std::vector<Complex>(std::size_t(s.zdeg + 1), Complex{0, 0}));
    for (const auto& t : g.terms)
        s.col[std::size_t(t.exponent.y - lo.y)][std::size_t(t.exponent.x - lo.x)] = t.coefficient;
    return s;
}

Complex horner(const std::vector<Complex>& c, Complex z) {
    Complex v{0, 0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

}  // namespace

std::vector<std::pair<Complex, Complex>> critical_points(const SupportedPolynomial& f,
                                                         Vec2 translation,
                                                         const CriticalOptions& opts) {
    const SupportedPolynomial F1 = critical_equation(f, 0, translation.x);
    const SupportedPolynomial F2 = critical_equation(f, 1, translation.y);
    if (F1.terms.empty() || F2.terms.empty())
        throw DegenerateSystem("critical equation vanishes identically at translation " +
                               translation_tag(translation));

    const WSlices s1 = w_slices(F1), s2 = w_slices(F2);
    const int n1 = s1.wdeg, n2 = s2.wdeg;
    if (n1 == 0 && n2 == 0)
        throw DegenerateSystem("critical system does not involve the second variable at translation " +
                               translation_tag(translation));

    /* Resultant in the second variable: the Sylvester determinant is a
       polynomial in z of degree at most n2*zdeg1 + n1*zdeg2, recovered exactly
       by sampling on the unit circle and inverting the DFT. */
    const int N = n1 + n2;
    const int degree_bound = n2 * s1.zdeg + n1 * s2.zdeg;
    const int samples = degree_bound + 1;
    std::vector<Complex> det(static_cast<std::size_t>(samples));
    bool above_noise = false;
    for (int k = 0; k < samples; ++k) {
        const Complex zk = std::polar(1.0, kTwoPi * k / samples);
        std::vector<Complex> a(std::size_t(n1 + 1)), b(std::size_t(n2 + 1));
        for (int j = 0; j <= n1; ++j) a[std::size_t(j)] = horner(s1.col[std::size_t(j)], zk);
        for (int j = 0; j <= n2; ++j) b[std::size_t(j)] = horner(s2.col[std::size_t(j)], zk);
        Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
        for (int r = 0; r < n2; ++r)
            for (int j = 0; j <= n1; ++j) S(r, r + j) = a[std::size_t(n1 - j)];
        for (int r = 0; r < n1; ++r)
            for (int j = 0; j <= n2; ++j) S(n2 + r, r + j) = b[std::size_t(n2 - j)];
        det[std::size_t(k)] = S.determinant();
        // Hadamard bound calibrates "numerically zero" for this sample.
        above_noise = above_noise ||
                      std::abs(det[std::size_t(k)]) > 1e-12 * S.rowwise().norm().prod();
    }
    if (!above_noise)
        throw DegenerateSystem("resultant identically zero at translation " +
                               translation_tag(translation));

    std::vector<Complex> res(std::size_t(samples), Complex{0, 0});
    for (int m = 0; m < samples; ++m)
        for (int k = 0; k < samples; ++k)
            res[std::size_t(m)] += det[std::size_t(k)] * std::polar(1.0 / samples, -kTwoPi * k * m / samples);
    double top = 0;
    for (const auto& c : res) top = std::max(top, std::abs(c));
    std::size_t lo = 0, hi = res.size();
    while (lo < hi && std::abs(res[lo]) < 1e-12 * top) ++lo;
    while (hi > lo && std::abs(res[hi - 1]) < 1e-12 * top) --hi;
    std::vector<Complex> trimmed(res.begin() + std::ptrdiff_t(lo), res.begin() + std::ptrdiff_t(hi));
    if (trimmed.size() < 2) return {};  // monomial resultant: no torus zeros

    std::vector<std::pair<Complex, Complex>> out;
    for (const auto& cluster : univariate_roots(trimmed)) {
        const Complex z0 = cluster.value;
        if (std::abs(z0) < 1e-12) continue;
        /* Candidate second coordinates from either slice; a common root stays a
           root of each, and the residual filter below discards the rest. */
        std::vector<Complex> candidates;
        std::exception_ptr slice_error;
        for (const SupportedPolynomial* g : {&F1, &F2}) {
            auto coeffs = second_variable_slice(*g, z0);
            if (coeffs.size() < 2) continue;
            try {
                for (const auto& rc : univariate_roots(coeffs)) candidates.push_back(rc.value);
            } catch (const IllConditioned&) {
                slice_error = std::current_exception();
            }
        }
        if (candidates.empty() && slice_error) std::rethrow_exception(slice_error);
        for (const Complex& w0 : candidates) {
            if (std::abs(w0) < 1e-12) continue;
            const double x = std::log(std::abs(z0)), y = std::log(std::abs(w0));
            const double r1 = std::abs(F1.eval(z0, w0)) / magnitude_scale(F1, x, y);
            const double r2 = std::abs(F2.eval(z0, w0)) / magnitude_scale(F2, x, y);
            if (std::max(r1, r2) > opts.tol) continue;
            bool dup = false;
            for (const auto& p : out)
                dup = dup || std::abs(p.first - z0) + std::abs(p.second - w0) <=
                                 opts.dedupe * (1 + std::abs(p.first) + std::abs(p.second));
            if (!dup) out.push_back({z0, w0});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
        auto key = [](const std::pair<Complex, Complex>& v) {
            return std::array<double, 4>{v.first.real(), v.first.imag(), v.second.real(), v.second.imag()};
        };
        return key(p) < key(q);
    });
    return out;
}

ArgBijectionReport arg_bijection_at(const SupportedPolynomial& f, const TorusArrangement& arr,
                                    const IndexMap& idx, Vec2 translation, double eps) {
    ArgBijectionReport rep;
    rep.translation = translation;
    const CoamoebaComponents comps = combinatorial_coamoeba(arr, idx);
    rep.component_count = comps.complement_count;
    const auto points = critical_points(f, translation);
    rep.critical_count = int(points.size());
    std::set<int> seen;
    bool clash = false;
    for (const auto& [z, w] : points) {
        const Vec2 theta = wrap_torus({std::arg(z), std::arg(w)});
        rep.images.push_back(theta);
        if (arr.distance_to_curves(theta) <= eps) {
            rep.boundary_degenerate += 1;
            rep.component.push_back(-1);
            continue;
        }
        const int face = arr.face_at(theta);
        const int comp = face < 0 ? -1 : comps.complement_component[std::size_t(face)];
        rep.component.push_back(comp);
        if (comp >= 0 && !seen.insert(comp).second) clash = true;
    }
    rep.bijective = rep.boundary_degenerate == 0 && !clash &&
                    rep.critical_count == rep.component_count &&
                    int(seen.size()) == rep.component_count;
    return rep;
}

namespace {

/* Balanced point of a four-point circuit: the affine relation splits the
   support into two groups whose weighted barycenters coincide (the diagonal
   intersection for a quadrilateral, the interior point for a triangle).
   Moving it to the origin is the translation that spreads the critical points
   symmetrically. Empty when three of the points are collinear. */
std::optional<Vec2> circuit_balanced_point(const SupportedPolynomial& f) {
    auto pts = f.support();
    if (pts.size() != 4) return std::nullopt;
    std::array<std::int64_t, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        std::array<LatticePoint, 3> rest;
        for (int j = 0, k = 0; j < 4; ++j)
            if (j != i) rest[std::size_t(k++)] = pts[std::size_t(j)];
        std::int64_t d = cross(rest[1] - rest[0], rest[2] - rest[0]);
        lam[std::size_t(i)] = (i % 2 == 0 ? d : -d);
        if (d == 0) return std::nullopt;
    }
    double wx = 0, wy = 0, wsum = 0;
    for (int i = 0; i < 4; ++i)
        if (lam[std::size_t(i)] > 0) {
            wx += double(lam[std::size_t(i)] * pts[std::size_t(i)].x);
            wy += double(lam[std::size_t(i)] * pts[std::size_t(i)].y);
            wsum += double(lam[std::size_t(i)]);
        }
    return Vec2{wx / wsum, wy / wsum};
}

}  // namespace

ArgBijectionReport arg_bijection_check(const SupportedPolynomial& f, const TorusArrangement& arr,
                                       const IndexMap& idx, double eps) {
    std::vector<Vec2> order;
    if (auto balanced = circuit_balanced_point(f)) {
        for (int a = -4; a <= 4; ++a)
            for (int b = -4; b <= 4; ++b) {
                Vec2 t{a - balanced->x, b - balanced->y};
                if (std::abs(t.x) <= 3.0 + 1e-9 && std::abs(t.y) <= 3.0 + 1e-9)
                    order.push_back(t);
            }
    }
    for (int a = -6; a <= 6; ++a)
        for (int b = -6; b <= 6; ++b) order.push_back({0.5 * a, 0.5 * b});
    std::stable_sort(order.begin(), order.end(), [](Vec2 u, Vec2 v) {
        const double su = std::abs(u.x) + std::abs(u.y), sv = std::abs(v.x) + std::abs(v.y);
        if (su != sv) return su < sv;
        if (u.x != v.x) return u.x < v.x;
        return u.y < v.y;
    });
    order.erase(std::unique(order.begin(), order.end(),
                            [](Vec2 u, Vec2 v) {
                                return std::abs(u.x - v.x) + std::abs(u.y - v.y) < 1e-9;
                            }),
                order.end());
    ArgBijectionReport best;
    best.component_count = combinatorial_coamoeba(arr, idx).complement_count;
    int best_score = -1;
    for (const auto& t : order) {
        ArgBijectionReport rep;
        try {
            rep = arg_bijection_at(f, arr, idx, t, eps);
        } catch (const DegenerateSystem&) {
            continue;
        } catch (const IllConditioned&) {
            continue;
        }
        if (rep.bijective) return rep;
        std::set<int> hit(rep.component.begin(), rep.component.end());
        hit.erase(-1);
        if (int(hit.size()) > best_score) {
            best = rep;
            best_score = int(hit.size());
        }
    }
    return best;
}

}  // namespace coamoeba
