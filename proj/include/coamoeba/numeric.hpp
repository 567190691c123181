#pragma once

#include <cstdint>
#include <vector>

#include "coamoeba/arrangement.hpp"
#include "coamoeba/poly.hpp"

namespace coamoeba {

enum class ExecPolicy { Serial, Parallel };

struct SampleOptions {
    int grid = 256;        // samples per axis over (modulus, first angle)
    double radius = 8.0;   // moduli drawn log-uniformly from [1/radius, radius]
    double skin = 1e-7;    // samples closer than this to the 1-skeleton are not binned
};

struct CoamoebaSample {
    std::vector<std::int64_t> hits;  // per face of the arrangement
    std::int64_t binned = 0;
    std::int64_t skipped = 0;  // argument images that landed within `skin` of a curve
};

/* Push the zero set through Arg: for each (rho, theta1) grid point, solve for the
   second coordinate and bin the argument pairs by face. Counters are integers, so
   both policies produce identical results. */
CoamoebaSample sample_coamoeba(const SupportedPolynomial& f, const TorusArrangement& arr,
                               const SampleOptions& opts = {},
                               ExecPolicy policy = ExecPolicy::Parallel);

struct FiberOptions {
    int starts = 64;            // multi-start grid over log-moduli
    int max_iterations = 120;
    double radius = 8.0;        // starts cover [-log radius, log radius]^2
    double tol = 1e-10;         // relative residual acceptance
    double gray_factor = 1e4;   // residuals in (tol, gray_factor*tol) are undecidable
    double dedupe = 1e-6;       // log-coordinate distance identifying two solutions
};

/* Number of zeros of f on the fiber Arg^{-1}(theta), counted by damped Newton
   iteration from a grid of starting moduli. Throws BudgetExceeded when a residual
   lands in the undecidable band away from every accepted solution. */
int fiber_count(const SupportedPolynomial& f, Vec2 theta, const FiberOptions& opts = {});

struct CriticalOptions {
    double tol = 1e-8;     // relative residual acceptance after back-substitution
    double dedupe = 1e-8;  // merge radius for coincident solutions
};

/* Torus solutions of {a f + z df/dz == 0, b f + w df/dw == 0}, the critical
   system of z^a w^b f. Real exponents are allowed: the system stays polynomial
   even when the monomial prefactor is multivalued. The second variable is
   eliminated by a Sylvester resultant whose determinant is interpolated from
   unit-circle samples; the surviving univariate polynomial is solved and every
   candidate pair must pass a relative residual test in both equations. Throws
   DegenerateSystem when an equation vanishes, neither depends on the second
   variable, or the resultant is identically zero. */
std::vector<std::pair<Complex, Complex>> critical_points(const SupportedPolynomial& f,
                                                         Vec2 translation,
                                                         const CriticalOptions& opts = {});
inline std::vector<std::pair<Complex, Complex>> critical_points(const SupportedPolynomial& f,
                                                                LatticeVector translation,
                                                                const CriticalOptions& opts = {}) {
    return critical_points(f, Vec2{double(translation.x), double(translation.y)}, opts);
}

struct ArgBijectionReport {
    Vec2 translation{0, 0};
    bool bijective = false;
    int critical_count = 0;
    int component_count = 0;      // complement components of the combinatorial coamoeba
    int boundary_degenerate = 0;  // critical images within eps of the arrangement curves
    std::vector<Vec2> images;     // Arg of each critical point
    std::vector<int> component;   // complement component per image, -1 when not on one
};

/* Arg images of the critical points of z^a w^b f held against the complement
   components of the combinatorial coamoeba: bijective when every image lands
   in a distinct complement component, none sits within eps of a curve, and the
   point count matches the component count. */
ArgBijectionReport arg_bijection_at(const SupportedPolynomial& f, const TorusArrangement& arr,
                                    const IndexMap& idx, Vec2 translation, double eps = 1e-4);

/* Tries half-integer translations (a, b) in [-3, 3]^2 ordered by |a| + |b|,
   then lexicographically, and returns the first bijective report, otherwise
   the attempt that hit the most distinct components. Half-integers matter:
   a quadrilateral circuit balances at the intersection of its diagonals, which
   sits on the half-lattice, and that is where the critical points spread out. */
ArgBijectionReport arg_bijection_check(const SupportedPolynomial& f, const TorusArrangement& arr,
                                       const IndexMap& idx, double eps = 1e-4);

}  // namespace coamoeba
