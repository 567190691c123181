#pragma once

#include <complex>
#include <vector>

#include "coamoeba/errors.hpp"
#include "coamoeba/lattice.hpp"

namespace coamoeba {

using Complex = std::complex<double>;

struct Term {
    LatticePoint exponent;
    Complex coefficient;
};

/* Finite support in Z² with nonzero complex coefficients. */
struct SupportedPolynomial {
    std::vector<Term> terms;  // sorted by exponent, exponents distinct, coefficients nonzero

    std::vector<LatticePoint> support() const;
    LatticePolygon newton() const { return newton_polygon(support()); }
    Complex coefficient(LatticePoint e) const;  // zero when absent
    Complex eval(Complex z, Complex w) const;

    SupportedPolynomial z_dz() const;  // z * df/dz
    SupportedPolynomial w_dw() const;  // w * df/dw
    SupportedPolynomial swapped_variables() const;
    SupportedPolynomial translated(LatticeVector t) const;  // multiply by z^t.x w^t.y
};

/* Merges duplicate exponents and drops zero coefficients; throws DegenerateSupport
   when nothing remains. */
SupportedPolynomial make_polynomial(std::vector<Term> terms);

/* A face of the Newton polygon: the whole polygon, one facet, or one vertex. */
struct Face {
    enum class Kind { Whole, FacetIndex, VertexIndex };
    Kind kind = Kind::Whole;
    int index = 0;

    static Face whole() { return {Kind::Whole, 0}; }
    static Face facet(int i) { return {Kind::FacetIndex, i}; }
    static Face vertex(int i) { return {Kind::VertexIndex, i}; }
};

/* Sub-sum of terms whose exponents lie on the face. */
SupportedPolynomial truncate(const SupportedPolynomial& f, const Face& face);

/* The facet truncation written as z^base · g(z^direction) with deg g = lattice length
   and g(0) != 0. coefficients[j] is the coefficient of u^j. */
struct EdgePolynomial {
    LatticePoint base;
    LatticeVector direction;
    std::vector<Complex> coefficients;
};

EdgePolynomial edge_polynomial(const SupportedPolynomial& f, int facet_index);

struct RootCluster {
    Complex value;
    int multiplicity = 1;
};

/* All roots of sum_j coefficients[j] u^j with multiplicities detected by clustering.
   Companion-matrix eigenvalues with Newton polishing; IllConditioned when residuals
   cannot be certified. */
std::vector<RootCluster> univariate_roots(const std::vector<Complex>& coefficients,
                                          double tol = 1e-9);

}  // namespace coamoeba
