#pragma once

#include <map>
#include <vector>

#include "coamoeba/lattice.hpp"
#include "coamoeba/rational.hpp"

namespace coamoeba {

/* Bivariate Laurent polynomial with exact Gaussian-rational coefficients.
   Stored terms always have nonzero coefficients. */
struct LaurentPolynomial2 {
    std::map<LatticePoint, GaussianRational> terms;

    static LaurentPolynomial2 monomial(LatticePoint e, GaussianRational c);

    bool is_zero() const { return terms.empty(); }
    std::size_t term_count() const { return terms.size(); }
    std::vector<LatticePoint> support() const;
    const GaussianRational* coefficient(LatticePoint e) const;

    void add_term(LatticePoint e, const GaussianRational& c);

    friend LaurentPolynomial2 operator+(const LaurentPolynomial2&, const LaurentPolynomial2&);
    friend LaurentPolynomial2 operator-(const LaurentPolynomial2&, const LaurentPolynomial2&);
    friend LaurentPolynomial2 operator*(const LaurentPolynomial2&, const LaurentPolynomial2&);
    friend bool operator==(const LaurentPolynomial2& a, const LaurentPolynomial2& b) {
        return a.terms == b.terms;
    }

    /* Multiply by the monomial z^s.x w^s.y. */
    LaurentPolynomial2 shifted(LatticeVector s) const;

    /* Sum of coefficient magnitudes; equals the evaluation at z = w = 1 with all
       signs and phases removed. */
    double eval_abs_at_ones() const;
};

/* Exact determinant of a square matrix by minor expansion with memoisation. */
LaurentPolynomial2 determinant(const std::vector<std::vector<LaurentPolynomial2>>& m);

/* Newton polygon of the support; DegenerateSupport if it is not two-dimensional. */
LatticePolygon support_polygon(const LaurentPolynomial2& p);

}  // namespace coamoeba
