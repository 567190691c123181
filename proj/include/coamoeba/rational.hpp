#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

namespace coamoeba {

using Rational = boost::multiprecision::cpp_rational;

/* Exact complex number with rational real and imaginary parts. */
struct GaussianRational {
    Rational re = 0;
    Rational im = 0;

    GaussianRational() = default;
    GaussianRational(int v) : re(v) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }

    double abs() const {
        double r = static_cast<double>(re), i = static_cast<double>(im);
        return std::hypot(r, i);
    }
};

inline std::string to_string(const GaussianRational& g) {
    return g.re.str() + (g.im < 0 ? "" : "+") + g.im.str() + "i";
}

}  // namespace coamoeba
