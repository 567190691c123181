#include "coamoeba/laurent.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace coamoeba {

LaurentPolynomial2 LaurentPolynomial2::monomial(LatticePoint e, GaussianRational c) {
    LaurentPolynomial2 p;
    if (!c.is_zero()) p.terms.emplace(e, std::move(c));
    return p;
}

std::vector<LatticePoint> LaurentPolynomial2::support() const {
    std::vector<LatticePoint> s;
    s.reserve(terms.size());
    for (const auto& [e, c] : terms) s.push_back(e);
    return s;
}

const GaussianRational* LaurentPolynomial2::coefficient(LatticePoint e) const {
    auto it = terms.find(e);
    return it == terms.end() ? nullptr : &it->second;
}

void LaurentPolynomial2::add_term(LatticePoint e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

LaurentPolynomial2 operator+(const LaurentPolynomial2& a, const LaurentPolynomial2& b) {
    LaurentPolynomial2 r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

LaurentPolynomial2 operator-(const LaurentPolynomial2& a, const LaurentPolynomial2& b) {
    LaurentPolynomial2 r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, -c);
    return r;
}

LaurentPolynomial2 operator*(const LaurentPolynomial2& a, const LaurentPolynomial2& b) {
    LaurentPolynomial2 r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) r.add_term(ea + eb, ca * cb);
    return r;
}

LaurentPolynomial2 LaurentPolynomial2::shifted(LatticeVector s) const {
    LaurentPolynomial2 r;
    for (const auto& [e, c] : terms) r.terms.emplace(e + s, c);
    return r;
}

double LaurentPolynomial2::eval_abs_at_ones() const {
    double total = 0;
    for (const auto& [e, c] : terms) total += c.abs();
    return total;
}

LaurentPolynomial2 determinant(const std::vector<std::vector<LaurentPolynomial2>>& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant: matrix not square");
    if (n == 0) return LaurentPolynomial2::monomial({0, 0}, 1);
    if (n > 24) throw std::invalid_argument("determinant: matrix too large for minor expansion");

    /* minor(mask) = determinant of rows [popcount..n) on the column set `mask`,
       memoised across the expansion tree. */
    std::unordered_map<std::uint32_t, LaurentPolynomial2> memo;
    auto expand = [&](auto&& self, std::uint32_t mask) -> LaurentPolynomial2 {
        if (mask == 0) return LaurentPolynomial2::monomial({0, 0}, 1);
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        const std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(mask));
        LaurentPolynomial2 acc;
        int parity = 0;
        for (std::size_t col = 0; col < n; ++col) {
            if (!(mask & (1u << col))) continue;
            if (!m[row][col].is_zero()) {
                LaurentPolynomial2 sub = self(self, mask & ~(1u << col));
                LaurentPolynomial2 contrib = m[row][col] * sub;
                acc = (parity % 2 == 0) ? acc + contrib : acc - contrib;
            }
            ++parity;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return expand(expand, n >= 32 ? ~0u : ((1u << n) - 1));
}

LatticePolygon support_polygon(const LaurentPolynomial2& p) {
    return newton_polygon(p.support());
}

}  // namespace coamoeba
