#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "arboreal/errors.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/poly.hpp"

namespace arboreal {

// Integer polynomial in x and t, stored as a polynomial in x whose
// coefficients are polynomials in t (canonical trimmed form both ways).
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(Poly<IntPoly> p) : p_(std::move(p)) {}

    // g(x) - t*h(x)
    static BiPoly map_minus_t(const IntPoly& g, const IntPoly& h) {
        long dx = std::max(g.degree(), h.degree());
        std::vector<IntPoly> rows;
        rows.reserve(static_cast<std::size_t>(dx) + 1);
        for (long i = 0; i <= dx; ++i) {
            std::vector<Int> in_t = {g.coeff(static_cast<std::size_t>(i)),
                                     -h.coeff(static_cast<std::size_t>(i))};
            rows.emplace_back(std::move(in_t));
        }
        return BiPoly(Poly<IntPoly>(std::move(rows)));
    }

    long degree_x() const { return p_.degree(); }
    long degree_t() const {
        long d = -1;
        for (const auto& c : p_.coeffs()) d = std::max(d, c.degree());
        return d;
    }
    // coefficient of x^i t^j
    Int coeff(std::size_t i, std::size_t j) const {
        return p_.coeff(i).coeff(j);
    }
    const Poly<IntPoly>& as_poly_in_x() const { return p_; }

private:
    Poly<IntPoly> p_;
};

// Fraction-free Bareiss determinant over an exact integral domain.
template <class R>
R bareiss_det(std::vector<std::vector<R>> m) {
    const std::size_t n = m.size();
    if (n == 0) return R(1);
    R sign(1);
    R prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (ring_is_zero(m[k][k])) {
            std::size_t pivot = k + 1;
            while (pivot < n && ring_is_zero(m[pivot][k])) ++pivot;
            if (pivot == n) return R{};
            std::swap(m[k], m[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = ring_exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            }
            m[i][k] = R{};
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Resultant in x of two bivariate polynomials, as a polynomial in t.
inline IntPoly resultant_x(const Poly<IntPoly>& a, const Poly<IntPoly>& b) {
    long da = a.degree(), db = b.degree();
    if (da < 0 || db < 0) return IntPoly();
    std::size_t n = static_cast<std::size_t>(da + db);
    std::vector<std::vector<IntPoly>> syl(n, std::vector<IntPoly>(n));
    for (long r = 0; r < db; ++r)
        for (long i = 0; i <= da; ++i)
            syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + da - i)] =
                a.coeff(static_cast<std::size_t>(i));
    for (long r = 0; r < da; ++r)
        for (long i = 0; i <= db; ++i)
            syl[static_cast<std::size_t>(db + r)][static_cast<std::size_t>(r + db - i)] =
                b.coeff(static_cast<std::size_t>(i));
    return bareiss_det(std::move(syl));
}

// Discriminant of q in x over Q(t):
//   disc = (-1)^{d(d-1)/2} Res_x(q, dq/dx) / lc_x(q).
// The quotient is exact in Z[t]; the result is returned over Q per the
// module contract.
inline RatPoly discriminant_in_x(const BiPoly& q) {
    const Poly<IntPoly>& qx = q.as_poly_in_x();
    long d = qx.degree();
    if (d < 1) throw argument_error("discriminant_in_x: degree in x must be positive");
    IntPoly res = resultant_x(qx, qx.derivative());
    IntPoly disc = ring_exact_div(res, qx.leading());
    bool neg = ((d * (d - 1) / 2) % 2) != 0;
    std::vector<Rat> out;
    out.reserve(disc.coeffs().size());
    for (const auto& c : disc.coeffs()) out.emplace_back(neg ? -c : c);
    return RatPoly(std::move(out));
}

}  // namespace arboreal
