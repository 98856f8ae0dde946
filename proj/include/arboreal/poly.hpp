#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "arboreal/errors.hpp"
#include "arboreal/numeric.hpp"

namespace arboreal {

template <class R>
class Poly;

inline bool ring_is_zero(const Int& a) { return a.is_zero(); }
inline bool ring_is_zero(const Rat& a) { return a.is_zero(); }
template <class R>
bool ring_is_zero(const Poly<R>& a);

inline Int ring_exact_div(const Int& a, const Int& b) { return exact_div(a, b); }
inline Rat ring_exact_div(const Rat& a, const Rat& b) { return a / b; }
template <class R>
Poly<R> ring_exact_div(const Poly<R>& a, const Poly<R>& b);

// Dense univariate polynomial over an exact ring.  Coefficient i is the
// coefficient of x^i; the vector carries no trailing zeros, and the zero
// polynomial is the empty vector with degree() == -1.
template <class R>
class Poly {
public:
    Poly() = default;
    explicit Poly(long v) {
        if (v != 0) c_.push_back(R(v));
    }
    explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly zero() { return Poly(); }
    static Poly constant(R v) {
        Poly p;
        if (!ring_is_zero(v)) p.c_.push_back(std::move(v));
        return p;
    }
    // c * x^k
    static Poly monomial(R coeff, std::size_t k) {
        Poly p;
        if (!ring_is_zero(coeff)) {
            p.c_.assign(k + 1, R{});
            p.c_[k] = std::move(coeff);
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    // index of the lowest nonzero coefficient, -1 for the zero polynomial
    long ord0() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!ring_is_zero(c_[i])) return static_cast<long>(i);
        return -1;
    }
    const R& leading() const { return c_.back(); }
    R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R{}; }
    const std::vector<R>& coeffs() const { return c_; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<R> out(std::max(a.c_.size(), b.c_.size()), R{});
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i < a.c_.size()) out[i] = out[i] + a.c_[i];
            if (i < b.c_.size()) out[i] = out[i] + b.c_[i];
        }
        return Poly(std::move(out));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> out(a.c_.size() + b.c_.size() - 1, R{});
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (ring_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    friend Poly operator*(const R& s, const Poly& p) {
        Poly r = p;
        for (auto& v : r.c_) v = s * v;
        r.trim();
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<R> out(c_.size() - 1, R{});
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = R(static_cast<long>(i)) * c_[i];
        return Poly(std::move(out));
    }

    // Horner evaluation in any ring S the coefficients convert into.
    template <class S>
    S eval(const S& x) const {
        S acc{};
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + S(c_[i]);
        return acc;
    }

    // P(x + a), by synthetic division (exact in any commutative ring).
    Poly taylor_shift(const R& a) const {
        std::vector<R> v = c_;
        for (std::size_t k = 0; k < v.size(); ++k)
            for (std::size_t i = v.size() - 1; i-- > k;) v[i] = v[i] + a * v[i + 1];
        return Poly(std::move(v));
    }

    // x^n * P(1/x); n must be >= degree.
    Poly reciprocal(std::size_t n) const {
        if (degree() > static_cast<long>(n)) throw argument_error("reciprocal: n below degree");
        std::vector<R> out(n + 1, R{});
        for (std::size_t i = 0; i < c_.size(); ++i) out[n - i] = c_[i];
        return Poly(std::move(out));
    }

    std::string to_string(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<R> c_;
};

template <class R>
bool ring_is_zero(const Poly<R>& a) {
    return a.is_zero();
}

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

// Exact polynomial long division; throws if the division is not exact.
template <class R>
Poly<R> ring_exact_div(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero()) throw argument_error("poly division by zero");
    if (a.is_zero()) return Poly<R>();
    long da = a.degree(), db = b.degree();
    if (da < db) throw consistency_error("poly exact division: degree mismatch");
    std::vector<R> rem(a.coeffs());
    std::vector<R> q(static_cast<std::size_t>(da - db) + 1, R{});
    for (long k = da - db; k >= 0; --k) {
        R top = rem[static_cast<std::size_t>(k + db)];
        if (ring_is_zero(top)) continue;
        R f = ring_exact_div(top, b.leading());
        q[static_cast<std::size_t>(k)] = f;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(k + j)] = rem[static_cast<std::size_t>(k + j)] - f * b.coeff(static_cast<std::size_t>(j));
    }
    for (const auto& v : rem)
        if (!ring_is_zero(v)) throw consistency_error("poly exact division: nonzero remainder");
    return Poly<R>(std::move(q));
}

inline Int content(const IntPoly& p) {
    Int g = 0;
    for (const auto& v : p.coeffs()) g = gcd(g, v);
    return g;
}

inline IntPoly primitive_part(const IntPoly& p) {
    Int g = content(p);
    if (g.is_zero() || g == 1) return p;
    std::vector<Int> out;
    out.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) out.push_back(exact_div(v, g));
    return IntPoly(std::move(out));
}

// Pseudo-remainder of a by b (prem), for the primitive PRS below.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    long da = a.degree(), db = b.degree();
    IntPoly rem = a;
    while (!rem.is_zero() && rem.degree() >= db) {
        long k = rem.degree() - db;
        IntPoly t = IntPoly::monomial(rem.leading(), static_cast<std::size_t>(k)) * b;
        rem = b.leading() * rem - t;
    }
    (void)da;
    return rem;
}

// gcd over Z via the primitive polynomial remainder sequence; the result is
// primitive with positive leading coefficient (or the integer gcd for
// constant inputs).
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    if (a.is_zero()) return b.leading() < 0 ? -b : b;
    if (b.is_zero()) return a.leading() < 0 ? -a : a;
    Int cont = gcd(content(a), content(b));
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = primitive_part(pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    IntPoly g = cont * a;
    return g.leading() < 0 ? -g : g;
}

template <class R>
std::string Poly<R>::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (ring_is_zero(c_[i])) continue;
        std::string cs;
        if constexpr (std::is_same_v<R, Int> || std::is_same_v<R, Rat>) {
            cs = c_[i].str();
        } else {
            cs = "(" + c_[i].to_string("t") + ")";
        }
        bool neg = !cs.empty() && cs[0] == '-';
        if (out.empty()) {
            if (neg) { out += "-"; cs = cs.substr(1); }
        } else {
            out += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        if (i == 0) {
            out += cs;
        } else {
            if (cs != "1") out += cs + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace arboreal
