#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/errors.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/poly.hpp"

namespace arboreal {

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw argument_error("mod_inverse: not invertible");
    return t < 0 ? t + p : t;
}

// Dense polynomial over F_p for a machine-word prime p.  Residues are kept
// reduced in [0, p); no trailing zero coefficients.
class ModPoly {
public:
    ModPoly(long p, std::vector<std::int64_t> coeffs) : p_(p) {
        if (!is_prime(p)) throw argument_error("ModPoly: modulus must be prime");
        c_ = std::move(coeffs);
        for (auto& v : c_) v = ((v % p_) + p_) % p_;
        trim();
    }
    static ModPoly zero(long p) { return ModPoly(p, {}); }

    long modulus() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    std::int64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    friend bool operator==(const ModPoly& a, const ModPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
        a.check(b);
        std::vector<std::int64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
        return ModPoly(a.p_, std::move(out));
    }
    friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
        a.check(b);
        std::vector<std::int64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = (a.coeff(i) - b.coeff(i) + a.p_) % a.p_;
        return ModPoly(a.p_, std::move(out));
    }
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
        a.check(b);
        if (a.is_zero() || b.is_zero()) return zero(a.p_);
        std::vector<std::int64_t> out(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] = (out[i + j] + static_cast<unsigned __int128>(a.c_[i]) * b.c_[j]) % a.p_;
        }
        return ModPoly(a.p_, std::move(out));
    }

    std::int64_t eval(std::int64_t x) const {
        x = ((x % p_) + p_) % p_;
        std::int64_t acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = static_cast<std::int64_t>((static_cast<unsigned __int128>(acc) * x + c_[i]) % p_);
        return acc;
    }

    ModPoly monic() const {
        if (is_zero()) return *this;
        std::int64_t inv = mod_inverse(c_.back(), p_);
        std::vector<std::int64_t> out = c_;
        for (auto& v : out) v = static_cast<std::int64_t>((static_cast<unsigned __int128>(v) * inv) % p_);
        return ModPoly(p_, std::move(out));
    }

    friend ModPoly operator%(const ModPoly& a, const ModPoly& b) {
        a.check(b);
        if (b.is_zero()) throw argument_error("ModPoly: division by zero");
        std::vector<std::int64_t> rem = a.c_;
        std::int64_t inv = mod_inverse(b.c_.back(), a.p_);
        while (static_cast<long>(rem.size()) - 1 >= b.degree()) {
            while (!rem.empty() && rem.back() == 0) rem.pop_back();
            if (static_cast<long>(rem.size()) - 1 < b.degree()) break;
            std::size_t k = rem.size() - b.c_.size();
            std::int64_t f = static_cast<std::int64_t>((static_cast<unsigned __int128>(rem.back()) * inv) % a.p_);
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                auto t = static_cast<unsigned __int128>(f) * b.c_[j] % a.p_;
                rem[k + j] = static_cast<std::int64_t>((rem[k + j] - static_cast<std::int64_t>(t) + a.p_) % a.p_);
            }
        }
        return ModPoly(a.p_, std::move(rem));
    }

    std::string to_string(const std::string& var = "x") const;

private:
    void check(const ModPoly& other) const {
        if (p_ != other.p_) throw argument_error("ModPoly: modulus mismatch");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    long p_;
    std::vector<std::int64_t> c_;
};

inline ModPoly mod_gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Coefficientwise reduction; the degree may drop.
inline ModPoly reduce_poly_mod_p(const IntPoly& q, long p) {
    if (!is_prime(p)) throw argument_error("reduce_poly_mod_p: p must be prime");
    std::vector<std::int64_t> out;
    out.reserve(q.coeffs().size());
    for (const auto& c : q.coeffs()) {
        Int r = c % p;
        if (r < 0) r += p;
        out.push_back(r.convert_to<std::int64_t>());
    }
    return ModPoly(p, std::move(out));
}

// True iff q is NOT a polynomial in x^p, i.e. some nonzero coefficient sits
// at an index not divisible by p.
inline bool is_separable(const ModPoly& q) {
    if (q.is_zero()) throw argument_error("is_separable: zero polynomial");
    for (std::size_t i = 0; i < q.coeffs().size(); ++i)
        if (q.coeffs()[i] != 0 && i % static_cast<std::size_t>(q.modulus()) != 0) return true;
    return false;
}

inline std::string ModPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(c_[i]);
        } else {
            if (c_[i] != 1) out += std::to_string(c_[i]) + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace arboreal
