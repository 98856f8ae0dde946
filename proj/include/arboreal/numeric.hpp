#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/errors.hpp"

namespace arboreal {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

// Exact integer division; the quotient must be exact.
inline Int exact_div(const Int& a, const Int& b) {
    Int q, r;
    divide_qr(a, b, q, r);
    if (!r.is_zero()) throw consistency_error("exact_div: division not exact");
    return q;
}

inline Int pow_int(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e < 0) {
        if (base == 0) throw argument_error("pow_rat: zero to negative power");
        Rat p = pow_rat(base, -e);
        return Rat(rat_den(p), rat_num(p));
    }
    Rat r = 1, b = base;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (long i = 0; i < k; ++i) {
        r *= Int(n - i);
        r = exact_div(r, Int(i + 1));
    }
    return r;
}

// D_0 = 1, D_1 = 0, D_i = (i-1)(D_{i-1} + D_{i-2})
inline Int derangements(unsigned n) {
    Int prev2 = 1, prev1 = 0;
    if (n == 0) return prev2;
    if (n == 1) return prev1;
    Int cur = 0;
    for (unsigned i = 2; i <= n; ++i) {
        cur = Int(i - 1) * (prev1 + prev2);
        prev2 = prev1;
        prev1 = cur;
    }
    return cur;
}

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    Int root = sqrt(n);
    return root * root == n;
}

// Exact test for a rational square.
inline bool is_square(const Rat& r) {
    return r >= 0 && is_square(rat_num(r)) && is_square(rat_den(r));
}

// ---- primes ------------------------------------------------------------

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) -> std::uint64_t {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // deterministic Miller-Rabin base set for 64-bit inputs
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        std::uint64_t x = powmod(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline bool is_prime(long p) { return p >= 2 && is_prime_u64(static_cast<std::uint64_t>(p)); }

inline std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
    for (long i = 2; i <= n; ++i) {
        if (comp[static_cast<std::size_t>(i)]) continue;
        out.push_back(i);
        for (long j = i * i; j <= n; j += i) comp[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

// Factor |n| by trial division; primes above `bound` are accepted only when
// the cofactor itself is a proven 64-bit prime.
inline std::vector<std::pair<long, int>> factor(Int n, long bound = 1000000) {
    std::vector<std::pair<long, int>> out;
    if (n < 0) n = -n;
    if (n <= 1) return out;
    for (long p = 2; p <= bound && Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (n <= Int(bound) * bound || (n <= Int(~0ull >> 1) && is_prime_u64(n.convert_to<std::uint64_t>()))) {
            out.emplace_back(n.convert_to<long>(), 1);
        } else {
            throw resource_error("factor: cofactor exceeds trial-division bound " + std::to_string(bound));
        }
    }
    return out;
}

}  // namespace arboreal
