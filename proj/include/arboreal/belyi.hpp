#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/bipoly.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/modpoly.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/poly.hpp"

namespace arboreal {

// Combinatorial type (d; e1, e2, e3): degree plus the ramification indices
// at the branch points 0, 1, infinity (in that order).  Entries are
// branch-indexed; the closed-form families produce tuples like (9;8,2,9)
// that are valid but not weakly increasing.  make_type() is the entry point
// for abstract types and additionally enforces e1 <= e2 <= e3.
struct CombinatorialType {
    int d, e1, e2, e3;

    static CombinatorialType branch_indexed(int d, int e1, int e2, int e3) {
        auto bad = [&](const std::string& what) {
            throw argument_error("type (" + std::to_string(d) + ";" + std::to_string(e1) + "," +
                                 std::to_string(e2) + "," + std::to_string(e3) + "): " + what);
        };
        for (int e : {e1, e2, e3})
            if (e < 2 || e > d) bad("each e_i must satisfy 2 <= e_i <= d");
        if (e1 + e2 + e3 != 2 * d + 1) bad("e1+e2+e3 = 2d+1 violated");
        return CombinatorialType{d, e1, e2, e3};
    }

    int index_at(int branch) const {  // branch 0, 1, or 2 (= infinity)
        return branch == 0 ? e1 : branch == 1 ? e2 : e3;
    }

    bool is_sorted() const { return e1 <= e2 && e2 <= e3; }

    // (6;4,4,5) and (4;3,3,3), on the sorted index multiset
    bool is_exceptional() const {
        int a = e1, b = e2, c = e3;
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        return (d == 6 && a == 4 && b == 4 && c == 5) || (d == 4 && a == 3 && b == 3 && c == 3);
    }

    std::string str() const {
        return "(" + std::to_string(d) + ";" + std::to_string(e1) + "," + std::to_string(e2) + "," +
               std::to_string(e3) + ")";
    }

    friend bool operator==(const CombinatorialType& a, const CombinatorialType& b) {
        return a.d == b.d && a.e1 == b.e1 && a.e2 == b.e2 && a.e3 == b.e3;
    }
};

inline CombinatorialType make_type(int d, int e1, int e2, int e3) {
    if (!(e1 <= e2 && e2 <= e3))
        throw argument_error("type (" + std::to_string(d) + ";" + std::to_string(e1) + "," +
                             std::to_string(e2) + "," + std::to_string(e3) +
                             "): e1 <= e2 <= e3 violated");
    return CombinatorialType::branch_indexed(d, e1, e2, e3);
}

struct VerifyCheck {
    std::string name;
    bool ok;
};

struct VerifyReport {
    bool pass = true;
    std::vector<VerifyCheck> checks;
    void add(const std::string& name, bool ok) {
        checks.push_back({name, ok});
        pass = pass && ok;
    }
};

inline IntPoly poly_pow(const IntPoly& p, unsigned e) {
    IntPoly r(1);
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

// Checks that f = g/h is the normalized Belyi map of the claimed type:
// f(0)=0, f(1)=1, f(inf)=inf with ramification indices (e1,e2,e3) there and
// no other ramification, plus the integral normal form (coprime, joint
// content 1, coprime leading coefficients).
inline VerifyReport verify_normalized(const CombinatorialType& t, const IntPoly& g, const IntPoly& h) {
    VerifyReport r;
    if (g.is_zero() || h.is_zero()) {
        r.add("nonzero", false);
        return r;
    }
    r.add("deg_num_eq_d", g.degree() == t.d);
    r.add("deg_den_eq_d_minus_e3", h.degree() == t.d - t.e3);
    r.add("ord0_num_eq_e1", g.ord0() == t.e1);
    r.add("den_nonzero_at_0", !h.coeff(0).is_zero());
    r.add("coprime", poly_gcd(g, h).degree() == 0);
    r.add("coprime_leading", gcd(g.leading(), h.leading()) == 1);
    r.add("content_one", gcd(content(g), content(h)) == 1);
    Int g1 = g.eval(Int(1)), h1 = h.eval(Int(1));
    r.add("fixes_one", g1 == h1 && !g1.is_zero());
    r.add("ord_at_one_eq_e2", (g - h).taylor_shift(Int(1)).ord0() == t.e2);
    IntPoly w = g.derivative() * h - g * h.derivative();
    IntPoly xe = IntPoly::monomial(Int(1), static_cast<std::size_t>(t.e1 - 1));
    IntPoly xm1 = IntPoly(std::vector<Int>{Int(-1), Int(1)});
    bool wshape = !w.is_zero() && w == w.leading() * (xe * poly_pow(xm1, static_cast<unsigned>(t.e2 - 1)));
    r.add("ramified_only_at_0_1_inf", wshape);
    return r;
}

// Normalized single-cycle genus-0 Belyi map f = g/h in canonical integral
// form: joint content 1 and leading denominator coefficient positive (the
// constant denominator itself positive in the polynomial case).
class BelyiMap {
public:
    static BelyiMap from_parts(CombinatorialType t, IntPoly g, IntPoly h) {
        canonicalize(g, h);
        VerifyReport rep = verify_normalized(t, g, h);
        if (!rep.pass) {
            std::string what = "BelyiMap: not a normalized Belyi map of type " + t.str() + ":";
            for (const auto& c : rep.checks)
                if (!c.ok) what += " " + c.name;
            throw argument_error(what);
        }
        return BelyiMap(t, std::move(g), std::move(h));
    }

    const CombinatorialType& type() const { return type_; }
    const IntPoly& num() const { return g_; }
    const IntPoly& den() const { return h_; }
    int degree() const { return type_.d; }

    // f1 with num = x^{e1} f1
    IntPoly cofactor() const {
        std::vector<Int> c(g_.coeffs().begin() + type_.e1, g_.coeffs().end());
        return IntPoly(std::move(c));
    }

    Rat eval(const Rat& x) const {
        Rat den = h_.eval(x);
        if (den.is_zero()) throw argument_error("BelyiMap::eval: pole");
        return g_.eval(x) / den;
    }

    std::string str() const { return "(" + g_.to_string() + ") / (" + h_.to_string() + ")"; }

    static void canonicalize(IntPoly& g, IntPoly& h) {
        if (g.is_zero() || h.is_zero()) throw argument_error("BelyiMap: zero numerator or denominator");
        Int c = gcd(content(g), content(h));
        if (c > 1) {
            g = ring_exact_div_all(g, c);
            h = ring_exact_div_all(h, c);
        }
        const Int& sign_carrier = h.degree() >= 1 ? h.leading() : h.coeff(0);
        if (sign_carrier < 0) {
            g = -g;
            h = -h;
        }
    }

private:
    BelyiMap(CombinatorialType t, IntPoly g, IntPoly h)
        : type_(t), g_(std::move(g)), h_(std::move(h)) {}

    static IntPoly ring_exact_div_all(const IntPoly& p, const Int& c) {
        std::vector<Int> out;
        out.reserve(p.coeffs().size());
        for (const auto& v : p.coeffs()) out.push_back(exact_div(v, c));
        return IntPoly(std::move(out));
    }

    CombinatorialType type_;
    IntPoly g_, h_;
};

// Unique normalized Belyi map of type (d; d-k, k+1, d):
//   f(x) = c x^{d-k} (a_0 x^k + ... + a_k),
//   a_i = (-1)^{k-i}/(d-i) C(k,i),  c = (1/k!) prod_{j=0..k} (d-j).
inline BelyiMap construct_family_polynomial(int d, int k) {
    if (d < 3 || k < 1 || k > d - 2)
        throw argument_error("construct_family_polynomial: need d >= 3 and 1 <= k <= d-2");
    Rat c(factorial(static_cast<unsigned>(d)) / factorial(static_cast<unsigned>(d - k - 1)),
          factorial(static_cast<unsigned>(k)));
    std::vector<Rat> coeffs(static_cast<std::size_t>(d) + 1, Rat(0));
    for (int i = 0; i <= k; ++i) {
        Rat ai(binomial(k, i), Int(d - i));
        if ((k - i) % 2 != 0) ai = -ai;
        coeffs[static_cast<std::size_t>(d - i)] = c * ai;
    }
    Int denom_lcm = 1;
    for (const auto& q : coeffs) denom_lcm = lcm(denom_lcm, rat_den(q));
    std::vector<Int> gi(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        gi[i] = rat_num(coeffs[i]) * exact_div(denom_lcm, rat_den(coeffs[i]));
    auto type = CombinatorialType::branch_indexed(d, d - k, k + 1, d);
    return BelyiMap::from_parts(type, IntPoly(std::move(gi)), IntPoly::constant(denom_lcm));
}

// Unique normalized Belyi map of type (d; d-k, 2k+1, d-k):
//   f(x) = x^{d-k} N(x)/D(x), N = sum (-1)^i a_i x^{k-i}, D = x^k N(1/x),
//   a_i = k! C(d,i) C(d-k-i-1, k-i).
inline BelyiMap construct_family_rational(int d, int k) {
    if (d < 3 || k < 1 || d - k < 2 * k + 1)
        throw argument_error("construct_family_rational: need d >= 3, k >= 1, d-k >= 2k+1");
    Int kfact = factorial(static_cast<unsigned>(k));
    std::vector<Int> n_coeffs(static_cast<std::size_t>(k) + 1, Int(0));
    std::vector<Int> d_coeffs(static_cast<std::size_t>(k) + 1, Int(0));
    for (int i = 0; i <= k; ++i) {
        Int ai = kfact * binomial(d, i) * binomial(d - k - i - 1, k - i);
        Int signed_ai = (i % 2 == 0) ? ai : -ai;
        n_coeffs[static_cast<std::size_t>(k - i)] = signed_ai;
        d_coeffs[static_cast<std::size_t>(i)] = signed_ai;
    }
    IntPoly numerator = IntPoly::monomial(Int(1), static_cast<std::size_t>(d - k)) * IntPoly(std::move(n_coeffs));
    auto type = CombinatorialType::branch_indexed(d, d - k, 2 * k + 1, d - k);
    return BelyiMap::from_parts(type, std::move(numerator), IntPoly(std::move(d_coeffs)));
}

// ---- iteration -----------------------------------------------------------

// f^n as a coprime content-1 integer pair, canonical sign.  Degrees grow as
// d^n; the guard is a memory bound.
inline std::pair<IntPoly, IntPoly> iterate(const BelyiMap& f, int n, long max_degree = 10000) {
    if (n < 1) throw argument_error("iterate: n >= 1 required");
    long deg = 1;
    for (int i = 0; i < n; ++i) {
        deg *= f.degree();
        if (deg > max_degree)
            throw resource_error("iterate: degree d^n = " + std::to_string(deg) + "+ exceeds bound " +
                                 std::to_string(max_degree));
    }
    IntPoly gc = f.num(), hc = f.den();
    const IntPoly& g = f.num();
    const IntPoly& h = f.den();
    const int d = f.degree();
    for (int step = 1; step < n; ++step) {
        // powers of the current pair up to d
        std::vector<IntPoly> gp(static_cast<std::size_t>(d) + 1), hp(static_cast<std::size_t>(d) + 1);
        gp[0] = IntPoly(1);
        hp[0] = IntPoly(1);
        for (int i = 1; i <= d; ++i) {
            gp[static_cast<std::size_t>(i)] = gp[static_cast<std::size_t>(i - 1)] * gc;
            hp[static_cast<std::size_t>(i)] = hp[static_cast<std::size_t>(i - 1)] * hc;
        }
        IntPoly gn, hn;
        for (int i = 0; i <= g.degree(); ++i) {
            Int ci = g.coeff(static_cast<std::size_t>(i));
            if (ci.is_zero()) continue;
            gn = gn + ci * (gp[static_cast<std::size_t>(i)] * hp[static_cast<std::size_t>(d - i)]);
        }
        for (int j = 0; j <= h.degree(); ++j) {
            Int cj = h.coeff(static_cast<std::size_t>(j));
            if (cj.is_zero()) continue;
            hn = hn + cj * (gp[static_cast<std::size_t>(j)] * hp[static_cast<std::size_t>(d - j)]);
        }
        // g(G/H)H^d and h(G/H)H^d share no root: a common zero would force a
        // common zero of (g,h) or of (G,H).  Only content and sign remain.
        BelyiMap::canonicalize(gn, hn);
        gc = std::move(gn);
        hc = std::move(hn);
    }
    return {gc, hc};
}

// ---- reduction -----------------------------------------------------------

enum class ReductionTag { GoodSeparable, GoodInseparable, GoodMonomial, Bad };

inline std::string to_string(ReductionTag t) {
    switch (t) {
        case ReductionTag::GoodSeparable: return "GoodSeparable";
        case ReductionTag::GoodInseparable: return "GoodInseparable";
        case ReductionTag::GoodMonomial: return "GoodMonomial";
        case ReductionTag::Bad: return "Bad";
    }
    return "?";
}

struct ReductionClass {
    ReductionTag tag;
    long p;
    ModPoly num, den;  // reduced map in lowest terms over F_p
    // combinatorial predictions (prop. criteria) actually applied
    bool criterion_separable_applied = false;  // p > d forces GoodSeparable
    bool criterion_monomial = false;           // e2 <= p^{v_p(d)}
};

// exact division in F_p[x] (the divisor must divide)
inline ModPoly mod_exact_div(const ModPoly& a, const ModPoly& b) {
    long p = a.modulus();
    std::vector<std::int64_t> rem(a.coeffs());
    std::int64_t inv = mod_inverse(b.coeffs().back(), p);
    std::vector<std::int64_t> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    for (long k = a.degree() - b.degree(); k >= 0; --k) {
        std::int64_t top = rem[static_cast<std::size_t>(k + b.degree())];
        if (top == 0) continue;
        std::int64_t fq = static_cast<std::int64_t>(static_cast<unsigned __int128>(top) * inv % p);
        q[static_cast<std::size_t>(k)] = fq;
        for (long j = 0; j <= b.degree(); ++j) {
            std::int64_t sub = static_cast<std::int64_t>(
                static_cast<unsigned __int128>(fq) * b.coeff(static_cast<std::size_t>(j)) % p);
            auto& slot = rem[static_cast<std::size_t>(k + j)];
            slot = (slot - sub + p) % p;
        }
    }
    for (std::int64_t v : rem)
        if (v != 0) throw consistency_error("mod_exact_div: nonzero remainder");
    return ModPoly(p, std::move(q));
}

inline ReductionClass classify_reduction(const BelyiMap& f, long p) {
    if (!is_prime(p)) throw argument_error("classify_reduction: p must be prime");
    const auto& t = f.type();
    ModPoly gbar = reduce_poly_mod_p(f.num(), p);
    ModPoly hbar = reduce_poly_mod_p(f.den(), p);
    ModPoly u = gbar, v = hbar;
    if (!gbar.is_zero() && !hbar.is_zero()) {
        ModPoly common = mod_gcd(gbar, hbar);
        if (common.degree() > 0) {
            u = mod_exact_div(gbar, common);
            v = mod_exact_div(hbar, common);
        }
    }

    long map_degree = std::max(u.degree(), v.degree());
    ReductionTag tag;
    if (u.is_zero() || v.is_zero() || map_degree < t.d) {
        tag = ReductionTag::Bad;
    } else {
        bool monomial = v.degree() == 0 && u.degree() == t.d &&
                        [&] {
                            for (long i = 0; i < t.d; ++i)
                                if (u.coeff(static_cast<std::size_t>(i)) != 0) return false;
                            return u.coeff(static_cast<std::size_t>(t.d)) == v.coeff(0);
                        }();
        bool separable = is_separable(u) || is_separable(v);
        tag = monomial ? ReductionTag::GoodMonomial
                       : (separable ? ReductionTag::GoodSeparable : ReductionTag::GoodInseparable);
    }

    // combinatorial criteria: direct computation must agree wherever they apply
    ReductionClass rc{tag, p, std::move(u), std::move(v)};
    if (p > t.d) {
        rc.criterion_separable_applied = true;
        if (tag != ReductionTag::GoodSeparable)
            throw consistency_error("classify_reduction: p > d predicts good separable reduction at p=" +
                                    std::to_string(p) + " for " + t.str() + ", computed " + to_string(tag));
    }
    long pn = 1;
    {
        int dd = t.d;
        while (dd % p == 0) {
            dd /= static_cast<int>(p);
            pn *= p;
        }
    }
    rc.criterion_monomial = (t.e2 <= pn);
    if (rc.criterion_monomial != (tag == ReductionTag::GoodMonomial))
        throw consistency_error("classify_reduction: monomial criterion (e2 <= p^n) disagrees with direct reduction at p=" +
                                std::to_string(p) + " for " + t.str());
    return rc;
}

// ---- discriminant --------------------------------------------------------

// Data of Delta(f - t) = a_f t^{e1-1} (1-t)^{e2-1} and the square class of
// the product discriminant constant u.
struct DiscriminantData {
    Rat a_f;
    Rat u;
    bool is_square_u;
    Int ell_g;  // leading coefficient of g
    Int h0;     // h(0)
    Int g1;     // g(1)
};

inline DiscriminantData discriminant_data(const BelyiMap& f) {
    const auto& t = f.type();
    RatPoly disc = discriminant_in_x(BiPoly::map_minus_t(f.num(), f.den()));
    // expected shape: a_f * t^{e1-1} * (1-t)^{e2-1}
    std::vector<Rat> one_minus_t = {Rat(1), Rat(-1)};
    RatPoly shape = RatPoly::monomial(Rat(1), static_cast<std::size_t>(t.e1 - 1));
    for (int i = 0; i < t.e2 - 1; ++i) shape = shape * RatPoly(one_minus_t);
    if (disc.is_zero() || disc.ord0() != t.e1 - 1)
        throw consistency_error("discriminant_data: discriminant does not vanish to order e1-1 at t=0");
    Rat a_f = disc.coeff(static_cast<std::size_t>(t.e1 - 1)) / shape.coeff(static_cast<std::size_t>(t.e1 - 1));
    if (disc != a_f * shape)
        throw consistency_error("discriminant_data: discriminant shape a(f) t^{e1-1}(1-t)^{e2-1} violated for " +
                                t.str());
    Int ell = f.num().leading();
    Int h0 = f.den().coeff(0);
    Int g1 = f.num().eval(Int(1));
    Rat u = pow_rat(a_f, t.d + 1) * pow_rat(Rat(h0), t.e1 - 1) * pow_rat(Rat(g1), t.e2 - 1) /
            pow_rat(Rat(ell), t.e1 + t.e2 - 2);
    if (((static_cast<long>(t.d) + 1) * (t.e1 - 1)) % 2 != 0) u = -u;
    return DiscriminantData{a_f, u, is_square(u), ell, h0, g1};
}

// ---- ramification profile -------------------------------------------------

enum class Branch { Zero, One, Infinity };

inline std::string to_string(Branch b) {
    switch (b) {
        case Branch::Zero: return "0";
        case Branch::One: return "1";
        case Branch::Infinity: return "inf";
    }
    return "?";
}

// Multiset of (ramification index, count) in the fiber of f^n over the
// given branch point: {e^n : 1} plus (d-e) d^{n-1-i} points of index e^i
// for 0 <= i <= n-1.
inline std::map<Int, Int> ram_profile(const CombinatorialType& t, int n, Branch branch) {
    if (n < 1) throw argument_error("ram_profile: n >= 1 required");
    int e = branch == Branch::Zero ? t.e1 : branch == Branch::One ? t.e2 : t.e3;
    std::map<Int, Int> out;
    out[pow_int(Int(e), static_cast<unsigned long>(n))] += 1;
    if (t.d - e > 0) {
        for (int i = 0; i <= n - 1; ++i) {
            Int idx = pow_int(Int(e), static_cast<unsigned long>(i));
            Int count = Int(t.d - e) * pow_int(Int(t.d), static_cast<unsigned long>(n - 1 - i));
            out[idx] += count;
        }
    }
    return out;
}

}  // namespace arboreal
