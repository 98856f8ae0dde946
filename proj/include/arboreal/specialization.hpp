#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arboreal/belyi.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/padic.hpp"
#include "arboreal/poly.hpp"

namespace arboreal {

// Per-condition ledger for the specialization hypotheses: good monomial
// reduction at p with nu_p(a) = 1, good separable reduction at q1, q2, q3
// with nu_{q1}(a) > 0, nu_{q2}(1-a) > 0, nu_{q3}(a) < 0.
struct ConditionsWitness {
    Rat a;
    long p, q1, q2, q3;
    std::vector<std::pair<std::string, bool>> checks;
    bool valid = true;

    void add(const std::string& name, bool ok) {
        checks.push_back({name, ok});
        valid = valid && ok;
    }
};

inline ConditionsWitness check_conditions(const BelyiMap& f, const Rat& a, long p, long q1, long q2,
                                          long q3) {
    std::set<long> distinct = {p, q1, q2, q3};
    if (distinct.size() != 4) throw argument_error("check_conditions: p, q1, q2, q3 must be distinct");
    for (long q : distinct)
        if (!is_prime(q)) throw argument_error("check_conditions: " + std::to_string(q) + " is not prime");
    ConditionsWitness w;
    w.a = a;
    w.p = p;
    w.q1 = q1;
    w.q2 = q2;
    w.q3 = q3;
    w.add("a_not_0_or_1", a != 0 && a != 1);
    w.add("good_monomial_at_p", classify_reduction(f, p).tag == ReductionTag::GoodMonomial);
    w.add("nu_p_a_eq_1", valuation(a, p) == 1);
    w.add("good_separable_at_q1", classify_reduction(f, q1).tag == ReductionTag::GoodSeparable);
    w.add("good_separable_at_q2", classify_reduction(f, q2).tag == ReductionTag::GoodSeparable);
    w.add("good_separable_at_q3", classify_reduction(f, q3).tag == ReductionTag::GoodSeparable);
    w.add("nu_q1_a_pos", valuation(a, q1) > 0);
    w.add("nu_q2_one_minus_a_pos", valuation(Rat(1) - a, q2) > 0);
    w.add("nu_q3_a_neg", valuation(a, q3) < 0);
    return w;
}

// Scans a = +-u/v in the canonical order (height max(|u|,v) ascending, then
// |u|, then v, then sign + before -) and returns the first tuple passing
// check_conditions, with the primes chosen smallest-first per slot.
inline std::optional<ConditionsWitness> find_conditions(const BelyiMap& f, long height_bound) {
    const int d = f.degree();
    std::vector<long> monomial_primes, separable_small;
    for (long p : primes_up_to(d)) {
        auto tag = classify_reduction(f, p).tag;
        if (tag == ReductionTag::GoodMonomial) monomial_primes.push_back(p);
        if (tag == ReductionTag::GoodSeparable) separable_small.push_back(p);
    }
    auto separable = [&](long q) {
        return q > d || std::find(separable_small.begin(), separable_small.end(), q) != separable_small.end();
    };

    for (long h = 1; h <= height_bound; ++h) {
        for (long uabs = 1; uabs <= h; ++uabs) {
            for (long v = 1; v <= h; ++v) {
                if (std::max(uabs, v) != h) continue;
                if (gcd(Int(uabs), Int(v)) != 1) continue;
                for (int sign : {+1, -1}) {
                    Rat a(sign * uabs, v);
                    if (a == 1) continue;
                    long p = 0;
                    for (long cand : monomial_primes)
                        if (valuation(a, cand) == 1) {
                            p = cand;
                            break;
                        }
                    if (p == 0) continue;
                    auto pick = [&](const Rat& val, bool negative, std::set<long>& taken) -> long {
                        Int num = negative ? rat_den(val) : rat_num(val);
                        for (auto [q, e] : factor(num)) {
                            if (taken.count(q) || !separable(q)) continue;
                            taken.insert(q);
                            return q;
                        }
                        return 0;
                    };
                    std::set<long> taken = {p};
                    long q1 = pick(a, false, taken);
                    if (q1 == 0) continue;
                    long q2 = pick(Rat(1) - a, false, taken);
                    if (q2 == 0) continue;
                    long q3 = pick(a, true, taken);
                    if (q3 == 0) continue;
                    ConditionsWitness w = check_conditions(f, a, p, q1, q2, q3);
                    if (w.valid) return w;
                }
            }
        }
    }
    return std::nullopt;
}

// Eisenstein test at p for the numerator of f^n - a (cleared to content-1
// integer form).  Preconditions: good monomial reduction at p, nu_p(a) = 1.
inline bool eisenstein_irreducible(const BelyiMap& f, const Rat& a, long p, int n,
                                   long max_degree = 10000) {
    if (!is_prime(p)) throw argument_error("eisenstein_irreducible: p must be prime");
    if (!(valuation(a, p) == 1)) throw argument_error("eisenstein_irreducible: nu_p(a) = 1 required");
    if (classify_reduction(f, p).tag != ReductionTag::GoodMonomial)
        throw argument_error("eisenstein_irreducible: good monomial reduction at p required");
    auto [gn, hn] = iterate(f, n, max_degree);
    IntPoly numerator = rat_den(a) * gn - rat_num(a) * hn;
    numerator = primitive_part(numerator);
    long deg = numerator.degree();
    if (!(valuation(numerator.leading(), p) == 0)) return false;
    for (long i = 1; i < deg; ++i) {
        Int c = numerator.coeff(static_cast<std::size_t>(i));
        if (!c.is_zero() && valuation(c, p) == 0) return false;
    }
    return valuation(numerator.coeff(0), p) == 1;
}

// Newton polygon of the numerator of f - a at q, recentered per branch:
// identity for branch 0, x -> x+1 for branch 1, coefficient reversal for
// branch infinity.  Asserts the predicted two-slope shape
// {(-nu/e_j, e_j), (0, d-e_j)} and returns the polygon.
inline NewtonPolygon local_ramification(const BelyiMap& f, const Rat& a, long q, Branch branch) {
    if (!is_prime(q)) throw argument_error("local_ramification: q must be prime");
    if (classify_reduction(f, q).tag != ReductionTag::GoodSeparable)
        throw argument_error("local_ramification: good separable reduction at q required");
    Valuation nu_a = valuation(a, q);
    long nu;
    int e;
    switch (branch) {
        case Branch::Zero:
            if (!(nu_a > 0)) throw argument_error("local_ramification: branch 0 needs nu_q(a) > 0");
            nu = nu_a.value();
            e = f.type().e1;
            break;
        case Branch::One: {
            Valuation nu1 = valuation(Rat(1) - a, q);
            if (!(nu1 > 0)) throw argument_error("local_ramification: branch 1 needs nu_q(1-a) > 0");
            nu = nu1.value();
            e = f.type().e2;
            break;
        }
        case Branch::Infinity:
            if (!(nu_a < 0)) throw argument_error("local_ramification: branch inf needs nu_q(a) < 0");
            nu = -nu_a.value();
            e = f.type().e3;
            break;
    }
    IntPoly numerator = rat_den(a) * f.num() - rat_num(a) * f.den();
    if (branch == Branch::One) numerator = numerator.taylor_shift(Int(1));
    if (branch == Branch::Infinity)
        numerator = numerator.reciprocal(static_cast<std::size_t>(f.degree()));
    NewtonPolygon np = newton_polygon(numerator, q);
    NewtonPolygon expected;
    expected.segments.emplace_back(Rat(-nu, e), e);
    if (f.degree() - e > 0) expected.segments.emplace_back(Rat(0), f.degree() - e);
    if (!(np == expected))
        throw consistency_error("local_ramification: polygon " + np.to_string() + " differs from predicted " +
                                expected.to_string() + " for " + f.type().str() + " at q=" + std::to_string(q) +
                                " branch " + to_string(branch));
    return np;
}

// P_bad: primes <= d of bad or (good) inseparable reduction.  P_a: the
// additional primes where a meets a branch point, i.e.
// {p : nu_p(a) != 0 or nu_p(1-a) > 0} \ P_bad.  The tower ramifies only
// above P_bad union P_a.
struct RamifiedPrimeSets {
    std::set<long> p_bad;
    std::set<long> p_a;

    std::set<long> all() const {
        std::set<long> u = p_bad;
        u.insert(p_a.begin(), p_a.end());
        return u;
    }
};

inline RamifiedPrimeSets ramified_prime_sets(const BelyiMap& f, const Rat& a) {
    if (a == 0 || a == 1) throw argument_error("ramified_prime_sets: a must avoid 0 and 1");
    RamifiedPrimeSets out;
    for (long p : primes_up_to(f.degree())) {
        auto tag = classify_reduction(f, p).tag;
        if (tag == ReductionTag::Bad || tag == ReductionTag::GoodInseparable ||
            tag == ReductionTag::GoodMonomial)
            out.p_bad.insert(p);
    }
    std::set<long> raw;
    for (auto [p, e] : factor(rat_num(a))) raw.insert(p);
    for (auto [p, e] : factor(rat_den(a))) raw.insert(p);
    for (auto [p, e] : factor(rat_num(Rat(1) - a))) raw.insert(p);
    for (long p : raw) {
        bool in = !(valuation(a, p) == 0) || valuation(Rat(1) - a, p) > 0;
        if (in && !out.p_bad.count(p)) out.p_a.insert(p);
    }
    return out;
}

}  // namespace arboreal
