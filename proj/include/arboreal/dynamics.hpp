#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "arboreal/belyi.hpp"
#include "arboreal/errors.hpp"
#include "arboreal/modpoly.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/rng.hpp"
#include "arboreal/tree.hpp"

namespace arboreal {

// |{tau in S_d : |supp(tau)| = i}| = C(d,i) D_i.
inline Int support_count(int d, int i) {
    if (i < 0 || i > d) throw argument_error("support_count: 0 <= i <= d required");
    return binomial(d, i) * derangements(static_cast<unsigned>(i));
}

// phi(x) = (1/d!) sum_i |{tau : |supp(tau)|=i}| (1 - (1-x)^{d-i}),
// the contraction with x_{n+1} <= phi(x_n) for the fixed-leaf proportions.
inline Rat phi(int d, const Rat& x) {
    if (x < 0 || x > 1) throw argument_error("phi: x must lie in [0,1]");
    Rat acc = 0;
    Rat one_minus = Rat(1) - x;
    for (int i = 0; i <= d; ++i) {
        Rat pw = pow_rat(one_minus, d - i);
        acc += Rat(support_count(d, i)) * (Rat(1) - pw);
    }
    return acc / Rat(factorial(static_cast<unsigned>(d)));
}

inline double phi(int d, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw argument_error("phi: x must lie in [0,1]");
    double acc = 0;
    for (int i = 0; i <= d; ++i)
        acc += support_count(d, i).convert_to<double>() * (1.0 - std::pow(1.0 - x, d - i));
    return acc / factorial(static_cast<unsigned>(d)).convert_to<double>();
}

struct PhiOrbit {
    std::vector<double> values;  // phi(1), phi^2(1), ...
    long k;                      // first k with phi^k(1) < tolerance
};

// Iterates phi from 1 until the value drops below `tolerance`.  phi'(0) = 1
// (the mean fixed-point count of S_d is 1), so the decay is ~2/k and small
// tolerances need correspondingly many steps.
inline PhiOrbit phi_orbit(int d, double tolerance, long max_steps = 1000000) {
    if (!(tolerance > 0)) throw argument_error("phi_orbit: tolerance must be positive");
    PhiOrbit out;
    double y = 1.0;
    for (long step = 1; step <= max_steps; ++step) {
        y = phi(d, y);
        out.values.push_back(y);
        if (y < tolerance) {
            out.k = step;
            return out;
        }
    }
    throw resource_error("phi_orbit: no convergence below tolerance within " + std::to_string(max_steps) +
                         " steps");
}

// ---- fixed-leaf proportion ------------------------------------------------

// Exact |E_{n,fix}| / |E_n| by full enumeration.
inline Rat exact_fixed_proportion(int d, int n, const Int& enum_bound = Int(10000000)) {
    Int order = En_order(d, n);
    if (order > enum_bound)
        throw resource_error("exact_fixed_proportion: |E_n| = " + order.str() + " exceeds bound " +
                             enum_bound.str() + "; use the Monte-Carlo estimator");
    Int fix = 0, total = 0;
    for_each_in_En(d, n, [&](const TreeAut& a) {
        ++total;
        if (fixes_leaf(a)) ++fix;
    });
    if (total != order) throw consistency_error("exact_fixed_proportion: enumeration count != |E_n|");
    return Rat(fix, total);
}

struct FixedProportionReport {
    int d, n;
    std::optional<Rat> exact;  // present iff |E_n| <= enumeration bound
    double estimate, stderr_;
    long samples;
    std::uint64_t seed;
};

namespace detail {

constexpr int kMaxInlineDegree = 32;

// Samples one uniform E_depth element without materializing it, returning
// (sign of the root permutation, fixes-a-leaf).  Same fold as
// sample_uniform_En: if sgn2 of the assembled node is -1, multiply the top
// by the transposition (0 1).
inline std::pair<int, bool> sample_en_shape(int d, int depth, std::mt19937_64& rng) {
    std::array<int, kMaxInlineDegree> img;
    if (depth == 1) {
        for (int i = 0; i < d; ++i) img[static_cast<std::size_t>(i)] = i;
        int transpositions = 0;
        for (int i = d - 1; i > 0; --i) {
            int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
            if (j != i) {
                std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
                ++transpositions;
            }
        }
        bool fix = false;
        for (int i = 0; i < d; ++i) fix = fix || img[static_cast<std::size_t>(i)] == i;
        return {transpositions % 2 == 0 ? 1 : -1, fix};
    }
    int child_sign_product = 1;
    std::array<bool, kMaxInlineDegree> child_fix;
    for (int j = 0; j < d; ++j) {
        auto [s, fx] = sample_en_shape(d, depth - 1, rng);
        child_sign_product *= s;
        child_fix[static_cast<std::size_t>(j)] = fx;
    }
    for (int i = 0; i < d; ++i) img[static_cast<std::size_t>(i)] = i;
    int transpositions = 0;
    for (int i = d - 1; i > 0; --i) {
        int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
        if (j != i) {
            std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
            ++transpositions;
        }
    }
    int tau_sign = transpositions % 2 == 0 ? 1 : -1;
    if (tau_sign * child_sign_product != 1) {
        // multiply tau on the right by (0 1): swap the image values 0 and 1
        for (int i = 0; i < d; ++i) {
            auto& v = img[static_cast<std::size_t>(i)];
            if (v == 0)
                v = 1;
            else if (v == 1)
                v = 0;
        }
        tau_sign = -tau_sign;
    }
    bool fix = false;
    for (int j = 0; j < d && !fix; ++j)
        fix = img[static_cast<std::size_t>(j)] == j && child_fix[static_cast<std::size_t>(j)];
    return {tau_sign, fix};
}

}  // namespace detail

// Monte-Carlo estimate of |E_{n,fix}|/|E_n| with binomial standard error.
// Sampling is chunked and each chunk derives its own stream from (seed,
// chunk index), so the result is independent of the worker count.
inline FixedProportionReport mc_fixed_proportion(int d, int n, long samples, std::uint64_t seed,
                                                 int jobs = 1, const Int& enum_bound = Int(10000000)) {
    if (samples < 1) throw argument_error("mc_fixed_proportion: samples >= 1 required");
    if (d < 2 || d > detail::kMaxInlineDegree)
        throw argument_error("mc_fixed_proportion: degree out of range");
    const long chunk_size = 1 << 14;
    const long num_chunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<long> chunk_hits(static_cast<std::size_t>(num_chunks), 0);
    auto worker = [&](int w) {
        for (long c = w; c < num_chunks; c += jobs) {
            std::mt19937_64 rng(splitmix64(splitmix64(seed) + static_cast<std::uint64_t>(c)));
            long lo = c * chunk_size;
            long hi = std::min(samples, lo + chunk_size);
            long hits = 0;
            for (long s = lo; s < hi; ++s)
                if (detail::sample_en_shape(d, n, rng).second) ++hits;
            chunk_hits[static_cast<std::size_t>(c)] = hits;
        }
    };
    if (jobs <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    long hits = 0;
    for (long h : chunk_hits) hits += h;
    double est = static_cast<double>(hits) / static_cast<double>(samples);
    double se = std::sqrt(est * (1.0 - est) / static_cast<double>(samples));
    FixedProportionReport rep{d, n, std::nullopt, est, se, samples, seed};
    if (En_order(d, n) <= enum_bound) rep.exact = exact_fixed_proportion(d, n, enum_bound);
    return rep;
}

// ---- prime-divisor density of dynamical sequences ---------------------------

enum class DensityMode { DividesZero, HitsTarget };

inline std::string to_string(DensityMode m) {
    return m == DensityMode::DividesZero ? "divides-zero" : "hits-target";
}

struct SkippedPrime {
    long q;
    std::string reason;  // bad_reduction | inseparable_reduction | denominator
};

struct DensityReport {
    std::string map_id;
    Rat b0;
    DensityMode mode;
    std::optional<Rat> target;
    long X;
    long primes_scanned = 0;
    long primes_dividing = 0;
    std::vector<SkippedPrime> skipped;
    std::vector<long> hit_primes;
    double density = 0.0;
};

namespace detail {

struct OrbitScan {
    bool hit;
    long steps;
};

// One projective orbit mod q.  Points are residues 0..q-1, with q standing
// for infinity.  The orbit lives in a set of size q+1, so the loop runs at
// most q+2 steps.
inline OrbitScan scan_orbit_mod_q(const std::vector<std::int64_t>& gq, const std::vector<std::int64_t>& hq,
                                  long q, std::int64_t start, std::int64_t target, long floyd_threshold) {
    auto step = [&](std::int64_t x) -> std::int64_t {
        if (x == q) return q;  // infinity is fixed (deg num > deg den)
        std::int64_t num = 0, den = 0;
        for (std::size_t i = gq.size(); i-- > 0;)
            num = static_cast<std::int64_t>((static_cast<unsigned __int128>(num) * x + gq[i]) % q);
        for (std::size_t i = hq.size(); i-- > 0;)
            den = static_cast<std::int64_t>((static_cast<unsigned __int128>(den) * x + hq[i]) % q);
        if (den == 0) return q;
        return static_cast<std::int64_t>(static_cast<unsigned __int128>(num) * mod_inverse(den, q) % q);
    };
    if (q < floyd_threshold) {
        std::vector<std::uint8_t> visited(static_cast<std::size_t>(q) + 1, 0);
        std::int64_t x = start;
        long steps = 0;
        while (!visited[static_cast<std::size_t>(x)]) {
            visited[static_cast<std::size_t>(x)] = 1;
            ++steps;
            if (x == target) return {true, steps};
            x = step(x);
        }
        return {false, steps};
    }
    // Floyd: locate the cycle, then walk the mu+lambda distinct points once.
    std::int64_t tort = step(start), hare = step(step(start));
    while (tort != hare) {
        tort = step(tort);
        hare = step(step(hare));
    }
    long mu = 0;
    tort = start;
    while (tort != hare) {
        tort = step(tort);
        hare = step(hare);
        ++mu;
    }
    long lambda = 1;
    hare = step(tort);
    while (tort != hare) {
        hare = step(hare);
        ++lambda;
    }
    std::int64_t x = start;
    for (long i = 0; i < mu + lambda; ++i) {
        if (x == target) return {true, mu + lambda};
        x = step(x);
    }
    return {false, mu + lambda};
}

}  // namespace detail

// For every prime q <= X of good separable reduction (and not dividing the
// relevant denominators), iterates f on P^1(F_q) from b0 and records whether
// the orbit reaches 0 (DividesZero) or the residue of the target
// (HitsTarget).  Excluded primes are reported with reasons, never dropped
// silently.
inline DensityReport orbit_density(const BelyiMap& f, const Rat& b0, long X, DensityMode mode,
                                   const std::optional<Rat>& target = std::nullopt, int jobs = 1,
                                   long floyd_threshold = (1L << 22)) {
    if (b0 == 0 || b0 == 1) throw argument_error("orbit_density: b0 must avoid 0 and 1");
    if (X < 2) throw argument_error("orbit_density: X >= 2 required");
    if (mode == DensityMode::HitsTarget && !target)
        throw argument_error("orbit_density: hits-target mode needs a target value");

    DensityReport rep;
    rep.map_id = "belyi" + f.type().str();
    rep.b0 = b0;
    rep.mode = mode;
    rep.target = target;
    rep.X = X;

    std::vector<long> primes = primes_up_to(X);
    std::vector<long> scan;
    for (long q : primes) {
        if (q <= f.degree()) {
            auto tag = classify_reduction(f, q).tag;
            if (tag == ReductionTag::Bad) {
                rep.skipped.push_back({q, "bad_reduction"});
                continue;
            }
            if (tag == ReductionTag::GoodMonomial || tag == ReductionTag::GoodInseparable) {
                rep.skipped.push_back({q, "inseparable_reduction"});
                continue;
            }
        }
        if (rat_den(b0) % q == 0 || (target && rat_den(*target) % q == 0)) {
            rep.skipped.push_back({q, "denominator"});
            continue;
        }
        scan.push_back(q);
    }

    std::vector<std::uint8_t> outcome(scan.size(), 0);
    auto reduce_coeffs = [](const IntPoly& p, long q) {
        std::vector<std::int64_t> out;
        out.reserve(p.coeffs().size());
        for (const auto& c : p.coeffs()) {
            Int r = c % q;
            if (r < 0) r += q;
            out.push_back(r.convert_to<std::int64_t>());
        }
        return out;
    };
    auto reduce_rat = [](const Rat& r, long q) -> std::int64_t {
        Int num = rat_num(r) % q;
        if (num < 0) num += q;
        Int den = rat_den(r) % q;
        return static_cast<std::int64_t>(
            static_cast<unsigned __int128>(num.convert_to<std::int64_t>()) *
            mod_inverse(den.convert_to<std::int64_t>(), q) % q);
    };
    std::atomic<bool> step_overrun{false};
    auto worker = [&](int w) {
        for (std::size_t i = static_cast<std::size_t>(w); i < scan.size(); i += static_cast<std::size_t>(jobs)) {
            long q = scan[i];
            auto gq = reduce_coeffs(f.num(), q);
            auto hq = reduce_coeffs(f.den(), q);
            std::int64_t start = reduce_rat(b0, q);
            std::int64_t tgt = mode == DensityMode::DividesZero ? 0 : reduce_rat(*target, q);
            auto res = detail::scan_orbit_mod_q(gq, hq, q, start, tgt, floyd_threshold);
            if (res.steps > q + 2) step_overrun = true;
            outcome[i] = res.hit ? 1 : 0;
        }
    };
    if (jobs <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    if (step_overrun) throw consistency_error("orbit_density: cycle detection overran q+2 steps");

    rep.primes_scanned = static_cast<long>(scan.size());
    for (std::size_t i = 0; i < scan.size(); ++i) {
        if (outcome[i]) {
            ++rep.primes_dividing;
            rep.hit_primes.push_back(scan[i]);
        }
    }
    rep.density = rep.primes_scanned == 0
                      ? 0.0
                      : static_cast<double>(rep.primes_dividing) / static_cast<double>(rep.primes_scanned);
    return rep;
}

}  // namespace arboreal
