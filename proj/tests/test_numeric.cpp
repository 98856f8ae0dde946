#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "arboreal/bipoly.hpp"
#include "arboreal/modpoly.hpp"
#include "arboreal/numeric.hpp"
#include "arboreal/padic.hpp"
#include "arboreal/poly.hpp"
#include "arboreal/rng.hpp"

using namespace arboreal;

namespace {

// trial-division valuation, independent of valuation()
long nu_oracle(Int n, long p) {
    REQUIRE(!n.is_zero());
    if (n < 0) n = -n;
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// Gaussian-elimination determinant over Q with partial pivoting; used as the
// independent Sylvester oracle.
Rat det_rat(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    Rat det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return Rat(0);
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m[i][k].is_zero()) continue;
            Rat f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

// disc of a rational-coefficient univariate polynomial via the Sylvester
// matrix of (q, q') over Q
Rat disc_oracle(const std::vector<Rat>& q) {
    long d = static_cast<long>(q.size()) - 1;
    REQUIRE(d >= 1);
    REQUIRE(!q.back().is_zero());
    std::vector<Rat> dq(static_cast<std::size_t>(d));
    for (long i = 1; i <= d; ++i) dq[static_cast<std::size_t>(i - 1)] = Rat(i) * q[static_cast<std::size_t>(i)];
    while (!dq.empty() && dq.back().is_zero()) dq.pop_back();
    long e = static_cast<long>(dq.size()) - 1;
    REQUIRE(e >= 0);
    std::size_t n = static_cast<std::size_t>(d + e);
    std::vector<std::vector<Rat>> syl(n, std::vector<Rat>(n, Rat(0)));
    for (long r = 0; r < e; ++r)
        for (long i = 0; i <= d; ++i) syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + d - i)] = q[static_cast<std::size_t>(i)];
    for (long r = 0; r < d; ++r)
        for (long i = 0; i <= e; ++i) syl[static_cast<std::size_t>(e + r)][static_cast<std::size_t>(r + e - i)] = dq[static_cast<std::size_t>(i)];
    Rat res = det_rat(std::move(syl));
    Rat disc = res / q.back();
    if ((d * (d - 1) / 2) % 2 != 0) disc = -disc;
    return disc;
}

}  // namespace

TEST_CASE("valuation at primes") {
    CHECK(valuation(Rat(60, 11), 3) == 1);
    CHECK(nu_oracle(Int(60), 3) - nu_oracle(Int(11), 3) == 1);
    CHECK(valuation(Rat(1), 7) == 0);
    CHECK(valuation(Rat(1) - Rat(60, 11), 7) == 2);  // -49/11
    CHECK(nu_oracle(Int(49), 7) == 2);
    CHECK(valuation(Rat(0), 5).is_infinite());
    CHECK(valuation(Int(-54), 3) == 3);
    CHECK_THROWS_AS(valuation(Rat(1, 2), 4), argument_error);
    CHECK_THROWS_AS(valuation(Rat(1, 2), 1), argument_error);
}

TEST_CASE("valuation is additive, infinity absorbs") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        long p = std::vector<long>{2, 3, 5, 7}[uniform_below(rng, 4)];
        auto rand_rat = [&] {
            long num = static_cast<long>(uniform_below(rng, 400)) - 200;
            long den = 1 + static_cast<long>(uniform_below(rng, 200));
            return Rat(num, den);
        };
        Rat r = rand_rat(), s = rand_rat();
        Valuation lhs = valuation(r * s, p);
        Valuation rhs = valuation(r, p) + valuation(s, p);
        CHECK(lhs == rhs);
    }
    CHECK((valuation(Rat(0), 3) + valuation(Rat(5), 3)).is_infinite());
}

TEST_CASE("discriminant_in_x on the pinned examples") {
    // x^2 - t -> 4t
    BiPoly q1(Poly<IntPoly>(std::vector<IntPoly>{
        IntPoly(std::vector<Int>{Int(0), Int(-1)}),  // coeff of x^0: -t
        IntPoly(),                                   // x^1
        IntPoly(1)}));                               // x^2
    RatPoly d1 = discriminant_in_x(q1);
    CHECK(d1 == RatPoly(std::vector<Rat>{Rat(0), Rat(4)}));

    // x^2 - 1 -> 4
    BiPoly q2(Poly<IntPoly>(std::vector<IntPoly>{IntPoly(-1), IntPoly(), IntPoly(1)}));
    CHECK(discriminant_in_x(q2) == RatPoly(std::vector<Rat>{Rat(4)}));

    // -2x^3 + 3x^2 - t -> -108 t (t - 1) = -108 t^2 + 108 t
    BiPoly q3 = BiPoly::map_minus_t(IntPoly(std::vector<Int>{Int(0), Int(0), Int(3), Int(-2)}), IntPoly(1));
    RatPoly d3 = discriminant_in_x(q3);
    CHECK(d3 == RatPoly(std::vector<Rat>{Rat(0), Rat(108), Rat(-108)}));

    BiPoly deg0(Poly<IntPoly>(std::vector<IntPoly>{IntPoly(5)}));
    CHECK_THROWS_AS(discriminant_in_x(deg0), argument_error);
}

TEST_CASE("discriminant_in_x agrees with the Sylvester oracle pointwise") {
    std::mt19937_64 rng(99);
    int done = 0;
    while (done < 120) {
        int dx = 1 + static_cast<int>(uniform_below(rng, 4));  // x-degree 1..4
        int dt = static_cast<int>(uniform_below(rng, 3));      // t-degree 0..2
        std::vector<IntPoly> rows;
        for (int i = 0; i <= dx; ++i) {
            std::vector<Int> tc;
            for (int j = 0; j <= dt; ++j) tc.push_back(Int(static_cast<long>(uniform_below(rng, 11)) - 5));
            rows.emplace_back(std::move(tc));
        }
        Poly<IntPoly> qx(std::move(rows));
        if (qx.degree() < 1) continue;
        BiPoly q(qx);
        RatPoly mine = discriminant_in_x(q);
        // evaluation points avoiding leading-coefficient vanishing
        int checked = 0;
        for (long t0 = 0; checked < 8 && t0 < 40; ++t0) {
            Rat lead = qx.leading().eval(Rat(t0));
            if (lead.is_zero()) continue;
            std::vector<Rat> spec;
            for (long i = 0; i <= qx.degree(); ++i) spec.push_back(qx.coeff(static_cast<std::size_t>(i)).eval(Rat(t0)));
            CHECK(mine.eval(Rat(t0)) == disc_oracle(spec));
            ++checked;
        }
        ++done;
    }
}

TEST_CASE("reduce_poly_mod_p") {
    IntPoly f(std::vector<Int>{Int(0), Int(0), Int(3), Int(-2)});
    ModPoly r = reduce_poly_mod_p(f, 3);
    CHECK(r == ModPoly(3, {0, 0, 0, 1}));  // x^3
    CHECK(reduce_poly_mod_p(IntPoly(std::vector<Int>{Int(0), Int(1)}), 5) == ModPoly(5, {0, 1}));
    CHECK(reduce_poly_mod_p(IntPoly(std::vector<Int>{Int(2), Int(0), Int(6)}), 2).is_zero());
}

TEST_CASE("reduction is a ring homomorphism") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        long p = std::vector<long>{2, 3, 5, 11}[uniform_below(rng, 4)];
        auto rand_poly = [&] {
            std::vector<Int> c;
            std::size_t deg = uniform_below(rng, 6);
            for (std::size_t i = 0; i <= deg; ++i) c.push_back(Int(static_cast<long>(uniform_below(rng, 41)) - 20));
            return IntPoly(std::move(c));
        };
        IntPoly a = rand_poly(), b = rand_poly();
        CHECK(reduce_poly_mod_p(a * b, p) == reduce_poly_mod_p(a, p) * reduce_poly_mod_p(b, p));
        CHECK(reduce_poly_mod_p(a + b, p) == reduce_poly_mod_p(a, p) + reduce_poly_mod_p(b, p));
    }
}

TEST_CASE("is_separable = not a polynomial in x^p") {
    CHECK_FALSE(is_separable(ModPoly(3, {0, 0, 0, 1})));        // x^3 in F_3[x^3]
    CHECK(is_separable(ModPoly(3, {0, 1, 1})));                 // x^2 + x
    CHECK_FALSE(is_separable(ModPoly(3, {0, 0, 0, 1, 0, 0, 1})));  // x^6 + x^3
    CHECK_THROWS_AS(is_separable(ModPoly::zero(5)), argument_error);
}

TEST_CASE("newton_polygon examples") {
    IntPoly q(std::vector<Int>{Int(-5), Int(0), Int(3), Int(-2)});
    NewtonPolygon np = newton_polygon(q, 5);
    NewtonPolygon expect;
    expect.segments = {{Rat(-1, 2), 2}, {Rat(0), 1}};
    CHECK(np == expect);

    IntPoly lin(std::vector<Int>{Int(-7), Int(1)});
    NewtonPolygon np2 = newton_polygon(lin, 7);
    CHECK(np2.segments.size() == 1);
    CHECK(np2.segments[0] == std::pair<Rat, long>{Rat(-1), 1});

    IntPoly sq(std::vector<Int>{Int(1), Int(0), Int(1)});
    NewtonPolygon np3 = newton_polygon(sq, 3);
    CHECK(np3.segments.size() == 1);
    CHECK(np3.segments[0] == std::pair<Rat, long>{Rat(0), 2});

    CHECK_THROWS_AS(newton_polygon(IntPoly(), 3), argument_error);
}

TEST_CASE("newton polygon: increasing slopes, total length = deg - ord0") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        long p = std::vector<long>{2, 3, 5}[uniform_below(rng, 3)];
        std::vector<Int> c;
        std::size_t deg = 1 + uniform_below(rng, 7);
        for (std::size_t i = 0; i <= deg; ++i) {
            long v = static_cast<long>(uniform_below(rng, 5));
            long unit = 1 + static_cast<long>(uniform_below(rng, 3));
            bool zero = uniform_below(rng, 4) == 0;
            c.push_back(zero ? Int(0) : Int(unit) * pow_int(Int(p), static_cast<unsigned long>(v)));
        }
        IntPoly q(std::move(c));
        if (q.is_zero()) continue;
        NewtonPolygon np = newton_polygon(q, p);
        long total = 0;
        for (std::size_t i = 0; i < np.segments.size(); ++i) {
            total += np.segments[i].second;
            if (i > 0) CHECK(np.segments[i - 1].first < np.segments[i].first);
        }
        CHECK(total == q.degree() - q.ord0());
    }
}

TEST_CASE("integer helpers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 7) == 0);
    CHECK(derangements(0) == 1);
    CHECK(derangements(1) == 0);
    CHECK(derangements(4) == 9);
    CHECK(is_square(Rat(34012224)));
    CHECK(is_square(Rat(4, 9)));
    CHECK_FALSE(is_square(Rat(-4)));
    CHECK_FALSE(is_square(Rat(2)));
    CHECK(is_prime(2));
    CHECK(is_prime(104729));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(104730));
    auto fs = factor(Int(60));
    REQUIRE(fs.size() == 3);
    CHECK(fs[0] == std::pair<long, int>{2, 2});
    CHECK(fs[1] == std::pair<long, int>{3, 1});
    CHECK(fs[2] == std::pair<long, int>{5, 1});
}

TEST_CASE("poly gcd and exact division") {
    IntPoly a(std::vector<Int>{Int(-1), Int(0), Int(1)});  // x^2 - 1
    IntPoly b(std::vector<Int>{Int(1), Int(1)});           // x + 1
    CHECK(poly_gcd(a, b) == b);
    CHECK(ring_exact_div(a, b) == IntPoly(std::vector<Int>{Int(-1), Int(1)}));
    IntPoly c(std::vector<Int>{Int(2), Int(1)});
    CHECK(poly_gcd(b * c, c) == c);
    CHECK(poly_gcd(b, c).degree() == 0);
    CHECK_THROWS_AS(ring_exact_div(b, c), consistency_error);
    // taylor shift and reciprocal
    IntPoly s(std::vector<Int>{Int(0), Int(0), Int(1)});  // x^2
    CHECK(s.taylor_shift(Int(1)) == IntPoly(std::vector<Int>{Int(1), Int(2), Int(1)}));
    CHECK(s.reciprocal(3) == IntPoly(std::vector<Int>{Int(0), Int(1)}));
}
