#include "brute.hpp"

#include "fgv/arith.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace fgv;

TEST_CASE("mobius values") {
    auto mu = mobius_sieve(100);
    CHECK(mu.exact(1) == 1);
    CHECK(mu.exact(6) == 1);
    CHECK(mu.exact(12) == 0);
    CHECK(mu.exact(30) == -1);
    for (std::size_t n = 1; n <= 100; ++n) CHECK(mu.exact(n) == brute::mobius(n));
}

TEST_CASE("liouville values") {
    auto l = liouville_sieve(10000);
    CHECK(l.exact(1) == 1);
    CHECK(l.exact(12) == -1);
    CHECK(l.exact(16) == 1);
    for (std::size_t n = 1; n <= 10000; n += 7) CHECK(l.exact(n) == brute::liouville(n));
}

TEST_CASE("mobius sums over divisors vanish") {
    const std::size_t N = 2000;
    auto mu = mobius_sieve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        Rational s = 0;
        for (std::size_t d = 1; d <= n; ++d) {
            if (n % d == 0) s += mu.exact(d);
        }
        CHECK(s == (n == 1 ? 1 : 0));
        CHECK(mu.exact(n) * mu.exact(n) <= 1);
    }
}

TEST_CASE("liouville through square divisors") {
    const std::size_t N = 10000;
    auto mu = mobius_sieve(N);
    auto l = liouville_sieve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        Rational s = 0;
        for (std::size_t d = 1; d * d <= n; ++d) {
            if (n % (d * d) == 0) s += mu.exact(n / (d * d));
        }
        REQUIRE(s == l.exact(n));
        REQUIRE(l.exact(n) * l.exact(n) == 1);
    }
}

TEST_CASE("summatory") {
    auto M = summatory(mobius_sieve(10));
    CHECK(M.exact(1) == 1);
    CHECK(M.exact(5) == -2);
    CHECK(summatory(liouville_sieve(10)).exact(10) == 0);
    CHECK(summatory(alternating_unit(7)).exact(7) == 1);
    auto f = summatory(dh_sequence(5));
    CHECK_FALSE(f.is_exact());
    CHECK(f.value(5) == doctest::Approx(0.0));
}

TEST_CASE("tau matches the expanded product") {
    auto t = ramanujan_tau(120);
    auto ref = brute::tau(120);
    CHECK(t.exact(1) == 1);
    CHECK(t.exact(2) == -24);
    CHECK(t.exact(3) == 252);
    CHECK(t.exact(6) == -6048);
    for (std::size_t n = 1; n <= 120; ++n) CHECK(t.exact(n) == ref[n - 1]);
}

TEST_CASE("tau is multiplicative on coprime pairs") {
    const std::size_t N = 1000;
    auto t = ramanujan_tau(N);
    for (std::size_t a = 2; a <= N; ++a) {
        for (std::size_t b = a + 1; a * b <= N; ++b) {
            if (std::gcd(a, b) == 1) REQUIRE(t.exact(a * b) == t.exact(a) * t.exact(b));
        }
    }
    // Hecke relation at p = 2: tau(4) = tau(2)^2 - 2^11.
    CHECK(t.exact(4) == t.exact(2) * t.exact(2) - 2048);
}

TEST_CASE("periodic coefficient sequences") {
    auto c = chi4(40);
    CHECK(c.exact(1) == 1);
    CHECK(c.exact(4) == 0);
    CHECK(c.exact(7) == -1);
    for (std::size_t n = 1; n + 4 <= 40; ++n) CHECK(c.exact(n) == c.exact(n + 4));

    auto h = dh_sequence(50);
    CHECK(h.value(1) == 1.0);
    CHECK(h.value(2) == doctest::Approx(0.2840790).epsilon(1e-7));
    CHECK(h.value(3) == -h.value(2));
    CHECK(h.value(5) == 0.0);
    for (std::size_t n = 1; n + 5 <= 50; ++n) CHECK(h.value(n) == h.value(n + 5));

    auto a = alternating_unit(4);
    CHECK(a.exact(1) == 1);
    CHECK(a.exact(2) == -1);
}

TEST_CASE("xi solves its defining expression") {
    const long double xi = dh_xi();
    const long double s5 = std::sqrt(5.0L);
    CHECK(std::abs(xi * (-1 + s5) - (-2 + std::sqrt(10 - 2 * s5))) < 1e-15L);
}

TEST_CASE("zero length is rejected") {
    CHECK_THROWS_AS(mobius_sieve(0), std::invalid_argument);
    CHECK_THROWS_AS(ramanujan_tau(0), std::invalid_argument);
}
