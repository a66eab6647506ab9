#include "brute.hpp"

#include "fgv/arith.hpp"
#include "fgv/theta.hpp"

#include <doctest.h>

#include <cmath>

using namespace fgv;

namespace {

const char* const all_specs[] = {"floor",         "frac:r=0.8", "sqrtfloor", "pw32",   "smooth:lambda=2",
                                 "linear:r=0.5,s=1", "v23",        "dirac:r=0.75", "pow2", "m:4",
                                 "coeffs:chi4",   "coeffs:alt", "coeffs:dh",  "coeffs:unit", "coeffs:tau"};

}  // namespace

TEST_CASE("documented values") {
    // The minimum 1/2 is approached from the right of t = 1/2; the value at 1/2 itself is 1.
    CHECK(make_theta("floor").diamond(0.5 * (1 + 1e-12)) == doctest::Approx(0.5));
    CHECK(make_theta("floor").diamond(0.5) == 1.0);
    CHECK(make_theta("m:2").diamond(0.4) == doctest::Approx(0.9));
    CHECK(make_theta("frac:r=0.8")(2.5) == doctest::Approx(0.84));
    CHECK(make_theta("floor")(1.0) == 1.0);
    CHECK(make_theta("sqrtfloor")(2.5) == doctest::Approx(1 - 0.5 / (2.5 * std::sqrt(2.0))));
    CHECK(make_theta("sqrtfloor")(2.5) == doctest::Approx(0.858578).epsilon(1e-6));
    CHECK(make_theta("v23")(4.0) == 0.75);
    CHECK(make_theta("pow2")(5.0) == doctest::Approx(4.0 / 5.0));
    CHECK(make_theta("pw32")(3.5) == doctest::Approx(1 / 3.5 + 0.5));
}

TEST_CASE("dirac kernel takes r only at 2") {
    auto th = make_theta("dirac:r=0.75");
    CHECK(th.at_ratio(4, 2) == 0.75);
    CHECK(th.at_ratio(5, 2) == 1.0);
    CHECK(*th.exact_at_ratio(6, 3) == brute::rat(3, 4));
    CHECK(th(2.0) == 0.75);
    CHECK(th(2.0 + 1e-13) == 0.75);
    CHECK(th(2.1) == 1.0);
}

TEST_CASE("pw32 value at x = 3") {
    auto th = make_theta("pw32");
    CHECK(*th.exact_at_ratio(3, 1) == 1);
    CHECK(th.diamond(1.0 / 3.0) == doctest::Approx(1.0));
    CHECK(th.diamond(1.0 / 3.0 + 1e-9) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(th.diamond(1.0 / 3.0 - 1e-9) == doctest::Approx(5.0 / 6.0).epsilon(1e-6));
}

TEST_CASE("spec parsing") {
    CHECK(parse_theta_spec("frac:r=0.8").text == "frac:r=4/5");
    CHECK(parse_theta_spec("linear:r=0.5,s=1").text == "linear:r=1/2,s=1");
    CHECK(parse_theta_spec("m:4").m == 4);
    CHECK(parse_theta_spec("m:m=3").m == 3);
    CHECK(parse_theta_spec("coeffs:file=/tmp/z.csv").coeffs_path == "/tmp/z.csv");
    CHECK_THROWS_AS(parse_theta_spec("nonsense"), ThetaSpecError);
    CHECK_THROWS_AS(parse_theta_spec("frac"), ThetaSpecError);
    CHECK_THROWS_AS(parse_theta_spec("frac:r=abc"), ThetaSpecError);
    CHECK_THROWS_AS(parse_theta_spec("m:2.5"), ThetaSpecError);
    CHECK_THROWS_AS(parse_theta_spec("coeffs:zeta"), ThetaSpecError);
    CHECK_THROWS_AS(make_theta("frac:r=0"), ThetaSpecError);
    CHECK_THROWS_AS(make_theta("frac:r=1.5"), ThetaSpecError);
    CHECK_THROWS_AS(make_theta("dirac:r=1"), ThetaSpecError);
    CHECK_THROWS_AS(make_theta("m:1"), ThetaSpecError);
    CHECK_THROWS_AS(make_theta("linear:r=1,s=0"), ThetaSpecError);
    CHECK_THROWS_AS(make_theta("coeffs:ones"), ThetaSpecError);
}

TEST_CASE("domain") {
    auto th = make_theta("floor");
    CHECK_THROWS_AS(th(0.5), std::domain_error);
    CHECK_THROWS_AS(th.diamond(0.0), std::domain_error);
    CHECK_THROWS_AS(th.diamond(1.5), std::domain_error);
}

TEST_CASE("pivot equals the value at 1") {
    for (const char* spec : all_specs) {
        auto th = make_theta(spec, 4096);
        CHECK(th.pivot() == th(1.0));
        CHECK(th.pivot() != 0.0);
    }
    CHECK(make_theta("linear:r=0.3,s=2").pivot() == 2.0);
}

TEST_CASE("kernels stay within their bound") {
    brute::Gen gen(11);
    for (const char* spec : all_specs) {
        auto th = make_theta(spec);
        const double b = th.bound();
        CAPTURE(spec);
        for (int i = 0; i < 4000; ++i) {
            const double x = std::exp(gen.real(0, std::log(6e4)));
            REQUIRE(std::abs(th(x)) <= b + 1e-12);
        }
        for (std::uint64_t n = 1; n <= 3000; ++n) REQUIRE(std::abs(th(static_cast<double>(n))) <= b + 1e-12);
    }
}

TEST_CASE("floor kernel") {
    auto th = make_theta("floor");
    for (int n = 1; n <= 1000; ++n) CHECK(th(n) == 1.0);
    for (int i = 0; i <= 100000; ++i) REQUIRE(th(1 + i * 1e-3) >= 0.5);
}

TEST_CASE("theta_m agrees with floor below m and is linear above") {
    auto fl = make_theta("floor");
    for (long m : {2L, 3L, 5L}) {
        auto th = make_theta("m:" + std::to_string(m));
        for (int i = 0; i < 20000; ++i) {
            const double x = 1 + i * 1e-3;
            if (x < m) {
                REQUIRE(th(x) == fl(x));
            } else {
                REQUIRE(th(x) == doctest::Approx(1 / x + 1 - 1.0 / static_cast<double>(m)));
            }
        }
    }
}

TEST_CASE("coefficient kernel with the unit vector is floor") {
    auto fl = make_theta("floor");
    auto e1 = make_theta("coeffs:unit");
    for (int i = 0; i < 20000; ++i) {
        const double x = 1 + i * 0.37e-2;
        REQUIRE(e1(x) == fl(x));
    }
    for (std::uint64_t n = 1; n <= 200; ++n) {
        for (std::uint64_t k = 1; k <= n; ++k) REQUIRE(*e1.exact_at_ratio(n, k) == *fl.exact_at_ratio(n, k));
    }
}

TEST_CASE("floor sums against direct summation") {
    for (const char* name : {"chi4", "alt"}) {
        auto src = CoefficientSource::named(name, 600);
        auto z = src.materialize(600).exact_values();
        for (std::uint64_t u = 1; u <= 600; u += 13) CHECK(src.exact_floor_sum(u) == brute::floor_sum(z, u));
    }
    for (const char* name : {"dh", "tau"}) {
        auto src = CoefficientSource::named(name, 500);
        auto z = src.materialize(500).float_values();
        for (std::uint64_t u = 1; u <= 500; u += 7) CHECK(src.floor_sum(u) == doctest::Approx(brute::floor_sum(z, u)));
    }
    CHECK_THROWS_AS(CoefficientSource::named("tau", 100).value(101), std::out_of_range);
}

TEST_CASE("exact ratios agree with brute formulas") {
    using brute::rat;
    for (std::int64_t n = 1; n <= 60; ++n) {
        for (std::int64_t k = 1; k <= n; ++k) {
            const std::int64_t q = n / k;
            const Rational t = rat(k, n);
            CHECK(*make_theta("floor").exact_at_ratio(n, k) == rat(q * k, n));
            CHECK(*make_theta("frac:r=4/5").exact_at_ratio(n, k) == 1 - rat(4, 5) * rat(n - q * k, n));
            CHECK(*make_theta("v23").exact_at_ratio(n, k) == (2 * k <= n ? 1 - t : t));
            CHECK(*make_theta("smooth:lambda=2").exact_at_ratio(n, k) == 1 - 2 * t * (1 - t));
            std::int64_t p = 1;
            while (2 * p <= q) p *= 2;
            CHECK(*make_theta("pow2").exact_at_ratio(n, k) == rat(p * k, n));
            CHECK(*make_theta("m:3").exact_at_ratio(n, k) == (n < 3 * k ? rat(q * k, n) : t + rat(2, 3)));
        }
    }
}

TEST_CASE("sqrtfloor is exact only at square quotients") {
    auto th = make_theta("sqrtfloor");
    CHECK(th.exact_at_ratio(9, 2).has_value());   // q = 4
    CHECK_FALSE(th.exact_at_ratio(5, 2).has_value());  // q = 2, remainder 1
    CHECK(th.exact_at_ratio(6, 3).has_value());   // remainder 0
    CHECK(*th.exact_at_ratio(9, 2) == 1 - brute::rat(1, 18));
}

TEST_CASE("float and exact evaluation agree") {
    for (const char* spec : all_specs) {
        auto th = make_theta(spec, 4096);
        if (!th.supports_exact()) continue;
        CAPTURE(spec);
        for (std::uint64_t n = 1; n <= 80; ++n) {
            for (std::uint64_t k = 1; k <= n; ++k) {
                auto e = th.exact_at_ratio(n, k);
                if (e) REQUIRE(th.at_ratio(n, k) == doctest::Approx(e->get_d()).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("at_ratio matches real evaluation") {
    for (const char* spec : all_specs) {
        auto th = make_theta(spec, 4096);
        CAPTURE(spec);
        for (std::uint64_t n = 1; n <= 200; n += 3) {
            for (std::uint64_t k = 1; k <= n; k += 2) {
                const double x = static_cast<double>(n) / static_cast<double>(k);
                // Skip points within rounding of a jump.
                if (std::abs(x - std::round(x)) < 1e-12 && th.family() != ThetaFamily::smooth &&
                    th.family() != ThetaFamily::linear && th.family() != ThetaFamily::v23) {
                    if (std::round(x) * static_cast<double>(k) != static_cast<double>(n)) continue;
                }
                REQUIRE(th.at_ratio(n, k) == doctest::Approx(th(x)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("step jumps sum to g") {
    for (const char* spec : {"floor", "pow2", "coeffs:chi4", "coeffs:alt", "coeffs:dh", "coeffs:tau"}) {
        auto th = make_theta(spec, 1000);
        auto c = th.step_jumps(1000)->to_float();
        double g = 0;
        CAPTURE(spec);
        for (std::size_t x = 1; x <= 1000; ++x) {
            g += c.value(x);
            REQUIRE(g == doctest::Approx(static_cast<double>(x) * th(static_cast<double>(x))).epsilon(1e-9));
        }
    }
    CHECK_FALSE(make_theta("smooth:lambda=2").step_jumps(10).has_value());
}

TEST_CASE("finite pieces reproduce the diamond view") {
    brute::Gen gen(5);
    for (const char* spec : {"smooth:lambda=2", "linear:r=0.5,s=1", "v23", "pw32", "dirac:r=0.75", "m:2", "m:5"}) {
        auto th = make_theta(spec);
        auto pieces = *th.finite_pieces();
        CAPTURE(spec);
        // Pieces cover (0, 1] without overlap, checked on exact rationals.
        for (std::int64_t den = 1; den <= 60; ++den) {
            for (std::int64_t num = 1; num <= den; ++num) {
                Rational t = brute::rat(num, den);
                int hits = 0;
                for (const auto& p : pieces) {
                    if (!p.contains(t)) continue;
                    ++hits;
                    Rational v = 0;
                    for (auto it = p.exact_poly->rbegin(); it != p.exact_poly->rend(); ++it) v = v * t + *it;
                    REQUIRE(v == *th.exact(1 / t));
                }
                REQUIRE(hits == 1);
            }
        }
        for (int i = 0; i < 1000; ++i) {
            const double t = gen.real(1e-3, 1.0);
            for (const auto& p : pieces) {
                if (p.lo.get_d() < t && t < p.hi.get_d()) REQUIRE(p.eval(t) == doctest::Approx(th.diamond(t)));
            }
        }
    }
}

TEST_CASE("breakpoints") {
    auto near = [](const std::vector<double>& got, std::vector<double> want) {
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]));
    };
    near(breakpoints(make_theta("floor"), 0.2), {1.0 / 4, 1.0 / 3, 1.0 / 2});
    near(breakpoints(make_theta("pow2"), 0.1), {1.0 / 8, 1.0 / 4, 1.0 / 2});
    near(breakpoints(make_theta("coeffs:chi4"), 0.3), {1.0 / 3, 1.0 / 2});
    near(breakpoints(make_theta("v23"), 0.1), {0.5});
    near(breakpoints(make_theta("pw32"), 0.1), {1.0 / 3, 0.5});
    near(breakpoints(make_theta("m:4"), 0.1), {0.25, 1.0 / 3, 0.5});
    CHECK(breakpoints(make_theta("smooth:lambda=2"), 0.1).empty());
    CHECK_THROWS_AS(breakpoints(make_theta("floor"), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(breakpoints(make_theta("floor"), -1.0), std::invalid_argument);

    auto bp = breakpoints(make_theta("coeffs:chi4"), 0.01);
    CHECK(std::is_sorted(bp.begin(), bp.end()));
    CHECK(std::adjacent_find(bp.begin(), bp.end()) == bp.end());
}

TEST_CASE("vd samples straddle every breakpoint") {
    auto th = make_theta("floor");
    auto rows = vd_sample(th, 50, 0.1);
    CHECK(std::is_sorted(rows.begin(), rows.end()));
    CHECK(rows.front().first == doctest::Approx(0.1));
    CHECK(rows.back().first == 1.0);
    for (double b : breakpoints(th, 0.1)) {
        auto below = std::find_if(rows.begin(), rows.end(), [&](auto r) { return r.first >= b * (1 - 2e-9) && r.first < b; });
        auto above = std::find_if(rows.begin(), rows.end(), [&](auto r) { return r.first > b && r.first <= b * (1 + 2e-9); });
        REQUIRE(below != rows.end());
        REQUIRE(above != rows.end());
    }
    // Either side of 1/2: 2t ~ 1 below, t ~ 1/2 above.
    CHECK(th.diamond(0.5 * (1 - 1e-9)) == doctest::Approx(1.0));
    CHECK(th.diamond(0.5 * (1 + 1e-9)) == doctest::Approx(0.5));

    auto sm = vd_sample(make_theta("smooth:lambda=2"), 1001, 0.001);
    double lo = 2;
    for (auto [t, v] : sm) lo = std::min(lo, v);
    CHECK(lo == doctest::Approx(0.5).epsilon(1e-5));
    for (auto [t, v] : vd_sample(make_theta("linear:r=1,s=1"), 20, 0.05)) CHECK(v == 1.0);
}

TEST_CASE("coefficient kernels are linear through the origin between breakpoints") {
    for (const char* spec : {"coeffs:chi4", "coeffs:alt", "coeffs:dh"}) {
        auto th = make_theta(spec);
        auto bp = breakpoints(th, 0.02);
        bp.push_back(1.0);
        CAPTURE(spec);
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            const double a = bp[i], b = bp[i + 1];
            const double s1 = th.diamond(a + (b - a) * 0.25) / (a + (b - a) * 0.25);
            const double s2 = th.diamond(a + (b - a) * 0.75) / (a + (b - a) * 0.75);
            const double s3 = th.diamond(b) / b;
            REQUIRE(s1 == doctest::Approx(s2).epsilon(1e-12));
            REQUIRE(s1 == doctest::Approx(s3).epsilon(1e-12));
        }
    }
}
