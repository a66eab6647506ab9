#include "brute.hpp"

#include "fgv/arith.hpp"
#include "fgv/conjecture.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fgv;

TEST_CASE("floor profile is (1/n, n)") {
    auto p = extract_IJ(make_theta("floor"), 1000);
    REQUIRE(p.depth() == 1000);
    for (std::size_t i = 0; i < 1000; ++i) {
        REQUIRE(p.x[i] == i + 1);
        REQUIRE(p.I[i] == 1.0 / static_cast<double>(i + 1));
        REQUIRE(p.J[i] == static_cast<double>(i + 1));
    }
    auto e1 = extract_IJ(make_theta("coeffs:unit"), 1000);
    CHECK(e1.I == p.I);
    CHECK(e1.J == p.J);
    CHECK_THROWS_AS(extract_IJ(make_theta("smooth:lambda=2"), 10), std::invalid_argument);
    CHECK_THROWS_AS(extract_IJ(make_theta("v23"), 10), std::invalid_argument);
}

TEST_CASE("profiles describe the diamond view") {
    for (const char* spec : {"floor", "pow2", "coeffs:chi4", "coeffs:alt", "coeffs:dh", "coeffs:tau"}) {
        auto th = make_theta(spec);
        auto p = extract_IJ(th, 200);
        CAPTURE(spec);
        REQUIRE(p.I[0] == 1.0);
        for (std::size_t i = 0; i + 1 < p.depth(); ++i) {
            REQUIRE(p.I[i + 1] < p.I[i]);
            for (double f : {0.25, 0.5, 0.9}) {
                const double t = p.I[i + 1] + f * (p.I[i] - p.I[i + 1]);
                REQUIRE(th.diamond(t) == doctest::Approx(p.J[i] * t).epsilon(1e-12));
            }
            // g really jumps at every recorded point.
            REQUIRE(p.J[i + 1] != p.J[i]);
        }
    }
}

TEST_CASE("floor passes every condition") {
    auto rep = check_compensation(extract_IJ(make_theta("floor"), 256));
    REQUIRE(rep.conditions.size() == 7);
    for (const auto& c : rep.conditions) {
        CAPTURE(c.index);
        CHECK(c.passes());
        CHECK_FALSE(c.evidence.empty());
        CHECK_FALSE(c.statement.empty());
    }
    CHECK(rep.all_pass());
    REQUIRE(rep.predicted_index.has_value());
    CHECK(*rep.predicted_index == 0.5);
    CHECK(rep.condition(3).limit);
    CHECK(rep.condition(7).limit);
    CHECK(rep.condition(7).verdict == Verdict::consistent);
    // Partial sums are harmonic numbers minus one.
    double h = 0;
    for (auto [k, s] : rep.partial_sums) {
        h = 0;
        for (std::size_t j = 2; j <= k; ++j) h += 1.0 / static_cast<double>(j);
        REQUIRE(s == doctest::Approx(h));
    }
}

TEST_CASE("alternating profile") {
    auto p = extract_IJ(make_theta("coeffs:alt"), 256);
    // g = floor(x) - floor(x/2) + floor(x/3) - ... takes the values 1, 1, 2, ... with J = 1, 3, 2, 4, ...
    CHECK(p.J[0] == 1);
    CHECK(p.J[1] == 3);
    CHECK(p.J[2] == 2);
    auto rep = check_compensation(p);
    CHECK_FALSE(rep.all_pass());
    CHECK(rep.condition(5).verdict == Verdict::violated);
    CHECK(rep.condition(5).witness.has_value());
    CHECK_FALSE(rep.predicted_index.has_value());
}

TEST_CASE("Davenport-Heilbronn profile") {
    auto th = make_theta("coeffs:dh");
    CHECK(th.diamond(0.5 * (1 - 1e-12)) == doctest::Approx((2 + dh_xi()) / 2.0).epsilon(1e-9));
    CHECK(th.diamond(0.5 * (1 - 1e-12)) == doctest::Approx(1.14204).epsilon(1e-5));
    auto rep = check_compensation(extract_IJ(th, 256));
    CHECK(rep.condition(4).verdict == Verdict::violated);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("violations persist as the prefix grows") {
    for (const char* spec : {"coeffs:alt", "coeffs:dh", "coeffs:chi4", "pow2", "floor"}) {
        auto th = make_theta(spec);
        auto small = check_compensation(extract_IJ(th, 32));
        auto big = check_compensation(extract_IJ(th, 512));
        CAPTURE(spec);
        for (int i = 1; i <= 7; ++i) {
            const auto& a = small.condition(i);
            if (a.limit || a.verdict != Verdict::violated) continue;
            REQUIRE(big.condition(i).verdict == Verdict::violated);
            REQUIRE(big.condition(i).witness == a.witness);
        }
    }
    CHECK_THROWS_AS(check_compensation(extract_IJ(make_theta("floor"), 15)), std::invalid_argument);
}

TEST_CASE("comparison of smooth kernels") {
    auto r = check_comparison_smooth(make_theta("smooth:lambda=2.2"), make_theta("smooth:lambda=2"), 1000);
    CHECK(r.ordered);
    CHECK(r.same_pattern);
    CHECK(r.pass);
    auto same = check_comparison_smooth(make_theta("smooth:lambda=2"), make_theta("smooth:lambda=2"), 1000);
    CHECK(same.pass);
    auto bad = check_comparison_smooth(make_theta("smooth:lambda=2"), make_theta("linear:r=1,s=1"), 1000);
    CHECK_FALSE(bad.pass);
    CHECK_FALSE(bad.same_pattern);
    CHECK(bad.first_failure.has_value());
    auto reversed = check_comparison_smooth(make_theta("smooth:lambda=2"), make_theta("smooth:lambda=2.2"), 1000);
    CHECK_FALSE(reversed.ordered);
    CHECK_THROWS_AS(check_comparison_smooth(make_theta("floor"), make_theta("smooth:lambda=2"), 100), std::invalid_argument);
}

TEST_CASE("section 7") {
    auto rep = check_section7(1000);
    CHECK(rep.sup_theta1 == 1);
    CHECK(rep.sup_theta2 == 1);
    CHECK(rep.inf_theta1 == brute::rat(1, 2));
    CHECK(rep.inf_theta2 == brute::rat(1, 2));
    CHECK(rep.area_theta1 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::abs(rep.area_theta2 - std::numbers::pi * std::numbers::pi / 12) <= 1e-6);
    CHECK(rep.max_jump <= 0);
    CHECK(rep.jumps_checked > 0);
    CHECK(rep.pass());
}

TEST_CASE("areas of the diamond view") {
    for (auto [r, s] : {std::pair{1, 2}, {1, 1}, {3, 4}}) {
        auto th = make_theta("linear:r=" + std::to_string(r) + "/" + std::to_string(s) + ",s=1");
        CHECK(area_vd(th) == doctest::Approx((1.0 + static_cast<double>(r) / s) / 2).epsilon(1e-14));
    }
    CHECK(area_vd(make_theta("linear:r=1/3,s=2")) == doctest::Approx((2 + 1.0 / 3) / 2).epsilon(1e-14));
    for (double lambda : {0.5, 2.0, 2.9}) {
        CHECK(area_vd(make_theta("smooth:lambda=" + std::to_string(lambda))) == doctest::Approx(1 - lambda / 6).epsilon(1e-14));
    }
    CHECK(std::abs(area_vd(make_theta("floor")) - std::numbers::pi * std::numbers::pi / 12) <= 1e-6);
}

TEST_CASE("areas against midpoint sums") {
    const int panels = 1000000;
    for (const char* spec : {"floor", "frac:r=0.8", "sqrtfloor", "pw32", "smooth:lambda=2", "linear:r=0.5,s=1", "v23",
                             "dirac:r=0.75", "pow2", "m:4", "coeffs:chi4", "coeffs:alt", "coeffs:dh"}) {
        auto th = make_theta(spec);
        double sum = 0;
        for (int i = 0; i < panels; ++i) sum += th.diamond((i + 0.5) / panels);
        CAPTURE(spec);
        CHECK(std::abs(area_vd(th) - sum / panels) <= 1e-6);
    }
    // tau coefficients are tabulated to 2^16, so the sum stops at t = 2^-16
    // and the rest is bounded by the kernel bound.
    auto th = make_theta("coeffs:tau");
    const double t0 = 1.0 / 65536;
    double sum = 0;
    for (int i = 0; i < panels; ++i) sum += th.diamond(t0 + (i + 0.5) * (1 - t0) / panels);
    sum *= (1 - t0) / panels;
    CHECK(std::abs(area_vd(th) - sum) <= th.bound() * t0 + 1e-6);
}

TEST_CASE("piece extrema") {
    auto pieces = *make_theta("smooth:lambda=2").finite_pieces();
    auto [lo, hi] = piece_extrema(pieces);
    CHECK(lo == brute::rat(1, 2));
    CHECK(hi == 1);
    auto [vlo, vhi] = piece_extrema(*make_theta("v23").finite_pieces());
    CHECK(vlo == brute::rat(1, 2));
    CHECK(vhi == 1);
}
