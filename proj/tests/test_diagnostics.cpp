#include "brute.hpp"

#include "fgv/deconv.hpp"
#include "fgv/diagnostics.hpp"
#include "fgv/thresholds.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace fgv;

namespace {

Sequence synthetic(std::size_t n, const std::function<double(double)>& f) {
    std::vector<double> v(n);
    for (std::size_t i = 1; i <= n; ++i) v[i - 1] = f(static_cast<double>(i));
    return Sequence(v, "synthetic");
}

}  // namespace

TEST_CASE("index of exact power laws") {
    auto est = estimate_index(synthetic(1 << 16, [](double n) { return std::pow(n, -0.5); }));
    CHECK(est.alpha_hat == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(est.alpha_hat - 0.5) <= 0.01);
    CHECK_FALSE(est.slowly_varying_flag);
    CHECK_FALSE(est.window_slopes.empty());
    CHECK(est.confidence_note.find("degenerate") == std::string::npos);
}

TEST_CASE("index with a logarithmic factor") {
    auto est = estimate_index(synthetic(1 << 22, [](double n) { return std::pow(n, -0.5) * std::log(n); }));
    CHECK(est.alpha_hat >= 0.4);
    CHECK(est.alpha_hat <= 0.5);
    CHECK(est.slowly_varying_flag);
}

TEST_CASE("index of the Mertens-type trace") {
    auto run = solve(make_theta("floor"), TargetSpec::recip(), 100000);
    auto est = estimate_index(run.A);
    CHECK(est.alpha_hat >= 0.3);
    CHECK(est.alpha_hat <= 0.7);
}

TEST_CASE("degenerate and short traces") {
    auto est = estimate_index(Sequence(std::vector<double>(2048, 0.0), "zero"));
    CHECK(est.confidence_note.find("degenerate") == 0);
    CHECK(std::isfinite(est.alpha_hat));
    CHECK_FALSE(est.window_slopes.empty());
    CHECK_THROWS_AS(estimate_index(Sequence(std::vector<double>(1000, 1.0), "short")), std::invalid_argument);
    CHECK_THROWS_AS(classify_type(Sequence(std::vector<double>(1000, 1.0), "short"), 0.5), std::invalid_argument);
}

TEST_CASE("index recovery on oscillating power laws") {
    brute::Gen gen(3);
    for (double alpha : {0.25, 0.5, 0.8}) {
        for (int rep = 0; rep < 3; ++rep) {
            const double c = gen.real(0.5, 3), eps = gen.real(0, 0.2), w = gen.real(0.5, 5);
            auto A = synthetic(1 << 18, [&](double n) { return std::pow(n, -alpha) * (c + eps * std::sin(w * std::log(n) + n)); });
            CAPTURE(alpha);
            REQUIRE(std::abs(estimate_index(A).alpha_hat - alpha) <= 0.02);
        }
    }
}

TEST_CASE("type examples") {
    auto pow2 = synthetic(1 << 16, [](double n) { return 1.0 / std::exp2(std::floor(std::log2(n))); });
    CHECK(classify_type(pow2, 1.0) == FgvType::type1);
    auto logged = synthetic(1 << 20, [](double n) { return std::pow(n, -0.5) * std::log(n); });
    CHECK(classify_type(logged, 0.5) == FgvType::type2);
    auto faster = synthetic(1 << 16, [](double n) { return std::pow(n, -0.6); });
    CHECK(classify_type(faster, 0.5) == FgvType::type3);
    auto rep = classify_type_report(faster, 0.5);
    CHECK(rep.slope == doctest::Approx(-0.1).epsilon(1e-3));
    CHECK(rep.envelope.size() == 16);
    CHECK(type_name(FgvType::type2) == "type2");
}

TEST_CASE("type classification on random generators") {
    brute::Gen gen(4);
    for (int rep = 0; rep < 30; ++rep) {
        const double alpha = gen.real(0.1, 1.0), amp = gen.real(0.1, 10), gamma = gen.real(0.15, 0.5);
        const int kind = static_cast<int>(gen.integer(1, 3));
        const double excess = kind == 1 ? 0.0 : kind == 2 ? gamma : -gamma;
        auto A = synthetic(1 << 16, [&](double n) {
            return amp * std::pow(n, -alpha + excess) * (1 + 0.3 * std::cos(n));
        });
        const FgvType want = kind == 1 ? FgvType::type1 : kind == 2 ? FgvType::type2 : FgvType::type3;
        CAPTURE(alpha);
        CAPTURE(kind);
        REQUIRE(classify_type(A, alpha) == want);
    }
}

TEST_CASE("diagnostics are deterministic") {
    auto A = synthetic(1 << 14, [](double n) { return std::sin(n) / std::sqrt(n); });
    auto e1 = estimate_index(A), e2 = estimate_index(A);
    CHECK(e1.alpha_hat == e2.alpha_hat);
    CHECK(e1.window_slopes == e2.window_slopes);
    CHECK(classify_type_report(A, 0.5).slope == classify_type_report(A, 0.5).slope);
}

TEST_CASE("slow variation") {
    // Use exact dyadic grid points so that ratios L(xn)/L(n) line up.
    auto dyadic = [](const std::function<double(double)>& f) {
        std::vector<std::pair<double, double>> out;
        for (int j = 4; j <= 16; ++j) {
            for (int s = 0; s < 8; ++s) {
                const double n = std::ldexp(8.0 + s, j - 3);
                out.emplace_back(n, f(n));
            }
        }
        return out;
    };
    auto r_log = slow_variation_check(dyadic([](double n) { return std::log(n); }));
    CHECK(r_log.pass);
    REQUIRE(r_log.factors.size() == 2);
    CHECK(r_log.factors[0].x == 2.0);
    CHECK(r_log.factors[0].last_deviation < r_log.factors[0].first_deviation);

    auto r_pow = slow_variation_check(dyadic([](double n) { return std::pow(n, 0.1); }));
    CHECK_FALSE(r_pow.pass);
    CHECK(r_pow.factors[0].rows.back().ratio == doctest::Approx(std::pow(2.0, 0.1)));

    auto r_const = slow_variation_check(dyadic([](double) { return 3.0; }));
    CHECK(r_const.pass);
    for (const auto& f : r_const.factors) {
        for (const auto& row : f.rows) REQUIRE(row.ratio == 1.0);
    }

    auto r_neg = slow_variation_check(dyadic([](double n) { return -std::log(n); }));
    CHECK(r_neg.pass);
    CHECK_FALSE(r_neg.note.empty());

    CHECK_THROWS_AS(slow_variation_check({{10, 1}, {20, 1}, {40, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(slow_variation_check({}), std::invalid_argument);
}

TEST_CASE("conjecture scan") {
    CHECK(conjecture_ABC_scan({}, 1 << 14).ms.empty());
    CHECK_THROWS_AS(conjecture_ABC_scan({1, 2}, 1000), std::invalid_argument);
    CHECK_THROWS_AS(conjecture_ABC_scan({0}, 1 << 14), std::invalid_argument);

    auto rep = conjecture_ABC_scan({1, 2, 3}, 1 << 14, 2, 64);
    CHECK(rep.n == (1u << 14));
    CHECK(rep.n0 == thresholds::abc_start);
    CHECK(rep.domination.size() == 2);
    CHECK(rep.overlay.size() == 3);
    CHECK(rep.overlay_n.size() <= 80);
    for (const auto& row : rep.overlay) CHECK(row.size() == rep.overlay_n.size());

    // The m = 1 overlay column is A_2(n) sqrt n from a direct solve.
    auto run = solve(make_theta("m:2"), TargetSpec::recip(), 1 << 14);
    for (std::size_t i = 0; i < rep.overlay_n.size(); ++i) {
        const std::size_t n = rep.overlay_n[i];
        REQUIRE(rep.overlay[0][i] == doctest::Approx(run.A.value(n) * std::sqrt(static_cast<double>(n))));
    }
    // Counting violations by hand gives the same numbers.
    for (const auto& d : rep.domination) {
        auto other = solve(make_theta("m:" + std::to_string(2 * d.m)), TargetSpec::recip(), 1 << 14);
        std::size_t count = 0;
        for (std::size_t n = rep.n0; n <= rep.n; ++n) {
            if (std::abs(other.A.value(n)) > run.A.value(n)) ++count;
        }
        CHECK(d.violations == count);
    }
    auto single = conjecture_ABC_scan({1, 2, 3}, 1 << 14, 1, 64);
    CHECK(single.c_slope == rep.c_slope);
}
