#include "fgv/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace fgv {

SmoothExponents smooth_exponents(double lambda) {
    const double disc = lambda * lambda - 6 * lambda + 1;
    if (!(disc < 0 && lambda < 3)) {
        throw std::domain_error("smooth kernel: lambda must satisfy 3 - 2 sqrt 2 < lambda < 3");
    }
    return {(lambda - 3) / 2, std::sqrt(-disc) / 2};
}

double smooth_particular_coefficient(double lambda, double beta) {
    const double denom = beta * beta + (lambda - 3) * beta + 2;
    if (denom == 0) throw std::domain_error("smooth kernel: beta is a root of the indicial polynomial");
    return 1.0 / denom;
}

double smooth_ode_solution(double lambda, double beta, double c1, double c2, double y) {
    if (!(y >= 1)) throw std::domain_error("smooth_ode_solution: y must be >= 1");
    const auto e = smooth_exponents(lambda);
    const double amp = std::pow(y, e.re);
    const double phase = e.im * std::log(y);
    return c1 * amp * std::cos(phase) + c2 * amp * std::sin(phase) +
           smooth_particular_coefficient(lambda, beta) * std::pow(y, -beta);
}

namespace {

// beta = r / s up to rounding.
bool resonant(double r, double s, double beta) {
    return std::abs(r - beta * s) <= 1e-12 * std::max(std::abs(r), std::abs(beta * s));
}

}  // namespace

double linear_theta_generic_branch(double r, double s, double beta, double a, double c, double y) {
    if (s == 0) throw std::domain_error("linear kernel: s must be nonzero");
    const double denom = r - beta * s;
    if (resonant(r, s, beta)) throw std::domain_error("linear kernel: beta = r/s needs the resonant branch");
    return a * std::pow(y, -beta) / denom + c * std::pow(y, -r / s);
}

double linear_theta_resonant_branch(double r, double s, double a, double c, double y) {
    if (s == 0) throw std::domain_error("linear kernel: s must be nonzero");
    return std::pow(y, -r / s) * (c + a / s * std::log(y));
}

double linear_theta_solution(double r, double s, double beta, double a, double c, double y) {
    if (s == 0) throw std::domain_error("linear kernel: s must be nonzero");
    if (resonant(r, s, beta)) return linear_theta_resonant_branch(r, s, a, c, y);
    return linear_theta_generic_branch(r, s, beta, a, c, y);
}

double linear_theta_asymptotic(double r, double n) {
    if (!(r > 0 && r < 1)) throw std::domain_error("linear_theta_asymptotic: r must lie in (0, 1)");
    return std::pow(n, -r) / ((1 - r) * std::tgamma(1 - r));
}

std::string_view v23_measure_name(V23Measure m) { return m == V23Measure::printed ? "printed" : "shifted"; }

namespace {

// Both measures share one series; the shifted one starts every term a
// factor 2 later.
double v23_F_series(double y, double shift) {
    double total = 1.0;
    double factorial = 1.0;  // (n+1)!
    for (int n = 0; shift * std::ldexp(1.0, n) <= y; ++n) {
        factorial *= n + 1;
        const double l = std::log(y / (shift * std::ldexp(1.0, n)));
        const double term = std::pow(l, n + 1) / factorial;
        total -= (n % 2 == 0) ? term : -term;
    }
    return total;
}

double v23_density_series(double t, double shift) {
    double total = 0.0;
    double factorial = 1.0;  // n!
    for (int n = 0; shift * std::ldexp(1.0, n) <= t; ++n) {
        if (n > 0) factorial *= n;
        const double term = std::pow(std::log(t / (shift * std::ldexp(1.0, n))), n) / factorial;
        total += (n % 2 == 0) ? term : -term;
    }
    return total;
}

double shift_of(V23Measure m) { return m == V23Measure::printed ? 1.0 : 2.0; }

}  // namespace

double v23_F(double y, V23Measure measure) {
    if (!(y >= 1)) throw std::domain_error("v23_F: y must be >= 1");
    return v23_F_series(y, shift_of(measure));
}

double v23_density(double t, V23Measure measure) {
    if (t < 1) return 0.0;
    return v23_density_series(t, shift_of(measure));
}

double v23_residual(double y, V23Measure measure) {
    if (!(y >= 1)) throw std::domain_error("v23_residual: y must be >= 1");
    auto theta = [](double x) { return x >= 2 ? 1 - 1 / x : 1 / x; };
    auto integrand = [&](double t) { return theta(y / t) * v23_density(t, measure) / t; };

    std::vector<double> cuts{1.0, y};
    if (y / 2 > 1) cuts.push_back(y / 2);
    for (double p = 2; p < y; p *= 2) cuts.push_back(p);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double err = 0;
        integral += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, cuts[i], cuts[i + 1], 15,
                                                                                 1e-13, &err);
    }
    // The point mass at t = 1 contributes theta(y).
    return theta(y) - integral - 1 / y;
}

double v23_root_s1() {
    auto f = [](double s) { return s * std::exp2(s) - 1; };
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t iters = 100;
    auto [lo, hi] = boost::math::tools::toms748_solve(f, 0.5, 0.7, tol, iters);
    return (lo + hi) / 2;
}

double dirac_U(double r, const TargetSpec& f, std::uint64_t n) {
    if (n == 0) throw std::domain_error("dirac_U: n must be >= 1");
    std::unordered_map<std::uint64_t, double> memo{{1, 1.0}, {2, 1.0}};
    auto rec = [&](auto&& self, std::uint64_t m) -> double {
        if (auto it = memo.find(m); it != memo.end()) return it->second;
        const double v = f.value(m) + (1 - r) * (self(self, (m + 1) / 2) - self(self, m / 2));
        memo.emplace(m, v);
        return v;
    };
    return rec(rec, n);
}

std::vector<double> dirac_U_table(double r, const TargetSpec& f, std::size_t n_max) {
    std::vector<double> u(n_max + 1, 0.0);
    for (std::size_t m = 1; m <= n_max; ++m) {
        u[m] = m <= 2 ? 1.0 : f.value(m) + (1 - r) * (u[(m + 1) / 2] - u[m / 2]);
    }
    return u;
}

Pow2Aprime pow2_aprime(std::size_t n) {
    if (n == 0) throw std::invalid_argument("pow2_aprime: N must be at least 1");
    std::vector<Rational> a(n, Rational(0));
    for (std::size_t k = 1; k <= n; ++k) {
        const int e = std::countr_zero(k);
        const std::size_t odd = k >> e;
        const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(odd))));
        if (root * root != odd) continue;
        long v = 0;
        if (e == 0) {
            v = 1;
        } else if (e % 2 == 1) {
            v = -(e + 1) / 2;
        } else if (e >= 4) {
            v = -(e - 2) / 2;
        }
        a[k - 1] = v;
    }
    const double lambda = 0.5 * (1 + 1 / std::sqrt(8.0));
    return {Sequence(std::move(a), "aprime"), 0.5 - 2 * lambda * std::numbers::sqrt2};
}

}  // namespace fgv
