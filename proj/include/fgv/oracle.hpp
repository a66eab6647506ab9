// Closed-form solutions for several kernels, used as ground truth for the
// deconvolution engine.
#pragma once

#include "fgv/deconv.hpp"
#include "fgv/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fgv {

// --- smooth kernel 1 - lambda t (1 - t) ------------------------------------

struct SmoothExponents {
    double re = 0;  // (lambda - 3) / 2
    double im = 0;  // sqrt(-(lambda^2 - 6 lambda + 1)) / 2
};

/// Throws std::domain_error unless 3 - 2 sqrt 2 < lambda < 3.
SmoothExponents smooth_exponents(double lambda);

/// c3 in F = ... + c3 y^-beta for y^2 F'' + (4 - lambda) y F' + 2 F = y^-beta,
/// i.e. 1 / (beta^2 + (lambda - 3) beta + 2); equals 1 / (beta^2 - beta + 2) at lambda = 2.
double smooth_particular_coefficient(double lambda, double beta);

/// c1 y^re cos(im log y) + c2 y^re sin(im log y) + c3 y^-beta.
double smooth_ode_solution(double lambda, double beta, double c1, double c2, double y);

/// Left side y^2 F'' + (4 - lambda) y F' + 2 F of a function, by central
/// differences with step 1e-4 y.
template <typename F>
double smooth_ode_operator(double lambda, F&& f, double y) {
    const double h = 1e-4 * y;
    const double fm = f(y - h), f0 = f(y), fp = f(y + h);
    const double d1 = (fp - fm) / (2 * h);
    const double d2 = (fp - 2 * f0 + fm) / (h * h);
    return y * y * d2 + (4 - lambda) * y * d1 + 2 * f0;
}

// --- linear kernel (s - r) t + r -------------------------------------------

/// a y^-beta / (r - beta s) + c y^(-r/s); throws std::domain_error when
/// r = beta s to within 1e-12 relative.
double linear_theta_generic_branch(double r, double s, double beta, double a, double c, double y);

/// y^(-r/s) (c + (a / s) log y), the resonant case beta = r / s.
double linear_theta_resonant_branch(double r, double s, double a, double c, double y);

/// Picks the branch from beta == r / s (same tolerance). Throws std::domain_error for s = 0.
double linear_theta_solution(double r, double s, double beta, double a, double c, double y);

/// n^-r / ((1 - r) Gamma(1 - r)) for 0 < r < 1.
double linear_theta_asymptotic(double r, double n);

// --- v23 kernel ------------------------------------------------------------

/// Which measure dF to use. `printed` is
///     F(y) = 1 - sum_{0 <= n <= log y / log 2} (-1)^n / (n+1)! (log(y / 2^n))^(n+1),
/// `shifted` moves every term from 2^n to 2^(n+1), which is what inverting
/// G_1(s) = 1 / (1 + e^(-s log 2) / s) term by term gives. Only the shifted
/// measure satisfies the integral equation.
enum class V23Measure { printed, shifted };
std::string_view v23_measure_name(V23Measure m);

double v23_F(double y, V23Measure measure = V23Measure::printed);

/// Density rho with dF = delta_1 - rho(t) dt / t on [1, inf).
double v23_density(double t, V23Measure measure = V23Measure::printed);

/// int_1^y theta(y/t) dF(t) - 1/y by adaptive Gauss-Kronrod quadrature,
/// split at y/2 and at the powers of two.
double v23_residual(double y, V23Measure measure = V23Measure::printed);

/// Root of s 2^s = 1.
double v23_root_s1();

// --- near-Dirac kernel -----------------------------------------------------

/// U(1) = U(2) = 1, U(n) = f(n) + (1 - r)(U(ceil(n/2)) - U(floor(n/2))).
double dirac_U(double r, const TargetSpec& f, std::uint64_t n);

/// U(1..n_max) by the same recursion, filled bottom-up.
std::vector<double> dirac_U_table(double r, const TargetSpec& f, std::size_t n_max);

// --- dyadic kernel ---------------------------------------------------------

struct Pow2Aprime {
    Sequence a;       // a'_1..a'_N, exact integers
    double constant;  // 1/2 - 2 lambda sqrt 2 with lambda = (1 + 1/sqrt 8) / 2
};

/// Builds a' from the closed-form rules: with n = 2^e s, s odd, a'_n = 0
/// unless s is a square; then e = 0 gives 1, odd e gives -(e+1)/2, e = 2
/// gives 0 and even e >= 4 gives -(e-2)/2.
Pow2Aprime pow2_aprime(std::size_t n);

}  // namespace fgv
