// The kernel zoo: bounded functions theta on [1, inf) together with their
// diamond view theta_d(t) = theta(1/t) on (0, 1].
//
// Every family can be evaluated in double precision. Families whose values
// at rational points are rational also evaluate exactly, which the exact
// deconvolution mode relies on.
#pragma once

#include "fgv/rational.hpp"
#include "fgv/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fgv {

enum class ThetaFamily { floor, frac, sqrtfloor, pw32, smooth, linear, v23, dirac, pow2, theta_m, coeffs };

std::string_view family_name(ThetaFamily family);

class ThetaSpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coefficients z_k of a kernel g(x) = sum_k z_k floor(x/k).
class CoefficientSource {
public:
    enum class Extension {
        periodic,        // table holds one period
        finite_support,  // zero past the table
        truncated,       // undefined past the table; access throws
    };

    CoefficientSource(std::string name, Sequence table, Extension extension);

    /// chi4, alt, dh, unit, ones (periodic / finite) or tau (truncated at `extent`).
    static CoefficientSource named(std::string_view name, std::size_t extent);

    const std::string& name() const { return name_; }
    Extension extension() const { return extension_; }
    bool is_exact() const { return table_.is_exact(); }
    /// Largest k that can be addressed, or SIZE_MAX when unbounded.
    std::size_t extent() const;

    double value(std::size_t k) const;
    Rational exact_value(std::size_t k) const;
    /// Z(k) = z_1 + ... + z_k, with Z(0) = 0.
    double prefix(std::size_t k) const;
    Rational exact_prefix(std::size_t k) const;

    /// G(u) = sum_{j <= u} z_j floor(u / j), grouped over blocks of equal
    /// quotient: O(sqrt u) prefix lookups.
    double floor_sum(std::uint64_t u) const;
    Rational exact_floor_sum(std::uint64_t u) const;

    Sequence materialize(std::size_t n) const;

    /// Upper bound for |G(u) / u| over u >= 1; +inf when the kernel is unbounded.
    double kernel_bound() const;

private:
    template <typename T>
    T prefix_as(std::size_t k) const;
    template <typename T>
    T floor_sum_as(std::uint64_t u) const;

    std::string name_;
    Sequence table_;
    Extension extension_;
    std::vector<Rational> exact_prefix_;  // size table+1
    std::vector<double> float_prefix_;    // size table+1
};

/// A parsed kernel description such as "frac:r=0.8" or "coeffs:chi4".
struct ThetaSpec {
    ThetaFamily family = ThetaFamily::floor;
    Rational r = 0;
    Rational s = 0;
    Rational lambda = 0;
    long m = 0;
    std::string coeffs;       // chi4 | tau | alt | dh | unit | ones | file
    std::string coeffs_path;  // for coeffs:file=PATH
    std::string text;         // canonical spec string
};

ThetaSpec parse_theta_spec(std::string_view text);

/// One piece of the diamond view: on the interval between lo and hi,
/// theta_d(t) = sum_j poly[j] t^j.
struct VdPiece {
    Rational lo;
    Rational hi;
    bool lo_closed = false;
    bool hi_closed = true;
    std::vector<double> poly;
    std::optional<std::vector<Rational>> exact_poly;

    bool contains(const Rational& t) const;
    double eval(double t) const;
};

class ThetaFunction {
public:
    ThetaFamily family() const;
    /// Canonical spec string, e.g. "linear:r=1/2,s=1".
    const std::string& spec() const;
    const ThetaSpec& params() const;
    /// Present for coeffs kernels.
    const CoefficientSource* coefficients() const;

    /// theta(x); throws std::domain_error for x < 1.
    double operator()(double x) const;
    /// theta_d(t) = theta(1/t) for 0 < t <= 1.
    double diamond(double t) const;

    /// theta(n/k) for integers n >= k >= 1, with integer floors.
    double at_ratio(std::uint64_t n, std::uint64_t k) const;
    /// Exact theta(n/k), or nullopt when the value is irrational or the
    /// kernel is float-only.
    std::optional<Rational> exact_at_ratio(std::uint64_t n, std::uint64_t k) const;
    std::optional<Rational> exact(const Rational& x) const;

    /// True when every theta(n/k) is rational (subject to per-point checks
    /// for sqrtfloor).
    bool supports_exact() const;
    double pivot() const { return at_ratio(1, 1); }

    /// Documented sup |theta| over [1, inf).
    double bound() const;
    bool is_continuous() const;

    /// Step kernels (floor, pow2, coeffs): g(x) = x theta(x) = sum_{m <= x} c_m.
    /// Returns c_1..c_n, or nullopt for other families.
    std::optional<Sequence> step_jumps(std::size_t n) const;

    /// Families whose diamond view is a finite list of polynomial pieces
    /// covering (0, 1]: smooth, linear, v23, pw32, dirac, theta_m.
    std::optional<std::vector<VdPiece>> finite_pieces() const;

    /// Pieces of the diamond view from t = 1 downwards, at most `count` of
    /// them. Finite families return all their pieces. Available for every
    /// family except smooth kernels with non-polynomial structure (none at
    /// present).
    std::vector<VdPiece> leading_pieces(std::size_t count) const;

    struct Impl;

private:
    friend ThetaFunction make_theta(const ThetaSpec&, std::size_t);
    friend ThetaFunction make_coeffs_theta(CoefficientSource);
    explicit ThetaFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    std::shared_ptr<const Impl> impl_;
};

/// Builds a kernel. `extent` bounds the table of truncated coefficient
/// sources (tau) and of file-backed coefficients.
ThetaFunction make_theta(const ThetaSpec& spec, std::size_t extent = 1u << 16);
ThetaFunction make_theta(std::string_view spec, std::size_t extent = 1u << 16);
ThetaFunction make_coeffs_theta(CoefficientSource source);

/// Candidate breakpoints of theta_d in (t_min, 1), ascending. For coeffs
/// kernels these are 1/x for every multiple x of some k with z_k != 0, so
/// removable points (where g does not actually jump) are included.
std::vector<double> breakpoints(const ThetaFunction& theta, double t_min);

/// Samples (t, theta_d(t)) on [t_min, 1] plus a point on each side of every
/// breakpoint, sorted by t.
std::vector<std::pair<double, double>> vd_sample(const ThetaFunction& theta, std::size_t points, double t_min);

}  // namespace fgv
