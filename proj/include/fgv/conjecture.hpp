// Mechanical checks of the compensation conditions on breakpoint/slope
// profiles, the smooth comparison hypotheses, and variational-diagram areas.
#pragma once

#include "fgv/theta.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fgv {

/// On (I_{n+1}, I_n], theta_d(t) = J_n t. I_n = 1/x_n where x_n are the
/// points at which g(x) = x theta(x) jumps; J_n is the value of g from x_n on.
struct IJProfile {
    std::vector<double> I;
    std::vector<double> J;
    std::vector<std::uint64_t> x;
    std::string source;
    std::size_t depth() const { return I.size(); }
};

/// Step kernels only (floor, pow2, coeffs); others throw std::invalid_argument.
IJProfile extract_IJ(const ThetaFunction& theta, std::size_t depth);

enum class Verdict {
    satisfied,     // finite condition holds on the whole prefix
    violated,      // finite condition fails; witness recorded
    consistent,    // limit condition: prefix trend agrees
    inconsistent,  // limit condition: prefix trend disagrees
};
std::string_view verdict_name(Verdict v);

struct ConditionResult {
    int index = 0;  // 1..7
    std::string statement;
    bool limit = false;
    Verdict verdict = Verdict::satisfied;
    std::optional<std::size_t> witness;  // first n where a finite condition fails
    std::string evidence;
    bool passes() const { return verdict == Verdict::satisfied || verdict == Verdict::consistent; }
};

struct ConditionReport {
    std::string source;
    std::size_t depth = 0;
    std::vector<ConditionResult> conditions;  // exactly seven
    // Divergence proxy data: (k, partial sum of (J_k - J_{k-1}) I_k).
    std::vector<std::pair<std::size_t, double>> partial_sums;
    double divergence_slope = 0;
    std::optional<double> predicted_index;  // I_2 when every condition passes
    bool all_pass() const;
    const ConditionResult& condition(int index) const { return conditions.at(static_cast<std::size_t>(index - 1)); }
};

/// Needs depth >= 16.
ConditionReport check_compensation(const IJProfile& profile);

struct ComparisonReport {
    bool ordered = false;       // theta1_d <= theta2_d on the grid
    bool same_pattern = false;  // monotonicity patterns agree
    bool pass = false;
    std::optional<double> first_failure;
    std::string reason;
};

/// Grid t_i = i / grid. Both kernels must be continuous families.
ComparisonReport check_comparison_smooth(const ThetaFunction& theta1, const ThetaFunction& theta2, std::size_t grid);

struct Section7Report {
    Rational sup_theta1, sup_theta2;
    Rational inf_theta1, inf_theta2;
    double area_theta1 = 0;
    double area_theta2 = 0;
    double zeta2_half = 0;
    double max_jump = 0;  // largest theta2_d(t+) - theta2_d(t-) over sampled t < 1/2
    std::size_t jumps_checked = 0;
    bool max_equal = false;
    bool min_equal = false;
    bool area1_ok = false;  // |area - 3/4| <= 1e-9
    bool area2_ok = false;  // |area - zeta(2)/2| <= 1e-6
    bool jumps_ok = false;
    bool pass() const { return max_equal && min_equal && area1_ok && area2_ok && jumps_ok; }
};

/// theta2 = floor and theta1_d(t) = theta2_d(t/2 + 1/2) = t/2 + 1/2.
Section7Report check_section7(std::size_t grid);

/// Exact infimum and supremum of theta_d over a list of pieces of degree <= 2.
std::pair<Rational, Rational> piece_extrema(const std::vector<VdPiece>& pieces);

/// Integral of theta_d over (0, 1].
double area_vd(const ThetaFunction& theta);

}  // namespace fgv
