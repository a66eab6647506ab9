// Small least-squares helpers for trend fits.
#pragma once

#include <cstddef>
#include <vector>

namespace fgv {

struct LineFit {
    double slope = 0;
    double intercept = 0;
};

/// Ordinary least squares y ~ intercept + slope x. Needs at least two
/// distinct x values.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Least squares y ~ b0 + sum_j b_j x_j; returns (b0, b1, ...).
std::vector<double> fit_linear_model(const std::vector<std::vector<double>>& regressors, const std::vector<double>& y);

}  // namespace fgv
