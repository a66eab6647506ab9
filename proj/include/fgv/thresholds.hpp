// Fixed decision thresholds for trend-based verdicts. Reports echo these
// values so every scan can be reproduced exactly.
#pragma once

#include <cstddef>

namespace fgv::thresholds {

// Traces shorter than this are rejected by the index and type estimators.
inline constexpr std::size_t min_trace_length = std::size_t{1} << 10;

// |slope| of log S_j against j log 2 below which S_j counts as bounded.
inline constexpr double type_slope = 0.05;

// Coefficient of log(j log 2) in the envelope fit above which the envelope
// carries a slowly varying factor.
inline constexpr double slowly_varying_coefficient = 0.25;

// Slow variation: the last-octave deviation of L(xn)/L(n) from 1 must drop
// below this fraction of the first-octave deviation (or below the floor).
inline constexpr double slow_variation_shrink = 0.95;
inline constexpr double slow_variation_floor = 1e-9;
inline constexpr double slow_variation_min_octaves = 3.0;

// Start of the domination check in the theta_m scan.
inline constexpr std::size_t abc_start = std::size_t{1} << 10;

// Divergence proxy: slope of partial sums against log k must exceed this.
inline constexpr double divergence_slope = 0.05;

// I_n -> 0 proxy: the last I must be at most this fraction of the middle one.
inline constexpr double vanishing_ratio = 0.75;

// Absolute slack for the stabilization of I_n J_n.
inline constexpr double stabilization_abs = 1e-12;

// Guard band for J_2 I_2 <= J_1 I_1 with float coefficients.
inline constexpr double guard_band = 1e-9;

// Jumps of g smaller than this are treated as removable.
inline constexpr double jump_tolerance = 1e-12;

}  // namespace fgv::thresholds
