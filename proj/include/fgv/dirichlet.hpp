// Dirichlet convolution and inversion of coefficient sequences, and the
// identity linking x-weighted sums of g(u) = sum z_j floor(u/j) to floor
// sums of y = x * z.
#pragma once

#include "fgv/sequence.hpp"

#include <cstddef>
#include <optional>

namespace fgv {

/// y_n = sum_{d | n} x_d z_{n/d} for n <= N. Exact when both inputs are.
Sequence convolve(const Sequence& x, const Sequence& z, std::size_t n);

/// The Dirichlet inverse of c up to N. Throws std::invalid_argument when c_1 = 0.
Sequence invert(const Sequence& c, std::size_t n);

struct Lemma1Result {
    bool holds = false;
    bool exact = false;
    std::size_t t = 0;
    // Filled in exact mode.
    Rational lhs;
    Rational rhs;
    // Always filled.
    double lhs_value = 0;
    double rhs_value = 0;
};

/// Compares sum_k x_k g(t/k) with sum_k y_k floor(t/k), y = x * z.
/// Exact comparison when x and z are exact, relative 1e-9 otherwise.
Lemma1Result lemma1_check(const Sequence& x, const Sequence& z, std::size_t t);

/// Runs the comparison for every t in 1..t_max, sharing the tables. Returns
/// the first failure, or the result at t_max when all pass.
Lemma1Result lemma1_check_all(const Sequence& x, const Sequence& z, std::size_t t_max);

}  // namespace fgv
