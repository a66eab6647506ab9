// Triangular deconvolution: given theta and a target f, find a with
//
//     f(n) = sum_{k <= n} a_k theta(n / k)          (normalized form)
//     f(n) = sum_{k <= n} a_k g(n / k), g = x theta (raw form)
//
// and evaluate such sums forward.
#pragma once

#include "fgv/sequence.hpp"
#include "fgv/theta.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fgv {

enum class Mode { exact, floating };
enum class KernelForm { normalized, raw };
enum class SolvePath { automatic, generic, fast };

std::string_view mode_name(Mode mode);
std::string_view kernel_form_name(KernelForm form);

/// Requested size exceeds the generic or exact-mode cap.
class CapExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Exact mode met a value it cannot represent (irrational kernel value,
/// float-only coefficients, non-integer power target).
class ExactnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TargetSpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct TargetSpec {
    enum class Kind { recip, power, floorsqrt_over_n, floorsqrt, constant, zero, file };

    Kind kind = Kind::recip;
    Rational beta = 0;
    Rational c = 0;
    std::string path;
    std::optional<Sequence> table;  // loaded file values
    std::string text;               // canonical spec

    static TargetSpec recip();
    static TargetSpec power(const Rational& beta);
    static TargetSpec floorsqrt_over_n();
    static TargetSpec floorsqrt();
    static TargetSpec constant(const Rational& c);
    static TargetSpec zero();
    static TargetSpec from_sequence(Sequence values);

    double value(std::size_t n) const;
    /// nullopt when f(n) is irrational (power with non-integer beta) or the
    /// file table is float.
    std::optional<Rational> exact_value(std::size_t n) const;
    /// Number of defined terms; SIZE_MAX for formula targets.
    std::size_t extent() const;
};

/// recip | power:beta=B | floorsqrt_over_n | floorsqrt | const:c=C | zero | file=PATH
TargetSpec parse_target_spec(std::string_view text);

struct SolveOptions {
    Mode mode = Mode::floating;
    KernelForm form = KernelForm::normalized;
    SolvePath path = SolvePath::automatic;
    std::size_t generic_cap = 20000;
    std::size_t exact_cap = 10000;
    bool enforce_caps = true;
};

struct DeconvRun {
    ThetaFunction theta;
    TargetSpec target;
    std::size_t n = 0;
    Sequence a;
    Sequence A;
    Mode mode = Mode::floating;
    KernelForm kernel_form = KernelForm::normalized;
    std::string path_used;  // "step", "pieces" or "generic"
    double elapsed = 0;     // seconds
};

/// a_n = (f(n) - sum_{k<n} a_k theta(n/k)) / theta(1), n = 1..N.
///
/// Step kernels (floor, pow2, coeffs) use an O(N log N) divisor recurrence,
/// kernels with finitely many polynomial pieces in t = k/n use prefix sums,
/// everything else the O(N^2) loop.
DeconvRun solve(const ThetaFunction& theta, const TargetSpec& target, std::size_t n, const SolveOptions& options = {});

/// f(n) = sum_{k<=n} a_k theta(n/k) (or g(n/k) in raw form). Exact when a is
/// exact and every kernel value needed is rational.
Sequence forward(const ThetaFunction& theta, const Sequence& a, std::size_t n, KernelForm form,
                 SolvePath path = SolvePath::automatic);

/// Rows (n, A(n) n^alpha), thinned to about `max_rows` by taking evenly
/// spaced indices inside each dyadic window [2^j, 2^(j+1)).
std::vector<std::pair<std::size_t, double>> scaled_trace(const DeconvRun& run, double alpha,
                                                         std::size_t max_rows = 4096);
std::vector<std::pair<std::size_t, double>> scaled_trace(const Sequence& A, double alpha,
                                                         std::size_t max_rows = 4096);

}  // namespace fgv
