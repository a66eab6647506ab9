// Index estimation, slow-variation tests and type classification for
// partial-sum traces A(n).
#pragma once

#include "fgv/sequence.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fgv {

struct IndexEstimate {
    double alpha_hat = 0;
    // (j, log2(E_{j+1} / E_j)) for consecutive complete dyadic windows.
    std::vector<std::pair<std::size_t, double>> window_slopes;
    bool slowly_varying_flag = false;
    double log_coefficient = 0;  // fitted coefficient of log(j log 2)
    std::size_t windows_used = 0;
    std::string confidence_note;
};

/// Dyadic envelopes E_j = max |A(n)| over 2^j <= n < 2^(j+1); alpha_hat is
/// minus the least-squares slope of log E_j against j log 2 over the upper
/// half of the complete windows.
IndexEstimate estimate_index(const Sequence& A);

enum class FgvType { type1, type2, type3, inconclusive };
std::string_view type_name(FgvType type);

struct TypeReport {
    FgvType type = FgvType::inconclusive;
    double slope = 0;
    std::vector<std::pair<std::size_t, double>> envelope;  // (j, S_j)
};

/// S_j = max |A(n)| n^alpha per dyadic window; the sign of the slope of
/// log S_j (beyond the fixed threshold) decides the type.
TypeReport classify_type_report(const Sequence& A, double alpha);
FgvType classify_type(const Sequence& A, double alpha);

struct RatioRow {
    double n = 0;
    double ratio = 0;
};

struct SlowVariationReport {
    bool pass = false;
    // Per factor x in {2, 4}: ratio rows and the mean |ratio - 1| in the
    // first and last octave.
    struct Factor {
        double x = 0;
        std::vector<RatioRow> rows;
        double first_deviation = 0;
        double last_deviation = 0;
        bool pass = false;
    };
    std::vector<Factor> factors;
    std::string note;
};

/// Samples (n, L(n)) spanning at least three octaves. Throws
/// std::invalid_argument otherwise.
SlowVariationReport slow_variation_check(const std::vector<std::pair<double, double>>& samples);

struct AbcReport {
    std::vector<long> ms;
    std::size_t n = 0;
    std::size_t n0 = 0;
    // Conjecture C proxy: slope of A_2(n) sqrt n against log n on [n0, N].
    double c_slope = 0;
    bool c_positive = false;
    // Conjecture B: |A_2m(n)| <= A_2(n) on [n0, N], for each m >= 2 in ms.
    struct Domination {
        long m = 0;
        std::size_t violations = 0;
        std::optional<std::size_t> first_violation;
        bool holds() const { return violations == 0; }
    };
    std::vector<Domination> domination;
    // Overlay: rows of n and A_2m(n) sqrt n per m in ms.
    std::vector<std::size_t> overlay_n;
    std::vector<std::vector<double>> overlay;
    double elapsed = 0;
};

/// Solves theta_(2m) against 1/n for each m (plus m = 1 for the reference
/// trace) and compares the partial sums. An empty list gives an empty report.
AbcReport conjecture_ABC_scan(const std::vector<long>& ms, std::size_t n, unsigned threads = 1,
                              std::size_t overlay_rows = 512);

}  // namespace fgv
