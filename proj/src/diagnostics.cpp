#include "fgv/diagnostics.hpp"

#include "fgv/deconv.hpp"
#include "fgv/numerics.hpp"
#include "fgv/thresholds.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <stdexcept>

namespace fgv {

namespace {

constexpr double ln2 = std::numbers::ln2;

// (j, max |A(n)| n^alpha) over complete windows [2^j, 2^(j+1)).
std::vector<std::pair<std::size_t, double>> dyadic_envelope(const Sequence& A, double alpha) {
    std::vector<std::pair<std::size_t, double>> env;
    const std::size_t n = A.size();
    for (std::size_t j = 0; (std::size_t{2} << j) - 1 <= n; ++j) {
        const std::size_t lo = std::size_t{1} << j;
        double m = 0.0;
        for (std::size_t i = lo; i < 2 * lo; ++i) {
            double v = std::abs(A.value(i));
            if (alpha != 0.0) v *= std::pow(static_cast<double>(i), alpha);
            m = std::max(m, v);
        }
        env.emplace_back(j, m);
    }
    return env;
}

void require_length(const Sequence& A, const char* what) {
    if (A.size() < thresholds::min_trace_length) {
        throw std::invalid_argument(std::string(what) + ": trace needs at least " +
                                    std::to_string(thresholds::min_trace_length) + " terms");
    }
}

// Upper half of the windows with a positive envelope, as (j log 2, log E_j).
std::pair<std::vector<double>, std::vector<double>> upper_half_logs(
    const std::vector<std::pair<std::size_t, double>>& env) {
    const std::size_t start = env.size() / 2;
    std::vector<double> x, y;
    for (std::size_t i = start; i < env.size(); ++i) {
        if (env[i].second <= 0.0) continue;
        x.push_back(static_cast<double>(env[i].first) * ln2);
        y.push_back(std::log(env[i].second));
    }
    return {x, y};
}

}  // namespace

IndexEstimate estimate_index(const Sequence& A) {
    require_length(A, "estimate_index");
    IndexEstimate est;
    const auto env = dyadic_envelope(A, 0.0);
    for (std::size_t i = 0; i + 1 < env.size(); ++i) {
        if (env[i].second > 0.0 && env[i + 1].second > 0.0) {
            est.window_slopes.emplace_back(env[i].first, std::log2(env[i + 1].second / env[i].second));
        }
    }
    auto [x, y] = upper_half_logs(env);
    est.windows_used = x.size();
    if (x.size() < 2) {
        est.confidence_note = "degenerate: fewer than two nonzero envelope windows";
        if (est.window_slopes.empty()) est.window_slopes.emplace_back(0, 0.0);
        return est;
    }
    est.alpha_hat = -fit_line(x, y).slope;
    std::string note = "fit over " + std::to_string(x.size()) + " upper dyadic windows";
    if (x.size() >= 3) {
        std::vector<double> logx(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) logx[i] = std::log(x[i]);
        est.log_coefficient = fit_linear_model({x, logx}, y)[2];
        est.slowly_varying_flag = std::abs(est.log_coefficient) >= thresholds::slowly_varying_coefficient;
        if (est.slowly_varying_flag) note += "; envelope carries a slowly varying factor";
    } else {
        note += "; too few windows to test for a slowly varying factor";
    }
    est.confidence_note = std::move(note);
    return est;
}

std::string_view type_name(FgvType type) {
    switch (type) {
        case FgvType::type1: return "type1";
        case FgvType::type2: return "type2";
        case FgvType::type3: return "type3";
        case FgvType::inconclusive: return "inconclusive";
    }
    return "?";
}

TypeReport classify_type_report(const Sequence& A, double alpha) {
    require_length(A, "classify_type");
    TypeReport rep;
    rep.envelope = dyadic_envelope(A, alpha);
    auto [x, y] = upper_half_logs(rep.envelope);
    if (x.size() < 2) return rep;
    rep.slope = fit_line(x, y).slope;
    if (rep.slope > thresholds::type_slope) {
        rep.type = FgvType::type2;
    } else if (rep.slope < -thresholds::type_slope) {
        rep.type = FgvType::type3;
    } else {
        rep.type = FgvType::type1;
    }
    return rep;
}

FgvType classify_type(const Sequence& A, double alpha) { return classify_type_report(A, alpha).type; }

SlowVariationReport slow_variation_check(const std::vector<std::pair<double, double>>& samples) {
    if (samples.empty()) throw std::invalid_argument("slow_variation_check: no samples");
    std::map<double, double> table;
    bool sign_change = false;
    for (auto [n, l] : samples) {
        if (!(n > 0)) throw std::invalid_argument("slow_variation_check: sample points must be positive");
        if (l <= 0) sign_change = true;
        table[n] = std::abs(l);
    }
    const double n_min = table.begin()->first;
    const double n_max = table.rbegin()->first;
    if (std::log2(n_max / n_min) < thresholds::slow_variation_min_octaves) {
        throw std::invalid_argument("slow_variation_check: samples must span at least 3 octaves");
    }

    SlowVariationReport rep;
    rep.pass = true;
    for (double x : {2.0, 4.0}) {
        SlowVariationReport::Factor f;
        f.x = x;
        for (auto [n, l] : table) {
            auto it = table.find(n * x);
            if (it == table.end() || l == 0.0) continue;
            f.rows.push_back({n, it->second / l});
        }
        if (f.rows.size() < 2) {
            f.pass = false;
            rep.pass = false;
            continue;
        }
        // Mean |ratio - 1| over the first and the last octave of rows.
        const double first_n = f.rows.front().n;
        const double last_n = f.rows.back().n;
        double s_first = 0, s_last = 0;
        std::size_t c_first = 0, c_last = 0;
        for (const auto& row : f.rows) {
            const double dev = std::abs(row.ratio - 1.0);
            if (row.n < 2 * first_n) {
                s_first += dev;
                ++c_first;
            }
            if (row.n > last_n / 2) {
                s_last += dev;
                ++c_last;
            }
        }
        f.first_deviation = s_first / static_cast<double>(c_first);
        f.last_deviation = s_last / static_cast<double>(c_last);
        f.pass = f.last_deviation <= thresholds::slow_variation_floor ||
                 f.last_deviation < thresholds::slow_variation_shrink * f.first_deviation;
        rep.pass = rep.pass && f.pass;
        rep.factors.push_back(std::move(f));
    }
    rep.note = "pass when the last-octave deviation of L(xn)/L(n) from 1 is below " +
               std::to_string(thresholds::slow_variation_shrink) + " x the first-octave deviation";
    if (sign_change) rep.note += "; nonpositive L values replaced by |L|";
    return rep;
}

AbcReport conjecture_ABC_scan(const std::vector<long>& ms, std::size_t n, unsigned threads, std::size_t overlay_rows) {
    AbcReport rep;
    rep.ms = ms;
    rep.n = n;
    rep.n0 = thresholds::abc_start;
    if (ms.empty()) return rep;
    if (n < (std::size_t{1} << 14)) throw std::invalid_argument("conjecture_ABC_scan: N must be at least 2^14");
    for (long m : ms) {
        if (m < 1) throw std::invalid_argument("conjecture_ABC_scan: every m must be >= 1");
    }
    const auto start = std::chrono::steady_clock::now();

    std::vector<long> runs{1};
    for (long m : ms) {
        if (std::find(runs.begin(), runs.end(), m) == runs.end()) runs.push_back(m);
    }
    auto run_one = [n](long m) {
        auto theta = make_theta("m:" + std::to_string(2 * m));
        return solve(theta, TargetSpec::recip(), n).A.float_values();
    };
    std::map<long, std::vector<double>> traces;
    threads = std::max(1u, threads);
    for (std::size_t i = 0; i < runs.size(); i += threads) {
        std::vector<std::pair<long, std::future<std::vector<double>>>> batch;
        for (std::size_t j = i; j < std::min(runs.size(), i + threads); ++j) {
            batch.emplace_back(runs[j], std::async(std::launch::async, run_one, runs[j]));
        }
        for (auto& [m, fut] : batch) traces[m] = fut.get();
    }

    const auto& a2 = traces.at(1);
    std::vector<double> logn, scaled;
    for (std::size_t k = rep.n0; k <= n; ++k) {
        logn.push_back(std::log(static_cast<double>(k)));
        scaled.push_back(a2[k - 1] * std::sqrt(static_cast<double>(k)));
    }
    rep.c_slope = fit_line(logn, scaled).slope;
    rep.c_positive = rep.c_slope > 0;

    for (long m : ms) {
        if (m == 1) continue;
        AbcReport::Domination d;
        d.m = m;
        const auto& am = traces.at(m);
        for (std::size_t k = rep.n0; k <= n; ++k) {
            if (std::abs(am[k - 1]) > a2[k - 1]) {
                if (!d.first_violation) d.first_violation = k;
                ++d.violations;
            }
        }
        rep.domination.push_back(d);
    }

    Sequence a2_seq(std::vector<double>(a2), "A2");
    for (const auto& [k, v] : scaled_trace(a2_seq, 0.5, overlay_rows)) rep.overlay_n.push_back(k);
    for (long m : ms) {
        const auto& am = traces.at(m);
        std::vector<double> col;
        col.reserve(rep.overlay_n.size());
        for (std::size_t k : rep.overlay_n) col.push_back(am[k - 1] * std::sqrt(static_cast<double>(k)));
        rep.overlay.push_back(std::move(col));
    }
    rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace fgv
