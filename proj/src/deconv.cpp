#include "fgv/deconv.hpp"

#include "fgv/arith.hpp"
#include "fgv/io.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace fgv {

std::string_view mode_name(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

std::string_view kernel_form_name(KernelForm form) { return form == KernelForm::raw ? "raw" : "normalized"; }

// ---------------------------------------------------------------------------
// Targets
// ---------------------------------------------------------------------------

namespace {

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

Rational rat(std::uint64_t v) { return Rational(BigInt(static_cast<unsigned long>(v))); }

}  // namespace

TargetSpec TargetSpec::recip() {
    TargetSpec t;
    t.kind = Kind::recip;
    t.text = "recip";
    return t;
}

TargetSpec TargetSpec::power(const Rational& beta) {
    TargetSpec t;
    t.kind = Kind::power;
    t.beta = beta;
    t.text = "power:beta=" + to_string(beta);
    return t;
}

TargetSpec TargetSpec::floorsqrt_over_n() {
    TargetSpec t;
    t.kind = Kind::floorsqrt_over_n;
    t.text = "floorsqrt_over_n";
    return t;
}

TargetSpec TargetSpec::floorsqrt() {
    TargetSpec t;
    t.kind = Kind::floorsqrt;
    t.text = "floorsqrt";
    return t;
}

TargetSpec TargetSpec::constant(const Rational& c) {
    TargetSpec t;
    t.kind = Kind::constant;
    t.c = c;
    t.text = "const:c=" + to_string(c);
    return t;
}

TargetSpec TargetSpec::zero() {
    TargetSpec t;
    t.kind = Kind::zero;
    t.text = "zero";
    return t;
}

TargetSpec TargetSpec::from_sequence(Sequence values) {
    TargetSpec t;
    t.kind = Kind::file;
    t.text = "table:" + values.label();
    t.table = std::move(values);
    return t;
}

double TargetSpec::value(std::size_t n) const {
    if (n == 0) throw std::out_of_range("targets are indexed from 1");
    const double x = static_cast<double>(n);
    switch (kind) {
        case Kind::recip: return 1.0 / x;
        case Kind::power: return std::pow(x, -to_double(beta));
        case Kind::floorsqrt_over_n: return static_cast<double>(isqrt(n)) / x;
        case Kind::floorsqrt: return static_cast<double>(isqrt(n));
        case Kind::constant: return to_double(c);
        case Kind::zero: return 0.0;
        case Kind::file: return table->value(n);
    }
    return 0.0;
}

std::optional<Rational> TargetSpec::exact_value(std::size_t n) const {
    if (n == 0) throw std::out_of_range("targets are indexed from 1");
    switch (kind) {
        case Kind::recip: return Rational(1) / rat(n);
        case Kind::power:
            if (beta.get_den() != 1 || !beta.get_num().fits_slong_p()) return std::nullopt;
            return pow_int(rat(n), -beta.get_num().get_si());
        case Kind::floorsqrt_over_n: return rat(isqrt(n)) / rat(n);
        case Kind::floorsqrt: return rat(isqrt(n));
        case Kind::constant: return c;
        case Kind::zero: return Rational(0);
        case Kind::file:
            if (!table->is_exact()) return std::nullopt;
            return table->exact(n);
    }
    return std::nullopt;
}

std::size_t TargetSpec::extent() const {
    return kind == Kind::file ? table->size() : std::numeric_limits<std::size_t>::max();
}

TargetSpec parse_target_spec(std::string_view text) {
    auto number_after = [&](std::string_view prefix) {
        auto v = parse_rational(text.substr(prefix.size()));
        if (!v) throw TargetSpecError("bad number in target '" + std::string(text) + "'");
        return *v;
    };
    if (text == "recip") return TargetSpec::recip();
    if (text == "floorsqrt_over_n") return TargetSpec::floorsqrt_over_n();
    if (text == "floorsqrt") return TargetSpec::floorsqrt();
    if (text == "zero") return TargetSpec::zero();
    if (text.starts_with("power:beta=")) return TargetSpec::power(number_after("power:beta="));
    if (text.starts_with("const:c=")) return TargetSpec::constant(number_after("const:c="));
    if (text.starts_with("file=")) {
        std::string path(text.substr(5));
        if (path.empty()) throw TargetSpecError("file= target needs a path");
        TargetSpec t = TargetSpec::from_sequence(read_sequence_csv(path, path));
        t.path = path;
        t.text = "file=" + path;
        return t;
    }
    throw TargetSpecError("unknown target '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

namespace {

template <typename T>
T from_u64(std::uint64_t v) {
    if constexpr (std::is_same_v<T, Rational>) {
        return rat(v);
    } else {
        return static_cast<double>(v);
    }
}

template <typename T>
T kernel_value(const ThetaFunction& theta, std::uint64_t n, std::uint64_t k) {
    if constexpr (std::is_same_v<T, Rational>) {
        auto v = theta.exact_at_ratio(n, k);
        if (!v) {
            throw ExactnessError("exact mode: theta '" + theta.spec() + "' is irrational at n/k = " +
                                 std::to_string(n) + "/" + std::to_string(k));
        }
        return *std::move(v);
    } else {
        return theta.at_ratio(n, k);
    }
}

template <typename T>
std::vector<T> target_values(const TargetSpec& target, std::size_t n) {
    if (target.extent() < n) {
        throw std::invalid_argument("target '" + target.text + "' has only " + std::to_string(target.extent()) +
                                    " values, need " + std::to_string(n));
    }
    std::vector<T> f(n);
    for (std::size_t i = 1; i <= n; ++i) {
        if constexpr (std::is_same_v<T, Rational>) {
            auto v = target.exact_value(i);
            if (!v) throw ExactnessError("exact mode: target '" + target.text + "' is not rational at n=" + std::to_string(i));
            f[i - 1] = *std::move(v);
        } else {
            f[i - 1] = target.value(i);
        }
    }
    return f;
}

template <typename T>
std::vector<T> coefficient_jumps(const ThetaFunction& theta, std::size_t n) {
    Sequence c = *theta.step_jumps(n);
    if constexpr (std::is_same_v<T, Rational>) {
        if (!c.is_exact()) throw ExactnessError("exact mode: coefficients of '" + theta.spec() + "' are float-only");
        return c.exact_values();
    } else {
        return c.to_float().float_values();
    }
}

// Weights w with sum_k w_k g(n/k) = h(n), where g(x) = sum_{m <= x} c_m.
// Differencing in n leaves sum_{k | n} w_k c_{n/k} = h(n) - h(n-1).
template <typename T>
std::vector<T> solve_step(const std::vector<T>& c, const std::vector<T>& h) {
    const std::size_t n = h.size();
    std::vector<T> w(n, T(0));
    std::vector<T> acc(n, T(0));
    std::vector<std::size_t> support;
    for (std::size_t d = 2; d <= n; ++d) {
        if (c[d - 1] != 0) support.push_back(d);
    }
    const T& c1 = c[0];
    for (std::size_t m = 1; m <= n; ++m) {
        T diff = m == 1 ? h[0] : h[m - 1] - h[m - 2];
        w[m - 1] = (diff - acc[m - 1]) / c1;
        if (w[m - 1] == 0) continue;
        for (std::size_t d : support) {
            if (m * d > n) break;
            acc[m * d - 1] += w[m - 1] * c[d - 1];
        }
    }
    return w;
}

struct IntRange {
    std::uint64_t lo;
    std::uint64_t hi;  // empty when hi < lo
};

std::uint64_t small(const BigInt& v) {
    if (!v.fits_ulong_p()) throw std::overflow_error("piece boundary too large");
    return v.get_ui();
}

// Integers k with k/n inside the piece.
IntRange piece_range(const VdPiece& p, std::uint64_t n) {
    const std::uint64_t lp = small(p.lo.get_num()), lq = small(p.lo.get_den());
    const std::uint64_t hp = small(p.hi.get_num()), hq = small(p.hi.get_den());
    std::uint64_t lo = p.lo_closed ? (lp * n + lq - 1) / lq : lp * n / lq + 1;
    std::uint64_t hi_raw = p.hi_closed ? hp * n / hq : (hp * n + hq - 1) / hq;
    std::uint64_t hi = p.hi_closed ? hi_raw : (hi_raw == 0 ? 0 : hi_raw - 1);
    return {std::max<std::uint64_t>(lo, 1), hi};
}

template <typename T>
std::vector<std::vector<T>> piece_polys(const std::vector<VdPiece>& pieces) {
    std::vector<std::vector<T>> out;
    for (const auto& p : pieces) {
        if constexpr (std::is_same_v<T, Rational>) {
            if (!p.exact_poly) throw ExactnessError("exact mode: kernel piece has irrational coefficients");
            out.push_back(*p.exact_poly);
        } else {
            out.push_back(p.poly);
        }
    }
    return out;
}

// Prefix sums P_j(K) = sum_{k <= K} k^j u_k, j = 0..deg, grown one index at a time.
template <typename T>
class PiecewiseSums {
public:
    PiecewiseSums(const std::vector<VdPiece>& pieces, std::size_t n) : pieces_(pieces), polys_(piece_polys<T>(pieces)) {
        std::size_t deg = 0;
        for (const auto& poly : polys_) deg = std::max(deg, poly.size());
        prefix_.assign(deg, std::vector<T>(1, T(0)));
        for (auto& p : prefix_) p.reserve(n + 1);
    }

    // sum_{k <= min(n, k_max)} u_k theta_d(k/n) over the known u.
    T sum(std::uint64_t n, std::uint64_t k_max) const {
        T total = T(0);
        const T tn = from_u64<T>(n);
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            IntRange r = piece_range(pieces_[i], n);
            r.hi = std::min(r.hi, k_max);
            if (r.hi < r.lo) continue;
            T scale = T(1);
            for (std::size_t j = 0; j < polys_[i].size(); ++j) {
                if (polys_[i][j] != 0) total += polys_[i][j] * (prefix_[j][r.hi] - prefix_[j][r.lo - 1]) / scale;
                scale *= tn;
            }
        }
        return total;
    }

    void push(std::uint64_t k, const T& u) {
        T power = u;
        const T tk = from_u64<T>(k);
        for (auto& p : prefix_) {
            p.push_back(p.back() + power);
            power *= tk;
        }
    }

private:
    const std::vector<VdPiece>& pieces_;
    std::vector<std::vector<T>> polys_;
    std::vector<std::vector<T>> prefix_;
};

template <typename T>
std::vector<T> solve_pieces(const ThetaFunction& theta, const std::vector<VdPiece>& pieces, const std::vector<T>& f) {
    const std::size_t n = f.size();
    const T pivot = kernel_value<T>(theta, 1, 1);
    PiecewiseSums<T> sums(pieces, n);
    std::vector<T> u(n);
    for (std::size_t m = 1; m <= n; ++m) {
        u[m - 1] = (f[m - 1] - sums.sum(m, m - 1)) / pivot;
        sums.push(m, u[m - 1]);
    }
    return u;
}

template <typename T>
std::vector<T> solve_generic(const ThetaFunction& theta, const std::vector<T>& f) {
    const std::size_t n = f.size();
    const T pivot = kernel_value<T>(theta, 1, 1);
    std::vector<T> u(n);
    for (std::size_t m = 1; m <= n; ++m) {
        T s = T(0);
        for (std::size_t k = 1; k < m; ++k) {
            if (u[k - 1] != 0) s += u[k - 1] * kernel_value<T>(theta, m, k);
        }
        u[m - 1] = (f[m - 1] - s) / pivot;
    }
    return u;
}

std::string choose_path(const ThetaFunction& theta, SolvePath requested) {
    const bool step = theta.step_jumps(1).has_value();
    const bool pieces = theta.finite_pieces().has_value();
    switch (requested) {
        case SolvePath::generic: return "generic";
        case SolvePath::fast:
            if (step) return "step";
            if (pieces) return "pieces";
            throw std::invalid_argument("no fast solver for theta '" + theta.spec() + "'");
        case SolvePath::automatic: break;
    }
    if (step) return "step";
    if (pieces) return "pieces";
    return "generic";
}

template <typename T>
std::vector<T> solve_as(const ThetaFunction& theta, const TargetSpec& target, std::size_t n, KernelForm form,
                        const std::string& path) {
    std::vector<T> f = target_values<T>(target, n);
    if (path == "step") {
        // With w_k = k u_k and h(n) = n F(n) the normalized problem becomes
        // sum_k w_k g(n/k) = h(n); the raw problem already has that shape.
        if (form == KernelForm::normalized) {
            for (std::size_t m = 1; m <= n; ++m) f[m - 1] *= from_u64<T>(m);
        }
        std::vector<T> w = solve_step(coefficient_jumps<T>(theta, n), f);
        if (form == KernelForm::normalized) {
            for (std::size_t m = 1; m <= n; ++m) w[m - 1] /= from_u64<T>(m);
        }
        return w;
    }
    // Raw sums become normalized ones with F(n) = f(n)/n and a_k = k u_k.
    if (form == KernelForm::raw) {
        for (std::size_t m = 1; m <= n; ++m) f[m - 1] /= from_u64<T>(m);
    }
    std::vector<T> u = path == "pieces" ? solve_pieces(theta, *theta.finite_pieces(), f) : solve_generic(theta, f);
    if (form == KernelForm::raw) {
        for (std::size_t m = 1; m <= n; ++m) u[m - 1] *= from_u64<T>(m);
    }
    return u;
}

}  // namespace

DeconvRun solve(const ThetaFunction& theta, const TargetSpec& target, std::size_t n, const SolveOptions& options) {
    if (n == 0) throw std::invalid_argument("solve: N must be at least 1");
    const std::string path = choose_path(theta, options.path);
    if (options.enforce_caps) {
        if (path == "generic" && n > options.generic_cap) {
            throw CapExceeded("generic solver capped at N=" + std::to_string(options.generic_cap) + " (requested " +
                              std::to_string(n) + "); raise the cap to override");
        }
        if (options.mode == Mode::exact && n > options.exact_cap) {
            throw CapExceeded("exact mode capped at N=" + std::to_string(options.exact_cap) + " (requested " +
                              std::to_string(n) + "); raise the cap to override");
        }
    }
    if (options.mode == Mode::exact && !theta.supports_exact()) {
        throw ExactnessError("exact mode: theta '" + theta.spec() + "' has float-only coefficients");
    }

    const auto start = std::chrono::steady_clock::now();
    std::string label = "a[" + theta.spec() + "," + target.text + "]";
    Sequence a = options.mode == Mode::exact
                     ? Sequence(solve_as<Rational>(theta, target, n, options.form, path), label)
                     : Sequence(solve_as<double>(theta, target, n, options.form, path), label);
    Sequence A = summatory(a).relabeled("A[" + theta.spec() + "," + target.text + "]");
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return DeconvRun{theta, target, n, std::move(a), std::move(A), options.mode, options.form, path, elapsed};
}

// ---------------------------------------------------------------------------
// Forward sums
// ---------------------------------------------------------------------------

namespace {

template <typename T>
std::vector<T> forward_as(const ThetaFunction& theta, const std::vector<T>& a_in, std::size_t n, KernelForm form,
                          const std::string& path) {
    std::vector<T> a(a_in.begin(), a_in.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<T> f(n, T(0));
    if (path == "step") {
        // Raw: f = summatory(a * c). Normalized: n f(n) = summatory((k a_k) * c)(n).
        if (form == KernelForm::normalized) {
            for (std::size_t k = 1; k <= n; ++k) a[k - 1] *= from_u64<T>(k);
        }
        std::vector<T> c = coefficient_jumps<T>(theta, n);
        std::vector<T> diff(n, T(0));
        for (std::size_t k = 1; k <= n; ++k) {
            if (a[k - 1] == 0) continue;
            for (std::size_t d = 1; k * d <= n; ++d) {
                if (c[d - 1] != 0) diff[k * d - 1] += a[k - 1] * c[d - 1];
            }
        }
        T acc = T(0);
        for (std::size_t m = 1; m <= n; ++m) {
            acc += diff[m - 1];
            f[m - 1] = form == KernelForm::normalized ? acc / from_u64<T>(m) : acc;
        }
        return f;
    }
    if (path == "pieces") {
        if (form == KernelForm::raw) {
            for (std::size_t k = 1; k <= n; ++k) a[k - 1] /= from_u64<T>(k);
        }
        const auto pieces = *theta.finite_pieces();
        PiecewiseSums<T> sums(pieces, n);
        for (std::size_t k = 1; k <= n; ++k) sums.push(k, a[k - 1]);
        for (std::size_t m = 1; m <= n; ++m) {
            f[m - 1] = sums.sum(m, m);
            if (form == KernelForm::raw) f[m - 1] *= from_u64<T>(m);
        }
        return f;
    }
    for (std::size_t m = 1; m <= n; ++m) {
        T s = T(0);
        for (std::size_t k = 1; k <= m; ++k) {
            if (a[k - 1] == 0) continue;
            T v = kernel_value<T>(theta, m, k);
            if (form == KernelForm::raw) v *= from_u64<T>(m) / from_u64<T>(k);
            s += a[k - 1] * v;
        }
        f[m - 1] = s;
    }
    return f;
}

}  // namespace

Sequence forward(const ThetaFunction& theta, const Sequence& a, std::size_t n, KernelForm form, SolvePath path) {
    if (n == 0) throw std::invalid_argument("forward: N must be at least 1");
    if (a.size() < n) throw std::invalid_argument("forward: sequence shorter than N");
    const std::string chosen = choose_path(theta, path);
    std::string label = "forward[" + theta.spec() + "](" + a.label() + ")";
    if (a.is_exact() && theta.supports_exact()) {
        try {
            return Sequence(forward_as<Rational>(theta, a.exact_values(), n, form, chosen), label);
        } catch (const ExactnessError&) {
            // Some kernel value is irrational; fall through to floats.
        }
    }
    return Sequence(forward_as<double>(theta, a.to_float().float_values(), n, form, chosen), label);
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

std::vector<std::pair<std::size_t, double>> scaled_trace(const Sequence& A, double alpha, std::size_t max_rows) {
    const std::size_t n = A.size();
    std::vector<std::size_t> idx;
    if (n <= max_rows) {
        for (std::size_t i = 1; i <= n; ++i) idx.push_back(i);
    } else {
        const std::size_t windows = static_cast<std::size_t>(std::bit_width(n));
        const std::size_t per = std::max<std::size_t>(1, max_rows / windows);
        for (std::size_t j = 0; j < windows; ++j) {
            const std::size_t lo = std::size_t{1} << j;
            const std::size_t hi = std::min(n, (lo << 1) - 1);
            const std::size_t len = hi - lo + 1;
            if (len <= per) {
                for (std::size_t i = lo; i <= hi; ++i) idx.push_back(i);
                continue;
            }
            for (std::size_t s = 0; s < per; ++s) idx.push_back(lo + s * (len - 1) / (per - 1 > 0 ? per - 1 : 1));
        }
        idx.push_back(n);
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    }
    std::vector<std::pair<std::size_t, double>> rows;
    rows.reserve(idx.size());
    for (std::size_t i : idx) rows.emplace_back(i, A.value(i) * std::pow(static_cast<double>(i), alpha));
    return rows;
}

std::vector<std::pair<std::size_t, double>> scaled_trace(const DeconvRun& run, double alpha, std::size_t max_rows) {
    return scaled_trace(run.A, alpha, max_rows);
}

}  // namespace fgv
