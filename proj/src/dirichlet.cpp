#include "fgv/dirichlet.hpp"

#include "fgv/arith.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fgv {

namespace {

void require_length(const Sequence& s, std::size_t n, const char* what) {
    if (n == 0) throw std::invalid_argument(std::string(what) + ": N must be at least 1");
    if (s.size() < n) {
        throw std::invalid_argument(std::string(what) + ": sequence '" + s.label() + "' has only " +
                                    std::to_string(s.size()) + " terms, need " + std::to_string(n));
    }
}

template <typename T>
std::vector<T> convolve_as(const std::vector<T>& x, const std::vector<T>& z, std::size_t n) {
    std::vector<T> y(n, T(0));
    for (std::size_t d = 1; d <= n; ++d) {
        if (x[d - 1] == 0) continue;
        for (std::size_t e = 1; d * e <= n; ++e) {
            if (z[e - 1] != 0) y[d * e - 1] += x[d - 1] * z[e - 1];
        }
    }
    return y;
}

// Scatter form of x_n = -(1/c_1) sum_{d | n, d > 1} c_d x_{n/d}: once x_m is
// known, its contribution c_d x_m is pushed to every multiple m d.
template <typename T>
std::vector<T> invert_as(const std::vector<T>& c, std::size_t n) {
    std::vector<T> x(n, T(0));
    std::vector<T> acc(n, T(0));
    const T inv_c1 = T(1) / c[0];
    for (std::size_t m = 1; m <= n; ++m) {
        x[m - 1] = m == 1 ? inv_c1 : -acc[m - 1] * inv_c1;
        if (x[m - 1] == 0) continue;
        for (std::size_t d = 2; m * d <= n; ++d) {
            if (c[d - 1] != 0) acc[m * d - 1] += c[d - 1] * x[m - 1];
        }
    }
    return x;
}

template <typename T>
struct Lemma1Tables {
    std::vector<T> x;
    std::vector<T> y;
    std::vector<T> g;  // g[u] = G(u) = sum_{j <= u} z_j floor(u / j), g[0] = 0
};

template <typename T>
Lemma1Tables<T> lemma1_tables(const Sequence& xs, const Sequence& zs, std::size_t t) {
    Lemma1Tables<T> tab;
    const auto& x = xs.values<T>();
    const auto& z = zs.values<T>();
    tab.x.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(t));
    std::vector<T> zt(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(t));
    tab.y = convolve_as(tab.x, zt, t);
    // G(u) - G(u - 1) = sum_{j | u} z_j.
    std::vector<T> one(t, T(1));
    auto jumps = convolve_as(zt, one, t);
    tab.g.assign(t + 1, T(0));
    for (std::size_t u = 1; u <= t; ++u) tab.g[u] = tab.g[u - 1] + jumps[u - 1];
    return tab;
}

template <typename T>
std::pair<T, T> lemma1_sides(const Lemma1Tables<T>& tab, std::size_t t) {
    T lhs = T(0);
    T rhs = T(0);
    for (std::size_t k = 1; k <= t; ++k) {
        const std::size_t q = t / k;
        if (tab.x[k - 1] != 0) lhs += tab.x[k - 1] * tab.g[q];
        if (tab.y[k - 1] != 0) rhs += tab.y[k - 1] * T(static_cast<double>(q));
    }
    return {lhs, rhs};
}

Lemma1Result make_result(std::size_t t, const Rational& lhs, const Rational& rhs) {
    Lemma1Result r;
    r.t = t;
    r.exact = true;
    r.lhs = lhs;
    r.rhs = rhs;
    r.lhs_value = to_double(lhs);
    r.rhs_value = to_double(rhs);
    r.holds = lhs == rhs;
    return r;
}

Lemma1Result make_result(std::size_t t, double lhs, double rhs) {
    Lemma1Result r;
    r.t = t;
    r.lhs_value = lhs;
    r.rhs_value = rhs;
    r.holds = std::abs(lhs - rhs) <= 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return r;
}

template <typename T>
Lemma1Result check_range(const Sequence& x, const Sequence& z, std::size_t t_lo, std::size_t t_hi) {
    auto tab = lemma1_tables<T>(x, z, t_hi);
    Lemma1Result last;
    for (std::size_t t = t_lo; t <= t_hi; ++t) {
        auto [lhs, rhs] = lemma1_sides(tab, t);
        last = make_result(t, lhs, rhs);
        if (!last.holds) return last;
    }
    return last;
}

Lemma1Result dispatch(const Sequence& x, const Sequence& z, std::size_t t_lo, std::size_t t_hi) {
    if (t_hi == 0) throw std::invalid_argument("lemma1_check: t must be at least 1");
    require_length(x, t_hi, "lemma1_check");
    require_length(z, t_hi, "lemma1_check");
    if (x.is_exact() && z.is_exact()) return check_range<Rational>(x, z, t_lo, t_hi);
    return check_range<double>(x.to_float(), z.to_float(), t_lo, t_hi);
}

}  // namespace

Sequence convolve(const Sequence& x, const Sequence& z, std::size_t n) {
    require_length(x, n, "convolve");
    require_length(z, n, "convolve");
    std::string label = "(" + x.label() + ")*(" + z.label() + ")";
    if (x.is_exact() && z.is_exact()) return Sequence(convolve_as(x.exact_values(), z.exact_values(), n), label);
    return Sequence(convolve_as(x.to_float().float_values(), z.to_float().float_values(), n), label);
}

Sequence invert(const Sequence& c, std::size_t n) {
    require_length(c, n, "invert");
    if (c.value(1) == 0.0 && (!c.is_exact() || c.exact(1) == 0)) {
        throw std::invalid_argument("invert: leading coefficient of '" + c.label() + "' is zero");
    }
    std::string label = "inverse(" + c.label() + ")";
    if (c.is_exact()) return Sequence(invert_as(c.exact_values(), n), label);
    return Sequence(invert_as(c.float_values(), n), label);
}

Lemma1Result lemma1_check(const Sequence& x, const Sequence& z, std::size_t t) { return dispatch(x, z, t, t); }

Lemma1Result lemma1_check_all(const Sequence& x, const Sequence& z, std::size_t t_max) {
    return dispatch(x, z, 1, t_max);
}

}  // namespace fgv
