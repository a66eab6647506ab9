#include "fgv/conjecture.hpp"

#include "fgv/numerics.hpp"
#include "fgv/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace fgv {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::satisfied: return "satisfied";
        case Verdict::violated: return "violated";
        case Verdict::consistent: return "consistent";
        case Verdict::inconsistent: return "inconsistent";
    }
    return "?";
}

bool ConditionReport::all_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passes(); });
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

IJProfile extract_IJ(const ThetaFunction& theta, std::size_t depth) {
    if (depth == 0) throw std::invalid_argument("extract_IJ: depth must be positive");
    const auto family = theta.family();
    if (family != ThetaFamily::floor && family != ThetaFamily::pow2 && family != ThetaFamily::coeffs) {
        throw std::invalid_argument("extract_IJ: theta '" + theta.spec() + "' is not a step kernel");
    }
    IJProfile p;
    p.source = theta.spec();
    auto push = [&](std::uint64_t x, double g) {
        p.x.push_back(x);
        p.I.push_back(1.0 / static_cast<double>(x));
        p.J.push_back(g);
    };

    if (family == ThetaFamily::floor) {
        for (std::uint64_t n = 1; n <= depth; ++n) push(n, static_cast<double>(n));
        return p;
    }
    if (family == ThetaFamily::pow2) {
        for (std::uint64_t j = 0; j < depth && j < 63; ++j) push(std::uint64_t{1} << j, std::ldexp(1.0, static_cast<int>(j)));
        return p;
    }

    // Walk x = 1, 2, ... and keep the points where G(x) - G(x-1) is nonzero.
    const CoefficientSource& z = *theta.coefficients();
    if (z.is_exact()) {
        Rational prev = 0;
        for (std::uint64_t x = 1; p.depth() < depth; ++x) {
            if (x > z.extent()) throw std::out_of_range("extract_IJ: coefficient table exhausted");
            Rational g = z.exact_floor_sum(x);
            if (g != prev) push(x, to_double(g));
            prev = g;
        }
    } else {
        double prev = 0;
        for (std::uint64_t x = 1; p.depth() < depth; ++x) {
            if (x > z.extent()) throw std::out_of_range("extract_IJ: coefficient table exhausted");
            double g = z.floor_sum(x);
            if (std::abs(g - prev) > thresholds::jump_tolerance) push(x, g);
            prev = g;
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Compensation conditions
// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

ConditionResult finite(int index, std::string statement, std::optional<std::size_t> witness, std::string evidence) {
    ConditionResult c;
    c.index = index;
    c.statement = std::move(statement);
    c.verdict = witness ? Verdict::violated : Verdict::satisfied;
    c.witness = witness;
    c.evidence = std::move(evidence);
    return c;
}

ConditionResult trend(int index, std::string statement, bool agrees, std::string evidence) {
    ConditionResult c;
    c.index = index;
    c.statement = std::move(statement);
    c.limit = true;
    c.verdict = agrees ? Verdict::consistent : Verdict::inconsistent;
    c.evidence = std::move(evidence);
    return c;
}

double spread(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    auto [mn, mx] = std::minmax_element(v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi));
    return *mx - *mn;
}

}  // namespace

ConditionReport check_compensation(const IJProfile& p) {
    const std::size_t d = p.depth();
    if (d < 16) throw std::invalid_argument("check_compensation: profile depth must be at least 16");
    if (p.J.size() != d) throw std::invalid_argument("check_compensation: I and J lengths differ");
    const auto& I = p.I;
    const auto& J = p.J;
    ConditionReport rep;
    rep.source = p.source;
    rep.depth = d;

    // 1. I_1 = 1 and 0 < I_2 <= 1/2.
    {
        std::optional<std::size_t> w;
        if (I[0] != 1.0) {
            w = 1;
        } else if (!(I[1] > 0 && I[1] <= 0.5)) {
            w = 2;
        }
        rep.conditions.push_back(finite(1, "I_1 = 1 and 0 < I_2 <= 1/2", w, "I_1 = " + fmt(I[0]) + ", I_2 = " + fmt(I[1])));
    }
    // 2. I_{n+1} < I_n <= I_{n+1} / I_2.
    {
        std::optional<std::size_t> w;
        for (std::size_t n = 0; n + 1 < d && !w; ++n) {
            if (!(I[n + 1] < I[n] && I[n] <= I[n + 1] / I[1])) w = n + 1;
        }
        std::string ev = w ? "fails at n = " + std::to_string(*w) + ": I_n = " + fmt(I[*w - 1]) + ", I_{n+1} = " + fmt(I[*w])
                           : "holds for n < " + std::to_string(d);
        rep.conditions.push_back(finite(2, "I_{n+1} < I_n <= I_{n+1} / I_2", w, ev));
    }
    // 3. I_n -> 0.
    {
        const double mid = I[d / 2 - 1];
        const double last = I[d - 1];
        rep.conditions.push_back(trend(3, "lim I_n = 0", last <= thresholds::vanishing_ratio * mid,
                                       "I_" + std::to_string(d / 2) + " = " + fmt(mid) + ", I_" + std::to_string(d) +
                                           " = " + fmt(last)));
    }
    // 4. J_1 >= 1 and J_2 I_2 <= J_1 I_1.
    {
        std::optional<std::size_t> w;
        if (J[0] < 1.0) {
            w = 1;
        } else if (J[1] * I[1] > J[0] * I[0] + thresholds::guard_band) {
            w = 2;
        }
        rep.conditions.push_back(finite(4, "J_1 >= 1 and J_2 I_2 <= J_1 I_1", w,
                                        "J_1 I_1 = " + fmt(J[0] * I[0]) + ", J_2 I_2 = " + fmt(J[1] * I[1])));
    }
    // 5. J_{n+1} >= J_n.
    {
        std::optional<std::size_t> w;
        for (std::size_t n = 0; n + 1 < d && !w; ++n) {
            if (J[n + 1] < J[n]) w = n + 1;
        }
        std::string ev = w ? "J_" + std::to_string(*w) + " = " + fmt(J[*w - 1]) + " > J_" + std::to_string(*w + 1) +
                                 " = " + fmt(J[*w])
                           : "nondecreasing for n <= " + std::to_string(d);
        rep.conditions.push_back(finite(5, "J_{n+1} >= J_n", w, ev));
    }
    // 6. I_n J_n converges: the spread over the last quarter must not exceed
    // the spread over the second quarter.
    {
        std::vector<double> prod(d);
        for (std::size_t n = 0; n < d; ++n) prod[n] = I[n] * J[n];
        const double early = spread(prod, d / 4, d / 2);
        const double late = spread(prod, 3 * d / 4, d);
        rep.conditions.push_back(trend(6, "lim I_n J_n exists", late <= early + thresholds::stabilization_abs,
                                       "spread of I_n J_n: second quarter " + fmt(early) + ", last quarter " + fmt(late)));
    }
    // 7. sum_{k=2}^n (J_k - J_{k-1}) I_k -> +inf, judged by its slope against
    // log k over the upper half of the prefix.
    {
        double s = 0;
        std::vector<double> logk, sums;
        for (std::size_t k = 2; k <= d; ++k) {
            s += (J[k - 1] - J[k - 2]) * I[k - 1];
            rep.partial_sums.emplace_back(k, s);
            if (k >= d / 2) {
                logk.push_back(std::log(static_cast<double>(k)));
                sums.push_back(s);
            }
        }
        rep.divergence_slope = fit_line(logk, sums).slope;
        rep.conditions.push_back(trend(7, "lim sum_{k=2}^n (J_k - J_{k-1}) I_k = +inf",
                                       rep.divergence_slope > thresholds::divergence_slope,
                                       "slope of partial sums against log k = " + fmt(rep.divergence_slope) +
                                           " (threshold " + fmt(thresholds::divergence_slope) + "), final sum " + fmt(s)));
    }
    if (rep.all_pass()) rep.predicted_index = I[1];
    return rep;
}

// ---------------------------------------------------------------------------
// Comparison of smooth kernels
// ---------------------------------------------------------------------------

ComparisonReport check_comparison_smooth(const ThetaFunction& theta1, const ThetaFunction& theta2, std::size_t grid) {
    if (!theta1.is_continuous() || !theta2.is_continuous()) {
        throw std::invalid_argument("check_comparison_smooth: both kernels must be continuous families");
    }
    if (grid < 2) throw std::invalid_argument("check_comparison_smooth: grid must be at least 2");
    constexpr double tol = 1e-12;
    auto sign = [](double v) { return v > tol ? 1 : (v < -tol ? -1 : 0); };

    ComparisonReport rep;
    std::vector<double> t(grid), v1(grid), v2(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        t[i] = static_cast<double>(i + 1) / static_cast<double>(grid);
        v1[i] = theta1.diamond(t[i]);
        v2[i] = theta2.diamond(t[i]);
    }
    rep.ordered = true;
    for (std::size_t i = 0; i < grid; ++i) {
        if (v1[i] > v2[i] + tol) {
            rep.ordered = false;
            rep.first_failure = t[i];
            rep.reason = "theta1_d > theta2_d at t = " + fmt(t[i]);
            break;
        }
    }
    bool diff_zero = true;
    for (std::size_t i = 0; i < grid; ++i) diff_zero = diff_zero && std::abs(v1[i] - v2[i]) <= tol;

    rep.same_pattern = true;
    for (std::size_t i = 0; i + 1 < grid; ++i) {
        const int s1 = sign(v1[i + 1] - v1[i]);
        const int s2 = sign(v2[i + 1] - v2[i]);
        const int sd = sign((v1[i + 1] - v2[i + 1]) - (v1[i] - v2[i]));
        if (s1 != s2 || (!diff_zero && sd != s1)) {
            rep.same_pattern = false;
            if (rep.ordered) {
                rep.first_failure = t[i];
                rep.reason = "monotonicity patterns differ on [" + fmt(t[i]) + ", " + fmt(t[i + 1]) + "]";
            }
            break;
        }
    }
    rep.pass = rep.ordered && rep.same_pattern;
    if (rep.pass) rep.reason = diff_zero ? "identical kernels" : "ordered with identical variations";
    return rep;
}

// ---------------------------------------------------------------------------
// Extrema and areas
// ---------------------------------------------------------------------------

std::pair<Rational, Rational> piece_extrema(const std::vector<VdPiece>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("piece_extrema: no pieces");
    std::optional<Rational> inf, sup;
    auto eval = [](const std::vector<Rational>& p, const Rational& t) {
        Rational acc = 0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
        return acc;
    };
    for (const auto& piece : pieces) {
        if (!piece.exact_poly) throw std::invalid_argument("piece_extrema: piece without exact coefficients");
        const auto& p = *piece.exact_poly;
        if (p.size() > 3) throw std::invalid_argument("piece_extrema: degree above 2");
        std::vector<Rational> candidates{eval(p, piece.lo), eval(p, piece.hi)};
        if (p.size() == 3 && p[2] != 0) {
            Rational v = -p[1] / (2 * p[2]);
            if (v > piece.lo && v < piece.hi) candidates.push_back(eval(p, v));
        }
        for (const auto& c : candidates) {
            if (!inf || c < *inf) inf = c;
            if (!sup || c > *sup) sup = c;
        }
    }
    return {*inf, *sup};
}

namespace {

// sum_{m > M} 1/m^2 by Euler-Maclaurin.
double tail_inverse_squares(double M) {
    return 1 / M - 1 / (2 * M * M) + 1 / (6 * M * M * M) - 1 / (30 * std::pow(M, 5));
}

// Integral of c0 + c1 t over (lo, hi].
double linear_area(double c0, double c1, double lo, double hi) {
    return c0 * (hi - lo) + c1 * (hi * hi - lo * lo) / 2;
}

}  // namespace

double area_vd(const ThetaFunction& theta) {
    if (auto pieces = theta.finite_pieces()) {
        Rational total = 0;
        for (const auto& p : *pieces) {
            const auto& c = *p.exact_poly;
            Rational hi_pow = p.hi, lo_pow = p.lo;
            for (std::size_t j = 0; j < c.size(); ++j) {
                total += c[j] * (hi_pow - lo_pow) / static_cast<long>(j + 1);
                hi_pow *= p.hi;
                lo_pow *= p.lo;
            }
        }
        return to_double(total);
    }

    // Pieces on (1/(n+1), 1/n] for n <= K, summed from the smallest, then an
    // analytic tail for t <= 1/(K+1).
    const auto& sp = theta.params();
    switch (theta.family()) {
        case ThetaFamily::floor:
        case ThetaFamily::frac: {
            constexpr std::size_t K = 100000;
            double floor_area = 0;
            for (std::size_t n = K; n >= 1; --n) {
                const double x = static_cast<double>(n);
                floor_area += linear_area(0, x, 1 / (x + 1), 1 / x);
            }
            const double M = static_cast<double>(K + 1);
            floor_area += 0.5 * (1 / M + tail_inverse_squares(M));
            if (theta.family() == ThetaFamily::floor) return floor_area;
            // theta_d = (1 - r) + r t floor(1/t).
            const double r = to_double(sp.r);
            return (1 - r) + r * floor_area;
        }
        case ThetaFamily::sqrtfloor: {
            // theta_d = 1 - (1 - n t) / sqrt n on (1/(n+1), 1/n]; the piece
            // integral of 1 - n t is 1 / (2 n (n+1)^2).
            constexpr std::size_t K = 100000;
            double deficit = 0;
            for (std::size_t n = K; n >= 1; --n) {
                const double x = static_cast<double>(n);
                deficit += 1 / (2 * x * (x + 1) * (x + 1) * std::sqrt(x));
            }
            deficit += std::pow(static_cast<double>(K), -2.5) / 5;
            return 1 - deficit;
        }
        case ThetaFamily::pow2: {
            double total = 0;
            for (int j = 62; j >= 0; --j) {
                const double hi = std::ldexp(1.0, -j);
                total += linear_area(0, std::ldexp(1.0, j), hi / 2, hi);
            }
            return total;
        }
        case ThetaFamily::coeffs: {
            const CoefficientSource& z = *theta.coefficients();
            const std::size_t K = std::min<std::size_t>(20000, z.extent() == SIZE_MAX ? 20000 : z.extent() - 1);
            std::vector<double> G(K + 1);
            // G(n) - G(n-1) = sum_{d | n} z_d.
            std::vector<double> jump(K + 1, 0.0);
            for (std::size_t d = 1; d <= K; ++d) {
                const double zd = z.value(d);
                if (zd == 0.0) continue;
                for (std::size_t m = d; m <= K; m += d) jump[m] += zd;
            }
            G[0] = 0;
            for (std::size_t n = 1; n <= K; ++n) G[n] = G[n - 1] + jump[n];
            double total = 0;
            for (std::size_t n = K; n >= 1; --n) {
                const double x = static_cast<double>(n);
                total += linear_area(0, G[n], 1 / (x + 1), 1 / x);
            }
            // Beyond K, G(n) ~ c n with c estimated from the last block.
            const double c = G[K] / static_cast<double>(K);
            return total + c / static_cast<double>(K + 1);
        }
        default: break;
    }
    throw std::logic_error("area_vd: unhandled family");
}

// ---------------------------------------------------------------------------
// Section 7 construction
// ---------------------------------------------------------------------------

Section7Report check_section7(std::size_t grid) {
    if (grid < 4) throw std::invalid_argument("check_section7: grid must be at least 4");
    const ThetaFunction theta2 = make_theta("floor");
    const ThetaFunction theta1 = make_theta("linear:r=1/2,s=1");
    Section7Report rep;

    std::tie(rep.inf_theta1, rep.sup_theta1) = piece_extrema(*theta1.finite_pieces());
    // Pieces of floor_d beyond the first `grid` have infimum n/(n+1) > 1/2 and
    // supremum 1, so the leading pieces decide both extrema.
    std::tie(rep.inf_theta2, rep.sup_theta2) = piece_extrema(theta2.leading_pieces(grid));
    rep.max_equal = rep.sup_theta1 == 1 && rep.sup_theta2 == 1;
    rep.min_equal = rep.inf_theta1 == Rational(1, 2) && rep.inf_theta2 == Rational(1, 2);

    rep.area_theta1 = area_vd(theta1);
    rep.area_theta2 = area_vd(theta2);
    rep.zeta2_half = std::numbers::pi * std::numbers::pi / 12;
    rep.area1_ok = std::abs(rep.area_theta1 - 0.75) <= 1e-9;
    rep.area2_ok = std::abs(rep.area_theta2 - rep.zeta2_half) <= 1e-6;

    // Exact one-sided limits of floor_d at its breakpoints below 1/2 and at
    // grid points there, read off the pieces.
    const std::vector<VdPiece> pieces = theta2.leading_pieces(2 * grid + 2);
    auto eval = [](const VdPiece& p, const Rational& t) {
        Rational v = 0;
        for (auto it = p.exact_poly->rbegin(); it != p.exact_poly->rend(); ++it) v = v * t + *it;
        return v;
    };
    auto limit = [&](const Rational& t, bool from_right) -> std::optional<Rational> {
        for (const auto& p : pieces) {
            const bool inside = from_right ? (p.lo <= t && t < p.hi) : (p.lo < t && t <= p.hi);
            if (inside) return eval(p, t);
        }
        return std::nullopt;
    };
    std::vector<Rational> ts;
    for (const auto& p : pieces) {
        if (p.lo > 0 && p.lo < Rational(1, 2)) ts.push_back(p.lo);
    }
    for (std::size_t i = 1; i < grid; ++i) ts.push_back(Rational(static_cast<unsigned long>(i), 2ul * grid));
    std::optional<Rational> worst;
    for (const Rational& t : ts) {
        auto left = limit(t, false), right = limit(t, true);
        if (!left || !right) continue;
        const Rational jump = *right - *left;
        if (!worst || jump > *worst) worst = jump;
        ++rep.jumps_checked;
    }
    rep.max_jump = worst ? to_double(*worst) : 0.0;
    rep.jumps_ok = rep.jumps_checked > 0 && worst && *worst <= 0;
    return rep;
}

}  // namespace fgv
