#include "fgv/theta.hpp"

#include "fgv/arith.hpp"
#include "fgv/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>

namespace fgv {

std::string_view family_name(ThetaFamily family) {
    switch (family) {
        case ThetaFamily::floor: return "floor";
        case ThetaFamily::frac: return "frac";
        case ThetaFamily::sqrtfloor: return "sqrtfloor";
        case ThetaFamily::pw32: return "pw32";
        case ThetaFamily::smooth: return "smooth";
        case ThetaFamily::linear: return "linear";
        case ThetaFamily::v23: return "v23";
        case ThetaFamily::dirac: return "dirac";
        case ThetaFamily::pow2: return "pow2";
        case ThetaFamily::theta_m: return "m";
        case ThetaFamily::coeffs: return "coeffs";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// CoefficientSource
// ---------------------------------------------------------------------------

CoefficientSource::CoefficientSource(std::string name, Sequence table, Extension extension)
    : name_(std::move(name)), table_(std::move(table)), extension_(extension) {
    const std::size_t len = table_.size();
    float_prefix_.assign(len + 1, 0.0);
    if (table_.is_exact()) {
        exact_prefix_.assign(len + 1, Rational(0));
        for (std::size_t i = 1; i <= len; ++i) {
            exact_prefix_[i] = exact_prefix_[i - 1] + table_.exact(i);
            float_prefix_[i] = to_double(exact_prefix_[i]);
        }
    } else {
        for (std::size_t i = 1; i <= len; ++i) float_prefix_[i] = float_prefix_[i - 1] + table_.value(i);
    }
}

CoefficientSource CoefficientSource::named(std::string_view name, std::size_t extent) {
    if (name == "chi4") return {"chi4", chi4(4), Extension::periodic};
    if (name == "alt") return {"alt", alternating_unit(2), Extension::periodic};
    if (name == "dh") return {"dh", dh_sequence(5), Extension::periodic};
    if (name == "ones") return {"ones", ones(1), Extension::periodic};
    if (name == "unit") return {"unit", dirichlet_unit(1), Extension::finite_support};
    if (name == "tau") {
        if (extent == 0) throw ThetaSpecError("coeffs:tau needs a positive extent");
        Sequence tau = ramanujan_tau(extent);
        std::vector<double> z(extent);
        for (std::size_t k = 1; k <= extent; ++k) {
            z[k - 1] = to_double(tau.exact(k)) / std::pow(static_cast<double>(k), 5.5);
        }
        return {"tau", Sequence(std::move(z), "tau/k^(11/2)"), Extension::truncated};
    }
    throw ThetaSpecError("unknown coefficient source '" + std::string(name) + "'");
}

std::size_t CoefficientSource::extent() const {
    return extension_ == Extension::truncated ? table_.size() : std::numeric_limits<std::size_t>::max();
}

double CoefficientSource::value(std::size_t k) const {
    if (k == 0) throw std::out_of_range("coefficients are indexed from 1");
    const std::size_t len = table_.size();
    switch (extension_) {
        case Extension::periodic: return table_.value((k - 1) % len + 1);
        case Extension::finite_support: return k <= len ? table_.value(k) : 0.0;
        case Extension::truncated: break;
    }
    if (k > len) throw std::out_of_range("coefficient source '" + name_ + "' truncated at " + std::to_string(len));
    return table_.value(k);
}

Rational CoefficientSource::exact_value(std::size_t k) const {
    if (!is_exact()) throw std::logic_error("coefficient source '" + name_ + "' is float-only");
    if (k == 0) throw std::out_of_range("coefficients are indexed from 1");
    const std::size_t len = table_.size();
    switch (extension_) {
        case Extension::periodic: return table_.exact((k - 1) % len + 1);
        case Extension::finite_support: return k <= len ? table_.exact(k) : Rational(0);
        case Extension::truncated: break;
    }
    if (k > len) throw std::out_of_range("coefficient source '" + name_ + "' truncated at " + std::to_string(len));
    return table_.exact(k);
}

template <typename T>
T CoefficientSource::prefix_as(std::size_t k) const {
    const auto& pre = [this]() -> const std::vector<T>& {
        if constexpr (std::is_same_v<T, Rational>) {
            return exact_prefix_;
        } else {
            return float_prefix_;
        }
    }();
    const std::size_t len = table_.size();
    switch (extension_) {
        case Extension::periodic: {
            T full = pre[len];
            T blocks = T(static_cast<double>(k / len));
            if constexpr (std::is_same_v<T, Rational>) blocks = Rational(BigInt(static_cast<unsigned long>(k / len)));
            return blocks * full + pre[k % len];
        }
        case Extension::finite_support: return pre[std::min(k, len)];
        case Extension::truncated: break;
    }
    if (k > len) throw std::out_of_range("coefficient source '" + name_ + "' truncated at " + std::to_string(len));
    return pre[k];
}

double CoefficientSource::prefix(std::size_t k) const { return prefix_as<double>(k); }

Rational CoefficientSource::exact_prefix(std::size_t k) const {
    if (!is_exact()) throw std::logic_error("coefficient source '" + name_ + "' is float-only");
    return prefix_as<Rational>(k);
}

template <typename T>
T CoefficientSource::floor_sum_as(std::uint64_t u) const {
    T total = T(0);
    std::uint64_t j = 1;
    while (j <= u) {
        std::uint64_t q = u / j;
        std::uint64_t j_hi = u / q;
        T block = prefix_as<T>(j_hi) - prefix_as<T>(j - 1);
        if constexpr (std::is_same_v<T, Rational>) {
            total += block * Rational(BigInt(static_cast<unsigned long>(q)));
        } else {
            total += block * static_cast<double>(q);
        }
        j = j_hi + 1;
    }
    return total;
}

double CoefficientSource::floor_sum(std::uint64_t u) const { return floor_sum_as<double>(u); }

Rational CoefficientSource::exact_floor_sum(std::uint64_t u) const {
    if (!is_exact()) throw std::logic_error("coefficient source '" + name_ + "' is float-only");
    return floor_sum_as<Rational>(u);
}

Sequence CoefficientSource::materialize(std::size_t n) const {
    if (is_exact()) {
        std::vector<Rational> out(n);
        for (std::size_t k = 1; k <= n; ++k) out[k - 1] = exact_value(k);
        return Sequence(std::move(out), name_);
    }
    std::vector<double> out(n);
    for (std::size_t k = 1; k <= n; ++k) out[k - 1] = value(k);
    return Sequence(std::move(out), name_);
}

double CoefficientSource::kernel_bound() const {
    const std::size_t len = table_.size();
    if (extension_ == Extension::periodic) {
        // Zero-mean periodic coefficients have bounded partial sums Z, and
        // |G(u)| <= max|Z| * u by summation by parts. A nonzero mean makes G
        // grow like u log u.
        const double mean = float_prefix_[len] / static_cast<double>(len);
        const bool zero_mean = is_exact() ? exact_prefix_[len] == 0 : std::abs(mean) < 1e-12;
        if (!zero_mean) return std::numeric_limits<double>::infinity();
        double m = 0.0;
        for (std::size_t i = 1; i <= len; ++i) m = std::max(m, std::abs(float_prefix_[i]));
        return m;
    }
    double total = 0.0;
    for (std::size_t k = 1; k <= len; ++k) total += std::abs(table_.value(k)) / static_cast<double>(k);
    return total;
}

// ---------------------------------------------------------------------------
// Spec parsing
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        auto pos = s.find(sep);
        parts.push_back(s.substr(0, pos));
        if (pos == std::string_view::npos) break;
        s.remove_prefix(pos + 1);
    }
    return parts;
}

Rational require_param(const std::vector<std::pair<std::string, Rational>>& params, std::string_view key,
                       std::string_view spec) {
    for (const auto& [k, v] : params) {
        if (k == key) return v;
    }
    throw ThetaSpecError("theta spec '" + std::string(spec) + "' needs parameter '" + std::string(key) + "'");
}

}  // namespace

ThetaSpec parse_theta_spec(std::string_view text) {
    ThetaSpec spec;
    auto colon = text.find(':');
    std::string_view head = text.substr(0, colon);
    std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

    static const std::pair<std::string_view, ThetaFamily> families[] = {
        {"floor", ThetaFamily::floor},   {"frac", ThetaFamily::frac},     {"sqrtfloor", ThetaFamily::sqrtfloor},
        {"pw32", ThetaFamily::pw32},     {"smooth", ThetaFamily::smooth}, {"linear", ThetaFamily::linear},
        {"v23", ThetaFamily::v23},       {"dirac", ThetaFamily::dirac},   {"pow2", ThetaFamily::pow2},
        {"m", ThetaFamily::theta_m},     {"coeffs", ThetaFamily::coeffs},
    };
    auto it = std::find_if(std::begin(families), std::end(families), [&](const auto& f) { return f.first == head; });
    if (it == std::end(families)) throw ThetaSpecError("unknown theta family '" + std::string(head) + "'");
    spec.family = it->second;

    if (spec.family == ThetaFamily::coeffs) {
        if (tail.empty()) throw ThetaSpecError("coeffs needs a source, e.g. coeffs:chi4");
        if (tail.substr(0, 5) == "file=") {
            spec.coeffs = "file";
            spec.coeffs_path = std::string(tail.substr(5));
            if (spec.coeffs_path.empty()) throw ThetaSpecError("coeffs:file= needs a path");
            spec.text = "coeffs:file=" + spec.coeffs_path;
        } else {
            static const std::string_view known[] = {"chi4", "tau", "alt", "dh", "unit", "ones"};
            if (std::find(std::begin(known), std::end(known), tail) == std::end(known)) {
                throw ThetaSpecError("unknown coefficient source '" + std::string(tail) + "'");
            }
            spec.coeffs = std::string(tail);
            spec.text = "coeffs:" + spec.coeffs;
        }
        return spec;
    }

    std::vector<std::pair<std::string, Rational>> params;
    if (!tail.empty()) {
        for (auto item : split(tail, ',')) {
            auto eq = item.find('=');
            std::string key = eq == std::string_view::npos ? std::string{} : std::string(item.substr(0, eq));
            std::string_view raw = eq == std::string_view::npos ? item : item.substr(eq + 1);
            auto value = parse_rational(raw);
            if (!value) throw ThetaSpecError("bad number '" + std::string(raw) + "' in theta spec");
            params.emplace_back(std::move(key), *value);
        }
    }

    auto expect_count = [&](std::size_t n) {
        if (params.size() != n) {
            throw ThetaSpecError("theta family '" + std::string(head) + "' takes " + std::to_string(n) +
                                 " parameter(s)");
        }
    };

    switch (spec.family) {
        case ThetaFamily::floor:
        case ThetaFamily::sqrtfloor:
        case ThetaFamily::pw32:
        case ThetaFamily::v23:
        case ThetaFamily::pow2:
            expect_count(0);
            spec.text = std::string(head);
            break;
        case ThetaFamily::frac:
        case ThetaFamily::dirac:
            expect_count(1);
            spec.r = require_param(params, "r", text);
            spec.text = std::string(head) + ":r=" + to_string(spec.r);
            break;
        case ThetaFamily::smooth:
            expect_count(1);
            spec.lambda = require_param(params, "lambda", text);
            spec.text = "smooth:lambda=" + to_string(spec.lambda);
            break;
        case ThetaFamily::linear:
            expect_count(2);
            spec.r = require_param(params, "r", text);
            spec.s = require_param(params, "s", text);
            spec.text = "linear:r=" + to_string(spec.r) + ",s=" + to_string(spec.s);
            break;
        case ThetaFamily::theta_m: {
            expect_count(1);
            if (!params[0].first.empty() && params[0].first != "m") {
                throw ThetaSpecError("theta_m takes 'm:<int>' or 'm:m=<int>'");
            }
            const Rational& v = params[0].second;
            if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw ThetaSpecError("m must be an integer");
            spec.m = v.get_num().get_si();
            spec.text = "m:" + std::to_string(spec.m);
            break;
        }
        case ThetaFamily::coeffs: break;
    }
    return spec;
}

// ---------------------------------------------------------------------------
// ThetaFunction
// ---------------------------------------------------------------------------

struct ThetaFunction::Impl {
    ThetaSpec spec;
    double r = 0;
    double s = 0;
    double lambda = 0;
    std::optional<CoefficientSource> z;
};

namespace {

template <typename T>
T from_u64(std::uint64_t v) {
    if constexpr (std::is_same_v<T, Rational>) {
        return Rational(BigInt(static_cast<unsigned long>(v)));
    } else {
        return static_cast<double>(v);
    }
}

template <typename T>
const T& pick(const Rational& exact, const double& approx) {
    if constexpr (std::is_same_v<T, Rational>) {
        return exact;
    } else {
        return approx;
    }
}

// theta(n/k) with integer floors. Returns nullopt when an exact value would
// be irrational.
template <typename T>
std::optional<T> ratio_eval(const ThetaFunction::Impl& th, std::uint64_t n, std::uint64_t k) {
    if (k == 0 || n < k) throw std::domain_error("theta(n/k) needs n >= k >= 1");
    const std::uint64_t q = n / k;
    const std::uint64_t rem = n - q * k;
    const T tn = from_u64<T>(n);
    const T t = from_u64<T>(k) / tn;
    const T one = T(1);
    switch (th.spec.family) {
        case ThetaFamily::floor: return from_u64<T>(q * k) / tn;
        case ThetaFamily::frac: return one - pick<T>(th.spec.r, th.r) * from_u64<T>(rem) / tn;
        case ThetaFamily::sqrtfloor: {
            if (rem == 0) return one;
            if constexpr (std::is_same_v<T, Rational>) {
                auto root = exact_sqrt(Rational(BigInt(static_cast<unsigned long>(q))));
                if (!root) return std::nullopt;
                return one - from_u64<T>(rem) / (tn * *root);
            } else {
                return one - static_cast<double>(rem) / (tn * std::sqrt(static_cast<double>(q)));
            }
        }
        case ThetaFamily::pw32:
            if (n <= 3 * k) return from_u64<T>(q * k) / tn;
            return t + T(1) / T(2);
        case ThetaFamily::smooth: return one - pick<T>(th.spec.lambda, th.lambda) * t * (one - t);
        case ThetaFamily::linear: {
            const T& r = pick<T>(th.spec.r, th.r);
            const T& s = pick<T>(th.spec.s, th.s);
            return (s - r) * t + r;
        }
        case ThetaFamily::v23: return n >= 2 * k ? one - t : t;
        case ThetaFamily::dirac: return n == 2 * k ? pick<T>(th.spec.r, th.r) : one;
        case ThetaFamily::pow2: return from_u64<T>(std::bit_floor(q) * k) / tn;
        case ThetaFamily::theta_m: {
            const std::uint64_t m = static_cast<std::uint64_t>(th.spec.m);
            if (n < m * k) return from_u64<T>(q * k) / tn;
            return t + one - one / from_u64<T>(m);
        }
        case ThetaFamily::coeffs: {
            if constexpr (std::is_same_v<T, Rational>) {
                if (!th.z->is_exact()) return std::nullopt;
                return th.z->exact_floor_sum(q) * t;
            } else {
                return th.z->floor_sum(q) * t;
            }
        }
    }
    throw std::logic_error("unhandled theta family");
}

double eval_real(const ThetaFunction::Impl& th, double x) {
    if (!(x >= 1.0)) throw std::domain_error("theta(x) is defined for x >= 1");
    const double fl = std::floor(x);
    switch (th.spec.family) {
        case ThetaFamily::floor: return fl / x;
        case ThetaFamily::frac: return 1.0 - th.r * (x - fl) / x;
        case ThetaFamily::sqrtfloor: return 1.0 - (x - fl) / (x * std::sqrt(fl));
        case ThetaFamily::pw32: return x <= 3.0 ? fl / x : 1.0 / x + 0.5;
        case ThetaFamily::smooth: {
            const double t = 1.0 / x;
            return 1.0 - th.lambda * t * (1.0 - t);
        }
        case ThetaFamily::linear: return (th.s - th.r) / x + th.r;
        case ThetaFamily::v23: return x >= 2.0 ? 1.0 - 1.0 / x : 1.0 / x;
        // Callers with exact n/k go through at_ratio; real arguments get a
        // tolerance band around 2.
        case ThetaFamily::dirac: return std::abs(x - 2.0) <= 1e-12 ? th.r : 1.0;
        case ThetaFamily::pow2: {
            int e = 0;
            std::frexp(x, &e);
            return std::ldexp(1.0, e - 1) / x;
        }
        case ThetaFamily::theta_m: {
            const double m = static_cast<double>(th.spec.m);
            return x < m ? fl / x : 1.0 / x + 1.0 - 1.0 / m;
        }
        case ThetaFamily::coeffs: {
            if (fl >= 1.8e19) throw std::domain_error("theta(x): x too large for coefficient kernels");
            return th.z->floor_sum(static_cast<std::uint64_t>(fl)) / x;
        }
    }
    throw std::logic_error("unhandled theta family");
}

VdPiece make_piece(Rational lo, bool lo_closed, Rational hi, bool hi_closed, std::vector<Rational> poly) {
    VdPiece p;
    p.lo = std::move(lo);
    p.hi = std::move(hi);
    p.lo_closed = lo_closed;
    p.hi_closed = hi_closed;
    p.poly.reserve(poly.size());
    for (const auto& c : poly) p.poly.push_back(to_double(c));
    p.exact_poly = std::move(poly);
    return p;
}

Rational inv(std::uint64_t x) { return Rational(1) / Rational(BigInt(static_cast<unsigned long>(x))); }

}  // namespace

bool VdPiece::contains(const Rational& t) const {
    const bool above = lo_closed ? t >= lo : t > lo;
    const bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
}

double VdPiece::eval(double t) const {
    double acc = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * t + *it;
    return acc;
}

ThetaFamily ThetaFunction::family() const { return impl_->spec.family; }
const std::string& ThetaFunction::spec() const { return impl_->spec.text; }
const ThetaSpec& ThetaFunction::params() const { return impl_->spec; }
const CoefficientSource* ThetaFunction::coefficients() const { return impl_->z ? &*impl_->z : nullptr; }

double ThetaFunction::operator()(double x) const { return eval_real(*impl_, x); }

double ThetaFunction::diamond(double t) const {
    if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("theta_d(t) is defined for 0 < t <= 1");
    return eval_real(*impl_, 1.0 / t);
}

double ThetaFunction::at_ratio(std::uint64_t n, std::uint64_t k) const { return *ratio_eval<double>(*impl_, n, k); }

std::optional<Rational> ThetaFunction::exact_at_ratio(std::uint64_t n, std::uint64_t k) const {
    return ratio_eval<Rational>(*impl_, n, k);
}

std::optional<Rational> ThetaFunction::exact(const Rational& x) const {
    if (x < 1) throw std::domain_error("theta(x) is defined for x >= 1");
    if (!x.get_num().fits_ulong_p() || !x.get_den().fits_ulong_p()) {
        throw std::domain_error("theta: rational argument too large");
    }
    return exact_at_ratio(x.get_num().get_ui(), x.get_den().get_ui());
}

bool ThetaFunction::supports_exact() const {
    if (impl_->spec.family == ThetaFamily::coeffs) return impl_->z->is_exact();
    return true;
}

double ThetaFunction::bound() const {
    const auto& th = *impl_;
    switch (th.spec.family) {
        case ThetaFamily::smooth: return std::max(1.0, std::abs(1.0 - th.lambda / 4.0));
        case ThetaFamily::linear: return std::max(std::abs(th.r), std::abs(th.s));
        case ThetaFamily::coeffs: return th.z->kernel_bound();
        default: return 1.0;
    }
}

bool ThetaFunction::is_continuous() const {
    switch (impl_->spec.family) {
        case ThetaFamily::smooth:
        case ThetaFamily::linear:
        case ThetaFamily::v23: return true;
        default: return false;
    }
}

std::optional<Sequence> ThetaFunction::step_jumps(std::size_t n) const {
    switch (impl_->spec.family) {
        case ThetaFamily::floor: return ones(n).relabeled("jumps(floor)");
        case ThetaFamily::pow2: {
            std::vector<Rational> c(n, Rational(0));
            c[0] = 1;
            for (std::size_t p = 2; p <= n; p *= 2) c[p - 1] = Rational(BigInt(static_cast<unsigned long>(p / 2)));
            return Sequence(std::move(c), "jumps(pow2)");
        }
        case ThetaFamily::coeffs: {
            const auto& z = *impl_->z;
            if (z.extent() < n) {
                throw std::out_of_range("coefficient source '" + z.name() + "' truncated at " +
                                        std::to_string(z.extent()));
            }
            if (z.is_exact()) {
                std::vector<Rational> c(n, Rational(0));
                for (std::size_t d = 1; d <= n; ++d) {
                    Rational zd = z.exact_value(d);
                    if (zd == 0) continue;
                    for (std::size_t m = d; m <= n; m += d) c[m - 1] += zd;
                }
                return Sequence(std::move(c), "jumps(" + z.name() + ")");
            }
            std::vector<double> c(n, 0.0);
            for (std::size_t d = 1; d <= n; ++d) {
                double zd = z.value(d);
                if (zd == 0.0) continue;
                for (std::size_t m = d; m <= n; m += d) c[m - 1] += zd;
            }
            return Sequence(std::move(c), "jumps(" + z.name() + ")");
        }
        default: return std::nullopt;
    }
}

std::optional<std::vector<VdPiece>> ThetaFunction::finite_pieces() const {
    const auto& sp = impl_->spec;
    const Rational zero = 0;
    const Rational one = 1;
    const Rational half = Rational(1, 2);
    std::vector<VdPiece> out;
    switch (sp.family) {
        case ThetaFamily::smooth:
            out.push_back(make_piece(zero, false, one, true, {one, -sp.lambda, sp.lambda}));
            break;
        case ThetaFamily::linear:
            out.push_back(make_piece(zero, false, one, true, {sp.r, sp.s - sp.r}));
            break;
        case ThetaFamily::v23:
            out.push_back(make_piece(half, false, one, true, {zero, one}));
            out.push_back(make_piece(zero, false, half, true, {one, -one}));
            break;
        case ThetaFamily::pw32: {
            const Rational third = Rational(1, 3);
            out.push_back(make_piece(half, false, one, true, {zero, one}));
            out.push_back(make_piece(third, false, half, true, {zero, Rational(2)}));
            out.push_back(make_piece(third, true, third, true, {zero, Rational(3)}));
            out.push_back(make_piece(zero, false, third, false, {half, one}));
            break;
        }
        case ThetaFamily::dirac:
            out.push_back(make_piece(half, false, one, true, {one}));
            out.push_back(make_piece(half, true, half, true, {sp.r}));
            out.push_back(make_piece(zero, false, half, false, {one}));
            break;
        case ThetaFamily::theta_m: {
            const auto m = static_cast<std::uint64_t>(sp.m);
            for (std::uint64_t j = 1; j < m; ++j) {
                out.push_back(make_piece(inv(j + 1), false, inv(j), true, {zero, Rational(BigInt(static_cast<unsigned long>(j)))}));
            }
            out.push_back(make_piece(zero, false, inv(m), true, {one - inv(m), one}));
            break;
        }
        default: return std::nullopt;
    }
    return out;
}

std::vector<VdPiece> ThetaFunction::leading_pieces(std::size_t count) const {
    if (auto finite = finite_pieces()) return *finite;
    const auto& th = *impl_;
    std::vector<VdPiece> out;
    out.reserve(count);
    switch (th.spec.family) {
        case ThetaFamily::floor:
        case ThetaFamily::frac:
        case ThetaFamily::coeffs:
            for (std::uint64_t n = 1; n <= count; ++n) {
                // On (1/(n+1), 1/n], floor(1/t) = n.
                if (th.spec.family == ThetaFamily::floor) {
                    out.push_back(make_piece(inv(n + 1), false, inv(n), true, {Rational(0), Rational(BigInt(static_cast<unsigned long>(n)))}));
                } else if (th.spec.family == ThetaFamily::frac) {
                    out.push_back(make_piece(inv(n + 1), false, inv(n), true,
                                             {Rational(1) - th.spec.r, th.spec.r * Rational(BigInt(static_cast<unsigned long>(n)))}));
                } else if (th.z->is_exact()) {
                    out.push_back(make_piece(inv(n + 1), false, inv(n), true, {Rational(0), th.z->exact_floor_sum(n)}));
                } else {
                    VdPiece p;
                    p.lo = inv(n + 1);
                    p.hi = inv(n);
                    p.poly = {0.0, th.z->floor_sum(n)};
                    out.push_back(std::move(p));
                }
            }
            break;
        case ThetaFamily::sqrtfloor:
            for (std::uint64_t n = 1; n <= count; ++n) {
                // 1 - (1 - n t) / sqrt(n) on (1/(n+1), 1/n].
                VdPiece p;
                p.lo = inv(n + 1);
                p.hi = inv(n);
                const double root = std::sqrt(static_cast<double>(n));
                p.poly = {1.0 - 1.0 / root, root};
                if (auto r = exact_sqrt(Rational(BigInt(static_cast<unsigned long>(n))))) {
                    p.exact_poly = std::vector<Rational>{Rational(1) - Rational(1) / *r, *r};
                }
                out.push_back(std::move(p));
            }
            break;
        case ThetaFamily::pow2:
            for (std::uint64_t j = 0; j < count && j < 62; ++j) {
                const std::uint64_t p2 = std::uint64_t{1} << j;
                out.push_back(make_piece(inv(2 * p2), false, inv(p2), true, {Rational(0), Rational(BigInt(static_cast<unsigned long>(p2)))}));
            }
            break;
        default: break;
    }
    return out;
}

ThetaFunction make_theta(const ThetaSpec& spec, std::size_t extent) {
    auto impl = std::make_shared<ThetaFunction::Impl>();
    impl->spec = spec;
    impl->r = to_double(spec.r);
    impl->s = to_double(spec.s);
    impl->lambda = to_double(spec.lambda);

    auto reject = [&](const std::string& why) { throw ThetaSpecError("theta '" + spec.text + "': " + why); };
    switch (spec.family) {
        case ThetaFamily::frac:
            if (!(spec.r > 0 && spec.r <= 1)) reject("needs 0 < r <= 1");
            break;
        case ThetaFamily::dirac:
            if (!(spec.r > 0 && spec.r < 1)) reject("needs 0 < r < 1");
            break;
        case ThetaFamily::linear:
            if (spec.s == 0) reject("theta(1) = s must be nonzero");
            break;
        case ThetaFamily::theta_m:
            if (spec.m < 2) reject("needs integer m >= 2");
            break;
        case ThetaFamily::coeffs: {
            if (spec.coeffs == "file") {
                Sequence z = read_sequence_csv(spec.coeffs_path, "file:" + spec.coeffs_path);
                impl->z.emplace("file", std::move(z), CoefficientSource::Extension::finite_support);
            } else {
                impl->z.emplace(CoefficientSource::named(spec.coeffs, extent));
            }
            if (impl->z->value(1) == 0.0) reject("z_1 = theta(1) must be nonzero");
            if (!std::isfinite(impl->z->kernel_bound())) reject("kernel is unbounded (coefficients with nonzero mean)");
            break;
        }
        default: break;
    }
    return ThetaFunction(std::move(impl));
}

ThetaFunction make_theta(std::string_view spec, std::size_t extent) {
    return make_theta(parse_theta_spec(spec), extent);
}

ThetaFunction make_coeffs_theta(CoefficientSource source) {
    ThetaSpec spec;
    spec.family = ThetaFamily::coeffs;
    spec.coeffs = source.name();
    spec.text = "coeffs:" + source.name();
    auto impl = std::make_shared<ThetaFunction::Impl>();
    impl->spec = spec;
    impl->z.emplace(std::move(source));
    if (impl->z->value(1) == 0.0) throw ThetaSpecError("coeffs: z_1 = theta(1) must be nonzero");
    if (!std::isfinite(impl->z->kernel_bound())) throw ThetaSpecError("coeffs: kernel is unbounded");
    return ThetaFunction(std::move(impl));
}

// ---------------------------------------------------------------------------
// Breakpoints and sampling
// ---------------------------------------------------------------------------

std::vector<double> breakpoints(const ThetaFunction& theta, double t_min) {
    if (!(t_min > 0.0 && t_min < 1.0)) throw std::invalid_argument("breakpoints: t_min must lie in (0, 1)");
    std::vector<double> out;
    const double x_max = 1.0 / t_min;  // breakpoints need 1/x > t_min, i.e. x < x_max
    switch (theta.family()) {
        case ThetaFamily::floor:
        case ThetaFamily::frac:
        case ThetaFamily::sqrtfloor:
            for (std::uint64_t x = 2; static_cast<double>(x) < x_max; ++x) out.push_back(1.0 / static_cast<double>(x));
            break;
        case ThetaFamily::pow2:
            for (std::uint64_t x = 2; static_cast<double>(x) < x_max; x *= 2) out.push_back(1.0 / static_cast<double>(x));
            break;
        case ThetaFamily::coeffs: {
            // Merge the streams k, 2k, 3k, ... for every k with z_k != 0.
            const CoefficientSource& z = *theta.coefficients();
            using Entry = std::pair<std::uint64_t, std::uint64_t>;  // (multiple, k)
            std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
            for (std::uint64_t k = 1; static_cast<double>(k) < x_max; ++k) {
                if (z.value(k) != 0.0) heap.emplace(k, k);
            }
            std::uint64_t last = 0;
            while (!heap.empty()) {
                auto [x, k] = heap.top();
                heap.pop();
                if (x != last && x >= 2) out.push_back(1.0 / static_cast<double>(x));
                last = x;
                if (static_cast<double>(x + k) < x_max) heap.emplace(x + k, k);
            }
            break;
        }
        default: {
            if (auto pieces = theta.finite_pieces()) {
                for (const auto& p : *pieces) {
                    const double b = to_double(p.hi);
                    if (b > t_min && b < 1.0) out.push_back(b);
                }
            }
            break;
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<double, double>> vd_sample(const ThetaFunction& theta, std::size_t points, double t_min) {
    if (points < 2) throw std::invalid_argument("vd_sample: need at least 2 points");
    if (!(t_min > 0.0 && t_min < 1.0)) throw std::invalid_argument("vd_sample: t_min must lie in (0, 1)");
    std::vector<double> ts;
    ts.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        ts.push_back(t_min + (1.0 - t_min) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    ts.back() = 1.0;
    constexpr double side = 1e-9;
    for (double b : breakpoints(theta, t_min)) {
        ts.push_back(b * (1.0 - side));
        ts.push_back(b);
        ts.push_back(std::min(1.0, b * (1.0 + side)));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<std::pair<double, double>> out;
    out.reserve(ts.size());
    for (double t : ts) {
        if (t < t_min) continue;
        out.emplace_back(t, theta.diamond(t));
    }
    return out;
}

}  // namespace fgv
