#include "fgv/rational.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <system_error>

namespace fgv {

Rational make_ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("make_ratio: zero denominator");
    Rational r{BigInt{static_cast<long>(num)}, BigInt{static_cast<long>(den)}};
    r.canonicalize();
    return r;
}

BigInt floor_of(const Rational& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

std::optional<Rational> parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_rational(text.substr(0, slash));
        auto den = parse_rational(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        if (num->get_den() != 1 || den->get_den() != 1) return std::nullopt;
        Rational r = *num / *den;
        return r;
    }

    bool negative = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            any_digit = true;
            if (seen_point) ++scale;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) return std::nullopt;
    long exponent = 0;
    if (i < text.size()) {
        if (text[i] != 'e' && text[i] != 'E') return std::nullopt;
        ++i;
        auto rest = text.substr(i);
        if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
        if (ec != std::errc{} || ptr != rest.data() + rest.size()) return std::nullopt;
    }
    BigInt mantissa{digits, 10};
    if (negative) mantissa = -mantissa;
    long power = exponent - scale;
    BigInt ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(power < 0 ? -power : power));
    Rational r = power < 0 ? Rational{mantissa, ten_pow} : Rational{mantissa * ten_pow};
    r.canonicalize();
    return r;
}

double to_double(const Rational& x) {
    const double d = x.get_d();
    if (!std::isfinite(d) || Rational(d) == x) return d;
    const double other = std::nextafter(d, x > Rational(d) ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(other)) return d;
    const Rational gap_d = abs(x - Rational(d));
    const Rational gap_o = abs(x - Rational(other));
    if (gap_o < gap_d) return other;
    if (gap_d < gap_o) return d;
    return (std::bit_cast<std::uint64_t>(d) & 1) == 0 ? d : other;
}

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string_roundtrip(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::runtime_error("to_string_roundtrip: formatting failed");
    return std::string(buf.data(), ptr);
}

std::optional<Rational> exact_sqrt(const Rational& x) {
    if (x < 0) return std::nullopt;
    BigInt num = x.get_num();
    BigInt den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    BigInt rn = sqrt(num);
    BigInt rd = sqrt(den);
    Rational r{rn, rd};
    r.canonicalize();
    return r;
}

Rational pow_int(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base == 0) throw std::domain_error("pow_int: zero to a negative power");
        return pow_int(Rational{1} / base, -exponent);
    }
    BigInt num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational{num, den};
}

}  // namespace fgv
