#include "fgv/sequence.hpp"

#include <stdexcept>

namespace fgv {

Sequence::Sequence(std::vector<Rational> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    if (size() == 0) throw std::invalid_argument("Sequence: length must be at least 1");
}

Sequence::Sequence(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
    if (size() == 0) throw std::invalid_argument("Sequence: length must be at least 1");
}

std::size_t Sequence::size() const {
    return std::visit([](const auto& v) { return v.size(); }, values_);
}

void Sequence::check_index(std::size_t n) const {
    if (n == 0 || n > size()) {
        throw std::out_of_range("Sequence '" + label_ + "': index " + std::to_string(n) +
                                " outside 1.." + std::to_string(size()));
    }
}

double Sequence::value(std::size_t n) const {
    check_index(n);
    if (is_exact()) return to_double(std::get<std::vector<Rational>>(values_)[n - 1]);
    return std::get<std::vector<double>>(values_)[n - 1];
}

const Rational& Sequence::exact(std::size_t n) const {
    check_index(n);
    return exact_values()[n - 1];
}

const std::vector<Rational>& Sequence::exact_values() const {
    if (!is_exact()) throw std::logic_error("Sequence '" + label_ + "' holds floats, not exact values");
    return std::get<std::vector<Rational>>(values_);
}

const std::vector<double>& Sequence::float_values() const {
    if (is_exact()) throw std::logic_error("Sequence '" + label_ + "' holds exact values; call to_float()");
    return std::get<std::vector<double>>(values_);
}

Sequence Sequence::to_float() const {
    if (!is_exact()) return *this;
    const auto& src = exact_values();
    std::vector<double> out(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = to_double(src[i]);
    return Sequence(std::move(out), label_);
}

Sequence Sequence::prefix(std::size_t n) const {
    if (n == 0 || n > size()) throw std::out_of_range("Sequence::prefix: bad length");
    return std::visit(
        [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            return Sequence(V(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)), label_);
        },
        values_);
}

Sequence Sequence::relabeled(std::string label) const {
    Sequence copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

std::string Sequence::format(std::size_t n) const {
    check_index(n);
    if (is_exact()) return to_string(exact_values()[n - 1]);
    return to_string_roundtrip(float_values()[n - 1]);
}

bool operator==(const Sequence& lhs, const Sequence& rhs) {
    if (lhs.size() != rhs.size() || lhs.is_exact() != rhs.is_exact()) return false;
    if (lhs.is_exact()) return lhs.exact_values() == rhs.exact_values();
    return lhs.float_values() == rhs.float_values();
}

}  // namespace fgv
