// Sequence: a real-valued array indexed from 1, held either as exact
// rationals or as doubles.
#pragma once

#include "fgv/rational.hpp"

#include <cstddef>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace fgv {

enum class Exactness { exact, floating };

class Sequence {
public:
    Sequence() = default;
    Sequence(std::vector<Rational> values, std::string label);
    Sequence(std::vector<double> values, std::string label);

    std::size_t size() const;
    bool is_exact() const { return std::holds_alternative<std::vector<Rational>>(values_); }
    Exactness exactness() const { return is_exact() ? Exactness::exact : Exactness::floating; }
    const std::string& label() const { return label_; }

    // 1-based access. `value` converts exact entries to double.
    double value(std::size_t n) const;
    const Rational& exact(std::size_t n) const;

    // 0-based storage; entry i holds index i+1. Each accessor requires the
    // matching representation; call to_float() first to read an exact
    // sequence as doubles.
    const std::vector<Rational>& exact_values() const;
    const std::vector<double>& float_values() const;

    template <typename T>
    const std::vector<T>& values() const {
        if constexpr (std::is_same_v<T, Rational>) {
            return exact_values();
        } else {
            return float_values();
        }
    }

    Sequence to_float() const;
    Sequence prefix(std::size_t n) const;
    Sequence relabeled(std::string label) const;

    /// Entry n rendered as "p/q" (exact) or a round-trip decimal (float).
    std::string format(std::size_t n) const;

private:
    void check_index(std::size_t n) const;

    std::variant<std::vector<Rational>, std::vector<double>> values_;
    std::string label_;
};

bool operator==(const Sequence& lhs, const Sequence& rhs);

}  // namespace fgv
