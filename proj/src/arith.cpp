#include "fgv/arith.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace fgv {

namespace {

void require_positive(std::size_t n, const char* what) {
    if (n == 0) throw std::invalid_argument(std::string(what) + ": N must be at least 1");
}

std::vector<Rational> periodic(std::size_t n, const std::vector<long>& pattern) {
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = pattern[i % pattern.size()];
    return out;
}

}  // namespace

SpfTable linear_sieve(std::size_t n) {
    SpfTable t;
    t.spf.assign(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (t.spf[i] == 0) {
            t.spf[i] = static_cast<std::uint32_t>(i);
            t.primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (std::uint32_t p : t.primes) {
            std::size_t m = static_cast<std::size_t>(p) * i;
            if (p > t.spf[i] || m > n) break;
            t.spf[m] = p;
        }
    }
    return t;
}

Sequence mobius_sieve(std::size_t n) {
    require_positive(n, "mobius_sieve");
    auto t = linear_sieve(n);
    std::vector<Rational> mu(n);
    mu[0] = 1;
    std::vector<int> m(n + 1, 0);
    m[1] = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        std::size_t p = t.spf[i];
        std::size_t q = i / p;
        m[i] = (q % p == 0) ? 0 : -m[q];
        mu[i - 1] = m[i];
    }
    return Sequence(std::move(mu), "mobius");
}

Sequence liouville_sieve(std::size_t n) {
    require_positive(n, "liouville_sieve");
    auto t = linear_sieve(n);
    std::vector<int> l(n + 1, 0);
    l[1] = 1;
    std::vector<Rational> out(n);
    out[0] = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        l[i] = -l[i / t.spf[i]];
        out[i - 1] = l[i];
    }
    return Sequence(std::move(out), "liouville");
}

Sequence summatory(const Sequence& s) {
    std::string label = "summatory(" + s.label() + ")";
    if (s.is_exact()) {
        const auto& v = s.exact_values();
        std::vector<Rational> out(v.size());
        Rational acc = 0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            acc += v[i];
            out[i] = acc;
        }
        return Sequence(std::move(out), std::move(label));
    }
    const auto& v = s.float_values();
    std::vector<double> out(v.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i];
        out[i] = acc;
    }
    return Sequence(std::move(out), std::move(label));
}

Sequence ramanujan_tau(std::size_t n) {
    require_positive(n, "ramanujan_tau");
    // tau(k) = [q^(k-1)] P(q)^24 with P = prod (1 - q^m). P is sparse by the
    // pentagonal number theorem, and the power is taken with the
    // J.C.P. Miller recurrence g_j = (1/j) sum_i (25 i - j) p_i g_(j-i).
    const std::size_t order = n - 1;
    std::vector<std::pair<std::size_t, long>> p;  // nonzero (index, coeff), index >= 1
    for (long k = 1;; ++k) {
        long sign = (k % 2 == 0) ? 1 : -1;
        std::size_t a = static_cast<std::size_t>(k * (3 * k - 1) / 2);
        std::size_t b = static_cast<std::size_t>(k * (3 * k + 1) / 2);
        if (a > order) break;
        p.emplace_back(a, sign);
        if (b <= order) p.emplace_back(b, sign);
    }
    std::vector<BigInt> g(order + 1);
    g[0] = 1;
    BigInt acc;
    for (std::size_t j = 1; j <= order; ++j) {
        acc = 0;
        for (auto [i, coeff] : p) {
            if (i > j) break;
            long weight = 25 * static_cast<long>(i) - static_cast<long>(j);
            acc += g[j - i] * (weight * coeff);
        }
        mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), j);
        g[j] = acc;
    }
    std::vector<Rational> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = Rational(g[k]);
    return Sequence(std::move(out), "tau");
}

Sequence chi4(std::size_t n) {
    require_positive(n, "chi4");
    return Sequence(periodic(n, {1, 0, -1, 0}), "chi4");
}

long double dh_xi() {
    const long double s5 = std::sqrt(5.0L);
    return (-2.0L + std::sqrt(10.0L - 2.0L * s5)) / (-1.0L + s5);
}

Sequence dh_sequence(std::size_t n) {
    require_positive(n, "dh_sequence");
    const double xi = static_cast<double>(dh_xi());
    const double pattern[5] = {1.0, xi, -xi, -1.0, 0.0};
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = pattern[i % 5];
    return Sequence(std::move(out), "dh");
}

Sequence alternating_unit(std::size_t n) {
    require_positive(n, "alternating_unit");
    return Sequence(periodic(n, {1, -1}), "alt");
}

Sequence ones(std::size_t n) {
    require_positive(n, "ones");
    return Sequence(periodic(n, {1}), "ones");
}

Sequence dirichlet_unit(std::size_t n) {
    require_positive(n, "dirichlet_unit");
    std::vector<Rational> out(n, Rational(0));
    out[0] = 1;
    return Sequence(std::move(out), "unit");
}

}  // namespace fgv
