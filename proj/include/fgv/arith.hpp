// Sieve-based arithmetic sequences used as coefficients and kernels.
#pragma once

#include "fgv/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fgv {

/// Smallest prime factor table for 0..n (entries 0 and 1 are 0), built by a
/// linear sieve. Also returns the primes found.
struct SpfTable {
    std::vector<std::uint32_t> spf;
    std::vector<std::uint32_t> primes;
};
SpfTable linear_sieve(std::size_t n);

Sequence mobius_sieve(std::size_t n);
Sequence liouville_sieve(std::size_t n);

/// Partial sums; exactness preserved.
Sequence summatory(const Sequence& s);

/// tau(n) as the coefficient of q^n in q * prod_{m>=1} (1 - q^m)^24.
Sequence ramanujan_tau(std::size_t n);

/// The character mod 4: 1, 0, -1, 0, ...
Sequence chi4(std::size_t n);

/// Davenport-Heilbronn coefficients, period 5: [1, xi, -xi, -1, 0]. Float only.
Sequence dh_sequence(std::size_t n);
long double dh_xi();

/// (-1)^(n-1).
Sequence alternating_unit(std::size_t n);

/// All ones, and the Dirichlet unit e_1 = (1, 0, 0, ...).
Sequence ones(std::size_t n);
Sequence dirichlet_unit(std::size_t n);

}  // namespace fgv
