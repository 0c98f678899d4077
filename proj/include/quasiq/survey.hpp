#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "quasiq/counting.hpp"

namespace quasiq {

// Smallest numerator of each order found in a scan of [1, limit].
struct ScanReport {
  std::uint64_t base = 0;
  std::uint64_t bound = 0;
  std::uint64_t limit = 0;
  // smallest[k - 1] is the least a with ord(a/M) = k, if one was seen.
  std::vector<std::optional<std::uint64_t>> smallest;
  std::uint64_t scanned = 0;     // numerators coprime to M that were classified
  std::uint64_t work_units = 0;  // residue-recurrence steps executed

  std::optional<std::uint64_t> smallest_of_order(std::uint64_t k) const {
    return (k >= 1 && k <= smallest.size()) ? smallest[k - 1] : std::nullopt;
  }
};

struct ScanOptions {
  unsigned threads = 1;
  std::uint64_t block = 1 << 16;  // numerators per work item
};

// Classifies every a in [1, limit] coprime to M with order bound N. The
// report does not depend on the thread count.
ScanReport scan_orders(std::uint64_t base, std::uint64_t bound, std::uint64_t limit, ScanOptions options = {});

// Least a in [1, a_max] with gcd(a, M) = 1 and ord(a/M) = n.
std::optional<std::uint64_t> smallest_numerator(std::uint64_t base, std::uint64_t n, std::uint64_t a_max);

// #{1 <= a <= k_max : gcd(a, M) = 1, ord(a/M) = n} / k_max.
ExactProbability empirical_density(std::uint64_t base, std::uint64_t n, std::uint64_t k_max);

// #{1 <= a <= k_max : gcd(a, M) = 1, ord(a/M) <= N} / k_max.
ExactProbability finite_order_density(std::uint64_t base, std::uint64_t bound, std::uint64_t k_max);

// Numerators over p of the three explicit order-n families:
//   (p-1)p^n + 1,  (-1)^n p^n + p - 1,  -(n+1)p^n + p^{n-1} + 1 (n >= 2 only).
std::vector<mpz_class> family_numerators(std::uint64_t p, std::uint64_t n);

// True iff every family member for (p, n) has order exactly n. Throws
// std::invalid_argument unless p is an odd prime.
bool verify_family(std::uint64_t p, std::uint64_t n);

}  // namespace quasiq
