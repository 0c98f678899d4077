#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace quasiq {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Trial division; n >= 1. factorize(1) is empty.
std::vector<PrimePower> factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);
std::uint64_t totient(std::uint64_t n);
// Sorted ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// phi(M^e) for e >= 1, as an exact integer.
mpz_class totient_of_power(std::uint64_t base, std::uint64_t exponent);

// Binomial coefficient by the multiplicative formula.
mpz_class binomial(std::uint64_t n, std::uint64_t k);

/// A probability held as an exact reduced rational in [0, 1].
class ExactProbability {
 public:
  ExactProbability() = default;
  // Throws std::invalid_argument outside [0, 1].
  explicit ExactProbability(mpq_class value);

  const mpq_class& value() const { return value_; }
  // "num/den"
  std::string to_string() const;
  // Decimal expansion rounded to `digits` places. Approximate by nature.
  std::string approx(unsigned digits = 12) const;

  friend bool operator==(const ExactProbability& a, const ExactProbability& b) { return a.value_ == b.value_; }

 private:
  mpq_class value_{0};
};

/**
 * Memo of A(n, M), the number of classes mod M^{n+1} of numerators a with
 * gcd(a, M) = 1 and ord(a/M) = n:
 *
 *   A(0,1) = 1, A(n,1) = 0 (n >= 1), A(0,M) = 0, A(1,M) = phi(M) (M > 1),
 *   A(n,M) = phi(M) * sum_{d | M} A(n-1,d) (M/d)^{n-1}   otherwise.
 *
 * Safe to share between threads.
 */
class CountTable {
 public:
  mpz_class count(std::uint64_t n, std::uint64_t base);

 private:
  const mpz_class& count_locked(std::uint64_t n, std::uint64_t base);

  std::mutex mutex_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, mpz_class> memo_;
  std::map<std::uint64_t, std::vector<std::uint64_t>> divisor_memo_;
};

// A(n, M) through a process-wide CountTable.
mpz_class count_A(std::uint64_t n, std::uint64_t base);

// C(n+k-2, n-1) * phi(p^k)^n. Throws std::invalid_argument unless p is prime,
// n >= 1 and k >= 1.
mpz_class count_A_prime_power(std::uint64_t n, std::uint64_t p, unsigned k);

// S_N = sum_{n=0}^{N} A(n,M) / phi(M^{n+1}).
ExactProbability series_partial_sum(std::uint64_t base, std::uint64_t terms);

// Probability that the divisor process M_{j+1} = M_j / gcd(M_j, a_j) with
// uniformly random a_j first reaches 1 after exactly n steps.
ExactProbability random_process_prob(std::uint64_t n, std::uint64_t base);

// Natural density A(n,M) / M^{n+1} of order-n numerators.
ExactProbability class_density(std::uint64_t n, std::uint64_t base);

}  // namespace quasiq
