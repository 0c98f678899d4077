#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "quasiq/class_solver.hpp"
#include "quasiq/rational.hpp"

namespace quasiq {

/**
 * An element of Q_p known to finitely many digits: p^valuation * unit, where
 * the unit is known modulo p^precision. Zero is exact and carries no
 * valuation. Operations that would have to invent digits throw
 * PrecisionError instead of truncating silently.
 */
class TruncatedPadic {
 public:
  static TruncatedPadic zero(std::uint64_t p);
  // Throws std::invalid_argument if p is not prime or precision is 0.
  static TruncatedPadic from_rational(const ExactRational& x, std::uint64_t p, unsigned precision);
  static TruncatedPadic from_integer(const mpz_class& a, std::uint64_t p, unsigned precision);

  std::uint64_t prime() const { return p_; }
  bool is_zero() const { return zero_; }
  // Meaningful only when !is_zero().
  long valuation() const { return valuation_; }
  const mpz_class& unit() const { return unit_; }
  unsigned precision() const { return precision_; }
  // Digits below this exponent are known.
  long absolute_precision() const { return valuation_ + static_cast<long>(precision_); }

  // Digit a_j of x = sum a_j p^j. Throws PrecisionError past the known digits.
  unsigned long digit(long j) const;

  // True iff x agrees with this value on every known digit.
  bool agrees_with(const ExactRational& x) const;

  std::string to_string() const;

  friend TruncatedPadic operator*(const TruncatedPadic& a, const TruncatedPadic& b);
  friend TruncatedPadic padic_ceil(const TruncatedPadic& x);

 private:
  TruncatedPadic(std::uint64_t p, bool zero, long valuation, mpz_class unit, unsigned precision)
      : p_(p), zero_(zero), valuation_(valuation), unit_(std::move(unit)), precision_(precision) {}

  // Normalises value (known modulo p^abs_precision) into valuation/unit form.
  static TruncatedPadic from_residue(std::uint64_t p, const mpz_class& value, long abs_precision);

  std::uint64_t p_;
  bool zero_;
  long valuation_;
  mpz_class unit_;
  unsigned precision_;
};

// 1 + sum_{j >= 0} a_j p^j: one plus the integral part of x.
TruncatedPadic padic_ceil(const TruncatedPadic& x);

// x * padic_ceil(x).
TruncatedPadic chi_p(const TruncatedPadic& x);

struct LambdaLimits {
  std::uint64_t max_modulus = 100'000'000;
};

// Residues a mod p^{(n+1)k} for which chi_p^n(a / p^k) still has valuation -k.
// base = p^k, level = n in the returned set. Throws ResourceLimitError when
// the modulus exceeds limits.max_modulus.
ResidueClassSet lambda_classes(std::uint64_t p, unsigned k, unsigned n, LambdaLimits limits = {});

}  // namespace quasiq
