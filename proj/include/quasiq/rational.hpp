#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace quasiq {

/**
 * Reduced fraction num/den with den >= 1 and gcd(|num|, den) = 1.
 * Zero is 0/1. Reduction happens once, at construction.
 */
class ExactRational {
 public:
  ExactRational() : num_(0), den_(1) {}
  ExactRational(long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  explicit ExactRational(mpz_class value) : num_(std::move(value)), den_(1) {}

  // Throws std::invalid_argument if den == 0.
  ExactRational(mpz_class num, mpz_class den);

  // Skips the gcd; caller guarantees den > 0 and gcd(num, den) = 1.
  static ExactRational from_reduced(mpz_class num, mpz_class den);

  // Accepts "p", "p/q" with optional sign; throws std::invalid_argument.
  static ExactRational parse(std::string_view text);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return sgn(num_); }

  std::string to_string() const;

  friend ExactRational operator-(const ExactRational& x);
  friend ExactRational operator+(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b);
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b);

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b);

 private:
  struct ReducedTag {};
  ExactRational(mpz_class num, mpz_class den, ReducedTag)
      : num_(std::move(num)), den_(std::move(den)) {}

  mpz_class num_;
  mpz_class den_;
};

}  // namespace quasiq
