#include "quasiq/dynamics.hpp"

#include <stdexcept>
#include <string>

#include "quasiq/errors.hpp"

namespace quasiq {

namespace {

void check_digits(const ExactRational& x, const IterationLimits& limits) {
  // mpz_sizeinbase may overshoot by one, which only makes the guard stricter.
  if (mpz_sizeinbase(x.num().get_mpz_t(), 10) > limits.digit_limit) {
    throw ResourceLimitError("iterate exceeds " + std::to_string(limits.digit_limit) + " digits");
  }
}

}  // namespace

mpz_class ceil_rational(const ExactRational& x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return q;
}

mpz_class floor_rational(const ExactRational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return q;
}

ExactRational chi(const ExactRational& x) {
  // num(x) is coprime to den(x), so only the ceiling can share factors with
  // the denominator.
  mpz_class c = ceil_rational(x);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), c.get_mpz_t(), x.den().get_mpz_t());
  mpz_class den;
  mpz_divexact(den.get_mpz_t(), x.den().get_mpz_t(), g.get_mpz_t());
  mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_class num = x.num() * c;
  if (num == 0) return ExactRational();
  return ExactRational::from_reduced(std::move(num), std::move(den));
}

ExactRational chi_floor(const ExactRational& x) {
  return x * ExactRational(floor_rational(x));
}

std::vector<ExactRational> orbit(const ExactRational& x, std::size_t max_steps, IterationLimits limits) {
  if (max_steps == 0) throw std::invalid_argument("orbit: max_steps must be positive");
  std::vector<ExactRational> out;
  ExactRational current = x;
  for (std::size_t step = 0; step < max_steps; ++step) {
    current = chi(current);
    check_digits(current, limits);
    out.push_back(current);
    if (current.is_integer()) break;
  }
  return out;
}

OrderResult order_naive(const ExactRational& x, std::uint64_t cap, IterationLimits limits) {
  if (cap == 0) throw std::invalid_argument("order_naive: cap must be positive");
  ExactRational current = x;
  for (std::uint64_t k = 0; k <= cap; ++k) {
    if (current.is_integer()) return OrderResult::finite(k);
    if (k == cap) break;
    current = chi(current);
    check_digits(current, limits);
  }
  return OrderResult::exceeds(cap);
}

}  // namespace quasiq
