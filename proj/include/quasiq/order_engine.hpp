#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "quasiq/order_result.hpp"

namespace quasiq {

struct BoundedOrderQuery {
  mpz_class numerator;
  std::uint64_t base = 2;   // M >= 2
  std::uint64_t bound = 1;  // N >= 1
};

/**
 * Decides ord(a/M) <= N while only ever holding residues below M^{N+1}.
 *
 * With r_0 = a mod M^{N+1} and r_{s+1} = r_s * ceil(r_s / M) mod M^{N-s},
 * the order is the first s <= N with M | r_s, and "> N" if there is none.
 * Residues are carried in 64-bit, 128-bit or GMP integers depending on the
 * current modulus; the modulus shrinks by a factor M per step.
 *
 * A kernel is immutable after construction and can be shared by threads.
 * classify() does not check gcd(a, M) = 1; order_bounded() does.
 */
class BoundedOrderKernel {
 public:
  BoundedOrderKernel(std::uint64_t base, std::uint64_t bound);

  OrderResult classify(const mpz_class& a) const;
  OrderResult classify(std::uint64_t a) const;

  std::uint64_t base() const { return base_; }
  std::uint64_t bound() const { return bound_; }
  // M^{N+1}
  const mpz_class& modulus() const { return powers_.back(); }

 private:
  using u128 = unsigned __int128;

  OrderResult classify_narrow(u128 r, std::uint64_t step) const;

  std::uint64_t base_;
  std::uint64_t bound_;
  std::vector<mpz_class> powers_;  // M^0 .. M^{N+1}
  std::vector<u128> narrow_powers_;  // M^j for every j with M^j < 2^128
};

// Throws std::invalid_argument unless M >= 2, N >= 1 and gcd(a, M) = 1.
OrderResult order_bounded(const BoundedOrderQuery& query);
OrderResult order_bounded(const mpz_class& a, std::uint64_t base, std::uint64_t bound);

// True iff order_bounded and order_naive agree on a/M up to bound n_small.
bool order_agreement_check(const mpz_class& a, std::uint64_t base, std::uint64_t n_small);

}  // namespace quasiq
