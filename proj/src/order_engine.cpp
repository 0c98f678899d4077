#include "quasiq/order_engine.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

#include "quasiq/dynamics.hpp"
#include "quasiq/rational.hpp"

namespace quasiq {

namespace {

using u128 = unsigned __int128;

static_assert(GMP_LIMB_BITS == 64, "narrow tier assumes 64-bit limbs");

constexpr u128 kLow64 = std::numeric_limits<std::uint64_t>::max();

u128 to_u128(const mpz_class& x) {
  assert(sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 128);
  const mp_size_t n = mpz_size(x.get_mpz_t());
  u128 lo = n > 0 ? mpz_getlimbn(x.get_mpz_t(), 0) : 0;
  u128 hi = n > 1 ? mpz_getlimbn(x.get_mpz_t(), 1) : 0;
  return (hi << 64) | lo;
}

// a * b mod m for a, b <= m < 2^128.
u128 mulmod(u128 a, u128 b, u128 m) {
  if (a >= m) a %= m;
  if (b >= m) b %= m;
  if ((a >> 64) == 0 && (b >> 64) == 0) return (a * b) % m;
  const mp_limb_t al[2] = {static_cast<mp_limb_t>(a), static_cast<mp_limb_t>(a >> 64)};
  const mp_limb_t bl[2] = {static_cast<mp_limb_t>(b), static_cast<mp_limb_t>(b >> 64)};
  mp_limb_t prod[4];
  mpn_mul_n(prod, al, bl, 2);
  // m > a or m > b, one of which is >= 2^64, so m occupies two limbs.
  const mp_limb_t ml[2] = {static_cast<mp_limb_t>(m), static_cast<mp_limb_t>(m >> 64)};
  mp_limb_t quot[3];
  mp_limb_t rem[2];
  mpn_tdiv_qr(quot, rem, 0, prod, 4, ml, 2);
  return (static_cast<u128>(rem[1]) << 64) | rem[0];
}

}  // namespace

BoundedOrderKernel::BoundedOrderKernel(std::uint64_t base, std::uint64_t bound)
    : base_(base), bound_(bound) {
  if (base < 2) throw std::invalid_argument("order engine: base must be >= 2");
  if (bound < 1) throw std::invalid_argument("order engine: bound must be >= 1");
  powers_.reserve(bound + 2);
  powers_.emplace_back(1);
  for (std::uint64_t j = 1; j <= bound + 1; ++j) powers_.push_back(powers_.back() * base);

  u128 p = 1;
  narrow_powers_.push_back(p);
  while (narrow_powers_.size() < powers_.size() && p <= std::numeric_limits<u128>::max() / base) {
    p *= base;
    narrow_powers_.push_back(p);
  }
}

OrderResult BoundedOrderKernel::classify(const mpz_class& a) const {
  const std::uint64_t n = bound_;
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), powers_[n + 1].get_mpz_t());
  mpz_class c;
  std::uint64_t s = 0;
  // Wide tier: the modulus at step s is M^{N+1-s}.
  while (n + 1 - s >= narrow_powers_.size()) {
    if (mpz_divisible_ui_p(r.get_mpz_t(), base_)) return OrderResult::finite(s);
    mpz_cdiv_q_ui(c.get_mpz_t(), r.get_mpz_t(), base_);
    r *= c;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), powers_[n - s].get_mpz_t());
    ++s;
    assert(r < powers_[n + 1 - s]);
  }
  return classify_narrow(to_u128(r), s);
}

OrderResult BoundedOrderKernel::classify(std::uint64_t a) const {
  if (bound_ + 1 >= narrow_powers_.size()) return classify(mpz_class(static_cast<unsigned long>(a)));
  return classify_narrow(a % narrow_powers_[bound_ + 1], 0);
}

OrderResult BoundedOrderKernel::classify_narrow(u128 r, std::uint64_t s) const {
  const std::uint64_t n = bound_;
  const u128 m = base_;
  for (;; ++s) {
    assert(r < narrow_powers_[n + 1 - s]);
    if (r % m == 0) return OrderResult::finite(s);
    if (s == n) return OrderResult::exceeds(n);
    const u128 modulus = narrow_powers_[n - s];
    const u128 ceil = r / m + 1;  // r is not a multiple of M here
    if (modulus <= kLow64) {
      const u128 rr = r % modulus;
      const u128 cc = ceil % modulus;
      r = (rr * cc) % modulus;
    } else {
      r = mulmod(r, ceil, modulus);
    }
  }
}

OrderResult order_bounded(const BoundedOrderQuery& query) {
  if (query.base < 2) throw std::invalid_argument("order_bounded: M must be >= 2");
  if (query.bound < 1) throw std::invalid_argument("order_bounded: N must be >= 1");
  mpz_class g;
  mpz_gcd_ui(g.get_mpz_t(), query.numerator.get_mpz_t(), query.base);
  if (g != 1) throw std::invalid_argument("order_bounded: numerator must be coprime to M");
  return BoundedOrderKernel(query.base, query.bound).classify(query.numerator);
}

OrderResult order_bounded(const mpz_class& a, std::uint64_t base, std::uint64_t bound) {
  return order_bounded(BoundedOrderQuery{a, base, bound});
}

bool order_agreement_check(const mpz_class& a, std::uint64_t base, std::uint64_t n_small) {
  const OrderResult fast = order_bounded(a, base, n_small);
  const OrderResult slow = order_naive(ExactRational(a, mpz_class(static_cast<unsigned long>(base))), n_small);
  return fast == slow;
}

}  // namespace quasiq
