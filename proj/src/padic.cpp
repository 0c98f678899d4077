#include "quasiq/padic.hpp"

#include <stdexcept>

#include "quasiq/counting.hpp"
#include "quasiq/errors.hpp"

namespace quasiq {

namespace {

mpz_class pow_ui(std::uint64_t base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// Strips factors of p from x (nonzero) and returns how many were removed.
long remove_p(mpz_class& x, std::uint64_t p) {
  const mpz_class pp(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t()));
}

void check_prime(std::uint64_t p, unsigned precision) {
  if (!is_prime(p)) throw std::invalid_argument("p-adic: p must be prime");
  if (precision == 0) throw std::invalid_argument("p-adic: precision must be positive");
}

}  // namespace

TruncatedPadic TruncatedPadic::zero(std::uint64_t p) {
  check_prime(p, 1);
  return TruncatedPadic(p, true, 0, 0, 0);
}

TruncatedPadic TruncatedPadic::from_rational(const ExactRational& x, std::uint64_t p, unsigned precision) {
  check_prime(p, precision);
  if (x.sign() == 0) return zero(p);
  mpz_class num = x.num();
  mpz_class den = x.den();
  const long v = remove_p(num, p) - remove_p(den, p);
  const mpz_class mod = pow_ui(p, precision);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  mpz_class unit = num * inv;
  mpz_fdiv_r(unit.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
  return TruncatedPadic(p, false, v, std::move(unit), precision);
}

TruncatedPadic TruncatedPadic::from_integer(const mpz_class& a, std::uint64_t p, unsigned precision) {
  return from_rational(ExactRational(a), p, precision);
}

TruncatedPadic TruncatedPadic::from_residue(std::uint64_t p, const mpz_class& value, long abs_precision) {
  if (abs_precision <= 0) throw PrecisionError("p-adic: no digits of the result are known");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), pow_ui(p, abs_precision).get_mpz_t());
  if (r == 0) throw PrecisionError("p-adic: result is zero to every known digit");
  const long w = remove_p(r, p);
  return TruncatedPadic(p, false, w, std::move(r), static_cast<unsigned>(abs_precision - w));
}

unsigned long TruncatedPadic::digit(long j) const {
  if (zero_) return 0;
  if (j < valuation_) return 0;
  if (j >= absolute_precision()) throw PrecisionError("p-adic: digit beyond known precision");
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), unit_.get_mpz_t(), pow_ui(p_, static_cast<unsigned long>(j - valuation_)).get_mpz_t());
  return mpz_fdiv_ui(q.get_mpz_t(), p_);
}

bool TruncatedPadic::agrees_with(const ExactRational& x) const {
  if (zero_) return x.sign() == 0;
  if (x.sign() == 0) return false;
  const TruncatedPadic other = from_rational(x, p_, precision_);
  return other.valuation_ == valuation_ && other.unit_ == unit_;
}

std::string TruncatedPadic::to_string() const {
  if (zero_) return "0";
  return std::to_string(p_) + "^" + std::to_string(valuation_) + " * " + unit_.get_str() + " + O(" +
         std::to_string(p_) + "^" + std::to_string(absolute_precision()) + ")";
}

TruncatedPadic operator*(const TruncatedPadic& a, const TruncatedPadic& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("p-adic: mixed primes");
  if (a.zero_) return a;
  if (b.zero_) return b;
  const unsigned prec = std::min(a.precision_, b.precision_);
  const mpz_class mod = pow_ui(a.p_, prec);
  mpz_class unit = a.unit_ * b.unit_;
  mpz_fdiv_r(unit.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
  return TruncatedPadic(a.p_, false, a.valuation_ + b.valuation_, std::move(unit), prec);
}

TruncatedPadic padic_ceil(const TruncatedPadic& x) {
  const std::uint64_t p = x.prime();
  if (x.is_zero()) return TruncatedPadic::from_integer(1, p, 1);
  const long v = x.valuation();
  const long abs_prec = x.absolute_precision();
  if (v >= 0) return TruncatedPadic::from_residue(p, 1 + pow_ui(p, v) * x.unit(), abs_prec);
  // Integral part: the unit's digits from position -v upward.
  mpz_class integral;
  mpz_fdiv_q(integral.get_mpz_t(), x.unit().get_mpz_t(), pow_ui(p, -v).get_mpz_t());
  return TruncatedPadic::from_residue(p, 1 + integral, abs_prec);
}

TruncatedPadic chi_p(const TruncatedPadic& x) {
  if (x.is_zero()) return x;
  return x * padic_ceil(x);
}

ResidueClassSet lambda_classes(std::uint64_t p, unsigned k, unsigned n, LambdaLimits limits) {
  if (!is_prime(p)) throw std::invalid_argument("lambda_classes: p must be prime");
  if (k < 1 || n < 1) throw std::invalid_argument("lambda_classes: k and n must be >= 1");
  const mpz_class big_modulus = pow_ui(p, static_cast<std::uint64_t>(n + 1) * k);
  if (big_modulus > mpz_class(static_cast<unsigned long>(limits.max_modulus))) {
    throw ResourceLimitError("lambda_classes: modulus " + big_modulus.get_str() + " exceeds cap");
  }
  using u128 = unsigned __int128;
  const std::uint64_t q = pow_ui(p, k).get_ui();
  // powers[j] = p^{jk}
  std::vector<std::uint64_t> powers{1};
  for (unsigned j = 1; j <= n + 1; ++j) powers.push_back(powers.back() * q);

  ResidueClassSet out{q, n, big_modulus, {}};
  for (std::uint64_t a = 0; a < powers[n + 1]; ++a) {
    // a_s known mod p^{(n+1-s)k}; the p-adic ceiling of a_s / p^k is
    // 1 + floor(a_s / p^k) on the known digits.
    std::uint64_t r = a;
    bool keeps_denominator = true;
    for (unsigned s = 0; s <= n; ++s) {
      if (r % p == 0) {
        keeps_denominator = false;
        break;
      }
      if (s == n) break;
      const std::uint64_t m = powers[n - s];
      r = static_cast<std::uint64_t>((static_cast<u128>(r % m) * ((r / q + 1) % m)) % m);
    }
    if (keeps_denominator) out.residues.emplace_back(static_cast<unsigned long>(a));
  }
  return out;
}

}  // namespace quasiq
