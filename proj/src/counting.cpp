#include "quasiq/counting.hpp"

#include <algorithm>
#include <stdexcept>

namespace quasiq {

namespace {

mpz_class pow_ui(std::uint64_t base, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

}  // namespace

std::vector<PrimePower> factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.size() == 1 && f.front().exponent == 1;
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t result = n;
  for (const auto& [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : factorize(n)) {
    const std::size_t existing = out.size();
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < existing; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

mpz_class totient_of_power(std::uint64_t base, std::uint64_t exponent) {
  if (exponent == 0) return 1;
  return pow_ui(base, exponent - 1) * static_cast<unsigned long>(totient(base));
}

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  mpz_class r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= static_cast<unsigned long>(n - k + i);
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), i);
  }
  return r;
}

ExactProbability::ExactProbability(mpq_class value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ < 0 || value_ > 1) throw std::invalid_argument("probability outside [0,1]");
}

std::string ExactProbability::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string ExactProbability::approx(unsigned digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // round half up: floor((2 * num * 10^d + den) / (2 * den))
  mpz_class scaled = (2 * value_.get_num() * scale + value_.get_den()) / (2 * value_.get_den());
  mpz_class whole = scaled / scale;
  std::string frac = mpz_class(scaled % scale).get_str();
  if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
  return whole.get_str() + (digits > 0 ? "." + frac : "");
}

mpz_class CountTable::count(std::uint64_t n, std::uint64_t base) {
  if (base == 0) throw std::invalid_argument("count_A: M must be >= 1");
  std::lock_guard lock(mutex_);
  return count_locked(n, base);
}

const mpz_class& CountTable::count_locked(std::uint64_t n, std::uint64_t base) {
  const auto key = std::make_pair(n, base);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  mpz_class value;
  if (base == 1) {
    value = (n == 0) ? 1 : 0;
  } else if (n == 0) {
    value = 0;
  } else if (n == 1) {
    value = static_cast<unsigned long>(totient(base));
  } else {
    auto dit = divisor_memo_.find(base);
    if (dit == divisor_memo_.end()) dit = divisor_memo_.emplace(base, divisors(base)).first;
    // d = 1 contributes A(n-1, 1) = 0.
    for (const std::uint64_t d : dit->second) {
      if (d == 1) continue;
      value += count_locked(n - 1, d) * pow_ui(base / d, n - 1);
    }
    value *= static_cast<unsigned long>(totient(base));
  }
  return memo_.emplace(key, std::move(value)).first->second;
}

mpz_class count_A(std::uint64_t n, std::uint64_t base) {
  static CountTable table;
  return table.count(n, base);
}

mpz_class count_A_prime_power(std::uint64_t n, std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw std::invalid_argument("count_A_prime_power: p must be prime");
  if (n < 1 || k < 1) throw std::invalid_argument("count_A_prime_power: n and k must be >= 1");
  mpz_class phi_pk = pow_ui(p, k - 1) * static_cast<unsigned long>(p - 1);
  mpz_class phi_pow;
  mpz_pow_ui(phi_pow.get_mpz_t(), phi_pk.get_mpz_t(), n);
  return binomial(n + k - 2, n - 1) * phi_pow;
}

ExactProbability series_partial_sum(std::uint64_t base, std::uint64_t terms) {
  if (base == 0) throw std::invalid_argument("series_partial_sum: M must be >= 1");
  // Common denominator phi(M^{N+1}) = M^N phi(M); term n scales by M^{N-n}.
  mpz_class numerator = 0;
  mpz_class scale = 1;
  for (std::uint64_t n = terms + 1; n-- > 0;) {
    numerator += count_A(n, base) * scale;
    scale *= static_cast<unsigned long>(base);
  }
  return ExactProbability(mpq_class(numerator, totient_of_power(base, terms + 1)));
}

ExactProbability random_process_prob(std::uint64_t n, std::uint64_t base) {
  if (base == 0) throw std::invalid_argument("random_process_prob: M must be >= 1");
  // Table over the divisors of M, one row per step.
  const auto divs = divisors(base);
  std::vector<mpq_class> prev(divs.size()), cur(divs.size());
  for (std::size_t i = 0; i < divs.size(); ++i) prev[i] = (divs[i] == 1) ? 1 : 0;
  for (std::uint64_t step = 1; step <= n; ++step) {
    for (std::size_t i = 0; i < divs.size(); ++i) {
      const std::uint64_t m = divs[i];
      if (m == 1) {
        cur[i] = 0;  // already absorbed
        continue;
      }
      mpq_class acc = 0;
      for (std::size_t j = 0; j <= i; ++j) {
        if (m % divs[j] == 0) acc += prev[j] * static_cast<unsigned long>(totient(divs[j]));
      }
      cur[i] = acc / static_cast<unsigned long>(m);
    }
    std::swap(prev, cur);
  }
  return ExactProbability(prev.back());
}

ExactProbability class_density(std::uint64_t n, std::uint64_t base) {
  if (base == 0) throw std::invalid_argument("class_density: M must be >= 1");
  return ExactProbability(mpq_class(count_A(n, base), pow_ui(base, n + 1)));
}

}  // namespace quasiq
