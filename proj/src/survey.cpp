#include "quasiq/survey.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "quasiq/order_engine.hpp"

namespace quasiq {

namespace {

struct PartialScan {
  std::vector<std::optional<std::uint64_t>> smallest;
  std::uint64_t scanned = 0;
  std::uint64_t work_units = 0;
};

void scan_block(const BoundedOrderKernel& kernel, std::uint64_t lo, std::uint64_t hi, PartialScan& acc) {
  const std::uint64_t m = kernel.base();
  for (std::uint64_t a = lo; a <= hi; ++a) {
    if (std::gcd(a, m) != 1) continue;
    const OrderResult r = kernel.classify(a);
    ++acc.scanned;
    if (!r.is_finite()) {
      acc.work_units += kernel.bound() + 1;
      continue;
    }
    acc.work_units += r.order() + 1;
    auto& slot = acc.smallest[r.order() - 1];
    if (!slot || a < *slot) slot = a;
  }
}

void merge_into(PartialScan& into, const PartialScan& from) {
  into.scanned += from.scanned;
  into.work_units += from.work_units;
  for (std::size_t k = 0; k < into.smallest.size(); ++k) {
    if (from.smallest[k] && (!into.smallest[k] || *from.smallest[k] < *into.smallest[k])) {
      into.smallest[k] = from.smallest[k];
    }
  }
}

std::uint64_t count_matching(std::uint64_t base, std::uint64_t bound, std::uint64_t k_max, bool exact_order) {
  const BoundedOrderKernel kernel(base, bound);
  std::uint64_t count = 0;
  for (std::uint64_t a = 1; a <= k_max; ++a) {
    if (std::gcd(a, base) != 1) continue;
    const OrderResult r = kernel.classify(a);
    if (r.is_finite() && (!exact_order || r.order() == bound)) ++count;
  }
  return count;
}

}  // namespace

ScanReport scan_orders(std::uint64_t base, std::uint64_t bound, std::uint64_t limit, ScanOptions options) {
  const BoundedOrderKernel kernel(base, bound);
  const unsigned threads = std::max(1u, options.threads);
  const std::uint64_t block = std::max<std::uint64_t>(1, options.block);
  const std::uint64_t blocks = limit == 0 ? 0 : (limit - 1) / block + 1;

  std::vector<PartialScan> partial(threads);
  for (auto& p : partial) p.smallest.assign(bound, std::nullopt);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&](unsigned id) {
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      const std::uint64_t lo = b * block + 1;
      scan_block(kernel, lo, std::min(limit, lo + block - 1), partial[id]);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
  }

  for (unsigned id = 1; id < threads; ++id) merge_into(partial[0], partial[id]);
  return ScanReport{base, bound, limit, std::move(partial[0].smallest), partial[0].scanned, partial[0].work_units};
}

std::optional<std::uint64_t> smallest_numerator(std::uint64_t base, std::uint64_t n, std::uint64_t a_max) {
  if (base < 2 || n < 1) throw std::invalid_argument("smallest_numerator: need M >= 2 and n >= 1");
  const BoundedOrderKernel kernel(base, n);
  const OrderResult wanted = OrderResult::finite(n);
  for (std::uint64_t a = 1; a <= a_max; ++a) {
    if (std::gcd(a, base) == 1 && kernel.classify(a) == wanted) return a;
  }
  return std::nullopt;
}

ExactProbability empirical_density(std::uint64_t base, std::uint64_t n, std::uint64_t k_max) {
  if (base < 2 || k_max < 1) throw std::invalid_argument("empirical_density: need M >= 2 and k_max >= 1");
  if (n == 0) return ExactProbability(mpq_class(0));  // a coprime to M >= 2 is never an integer multiple
  const std::uint64_t count = count_matching(base, n, k_max, true);
  return ExactProbability(mpq_class(mpz_class(static_cast<unsigned long>(count)),
                                    mpz_class(static_cast<unsigned long>(k_max))));
}

ExactProbability finite_order_density(std::uint64_t base, std::uint64_t bound, std::uint64_t k_max) {
  if (base < 2 || bound < 1 || k_max < 1) {
    throw std::invalid_argument("finite_order_density: need M >= 2, N >= 1, k_max >= 1");
  }
  const std::uint64_t count = count_matching(base, bound, k_max, false);
  return ExactProbability(mpq_class(mpz_class(static_cast<unsigned long>(count)),
                                    mpz_class(static_cast<unsigned long>(k_max))));
}

std::vector<mpz_class> family_numerators(std::uint64_t p, std::uint64_t n) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("family: p must be an odd prime");
  const mpz_class pp(static_cast<unsigned long>(p));
  mpz_class pn;
  mpz_pow_ui(pn.get_mpz_t(), pp.get_mpz_t(), n);
  std::vector<mpz_class> out;
  out.push_back((pp - 1) * pn + 1);
  out.push_back((n % 2 == 0 ? pn : mpz_class(-pn)) + pp - 1);
  if (n >= 2) {
    mpz_class pn1;
    mpz_pow_ui(pn1.get_mpz_t(), pp.get_mpz_t(), n - 1);
    out.push_back(-mpz_class(static_cast<unsigned long>(n + 1)) * pn + pn1 + 1);
  }
  return out;
}

bool verify_family(std::uint64_t p, std::uint64_t n) {
  const auto numerators = family_numerators(p, n);
  for (const auto& a : numerators) {
    if (n == 0) {
      if (!mpz_divisible_ui_p(a.get_mpz_t(), p)) return false;
      continue;
    }
    if (mpz_divisible_ui_p(a.get_mpz_t(), p)) return false;
    if (order_bounded(a, p, n) != OrderResult::finite(n)) return false;
  }
  return true;
}

}  // namespace quasiq
