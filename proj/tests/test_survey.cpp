#include <doctest.h>

#include "oracles.hpp"
#include "quasiq/class_solver.hpp"
#include "quasiq/counting.hpp"
#include "quasiq/order_engine.hpp"
#include "quasiq/survey.hpp"

using namespace quasiq;

namespace {
ExactProbability frac(std::uint64_t num, std::uint64_t den) {
  mpq_class q{oracle::ui(num), oracle::ui(den)};
  q.canonicalize();
  return ExactProbability(q);
}
}  // namespace

TEST_CASE("smallest_numerator") {
  CHECK(smallest_numerator(3, 1, 100) == 7);
  CHECK(smallest_numerator(3, 2, 100) == 4);
  CHECK(smallest_numerator(3, 3, 100) == 13);
  CHECK(smallest_numerator(3, 4, 100) == 20);
  CHECK(smallest_numerator(3, 10, 1000) == 452);
  CHECK(smallest_numerator(3, 28, 200'000) == 196832);
  CHECK(smallest_numerator(3, 28, 196831) == std::nullopt);
  for (std::uint64_t k = 1; k <= 12; ++k) {
    CHECK(smallest_numerator(2, k, 1 << 13) == (std::uint64_t{1} << k) + 1);
  }
  CHECK_THROWS_AS(smallest_numerator(1, 2, 10), std::invalid_argument);
}

TEST_CASE("scan_orders does not depend on the thread count") {
  const ScanReport one = scan_orders(3, 40, 300'000, {1, 4096});
  const ScanReport four = scan_orders(3, 40, 300'000, {4, 1000});
  CHECK(one.smallest == four.smallest);
  CHECK(one.scanned == four.scanned);
  CHECK(one.scanned == 200'000);
  CHECK(one.smallest_of_order(21) == 280);
  CHECK(one.smallest_of_order(22) == 28);
  CHECK(one.smallest_of_order(16) == 2639);
  CHECK(one.smallest_of_order(0) == std::nullopt);
}

TEST_CASE("property: scan agrees with per-numerator queries") {
  for (std::uint64_t m : {2, 5, 6}) {
    const auto report = scan_orders(m, 12, 5000, {2, 333});
    for (std::uint64_t k = 1; k <= 12; ++k) {
      std::optional<std::uint64_t> expected;
      for (std::uint64_t a = 1; a <= 5000 && !expected; ++a) {
        if (std::gcd(a, m) == 1 && order_bounded(oracle::ui(a), m, 12) == OrderResult::finite(k)) expected = a;
      }
      CHECK(report.smallest_of_order(k) == expected);
    }
  }
}

TEST_CASE("empirical_density") {
  CHECK(empirical_density(3, 2, 27) == frac(4, 27));
  CHECK(empirical_density(5, 1, 625) == frac(100, 625));
  CHECK(empirical_density(3, 0, 27) == frac(0, 1));
  CHECK_THROWS_AS(empirical_density(3, 1, 0), std::invalid_argument);
}

TEST_CASE("property: empirical density stays within A(n,M)/k of the class density") {
  for (std::uint64_t m = 2; m <= 6; ++m) {
    for (std::uint64_t n = 1; n <= 3; ++n) {
      const mpq_class dens = class_density(n, m).value();
      const mpz_class a = count_A(n, m);
      for (std::uint64_t k : {1, 7, 50, 333, 1000, 4321}) {
        const mpq_class emp = empirical_density(m, n, k).value();
        mpq_class bound{a, oracle::ui(k)};
        bound.canonicalize();
        CHECK(abs(emp - dens) <= bound);
      }
      // Exact on whole periods.
      CHECK(empirical_density(m, n, oracle::pow_ui(m, n + 1).get_ui()).value() == dens);
    }
  }
}

TEST_CASE("finite_order_density") {
  for (std::uint64_t m : {2, 3, 4, 6}) {
    mpq_class prev = -1;
    for (std::uint64_t bound = 1; bound <= 4; ++bound) {
      const mpz_class period = oracle::pow_ui(m, bound + 1);
      const mpq_class dens = finite_order_density(m, bound, period.get_ui()).value();
      mpq_class unit_share{oracle::ui(totient(m)), oracle::ui(m)};
      unit_share.canonicalize();
      CHECK(dens == unit_share * series_partial_sum(m, bound).value());
      CHECK(dens > prev);
      CHECK(dens < unit_share);
      prev = dens;
    }
  }
}

TEST_CASE("family numerators") {
  CHECK(family_numerators(3, 1) == std::vector<mpz_class>{7, -1});
  CHECK(family_numerators(5, 2) == std::vector<mpz_class>{101, 29, -69});
  CHECK(family_numerators(3, 0).size() == 2);
  CHECK_THROWS_AS(family_numerators(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(family_numerators(9, 3), std::invalid_argument);
}

TEST_CASE("verify_family") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) {
    for (std::uint64_t n = 0; n <= 12; ++n) CHECK(verify_family(p, n));
  }
  CHECK_THROWS_AS(verify_family(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(verify_family(15, 4), std::invalid_argument);
}
