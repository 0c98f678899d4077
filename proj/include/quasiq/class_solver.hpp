#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "quasiq/counting.hpp"
#include "quasiq/rational.hpp"

namespace quasiq {

/**
 * A union of congruence classes: the residues listed, modulo base^{level+1}.
 * Residues are canonical (in [0, modulus)) and strictly increasing.
 */
struct ResidueClassSet {
  std::uint64_t base = 0;
  std::uint64_t level = 0;
  mpz_class modulus;
  std::vector<mpz_class> residues;

  std::size_t size() const { return residues.size(); }
  // Membership of the integer a (any sign) in the union.
  bool contains(const mpz_class& a) const;
};

// Order-1 numerators: {M^2 - r : 1 <= r < M, gcd(r, M) = 1} mod M^2.
ResidueClassSet base_classes(std::uint64_t base);

// The unique k mod p^t with a*k^2 + b*k == r (mod p^t), given p | a and
// p does not divide b. Solves b*k == r (mod p), then lifts one p-adic digit at
// a time. Throws std::invalid_argument when the divisibility conditions fail.
mpz_class solve_quadratic_congruence(const mpz_class& a, const mpz_class& b, const mpz_class& r,
                                     PrimePower modulus);

// Target (r/d, c) of the inverse map for order-`level` numerators with
// denominator `base`.
struct PreimageQuery {
  mpz_class r;
  std::uint64_t d = 0;
  std::uint64_t c = 0;
  std::uint64_t base = 0;
  std::uint64_t level = 0;
};

/**
 * The unique a in [1, M^{n+1}) with a == c (mod M) such that
 * chi(a/M) = b/d in lowest terms with b == r (mod M^{n-1} d).
 *
 * Writes ceil(a/M) = k M/d, solves (M^2/d) k^2 + (c - M) k == r
 * (mod M^{n-1} d) prime power by prime power, joins the solutions by CRT and
 * returns a = M (k M/d - 1) + c. When r/d has order n-1 the result has
 * order n.
 *
 * Throws std::invalid_argument unless 1 < d | M, gcd(r, d) = 1,
 * 1 <= r < M^{n-1} d, 1 <= c < M, gcd(c, M) = 1 and n >= 1.
 */
mpz_class invert_phi(const PreimageQuery& query);

struct EnumerationLimits {
  std::uint64_t max_classes = 4'000'000;
};

// All residues a mod M^{n+1} with gcd(a, M) = 1 and ord(a/M) = n, built from
// the order-(n-1) classes of every divisor d > 1 of M by invert_phi.
// Throws ResourceLimitError when A(n, M) exceeds limits.max_classes.
ResidueClassSet enumerate_classes(std::uint64_t n, std::uint64_t base, EnumerationLimits limits = {});

// A fraction x = p/q_0 whose iterates chi^j(x) have denominator exactly q_j.
// Requires q_0 >= 2 and q_{j+1} | q_j; throws std::invalid_argument otherwise.
ExactRational chain_witness(std::span<const std::uint64_t> chain);

struct CoveringLevel {
  unsigned level = 0;
  std::uint64_t modulus = 0;  // 3^{level+1}
  std::vector<std::uint64_t> residues;
};

// For every n <= n_max, 2^n residues in [1, 3^{n+1}] chosen smallest-first
// so that all classes are disjoint and none meets {1 + 3^m : m >= 0}.
std::vector<CoveringLevel> covering_gap_demo(unsigned n_max);

}  // namespace quasiq
