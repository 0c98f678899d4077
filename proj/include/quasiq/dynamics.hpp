#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "quasiq/order_result.hpp"
#include "quasiq/rational.hpp"

namespace quasiq {

mpz_class ceil_rational(const ExactRational& x);
mpz_class floor_rational(const ExactRational& x);

// chi(x) = x * ceil(x). The denominator of the result divides den(x).
ExactRational chi(const ExactRational& x);

// x * floor(x); equals chi(-x) whenever x is not an integer.
ExactRational chi_floor(const ExactRational& x);

// Iterates roughly square at every step, so unbounded iteration is guarded
// by a cap on the decimal length of the numerator.
struct IterationLimits {
  std::size_t digit_limit = 1'000'000;
};

// [chi(x), chi^2(x), ...], stopping after the first integer iterate or after
// max_steps iterates. Throws ResourceLimitError when an iterate outgrows
// limits.digit_limit, std::invalid_argument when max_steps == 0.
std::vector<ExactRational> orbit(const ExactRational& x, std::size_t max_steps,
                                 IterationLimits limits = {});

// ord(x) by direct iteration. Reference oracle for the bounded-modulus
// engine; cost doubles with every step.
OrderResult order_naive(const ExactRational& x, std::uint64_t cap, IterationLimits limits = {});

}  // namespace quasiq
