#pragma once

#include <cstdint>
#include <string>

namespace quasiq {

// ord(x): either a finite order k, or "larger than the bound N that was tried".
class OrderResult {
 public:
  static OrderResult finite(std::uint64_t k) { return OrderResult(true, k); }
  static OrderResult exceeds(std::uint64_t bound) { return OrderResult(false, bound); }

  bool is_finite() const { return finite_; }
  // Precondition: is_finite().
  std::uint64_t order() const { return value_; }
  // Precondition: !is_finite().
  std::uint64_t bound() const { return value_; }

  // "22" or ">25".
  std::string to_string() const { return (finite_ ? "" : ">") + std::to_string(value_); }

  friend bool operator==(const OrderResult&, const OrderResult&) = default;

 private:
  OrderResult(bool finite, std::uint64_t value) : finite_(finite), value_(value) {}

  bool finite_;
  std::uint64_t value_;
};

}  // namespace quasiq
