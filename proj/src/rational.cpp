#include "quasiq/rational.hpp"

#include <stdexcept>

namespace quasiq {

namespace {

mpz_class parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  const std::size_t digits_from = (!s.empty() && s.front() == '-') ? 1 : 0;
  if (s.size() == digits_from) throw std::invalid_argument("empty integer");
  for (std::size_t i = digits_from; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("not an integer: " + std::string(text));
  }
  return mpz_class(s, 10);
}

}  // namespace

ExactRational::ExactRational(mpz_class num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::invalid_argument("zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

ExactRational ExactRational::from_reduced(mpz_class num, mpz_class den) {
  return ExactRational(std::move(num), std::move(den), ReducedTag{});
}

ExactRational ExactRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactRational(parse_integer(text));
  return ExactRational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string ExactRational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

ExactRational operator-(const ExactRational& x) {
  return ExactRational(-x.num_, x.den_, ExactRational::ReducedTag{});
}

ExactRational operator+(const ExactRational& a, const ExactRational& b) {
  return ExactRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ExactRational operator-(const ExactRational& a, const ExactRational& b) { return a + (-b); }

ExactRational operator*(const ExactRational& a, const ExactRational& b) {
  return ExactRational(a.num_ * b.num_, a.den_ * b.den_);
}

std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
  const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace quasiq
