#include "matlog/rational.hpp"

namespace matlog {

namespace {
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  __int128 wide = static_cast<__int128>(a) * b;
  if (wide > INT64_MAX || wide < INT64_MIN)
    fail(errc::out_of_range, "rational arithmetic overflow");
  return static_cast<std::int64_t>(wide);
}
}  // namespace

rational::rational(std::int64_t n, std::int64_t d) {
  if (d == 0) fail(errc::out_of_range, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

rational rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return rational(std::stoll(text));
  return rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

std::string rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

rational operator+(rational a, rational b) {
  return rational(checked_mul(a.num, b.den) + checked_mul(b.num, a.den),
                  checked_mul(a.den, b.den));
}

rational operator-(rational a, rational b) {
  return rational(checked_mul(a.num, b.den) - checked_mul(b.num, a.den),
                  checked_mul(a.den, b.den));
}

bool operator<(rational a, rational b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

}  // namespace matlog
