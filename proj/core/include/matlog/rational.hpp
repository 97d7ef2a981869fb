#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "matlog/errors.hpp"

namespace matlog {

/// Exact rational with 64-bit numerator/denominator, always normalized with a
/// positive denominator. The Łukasiewicz operations keep denominators within
/// the lcm of the inputs, so 64 bits are ample at desk scale; overflow still
/// raises out_of_range rather than wrapping.
struct rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  rational() = default;
  rational(std::int64_t n) : num(n), den(1) {}
  rational(std::int64_t n, std::int64_t d);

  static rational parse(const std::string& text);  // "a/b" or "a"
  std::string str() const;

  friend rational operator+(rational a, rational b);
  friend rational operator-(rational a, rational b);
  friend bool operator==(rational a, rational b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(rational a, rational b);
  friend bool operator<=(rational a, rational b) { return a < b || a == b; }
};

}  // namespace matlog
