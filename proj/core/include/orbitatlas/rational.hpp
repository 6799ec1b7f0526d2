#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace orbitatlas {

// Exact rational scalar on 64-bit words, kept in canonical form:
// den > 0 and gcd(|num|, den) == 1. Intermediate products are evaluated
// in 128 bits; anything that does not fit back into 64 bits throws
// std::overflow_error. Weight matrices handled here have numerators and
// denominators far below that limit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n) {}  // NOLINT: integers embed implicitly
  Rational(std::int64_t n, std::int64_t d);

  // Accepts "a" and "a/b" with an optional leading sign on the numerator.
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;  // "a" when den == 1, else "a/b"

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // throws on b == 0
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  // Canonical form makes memberwise equality exact equality of values.
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace orbitatlas
