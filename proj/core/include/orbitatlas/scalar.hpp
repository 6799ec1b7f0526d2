#pragma once

#include <complex>
#include <string>

#include "orbitatlas/rational.hpp"

namespace orbitatlas {

// State weights come in two flavours. Exact states carry rationals, so
// equalities of sums (the quantities the symplectic conditions hinge on)
// are decidable; floating states fall back to tolerance clustering.
enum class ScalarMode { exact, floating };

class Scalar {
 public:
  Scalar() = default;
  static Scalar exact(Rational r);
  static Scalar floating(double v);

  ScalarMode mode() const { return mode_; }
  bool is_exact() const { return mode_ == ScalarMode::exact; }
  const Rational& rat() const;  // throws std::logic_error in floating mode
  double value() const { return is_exact() ? rat_.to_double() : val_; }
  std::string str() const;

  // Arithmetic requires both operands in the same mode.
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  // Representation equality: exact rationals compare exactly, floating
  // values compare as doubles. Used by the serialization round-trip.
  bool identical(const Scalar& o) const;

 private:
  ScalarMode mode_ = ScalarMode::exact;
  Rational rat_;
  double val_ = 0.0;
};

struct ComplexScalar {
  Scalar re, im;
  std::complex<double> value() const { return {re.value(), im.value()}; }
  bool identical(const ComplexScalar& o) const {
    return re.identical(o.re) && im.identical(o.im);
  }
};

}  // namespace orbitatlas
