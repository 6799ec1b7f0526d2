#include "orbitatlas/scalar.hpp"

#include <stdexcept>

namespace orbitatlas {

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) {
    throw std::logic_error("scalar arithmetic across modes");
  }
}

}  // namespace

Scalar Scalar::exact(Rational r) {
  Scalar s;
  s.mode_ = ScalarMode::exact;
  s.rat_ = r;
  return s;
}

Scalar Scalar::floating(double v) {
  Scalar s;
  s.mode_ = ScalarMode::floating;
  s.val_ = v;
  return s;
}

const Rational& Scalar::rat() const {
  if (!is_exact()) throw std::logic_error("rational view of a floating scalar");
  return rat_;
}

std::string Scalar::str() const {
  return is_exact() ? rat_.str() : std::to_string(val_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  return a.is_exact() ? Scalar::exact(a.rat_ + b.rat_) : Scalar::floating(a.val_ + b.val_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  return a.is_exact() ? Scalar::exact(a.rat_ - b.rat_) : Scalar::floating(a.val_ - b.val_);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  return a.is_exact() ? Scalar::exact(a.rat_ * b.rat_) : Scalar::floating(a.val_ * b.val_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  return a.is_exact() ? Scalar::exact(a.rat_ / b.rat_) : Scalar::floating(a.val_ / b.val_);
}

bool Scalar::identical(const Scalar& o) const {
  if (mode_ != o.mode_) return false;
  return is_exact() ? rat_ == o.rat_ : val_ == o.val_;
}

}  // namespace orbitatlas
