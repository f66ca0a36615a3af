#pragma once

#include <string>

#include "wbx/rational.hpp"

namespace wbx {

// Element a + b*sqrt(d) of Q(sqrt d); d == 0 marks a plain rational (b must be 0).
// Scalars from different quadratic fields never mix; rationals promote freely.
class Scalar {
public:
  Scalar() = default;
  Scalar(long n) : a_(n) {}
  Scalar(const Rational& a) : a_(a) {}
  Scalar(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
    if (b_.is_zero()) d_ = 0;
    if (d_ == 0 && !b_.is_zero()) fail(errc::mismatched_field, "sqrt part without a field tag");
  }

  static Scalar sqrt_of(long d) { return Scalar(Rational(0), Rational(1), d); }

  const Rational& rat_part() const { return a_; }
  const Rational& sqrt_part() const { return b_; }
  long field_d() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return a_.is_one() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  // Rational norm a^2 - d*b^2; zero iff the scalar is zero (d square-free).
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

  Scalar conj() const { return Scalar(a_, -b_, d_); }

  Scalar operator-() const { return Scalar(-a_, -b_, d_); }

  Scalar& operator+=(const Scalar& o) {
    long d = combined_field(o);
    a_ += o.a_;
    b_ += o.b_;
    d_ = b_.is_zero() ? 0 : d;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    long d = combined_field(o);
    Rational a = a_ * o.a_ + Rational(d) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = a;
    b_ = b;
    d_ = b_.is_zero() ? 0 : d;
    return *this;
  }
  Scalar inverse() const {
    if (is_zero()) fail(errc::division_by_zero, "inverse of zero");
    Rational n = norm();
    return Scalar(a_ / n, -b_ / n, d_);
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.a_ == b.a_ && a.b_ == b.b_ && (a.b_.is_zero() || a.d_ == b.d_);
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;

private:
  long combined_field(const Scalar& o) const {
    if (d_ == 0) return o.d_;
    if (o.d_ == 0 || o.d_ == d_) return d_;
    fail(errc::mismatched_field,
         "cannot combine Q(sqrt " + std::to_string(d_) + ") with Q(sqrt " + std::to_string(o.d_) + ")");
  }

  Rational a_;
  Rational b_;
  long d_ = 0;
};

// Jones-index data for n in {2,3}: beta = 4 cos^2(pi/(n+3)), delta = 2 cos(pi/(n+3)),
// the two cases where beta lies in a real quadratic field.
Scalar beta_of(int n);
Scalar delta_of(int n);

} // namespace wbx
