#include "wbx/scalar.hpp"

#include <sstream>

namespace wbx {

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) fail(errc::parse_error, "empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpq_class q(s, 10);
      q.canonicalize();
      return Rational(q);
    }
    mpz_class num(s.substr(0, slash), 10);
    mpz_class den(s.substr(slash + 1), 10);
    if (den == 0) fail(errc::division_by_zero, "zero denominator in '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad rational literal '" + s + "'");
  }
}

std::string Rational::str() const {
  std::string s = q_.get_num().get_str();
  if (q_.get_den() != 1) s += "/" + q_.get_den().get_str();
  return s;
}

std::string Scalar::str() const {
  if (b_.is_zero()) return a_.str();
  std::ostringstream os;
  bool have_a = !a_.is_zero();
  if (have_a) os << a_.str();
  if (b_.is_one()) {
    os << (have_a ? "+" : "");
  } else if (b_ == Rational(-1)) {
    os << "-";
  } else {
    if (have_a && b_.sign() > 0) os << "+";
    os << b_.str() << "*";
  }
  os << "sqrt(" << d_ << ")";
  return os.str();
}

Scalar beta_of(int n) {
  switch (n) {
    case 2: return Scalar(Rational(3, 2), Rational(1, 2), 5); // (3+sqrt5)/2
    case 3: return Scalar(Rational(3), Rational(0), 3);       // 4 cos^2(pi/6) = 3, tagged in Q(sqrt3)
    default:
      fail(errc::unsupported_index, "beta_of: n must be 2 or 3, got " + std::to_string(n));
  }
}

Scalar delta_of(int n) {
  switch (n) {
    case 2: return Scalar(Rational(1, 2), Rational(1, 2), 5); // golden ratio
    case 3: return Scalar::sqrt_of(3);
    default:
      fail(errc::unsupported_index, "delta_of: n must be 2 or 3, got " + std::to_string(n));
  }
}

} // namespace wbx
