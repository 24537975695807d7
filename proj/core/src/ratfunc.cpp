#include "specdec/ratfunc.hpp"

#include "specdec/error.hpp"

namespace specdec {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (den_.is_zero()) throw DivisionByZeroError("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial{Rational(1)};
    return;
  }
  Polynomial g = poly_gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_.divexact(g);
    den_ = den_.divexact(g);
  }
  Rational lc = den_.lead();
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw DivisionByZeroError("division by the zero rational function");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

Rational RationalFunction::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (sgn(d) == 0) throw PoleError("evaluation at a pole");
  return num_.eval(x) / d;
}

double RationalFunction::eval(double x) const {
  return num_.eval(x) / den_.eval(x);
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

std::string RationalFunction::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ") / (" + den_.to_string(var) + ")";
}

}  // namespace specdec
