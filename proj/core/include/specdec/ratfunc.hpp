#pragma once

#include <string>

#include "specdec/polynomial.hpp"

namespace specdec {

/// Element of the field Q(z): numerator / denominator in canonical form
/// (denominator monic and nonzero, gcd(numerator, denominator) = 1), so
/// equality is coefficient-wise.
class RationalFunction {
public:
  RationalFunction() : num_(), den_{Rational(1)} {}
  RationalFunction(Polynomial num, Polynomial den);
  explicit RationalFunction(Polynomial p) : num_(std::move(p)), den_{Rational(1)} {}
  explicit RationalFunction(const Rational& c) : num_(c), den_{Rational(1)} {}

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;

  /// Throws PoleError at a denominator root.
  Rational eval(const Rational& x) const;
  double eval(double x) const;

  RationalFunction derivative() const;

  std::string to_string(const std::string& var = "z") const;

private:
  void canonicalize();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace specdec
