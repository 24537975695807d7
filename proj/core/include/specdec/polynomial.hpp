#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "specdec/rational.hpp"

namespace specdec {

/// Univariate polynomial with exact rational coefficients, stored in
/// ascending degree with trailing zeros stripped (zero polynomial = empty).
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  Polynomial(std::initializer_list<Rational> ascending);
  static Polynomial from_coeffs(std::vector<Rational> ascending);
  static Polynomial monomial(int degree, const Rational& c = Rational(1));

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int k) const;
  const Rational& lead() const;

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& s) const;

  /// Euclidean division: returns (quotient, remainder). Throws
  /// DivisionByZeroError when dividing by zero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  /// Exact division; throws CrossCheckError if a nonzero remainder appears.
  Polynomial divexact(const Polynomial& divisor) const;

  Polynomial derivative() const;
  Polynomial to_monic() const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  Interval eval(const Interval& x) const;
  int sign_at(const Rational& x) const { return sign(eval(x)); }

  /// All rational endpoints r with |root| <= r (Cauchy bound); >= 1.
  Rational root_bound() const;

  std::string to_string(const std::string& var = "z") const;

private:
  void strip();
  std::vector<Rational> coeffs_;
};

inline Polynomial operator*(const Rational& s, const Polynomial& p) { return p * s; }

/// Monic gcd; gcd(0,0) = 0.
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

/// p / gcd(p, p'), monic.
Polynomial squarefree_part(const Polynomial& p);

/// Yun decomposition: pairwise-coprime monic factors with multiplicities;
/// the product of factor^multiplicity equals p up to a constant.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);

/// Sturm chain of p; counts distinct real roots.
class SturmSequence {
public:
  explicit SturmSequence(const Polynomial& p);
  /// Sign variations of the chain at x.
  int variations_at(const Rational& x) const;
  /// Distinct real roots in (a, b]; requires a < b.
  int count_roots(const Rational& a, const Rational& b) const;
  /// Distinct real roots on the whole line.
  int count_all_roots() const;

private:
  std::vector<Polynomial> chain_;
};

/// Resultant of a and b (0 when either is zero and the other non-constant,
/// following the Sylvester determinant convention).
Rational resultant(const Polynomial& a, const Polynomial& b);

/// Numerator of g(num/den): sum g_k * num^k * den^(deg g - k).
Polynomial compose_clearing_denominator(const Polynomial& g, const Polynomial& num,
                                        const Polynomial& den);

/// All rational roots of p with multiplicities (exhaustive via the rational
/// root theorem on the primitive integer form; gives up and returns only the
/// roots found so far when coefficient factorization exceeds desk scale, in
/// which case `complete` is false).
struct RationalRoots {
  std::vector<std::pair<Rational, int>> roots;
  bool complete = true;
};
RationalRoots rational_roots(const Polynomial& p);

}  // namespace specdec
