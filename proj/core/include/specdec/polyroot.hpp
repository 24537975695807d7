#pragma once

#include <memory>
#include <vector>

#include "specdec/polynomial.hpp"

namespace specdec {

struct IsolatedRoot;

/// A real algebraic number: the unique root of a square-free defining
/// polynomial inside a rational isolating interval. A width-zero interval
/// represents an exact rational (defining polynomial z - q).
///
/// Value semantics: copies refine their enclosures independently. The
/// enclosure is a cache; refining never changes the represented number.
class PolyRoot {
public:
  PolyRoot() : PolyRoot(from_rational(Rational(0))) {}

  static PolyRoot from_rational(const Rational& q);

  /// All real roots of p inside the closed range, sorted ascending, with
  /// multiplicities from the square-free decomposition. Enclosures are
  /// pairwise disjoint. Rational roots get width-zero enclosures.
  static std::vector<IsolatedRoot> isolate(const Polynomial& p, const Interval& range);
  static std::vector<IsolatedRoot> isolate_all(const Polynomial& p);

  const Polynomial& defining() const { return *poly_; }
  const Interval& enclosure() const { return enc_; }
  bool is_rational() const { return enc_.is_point(); }
  const Rational& rational_value() const;

  /// Shrinks the enclosure below `width` by bisection.
  void refine_below(const Rational& width);
  void refine_step();
  double to_double() const;

  /// Total order on real algebraic numbers; exact.
  static int compare(const PolyRoot& a, const PolyRoot& b);
  int compare(const Rational& q) const;
  bool operator==(const PolyRoot& o) const { return compare(*this, o) == 0; }
  bool operator<(const PolyRoot& o) const { return compare(*this, o) < 0; }

  /// Exact sign of h at this number.
  int sign_of(const Polynomial& h) const;

  /// Image under the rational function num/den; throws PoleError when the
  /// denominator vanishes here.
  PolyRoot apply_ratfunc(const Polynomial& num, const Polynomial& den) const;

  /// All real z with (num/den)(z) == target, sorted ascending.
  static std::vector<PolyRoot> preimages_under(const Polynomial& num, const Polynomial& den,
                                               const PolyRoot& target);

private:
  PolyRoot(std::shared_ptr<const Polynomial> p, Interval enc, int sign_lo)
      : poly_(std::move(p)), enc_(std::move(enc)), sign_lo_(sign_lo) {}
  void collapse_to(const Rational& q);

  std::shared_ptr<const Polynomial> poly_;
  Interval enc_;
  int sign_lo_ = 0;  // sign of defining() at enc_.lo (0 for exact rationals)
};

/// An isolated real root with the multiplicity it carries in the polynomial
/// it was isolated from.
struct IsolatedRoot {
  PolyRoot root;
  int multiplicity = 1;
};

}  // namespace specdec
