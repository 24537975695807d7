#pragma once

#include <memory>
#include <vector>

#include "specdec/polyroot.hpp"
#include "specdec/ratfunc.hpp"

namespace specdec {

/// Rational number strictly between two distinct algebraic numbers.
Rational rational_between(PolyRoot a, PolyRoot b);

/// Real dynamics of a decimation map R on [0, bound]: the preimage
/// R^{-1}([0, bound]) as certified intervals, split into monotone inverse
/// branches ordered by position. Immutable after construction.
class BranchSystem {
public:
  struct Branch {
    int index = 0;
    PolyRoot z_lo, z_hi;      // closed interval of branch values (phi_j's range)
    PolyRoot val_lo, val_hi;  // closed interval of R-values (phi_j's domain)
    bool increasing = true;
    bool degenerate = false;  // single-point branch
    double z_lo_d = 0, z_hi_d = 0, val_lo_d = 0, val_hi_d = 0;
  };

  BranchSystem(RationalFunction map, PolyRoot bound);

  const RationalFunction& map() const { return map_; }
  const Polynomial& num() const { return map_.num(); }
  const Polynomial& den() const { return map_.den(); }
  const PolyRoot& bound() const { return bound_; }
  const std::vector<Branch>& branches() const { return branches_; }

  /// Components of R^{-1}([0, bound]), merged and sorted.
  const std::vector<std::pair<PolyRoot, PolyRoot>>& preimage_intervals() const {
    return components_;
  }

  /// True when generic points of (0, bound) have deg(R) real preimages.
  bool real_degree_complete() const { return degree_complete_; }

  /// phi_j at an exact value inside the branch's domain.
  PolyRoot solve_on_branch(int j, const PolyRoot& value) const;

  /// Fast double-precision phi_j (bracketed bisection + Newton polish);
  /// the input is clamped into the branch domain.
  double phi_double(int j, double value) const;

  /// Rational enclosure of phi_j over (value-interval ∩ branch domain),
  /// refined until its width drops below `width` when possible.
  Interval phi_enclosure(int j, const Interval& value, const Rational& width) const;

private:
  RationalFunction map_;
  RationalFunction dmap_;
  PolyRoot bound_;
  std::vector<Branch> branches_;
  std::vector<std::pair<PolyRoot, PolyRoot>> components_;
  bool degree_complete_ = true;
};

/// Real algebraic number phi_{w_0}(phi_{w_1}(... phi_{w_{m-1}}(seed)))
/// represented lazily by the branch word and a poly-backed seed; comparisons
/// are exact, enclosures refinable. An empty word wraps the seed itself.
class AlgebraicReal {
public:
  AlgebraicReal() : AlgebraicReal(PolyRoot::from_rational(Rational(0))) {}
  explicit AlgebraicReal(PolyRoot seed);
  AlgebraicReal(std::shared_ptr<const BranchSystem> sys, std::vector<int> word, PolyRoot seed);

  const std::vector<int>& word() const { return word_; }
  const PolyRoot& seed() const { return seed_; }
  bool is_poly_backed() const { return word_.empty(); }

  /// phi_branch applied on the outside.
  AlgebraicReal apply(int branch) const;

  const Interval& enclosure() const { return enc_; }
  void refine_below(const Rational& width);
  double to_double() const;

  static int compare(const AlgebraicReal& a, const AlgebraicReal& b);
  int compare(const PolyRoot& p) const;
  int compare(const Rational& q) const;
  bool operator==(const AlgebraicReal& o) const { return compare(*this, o) == 0; }
  bool operator<(const AlgebraicReal& o) const { return compare(*this, o) < 0; }

private:
  static bool decide_equal(const AlgebraicReal& a, const AlgebraicReal& b);
  static bool poly_equals_lazy(PolyRoot x, const AlgebraicReal& lazy);

  std::shared_ptr<const BranchSystem> sys_;  // null for poly-backed values
  std::vector<int> word_;
  PolyRoot seed_;
  Interval enc_;
  bool enc_valid_ = false;
};

}  // namespace specdec
