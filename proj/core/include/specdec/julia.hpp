#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "specdec/decimation.hpp"
#include "specdec/dynamics.hpp"

namespace specdec {

/// Convex hull [0, a] of the real Julia set of the decimation map, with the
/// branch system rebuilt over that hull.
struct JuliaHull {
  PolyRoot a;
  bool a_is_root_of_map = false;  // else: a is the largest fixed point
  bool indifferent_flagged = false;  // R'(a) == 1 exactly; classification kept
  std::shared_ptr<const BranchSystem> branches;  // over [0, a]
};

/// Smallest candidate from {largest real root of R, largest real fixed
/// point} with R^{-1}([0,a]) contained in [0,a]; throws HullError when
/// neither candidate works.
JuliaHull julia_hull(const DecimationData& dec);

struct CoverInterval {
  AlgebraicReal lo;
  AlgebraicReal hi;
};

/// Finite union of disjoint closed intervals R^{-n}([0, a]), endpoints
/// refinable algebraic numbers.
struct IntervalCover {
  int depth = 0;
  std::vector<CoverInterval> intervals;  // sorted, pairwise disjoint
};

IntervalCover initial_cover(const JuliaHull& hull);
IntervalCover cover_step(const JuliaHull& hull, const IntervalCover& cover);
IntervalCover preimage_cover(const JuliaHull& hull, int depth);

/// Exact containment of `inner`'s intervals in `outer`'s (interval-wise).
bool cover_contains(const IntervalCover& outer, const IntervalCover& inner);

/// Refines every endpoint enclosure below `width`; strict comparisons then
/// resolve from the cached enclosures.
void refine_cover(IntervalCover& cover, const Rational& width);

/// Largest interval length, as an upper bound at the given refinement width.
double max_interval_length(const IntervalCover& cover, const Rational& width);

enum class JuliaKind { INTERVAL, TOTALLY_DISCONNECTED };

struct JuliaClassification {
  JuliaKind kind = JuliaKind::INTERVAL;
  PolyRoot a;
  /// First gap of R^{-1}(I) for the totally disconnected case.
  std::optional<std::pair<PolyRoot, PolyRoot>> witness_gap;
  /// For the interval case: R^{-1}(I) = I was verified exactly.
  bool preimage_equals_hull = false;
  /// Fewer than deg(R) real branches covered a generic point.
  bool real_degree_warning = false;
};

JuliaClassification classify(const DecimationData& dec, const JuliaHull& hull);

/// Point of D_n with the preimage order it first appeared at.
struct DnPoint {
  PolyRoot value;
  int order = 0;
};

/// D_n = union over m <= n of R^{-m}(E(M, M_0) ∪ sigma(Delta_0)), all real
/// preimages, deduplicated and sorted.
std::vector<DnPoint> dn_points(const DecimationData& dec, int n);

}  // namespace specdec
