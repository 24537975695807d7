#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specdec/decimation.hpp"
#include "specdec/julia.hpp"
#include "specdec/spectrum.hpp"

namespace specdec {

enum class GapMethod { JULIA_EQUIVALENCE, RATIO_ESTIMATE, CRIT_INTERVALS };

struct GapInterval {
  int k = 0;
  double a = 0;  // A_k
  double b = 0;  // B_k
  int stray_count = 0;
};

struct GapReport {
  bool has_gaps = false;
  GapMethod method = GapMethod::JULIA_EQUIVALENCE;
  double limsup_estimate = 0;  // ratio method only
  bool finite_sample = false;
  std::vector<GapInterval> intervals;  // criterion method only
  int stray_bound = 0;                 // n_shift * |E(M, M_0)|
};

/// Equivalence of gaps with total disconnectedness of the Julia set;
/// requires a regular structure.
GapReport gaps_via_julia(const JuliaClassification& cls, const DimensionReport& dims);

/// Finite-sample limsup proxy: max of lambda_{k+1}/lambda_k over the tail
/// half of the positive eigenvalues. Needs at least 20 of them.
double ratio_estimate(const std::vector<SpectrumRecord>& records);

/// Hypotheses of the interval-locating gap criterion.
struct CritHypotheses {
  PolyRoot b;
  std::shared_ptr<const BranchSystem> branches;  // over [0, b]
  bool containment_ok = false;  // R^{-1}[0,b] ⊆ [0,b]
  int j_split = -1;             // largest J with max phi_J < min phi_{J+1}
  PolyRoot big_m;               // M = max phi_J on [0,b]
  PolyRoot small_m;             // m = min phi_{J+1} on [0,b]
  bool separated = false;       // M < m
  bool phi0_convex = false;
  bool phi0_contracting = false;  // phi_0(b) < b
  PolyRoot z_star;                // min of the effective exceptional set
  int n_shift = 0;                // minimal n with phi_0^(n)(m) < z*
  int exceptional_count = 0;

  bool all_ok() const {
    return containment_ok && j_split >= 0 && separated && phi0_convex && phi0_contracting;
  }
};

/// Certifies each hypothesis exactly. b defaults to the largest exceptional
/// value; a larger override re-verifies containment over [0, b_override].
CritHypotheses check_crit_hypotheses(const DecimationData& dec,
                                     std::optional<Rational> b_override = {});

/// Gap intervals (A_k, B_k) for k = 0..k_max, with the stray-count
/// cross-check against the supplied spectrum records. Throws
/// CrossCheckError when a stray eigenvalue violates the bound or fails to
/// have the predicted exceptional-seed form.
GapReport crit_gap_intervals(const DecimationData& dec, const CritHypotheses& hyp, int k_max,
                             const std::vector<SpectrumRecord>& records,
                             const LimitOptions& opt = {});

struct CorollaryVerdict {
  int id = 0;
  std::string name;
  bool hypotheses_hold = false;
  /// When the corollary's hypotheses hold, the theorem's hypotheses were
  /// re-checked and must hold too.
  bool implies_theorem = false;
};

/// The three specializations of the gap-interval criterion.
std::vector<CorollaryVerdict> corollary_checks(const DecimationData& dec);

}  // namespace specdec
