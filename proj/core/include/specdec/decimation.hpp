#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specdec/dynamics.hpp"
#include "specdec/matrices.hpp"
#include "specdec/polyroot.hpp"
#include "specdec/ratfunc.hpp"
#include "specdec/structure.hpp"

namespace specdec {

/// Schur complement S(z) = (1-z)A - B (D - zI)^{-1} C of M_1 - zI, exact
/// over Q(z).
RatFuncMatrix schur_complement(const BlockDecomposition& blocks);

struct PhiR {
  RationalFunction phi;
  RationalFunction map;  // R
};

/// Verifies the fully symmetric shape of S (all diagonal entries equal, all
/// off-diagonal entries equal and nonzero), extracts phi and R, and
/// re-verifies S = phi (M_0 - R) as an exact identity together with R(0)=0
/// and R'(0) > 1. Throws NotFullySymmetricError / DegenerateStructureError.
PhiR extract_phi_R(const RatFuncMatrix& s, int v0_size);

/// sigma(D) ∪ {phi = 0}, sorted ascending; errors if any value fails to be
/// real and positive. d_charpoly_out (optional) receives det(zI - D).
std::vector<IsolatedRoot> exceptional_set(const BlockDecomposition& blocks,
                                          const RationalFunction& phi,
                                          Polynomial* d_charpoly_out = nullptr);

/// Full symbolic output of the level-1 analysis.
struct DecimationData {
  std::string name;
  int n_cells = 0;
  int v0_size = 0;
  RationalFunction map;  // R
  RationalFunction phi;
  int map_degree = 0;    // L: degree of R
  Rational c_delta;      // R'(0)
  Polynomial d_charpoly;
  std::vector<IsolatedRoot> exceptional;
  PolyRoot min_exceptional;
  PolyRoot max_exceptional;  // default branch bound b
  std::shared_ptr<const BranchSystem> branches;  // over [0, max_exceptional]
  SymmetryReport symmetry;
  bool pcf = false;
};

/// Orchestrates structure validation, the symbolic Schur complement, the
/// exceptional set and branch construction. Refuses structures whose
/// discovered boundary action is not doubly transitive.
DecimationData analyze_decimation(const FractalStructure& s);

struct DimensionReport {
  int n_cells = 0;
  Rational c_delta;
  Rational c;  // conductance scaling factor c_delta / N
  Rational r;  // resistance scaling factor 1/c
  double d_r = 0;
  double d_s = 0;
  bool regular = false;
};
DimensionReport dimension_report(const DecimationData& dec);

/// Independent numeric-free reconstruction of phi and R: exact rational
/// sampling of S(z0) via block arithmetic at random rational points plus an
/// exact linear fit. Must agree with the symbolic path coefficient-wise.
PhiR interpolation_oracle(const FractalStructure& s);

struct SpectrumEntry {
  double value = 0;
  int multiplicity = 0;
  std::string provenance;            // branch word + seed, or exceptional tag
  std::optional<Rational> exact;     // exact rational eigenvalue when verified
};

struct LevelSpectrumResult {
  int level = 0;
  bool dirichlet = false;
  std::vector<SpectrumEntry> entries;
};

struct SpectrumOptions {
  double cluster_tol = 1e-9;
  double exceptional_dist = 1e-6;
  double decimation_tol = 1e-8;
  int exact_recognition_max_vertices = 50;
  bool cross_check = true;
};

/// Numerical spectrum of Delta_n with multiplicities, decimation
/// cross-check against level n-1 (hard CrossCheckError on failure) and
/// provenance words. The chain must extend to `level`.
LevelSpectrumResult level_spectrum(const std::vector<LevelGraph>& chain,
                                   const DecimationData& dec, int level,
                                   bool dirichlet = false,
                                   const SpectrumOptions& opt = {});

/// Extends an eigenvector of M_{n-1} (eigenvalue R(z)) to M_n by
/// v' = -(D - z)^{-1} C v_prev; returns (v_prev, v') stacked in the
/// canonical matrix order. Throws ExceptionalValueError when z is within
/// guard_dist of sigma(D_n).
std::vector<double> extend_eigenvector(const std::vector<LevelGraph>& chain, int level,
                                       const std::vector<double>& v_prev, double z,
                                       double guard_dist = 1e-8);

}  // namespace specdec
