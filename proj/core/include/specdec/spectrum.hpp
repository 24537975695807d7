#pragma once

#include <vector>

#include "specdec/decimation.hpp"

namespace specdec {

struct LimitOptions {
  double rel_tol = 1e-12;
  int max_iter = 200;
};

/// One eigenvalue of the limit Laplacian with its generation data.
struct SpectrumRecord {
  double lambda = 0;
  int multiplicity = 1;
  int n0 = 0;             // anchoring level
  double seed = 0;        // anchoring eigenvalue (at level n0) or raw seed
  int seed_level = 0;     // level the seed lives at (= n0 for anchored runs)
  std::vector<int> word;  // branch word applied before the pure-phi0 tail
  std::vector<double> trace;  // successive scaled iterates
};

/// lambda = c^i lim_n c^{n+|word|} phi0^(n)(phi_word(seed)): iterates phi_0
/// from phi_word(seed) and scales; stops when successive scaled iterates
/// agree to rel_tol, throws ConvergenceError past max_iter.
SpectrumRecord lambda_limit(const DecimationData& dec, double seed, int i,
                            const std::vector<int>& word, const LimitOptions& opt = {});

struct SpectrumQuery {
  double lambda_max = 0;  // report eigenvalues below this
  int n0_override = -1;   // -1: automatic minimal anchoring level
  bool dirichlet = false;
  int max_level = 8;      // resource cap on the anchoring level
};

/// All eigenvalues of the limit Laplacian below lambda_max, anchored at the
/// minimal level n0 with c^{-n0} lambda_max below the least exceptional
/// value; multiplicities carried from the anchoring level's spectrum.
/// Requires a regular structure (NonRegularError otherwise).
std::vector<SpectrumRecord> spectrum_up_to(const FractalStructure& s, const DecimationData& dec,
                                           const SpectrumQuery& query,
                                           const LimitOptions& opt = {});

struct CountingPoint {
  double x = 0;
  int count = 0;
  double weyl_ratio = 0;  // count / x^(d_s/2)
};

/// Eigenvalue counting function N(x) with the Weyl-type ratio, evaluated on
/// the given grid (or at eigenvalues and midpoints when the grid is empty).
std::vector<CountingPoint> counting_function(const std::vector<SpectrumRecord>& records,
                                             double d_s, std::vector<double> grid = {});

}  // namespace specdec
