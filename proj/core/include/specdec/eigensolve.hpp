#pragma once

#include <vector>

#include "specdec/matrices.hpp"
#include "specdec/structure.hpp"

namespace specdec {

/// Eigenvalues of M_n = I - Deg^{-1} Adj, computed from the symmetrized form
/// Deg^{1/2} M Deg^{-1/2}; ascending, one entry per vertex.
std::vector<double> laplacian_eigenvalues(const LevelGraph& g);

/// Dirichlet variant: boundary rows and columns removed before solving.
std::vector<double> laplacian_eigenvalues_dirichlet(const LevelGraph& g);

/// Full decomposition of M_n in the canonical matrix ordering. Columns of
/// `vectors` are eigenvectors of the (unsymmetrized) M_n.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix<double> vectors;
};
EigenDecomposition laplacian_eigen(const std::vector<LevelGraph>& chain, int level);

/// Eigenvalues of the D block of M_n (needed for exceptional-value guards).
std::vector<double> d_block_eigenvalues(const std::vector<LevelGraph>& chain, int level);

/// Solves (D - z I) x = -C v_prev; the core of the eigenvector extension.
std::vector<double> solve_extension(const NumericBlocks& blocks, const std::vector<double>& v_prev,
                                    double z);

struct Cluster {
  double value = 0;
  int multiplicity = 0;
};
/// Groups an ascending eigenvalue list into clusters at absolute tolerance.
std::vector<Cluster> cluster_spectrum(const std::vector<double>& ascending, double tol);

}  // namespace specdec
