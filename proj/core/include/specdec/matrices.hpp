#pragma once

#include <vector>

#include "specdec/ratmatrix.hpp"
#include "specdec/structure.hpp"

namespace specdec {

/// Discrete probabilistic Laplacian M_n = I - Deg^{-1} Adj, exact rational,
/// rows ordered V_{n-1} first (recursively in M_{n-1} order), then the new
/// vertices by ascending graph id.
struct LaplacianMatrix {
  int level = 0;
  RationalMatrix entries;
  std::vector<int> graph_ids;  // matrix index -> graph vertex id
  int prev_block_size = 0;     // |V_{n-1}| (0 at level 0)
};

/// Matrix ordering for level `level` of the chain (graph ids, V_{n-1} first).
std::vector<int> matrix_order(const std::vector<LevelGraph>& chain, int level);

LaplacianMatrix laplacian_matrix(const std::vector<LevelGraph>& chain, int level);

struct BlockDecomposition {
  int level = 0;
  RationalMatrix a, b, c, d;
};

/// Splits at |V_{n-1}| under the canonical ordering; level >= 1.
BlockDecomposition block_decompose(const LaplacianMatrix& m);

/// M_n in double precision, same ordering as laplacian_matrix.
Matrix<double> laplacian_double(const std::vector<LevelGraph>& chain, int level);

struct NumericBlocks {
  int level = 0;
  int prev = 0;
  Matrix<double> b, c, d;
  std::vector<int> graph_ids;
};
NumericBlocks numeric_blocks(const std::vector<LevelGraph>& chain, int level);

}  // namespace specdec
