#include "specdec/matrices.hpp"

#include <algorithm>

namespace specdec {

std::vector<int> matrix_order(const std::vector<LevelGraph>& chain, int level) {
  if (level == 0) {
    std::vector<int> order(chain[0].num_vertices);
    for (int i = 0; i < chain[0].num_vertices; ++i) order[i] = i;
    return order;
  }
  const LevelGraph& g = chain[level];
  std::vector<int> prev_order = matrix_order(chain, level - 1);
  std::vector<int> order;
  order.reserve(g.num_vertices);
  std::vector<char> taken(g.num_vertices, 0);
  for (int p : prev_order) {
    int id = g.v_prev_ids[p];
    order.push_back(id);
    taken[id] = 1;
  }
  for (int v = 0; v < g.num_vertices; ++v) {
    if (!taken[v]) order.push_back(v);
  }
  return order;
}

LaplacianMatrix laplacian_matrix(const std::vector<LevelGraph>& chain, int level) {
  const LevelGraph& g = chain[level];
  LaplacianMatrix m;
  m.level = level;
  m.graph_ids = matrix_order(chain, level);
  m.prev_block_size = level == 0 ? 0 : chain[level - 1].num_vertices;
  std::vector<int> pos(g.num_vertices);
  for (size_t i = 0; i < m.graph_ids.size(); ++i) pos[m.graph_ids[i]] = static_cast<int>(i);
  m.entries = RationalMatrix(g.num_vertices, g.num_vertices);
  for (int v = 0; v < g.num_vertices; ++v) {
    int r = pos[v];
    m.entries.at(r, r) = Rational(1);
    Rational w(-1, g.degrees[v]);
    w.canonicalize();
    for (int nb : g.adjacency[v]) {
      m.entries.at(r, pos[nb]) = w;
    }
  }
  return m;
}

BlockDecomposition block_decompose(const LaplacianMatrix& m) {
  if (m.level < 1) throw Error("block_decompose requires level >= 1");
  size_t p = m.prev_block_size;
  size_t n = m.entries.rows();
  BlockDecomposition out;
  out.level = m.level;
  out.a = RationalMatrix(p, p);
  out.b = RationalMatrix(p, n - p);
  out.c = RationalMatrix(n - p, p);
  out.d = RationalMatrix(n - p, n - p);
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) {
      const Rational& v = m.entries.at(r, c);
      if (r < p && c < p) out.a.at(r, c) = v;
      else if (r < p) out.b.at(r, c - p) = v;
      else if (c < p) out.c.at(r - p, c) = v;
      else out.d.at(r - p, c - p) = v;
    }
  }
  return out;
}

Matrix<double> laplacian_double(const std::vector<LevelGraph>& chain, int level) {
  LaplacianMatrix exact = laplacian_matrix(chain, level);
  size_t n = exact.entries.rows();
  Matrix<double> m(n, n);
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) m.at(r, c) = exact.entries.at(r, c).get_d();
  }
  return m;
}

NumericBlocks numeric_blocks(const std::vector<LevelGraph>& chain, int level) {
  const LevelGraph& g = chain[level];
  NumericBlocks out;
  out.level = level;
  out.prev = chain[level - 1].num_vertices;
  out.graph_ids = matrix_order(chain, level);
  size_t n = g.num_vertices, p = out.prev;
  std::vector<int> pos(n);
  for (size_t i = 0; i < out.graph_ids.size(); ++i) pos[out.graph_ids[i]] = static_cast<int>(i);
  out.b = Matrix<double>(p, n - p);
  out.c = Matrix<double>(n - p, p);
  out.d = Matrix<double>(n - p, n - p);
  for (size_t v = 0; v < n; ++v) {
    size_t r = pos[v];
    double w = -1.0 / g.degrees[v];
    if (r >= p) out.d.at(r - p, r - p) = 1.0;
    for (int nb : g.adjacency[v]) {
      size_t c = pos[nb];
      if (r < p && c >= p) out.b.at(r, c - p) = w;
      else if (r >= p && c < p) out.c.at(r - p, c) = w;
      else if (r >= p && c >= p) out.d.at(r - p, c - p) = w;
    }
  }
  return out;
}

}  // namespace specdec
