#include "specdec/eigensolve.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace specdec {

namespace {

Eigen::MatrixXd symmetrized(const LevelGraph& g, const std::vector<int>& keep) {
  size_t n = keep.size();
  std::vector<int> pos(g.num_vertices, -1);
  for (size_t i = 0; i < n; ++i) pos[keep[i]] = static_cast<int>(i);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (size_t i = 0; i < n; ++i) {
    int v = keep[i];
    m(i, i) = 1.0;
    for (int nb : g.adjacency[v]) {
      if (pos[nb] < 0) continue;
      m(i, pos[nb]) = -1.0 / std::sqrt(static_cast<double>(g.degrees[v]) * g.degrees[nb]);
    }
  }
  return m;
}

std::vector<double> solve_symmetric(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

}  // namespace

std::vector<double> laplacian_eigenvalues(const LevelGraph& g) {
  std::vector<int> keep(g.num_vertices);
  for (int i = 0; i < g.num_vertices; ++i) keep[i] = i;
  return solve_symmetric(symmetrized(g, keep));
}

std::vector<double> laplacian_eigenvalues_dirichlet(const LevelGraph& g) {
  std::vector<char> drop(g.num_vertices, 0);
  for (int v : g.v0_ids) drop[v] = 1;
  std::vector<int> keep;
  for (int v = 0; v < g.num_vertices; ++v) {
    if (!drop[v]) keep.push_back(v);
  }
  return solve_symmetric(symmetrized(g, keep));
}

EigenDecomposition laplacian_eigen(const std::vector<LevelGraph>& chain, int level) {
  const LevelGraph& g = chain[level];
  std::vector<int> order = matrix_order(chain, level);
  size_t n = order.size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> pos(n);
  for (size_t i = 0; i < n; ++i) pos[order[i]] = static_cast<int>(i);
  for (size_t i = 0; i < n; ++i) {
    int v = order[i];
    m(i, i) = 1.0;
    for (int nb : g.adjacency[v]) {
      m(i, pos[nb]) = -1.0 / std::sqrt(static_cast<double>(g.degrees[v]) * g.degrees[nb]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  EigenDecomposition out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  out.vectors = Matrix<double>(n, n);
  // Unsymmetrize: v = Deg^{-1/2} u.
  for (size_t r = 0; r < n; ++r) {
    double scale = 1.0 / std::sqrt(static_cast<double>(g.degrees[order[r]]));
    for (size_t c = 0; c < n; ++c) {
      out.vectors.at(r, c) = scale * es.eigenvectors()(r, c);
    }
  }
  return out;
}

std::vector<double> d_block_eigenvalues(const std::vector<LevelGraph>& chain, int level) {
  const LevelGraph& g = chain[level];
  std::vector<char> drop(g.num_vertices, 0);
  for (int v : g.v_prev_ids) drop[v] = 1;
  std::vector<int> keep;
  for (int v = 0; v < g.num_vertices; ++v) {
    if (!drop[v]) keep.push_back(v);
  }
  return solve_symmetric(symmetrized(g, keep));
}

std::vector<double> solve_extension(const NumericBlocks& blocks, const std::vector<double>& v_prev,
                                    double z) {
  size_t q = blocks.d.rows();
  size_t p = blocks.prev;
  Eigen::MatrixXd dz(q, q);
  for (size_t r = 0; r < q; ++r) {
    for (size_t c = 0; c < q; ++c) dz(r, c) = blocks.d.at(r, c);
    dz(r, r) -= z;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(q);
  for (size_t r = 0; r < q; ++r) {
    double acc = 0;
    for (size_t c = 0; c < p; ++c) acc += blocks.c.at(r, c) * v_prev[c];
    rhs(r) = -acc;
  }
  Eigen::VectorXd x = dz.partialPivLu().solve(rhs);
  return {x.data(), x.data() + q};
}

std::vector<Cluster> cluster_spectrum(const std::vector<double>& ascending, double tol) {
  std::vector<Cluster> out;
  for (double v : ascending) {
    if (!out.empty() && v - out.back().value <= tol) {
      // Running mean keeps the representative centered.
      Cluster& c = out.back();
      c.value = (c.value * c.multiplicity + v) / (c.multiplicity + 1);
      ++c.multiplicity;
    } else {
      out.push_back({v, 1});
    }
  }
  return out;
}

}  // namespace specdec
