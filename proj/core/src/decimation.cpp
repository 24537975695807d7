#include "specdec/decimation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "specdec/eigensolve.hpp"

namespace specdec {

RatFuncMatrix schur_complement(const BlockDecomposition& blocks) {
  size_t p = blocks.a.rows();
  size_t qn = blocks.d.rows();
  RatFuncMatrix dz(qn, qn);
  for (size_t r = 0; r < qn; ++r) {
    for (size_t c = 0; c < qn; ++c) {
      Polynomial entry(blocks.d.at(r, c));
      if (r == c) entry = entry - Polynomial::monomial(1);
      dz.at(r, c) = RationalFunction(entry);
    }
  }
  RatFuncMatrix dinv = ratfunc_matrix_inverse(dz);
  RatFuncMatrix b(p, qn), c(qn, p);
  for (size_t r = 0; r < p; ++r) {
    for (size_t cc = 0; cc < qn; ++cc) b.at(r, cc) = RationalFunction(blocks.b.at(r, cc));
  }
  for (size_t r = 0; r < qn; ++r) {
    for (size_t cc = 0; cc < p; ++cc) c.at(r, cc) = RationalFunction(blocks.c.at(r, cc));
  }
  RatFuncMatrix prod = b * dinv * c;
  RationalFunction one_minus_z(Polynomial{Rational(1), Rational(-1)});
  RatFuncMatrix s(p, p);
  for (size_t r = 0; r < p; ++r) {
    for (size_t cc = 0; cc < p; ++cc) {
      RationalFunction az(blocks.a.at(r, cc));
      s.at(r, cc) = one_minus_z * az - prod.at(r, cc);
    }
  }
  return s;
}

PhiR extract_phi_R(const RatFuncMatrix& s, int v0_size) {
  size_t p = s.rows();
  if (static_cast<int>(p) != v0_size || p < 2) throw Error("schur complement has the wrong size");
  const RationalFunction& diag = s.at(0, 0);
  const RationalFunction& off = s.at(0, 1);
  for (size_t r = 0; r < p; ++r) {
    for (size_t c = 0; c < p; ++c) {
      const RationalFunction& want = r == c ? diag : off;
      if (s.at(r, c) != want) {
        throw NotFullySymmetricError(
            "Schur complement lacks the equal-diagonal / equal-off-diagonal shape");
      }
    }
  }
  if (off.is_zero()) throw NotFullySymmetricError("off-diagonal Schur entries vanish identically");

  PhiR out;
  out.phi = RationalFunction(Rational(-(v0_size - 1))) * off;
  out.map = RationalFunction(Rational(1)) - diag / out.phi;

  // S = phi (M_0 - R) exactly: diagonal phi (1 - R), off-diagonal
  // -phi / (|V0|-1).
  RationalFunction one(Rational(1));
  if (diag != out.phi * (one - out.map)) {
    throw NotFullySymmetricError("S(z) != phi(z) (M_0 - R(z)) on the diagonal");
  }
  if (off != out.phi * RationalFunction(Rational(-1, v0_size - 1))) {
    throw NotFullySymmetricError("S(z) != phi(z) (M_0 - R(z)) off the diagonal");
  }

  const Polynomial& num = out.map.num();
  const Polynomial& den = out.map.den();
  if (sgn(den.eval(Rational(0))) == 0 || sgn(num.eval(Rational(0))) != 0) {
    throw DegenerateStructureError("decimation map does not satisfy R(0) = 0");
  }
  Rational c_delta = num.derivative().eval(Rational(0)) / den.eval(Rational(0));
  if (c_delta <= 1) {
    throw DegenerateStructureError("R'(0) = " + rational_to_string(c_delta) + " <= 1");
  }
  return out;
}

std::vector<IsolatedRoot> exceptional_set(const BlockDecomposition& blocks,
                                          const RationalFunction& phi,
                                          Polynomial* d_charpoly_out) {
  Polynomial cp = charpoly(blocks.d);
  if (d_charpoly_out) *d_charpoly_out = cp;
  std::vector<IsolatedRoot> sigma_d = PolyRoot::isolate_all(cp);
  int total = 0;
  for (const auto& ir : sigma_d) total += ir.multiplicity;
  if (total != cp.degree()) {
    throw Error("sigma(D) has non-real eigenvalues; structure outside the supported class");
  }
  std::vector<IsolatedRoot> zeros = PolyRoot::isolate_all(phi.num());
  int ztotal = 0;
  for (const auto& ir : zeros) ztotal += ir.multiplicity;
  if (ztotal != phi.num().degree()) {
    throw Error("phi has non-real zeros; structure outside the supported class");
  }

  std::vector<IsolatedRoot> merged = sigma_d;
  for (const auto& z : zeros) {
    bool dup = false;
    for (auto& ex : merged) {
      if (PolyRoot::compare(ex.root, z.root) == 0) {
        ex.multiplicity = std::max(ex.multiplicity, z.multiplicity);
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(z);
  }
  std::sort(merged.begin(), merged.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) {
    return PolyRoot::compare(a.root, b.root) < 0;
  });
  for (const auto& ir : merged) {
    if (ir.root.compare(Rational(0)) <= 0) {
      throw Error("exceptional set contains a non-positive value; structure outside the supported class");
    }
  }
  return merged;
}

DecimationData analyze_decimation(const FractalStructure& s) {
  DecimationData dec;
  dec.name = s.name;
  dec.n_cells = s.num_cells;
  dec.v0_size = s.boundary_size;
  dec.symmetry = validate_full_symmetry(s);
  if (!dec.symmetry.doubly_transitive) {
    throw NotFullySymmetricError("structure '" + s.name +
                                 "' has no doubly transitive boundary action");
  }
  dec.pcf = check_pcf(s);

  std::vector<LevelGraph> chain = build_chain(s, 1);
  BlockDecomposition blocks = block_decompose(laplacian_matrix(chain, 1));
  RatFuncMatrix schur = schur_complement(blocks);
  PhiR pr = extract_phi_R(schur, s.boundary_size);
  dec.map = pr.map;
  dec.phi = pr.phi;
  dec.map_degree = std::max(dec.map.num().degree(), dec.map.den().degree());
  dec.c_delta = dec.map.num().derivative().eval(Rational(0)) / dec.map.den().eval(Rational(0));

  // phi -> 0 at infinity and deg R >= 2.
  if (dec.phi.num().degree() >= dec.phi.den().degree()) {
    throw DegenerateStructureError("phi does not vanish at infinity");
  }
  if (dec.map_degree < 2) throw DegenerateStructureError("decimation map has degree < 2");

  dec.exceptional = exceptional_set(blocks, dec.phi, &dec.d_charpoly);
  if (dec.exceptional.empty()) throw Error("empty exceptional set (internal)");
  dec.min_exceptional = dec.exceptional.front().root;
  dec.max_exceptional = dec.exceptional.back().root;
  dec.branches = std::make_shared<const BranchSystem>(dec.map, dec.max_exceptional);

  // The branch whose range contains 0 must come first.
  const auto& br = dec.branches->branches();
  if (br.empty() || br[0].z_lo.compare(Rational(0)) > 0 || br[0].z_hi.compare(Rational(0)) < 0) {
    throw DegenerateStructureError("inverse branch containing 0 is not the leftmost");
  }
  return dec;
}

DimensionReport dimension_report(const DecimationData& dec) {
  DimensionReport rep;
  rep.n_cells = dec.n_cells;
  rep.c_delta = dec.c_delta;
  rep.c = dec.c_delta / Rational(dec.n_cells);
  rep.r = Rational(1) / rep.c;
  rep.regular = rep.r < 1;
  double n = static_cast<double>(dec.n_cells);
  double c = rep.c.get_d();
  if (c > 0 && c != 1.0) {
    rep.d_r = std::log(n) / std::log(c);
    rep.d_s = 2.0 * std::log(n) / std::log(n * c);
  } else {
    rep.d_r = std::numeric_limits<double>::quiet_NaN();
    rep.d_s = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

namespace {

// Exact nullspace vector of an m x u rational matrix (one free column set
// to 1). Throws if the matrix has full column rank.
std::vector<Rational> nullspace_vector(RationalMatrix a) {
  size_t m = a.rows(), u = a.cols();
  std::vector<int> pivot_of_col(u, -1);
  size_t row = 0;
  for (size_t col = 0; col < u && row < m; ++col) {
    size_t piv = row;
    while (piv < m && sgn(a.at(piv, col)) == 0) ++piv;
    if (piv == m) continue;
    if (piv != row) {
      for (size_t c = 0; c < u; ++c) std::swap(a.at(piv, c), a.at(row, c));
    }
    Rational inv = Rational(1) / a.at(row, col);
    for (size_t r = 0; r < m; ++r) {
      if (r == row || sgn(a.at(r, col)) == 0) continue;
      Rational f = a.at(r, col) * inv;
      for (size_t c = col; c < u; ++c) a.at(r, c) -= f * a.at(row, c);
    }
    pivot_of_col[col] = static_cast<int>(row);
    ++row;
  }
  int free_col = -1;
  for (size_t col = 0; col < u; ++col) {
    if (pivot_of_col[col] < 0) {
      free_col = static_cast<int>(col);
      break;
    }
  }
  if (free_col < 0) throw Error("interpolation system has no nullspace");
  std::vector<Rational> x(u, Rational(0));
  x[free_col] = 1;
  for (size_t col = 0; col < u; ++col) {
    int pr = pivot_of_col[col];
    if (pr < 0) continue;
    x[col] = -a.at(pr, free_col) / a.at(pr, col);
  }
  return x;
}

RationalFunction fit_rational_function(const std::vector<Rational>& xs,
                                       const std::vector<Rational>& ys, int num_deg,
                                       int den_deg) {
  size_t m = xs.size();
  size_t u = num_deg + 1 + den_deg + 1;
  RationalMatrix a(m, u);
  for (size_t i = 0; i < m; ++i) {
    Rational pw(1);
    for (int k = 0; k <= num_deg; ++k) {
      a.at(i, k) = pw;
      pw *= xs[i];
    }
    pw = 1;
    for (int k = 0; k <= den_deg; ++k) {
      a.at(i, num_deg + 1 + k) = -ys[i] * pw;
      pw *= xs[i];
    }
  }
  std::vector<Rational> sol = nullspace_vector(std::move(a));
  std::vector<Rational> pc(sol.begin(), sol.begin() + num_deg + 1);
  std::vector<Rational> qc(sol.begin() + num_deg + 1, sol.end());
  Polynomial p = Polynomial::from_coeffs(std::move(pc));
  Polynomial q = Polynomial::from_coeffs(std::move(qc));
  if (q.is_zero()) throw Error("interpolation produced a zero denominator");
  return RationalFunction(p, q);
}

}  // namespace

PhiR interpolation_oracle(const FractalStructure& s) {
  std::vector<LevelGraph> chain = build_chain(s, 1);
  BlockDecomposition blocks = block_decompose(laplacian_matrix(chain, 1));
  size_t dsz = blocks.d.rows();
  size_t p = blocks.a.rows();
  int num_deg = static_cast<int>(dsz) + 1;
  int den_deg = static_cast<int>(dsz);
  size_t samples = static_cast<size_t>(num_deg + den_deg) + 3;

  std::mt19937_64 rng(0x5ec5u);
  std::uniform_int_distribution<long> dist(-6000, 6000);
  std::vector<Rational> xs, s11, s12;
  std::vector<Rational> seen;
  while (xs.size() < samples + 3) {
    Rational z(dist(rng), 2473);
    z.canonicalize();
    if (std::find(seen.begin(), seen.end(), z) != seen.end()) continue;
    seen.push_back(z);
    RationalMatrix dz = blocks.d;
    for (size_t r = 0; r < dsz; ++r) dz.at(r, r) -= z;
    if (sgn(rational_det(dz)) == 0) continue;  // sample hit a pole: resample
    RationalMatrix x = rational_solve(dz, blocks.c);
    // S(z) = (1-z)A - B x, rows 0 only needed.
    Rational v11 = (Rational(1) - z) * blocks.a.at(0, 0);
    Rational v12 = (Rational(1) - z) * blocks.a.at(0, 1);
    for (size_t k = 0; k < dsz; ++k) {
      v11 -= blocks.b.at(0, k) * x.at(k, 0);
      v12 -= blocks.b.at(0, k) * x.at(k, 1);
    }
    xs.push_back(z);
    s11.push_back(v11);
    s12.push_back(v12);
  }
  std::vector<Rational> fit_x(xs.begin(), xs.begin() + samples);
  std::vector<Rational> fit_11(s11.begin(), s11.begin() + samples);
  std::vector<Rational> fit_12(s12.begin(), s12.begin() + samples);
  RationalFunction f11 = fit_rational_function(fit_x, fit_11, num_deg, den_deg);
  RationalFunction f12 = fit_rational_function(fit_x, fit_12, num_deg, den_deg);
  // Spare samples verify the fit before any reconstruction.
  for (size_t i = samples; i < xs.size(); ++i) {
    if (f11.eval(xs[i]) != s11[i] || f12.eval(xs[i]) != s12[i]) {
      throw CrossCheckError("rational interpolation failed verification at a spare sample");
    }
  }
  PhiR out;
  out.phi = RationalFunction(Rational(-(static_cast<int>(p) - 1))) * f12;
  out.map = RationalFunction(Rational(1)) - f11 / out.phi;
  return out;
}

namespace {

std::string format_word(const std::vector<int>& word) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) os << ".";
    os << word[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

LevelSpectrumResult level_spectrum(const std::vector<LevelGraph>& chain,
                                   const DecimationData& dec, int level, bool dirichlet,
                                   const SpectrumOptions& opt) {
  if (level >= static_cast<int>(chain.size())) throw Error("graph chain too short for level");
  const LevelGraph& g = chain[level];
  std::vector<double> eigs =
      dirichlet ? laplacian_eigenvalues_dirichlet(g) : laplacian_eigenvalues(g);
  std::vector<Cluster> clusters = cluster_spectrum(eigs, opt.cluster_tol);

  std::vector<double> exceptional_d;
  for (const auto& ir : dec.exceptional) exceptional_d.push_back(ir.root.to_double());

  // Exact rational recognition for small matrices.
  std::vector<std::optional<Rational>> exact(clusters.size());
  if (g.num_vertices <= opt.exact_recognition_max_vertices) {
    LaplacianMatrix lm = laplacian_matrix(chain, level);
    RationalMatrix base = lm.entries;
    if (dirichlet) {
      // Remove boundary rows/cols (they are the first |V0| in matrix order at
      // level >= 1 only when V0 ⊂ V_{n-1}; use graph ids instead).
      std::vector<char> is_b(g.num_vertices, 0);
      for (int v : g.v0_ids) is_b[v] = 1;
      std::vector<size_t> keep;
      for (size_t i = 0; i < lm.graph_ids.size(); ++i) {
        if (!is_b[lm.graph_ids[i]]) keep.push_back(i);
      }
      RationalMatrix sub(keep.size(), keep.size());
      for (size_t r = 0; r < keep.size(); ++r) {
        for (size_t c = 0; c < keep.size(); ++c) sub.at(r, c) = base.at(keep[r], keep[c]);
      }
      base = std::move(sub);
    }
    for (size_t i = 0; i < clusters.size(); ++i) {
      auto cand = snap_to_rational(clusters[i].value, 1000000, 1e-7);
      if (!cand) continue;
      RationalMatrix shifted = base;
      for (size_t r = 0; r < shifted.rows(); ++r) shifted.at(r, r) -= *cand;
      size_t nullity = shifted.rows() - rational_rank(shifted);
      if (nullity == static_cast<size_t>(clusters[i].multiplicity)) exact[i] = *cand;
    }
  }

  // Decimation cross-check: non-exceptional eigenvalues must map into the
  // previous level's spectrum under R. Stated for the Neumann sequence only.
  if (opt.cross_check && !dirichlet && level >= 1) {
    std::vector<double> prev = laplacian_eigenvalues(chain[level - 1]);
    for (const Cluster& c : clusters) {
      double dist = std::numeric_limits<double>::infinity();
      for (double e : exceptional_d) dist = std::min(dist, std::abs(c.value - e));
      if (dist <= opt.exceptional_dist) continue;
      double rz = dec.map.eval(c.value);
      double best = std::numeric_limits<double>::infinity();
      for (double e : prev) best = std::min(best, std::abs(rz - e));
      if (best > opt.decimation_tol) {
        std::ostringstream os;
        os << "decimation cross-check failed at level " << level << ": R(" << c.value
           << ") = " << rz << " misses sigma(Delta_" << (level - 1) << ") by " << best;
        throw CrossCheckError(os.str());
      }
    }
  }

  // Provenance: descend through branches until an exceptional value or
  // level 0 is reached.
  LevelSpectrumResult out;
  out.level = level;
  out.dirichlet = dirichlet;
  const auto& branches = dec.branches->branches();
  for (size_t i = 0; i < clusters.size(); ++i) {
    SpectrumEntry e;
    e.value = clusters[i].value;
    e.multiplicity = clusters[i].multiplicity;
    e.exact = exact[i];
    double z = e.value;
    int k = level;
    std::vector<int> word;
    std::string seed;
    while (true) {
      double dist = std::numeric_limits<double>::infinity();
      for (double ex : exceptional_d) dist = std::min(dist, std::abs(z - ex));
      if (k == 0 || dist <= opt.exceptional_dist) {
        std::ostringstream os;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", z);
        os << (k == 0 ? "s0=" : "E=") << buf << "@" << k;
        seed = os.str();
        break;
      }
      int hit = -1;
      for (const auto& b : branches) {
        if (z >= b.z_lo_d - 1e-9 && z <= b.z_hi_d + 1e-9) {
          hit = b.index;
          break;
        }
      }
      if (hit < 0) {
        seed = "outside-branches";
        break;
      }
      word.push_back(hit);
      z = dec.map.eval(z);
      --k;
    }
    e.provenance = format_word(word) + (seed.empty() ? "" : " " + seed);
    out.entries.push_back(std::move(e));
  }
  return out;
}

std::vector<double> extend_eigenvector(const std::vector<LevelGraph>& chain, int level,
                                       const std::vector<double>& v_prev, double z,
                                       double guard_dist) {
  std::vector<double> sigma_d = d_block_eigenvalues(chain, level);
  for (double e : sigma_d) {
    if (std::abs(z - e) <= guard_dist) {
      throw ExceptionalValueError("extension value too close to sigma(D_n)");
    }
  }
  NumericBlocks blocks = numeric_blocks(chain, level);
  if (v_prev.size() != static_cast<size_t>(blocks.prev)) {
    throw Error("previous-level eigenvector has the wrong size");
  }
  std::vector<double> ext = solve_extension(blocks, v_prev, z);
  std::vector<double> full = v_prev;
  full.insert(full.end(), ext.begin(), ext.end());
  return full;
}

}  // namespace specdec
