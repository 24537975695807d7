#include "specdec/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace specdec {

SpectrumRecord lambda_limit(const DecimationData& dec, double seed, int i,
                            const std::vector<int>& word, const LimitOptions& opt) {
  const BranchSystem& sys = *dec.branches;
  double c = dec.c_delta.get_d();
  double x = seed;
  for (auto it = word.rbegin(); it != word.rend(); ++it) x = sys.phi_double(*it, x);

  SpectrumRecord rec;
  rec.seed = seed;
  rec.word = word;
  double scale = std::pow(c, static_cast<double>(i) + static_cast<double>(word.size()));
  rec.trace.push_back(scale * x);
  for (int n = 1; n <= opt.max_iter; ++n) {
    x = sys.phi_double(0, x);
    scale *= c;
    double t = scale * x;
    double prev = rec.trace.back();
    rec.trace.push_back(t);
    if (std::abs(t - prev) <= opt.rel_tol * std::abs(t)) {
      rec.lambda = t;
      return rec;
    }
  }
  throw ConvergenceError("scaled iterates failed to converge within the iteration cap");
}

std::vector<SpectrumRecord> spectrum_up_to(const FractalStructure& s, const DecimationData& dec,
                                           const SpectrumQuery& query, const LimitOptions& opt) {
  DimensionReport rep = dimension_report(dec);
  if (!rep.regular) {
    throw NonRegularError("structure '" + dec.name +
                          "' is not regular (r >= 1); the limit spectrum is not certified");
  }
  double c = dec.c_delta.get_d();
  double min_e = dec.min_exceptional.to_double();
  int n0 = 0;
  if (query.n0_override >= 0) {
    n0 = query.n0_override;
  } else {
    double lam = query.lambda_max;
    while (lam / std::pow(c, n0) >= min_e) ++n0;
  }
  if (n0 > query.max_level) {
    throw Error("anchoring level " + std::to_string(n0) + " exceeds the resource cap " +
                std::to_string(query.max_level));
  }

  std::vector<LevelGraph> chain = build_chain(s, n0);
  LevelSpectrumResult base = level_spectrum(chain, dec, n0, query.dirichlet);
  double cutoff = query.lambda_max / std::pow(c, n0);

  std::vector<SpectrumRecord> out;
  for (const SpectrumEntry& e : base.entries) {
    if (e.value > cutoff) continue;
    SpectrumRecord rec = lambda_limit(dec, e.value, n0, {}, opt);
    rec.multiplicity = e.multiplicity;
    rec.n0 = n0;
    rec.seed_level = n0;
    if (rec.lambda <= query.lambda_max) out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const SpectrumRecord& a, const SpectrumRecord& b) {
    return a.lambda < b.lambda;
  });
  return out;
}

std::vector<CountingPoint> counting_function(const std::vector<SpectrumRecord>& records,
                                             double d_s, std::vector<double> grid) {
  std::vector<double> lambdas;
  for (const SpectrumRecord& r : records) lambdas.push_back(r.lambda);
  if (grid.empty()) {
    for (size_t i = 0; i < lambdas.size(); ++i) {
      grid.push_back(lambdas[i]);
      if (i + 1 < lambdas.size()) grid.push_back(0.5 * (lambdas[i] + lambdas[i + 1]));
    }
  }
  std::sort(grid.begin(), grid.end());
  std::vector<CountingPoint> out;
  for (double x : grid) {
    CountingPoint pt;
    pt.x = x;
    for (const SpectrumRecord& r : records) {
      if (r.lambda <= x) pt.count += r.multiplicity;
    }
    pt.weyl_ratio = x > 0 ? pt.count / std::pow(x, d_s / 2.0) : 0.0;
    out.push_back(pt);
  }
  return out;
}

}  // namespace specdec
