#include "specdec/gaps.hpp"

#include <algorithm>
#include <cmath>

namespace specdec {

namespace {

// phi_0'' > 0 on the open interior of branch 0, certified through the
// implicit relation phi0'' = -R''(x) / R'(x)^3: equivalent to
// R'(x) R''(x) < 0 there, an exact sign condition on a polynomial.
bool phi0_convex_on(const DecimationData& dec, const BranchSystem& sys) {
  if (sys.branches().empty()) return false;
  const auto& b0 = sys.branches().front();
  if (b0.degenerate) return false;
  RationalFunction r1 = dec.map.derivative();
  RationalFunction r2 = r1.derivative();
  Polynomial g = r1.num() * r2.num() * r1.den() * r2.den();
  if (g.is_zero()) return false;
  for (const auto& ir : PolyRoot::isolate_all(squarefree_part(g))) {
    if (PolyRoot::compare(ir.root, b0.z_lo) > 0 && PolyRoot::compare(ir.root, b0.z_hi) < 0) {
      return false;
    }
  }
  Rational t = rational_between(b0.z_lo, b0.z_hi);
  return sgn(g.eval(t)) < 0;
}

// phi_j(value) as an exact point, when the branch's domain reaches it.
std::optional<PolyRoot> branch_at(const BranchSystem& sys, int j, const PolyRoot& value) {
  const auto& br = sys.branches().at(j);
  if (PolyRoot::compare(value, br.val_lo) < 0 || PolyRoot::compare(value, br.val_hi) > 0) {
    return std::nullopt;
  }
  return sys.solve_on_branch(j, value);
}

CritHypotheses check_crit_core(const DecimationData& dec, PolyRoot bound,
                               const std::vector<PolyRoot>& exceptional_pts) {
  CritHypotheses hyp;
  hyp.b = bound;
  hyp.exceptional_count = static_cast<int>(exceptional_pts.size());
  hyp.branches = PolyRoot::compare(bound, dec.max_exceptional) == 0
                     ? dec.branches
                     : std::make_shared<const BranchSystem>(dec.map, bound);
  const auto& br = hyp.branches->branches();
  const auto& comps = hyp.branches->preimage_intervals();
  hyp.containment_ok = !comps.empty() && comps.front().first.compare(Rational(0)) >= 0 &&
                       PolyRoot::compare(comps.back().second, bound) <= 0;

  for (size_t j = 0; j + 1 < br.size(); ++j) {
    if (PolyRoot::compare(br[j].z_hi, br[j + 1].z_lo) < 0) {
      hyp.j_split = static_cast<int>(j);
    }
  }
  if (hyp.j_split >= 0) {
    hyp.big_m = br[hyp.j_split].z_hi;
    hyp.small_m = br[hyp.j_split + 1].z_lo;
    hyp.separated = PolyRoot::compare(hyp.big_m, hyp.small_m) < 0;
  }
  hyp.phi0_convex = phi0_convex_on(dec, *hyp.branches);
  if (!br.empty() && !br.front().degenerate &&
      PolyRoot::compare(br.front().val_hi, bound) == 0) {
    PolyRoot phi0_b = br.front().increasing ? br.front().z_hi : br.front().z_lo;
    hyp.phi0_contracting = PolyRoot::compare(phi0_b, bound) < 0;
  }

  if (!exceptional_pts.empty()) {
    hyp.z_star = exceptional_pts.front();
    for (const PolyRoot& p : exceptional_pts) {
      if (PolyRoot::compare(p, hyp.z_star) < 0) hyp.z_star = p;
    }
  }
  if (hyp.all_ok()) {
    AlgebraicReal x(hyp.branches, {}, hyp.small_m);
    for (int n = 1; n <= 200; ++n) {
      x = x.apply(0);
      if (x.compare(hyp.z_star) < 0) {
        hyp.n_shift = n;
        break;
      }
    }
    if (hyp.n_shift == 0) throw ConvergenceError("phi_0 iterates of m failed to drop below z*");
  }
  return hyp;
}

std::vector<PolyRoot> exceptional_points(const DecimationData& dec) {
  std::vector<PolyRoot> pts;
  for (const auto& e : dec.exceptional) pts.push_back(e.root);
  return pts;
}

double phi0_limit(const BranchSystem& sys, double c, double seed, int shift, double rel_tol) {
  double x = seed;
  double scale = std::pow(c, shift);
  double prev = scale * x;
  for (int n = 1; n <= 400; ++n) {
    x = sys.phi_double(0, x);
    scale *= c;
    double t = scale * x;
    if (std::abs(t - prev) <= rel_tol * std::abs(t)) return t;
    prev = t;
  }
  throw ConvergenceError("gap endpoint limit failed to converge");
}

}  // namespace

GapReport gaps_via_julia(const JuliaClassification& cls, const DimensionReport& dims) {
  if (!dims.regular) {
    throw NonRegularError("julia gap equivalence requires a regular structure");
  }
  GapReport rep;
  rep.method = GapMethod::JULIA_EQUIVALENCE;
  rep.has_gaps = cls.kind == JuliaKind::TOTALLY_DISCONNECTED;
  return rep;
}

double ratio_estimate(const std::vector<SpectrumRecord>& records) {
  std::vector<double> lambdas;
  for (const SpectrumRecord& r : records) {
    if (r.lambda > 1e-12) {
      for (int i = 0; i < r.multiplicity; ++i) lambdas.push_back(r.lambda);
    }
  }
  std::sort(lambdas.begin(), lambdas.end());
  if (lambdas.size() < 20) {
    throw Error("ratio estimate needs at least 20 positive eigenvalues, got " +
                std::to_string(lambdas.size()));
  }
  double best = 0;
  for (size_t k = lambdas.size() / 2; k + 1 < lambdas.size(); ++k) {
    best = std::max(best, lambdas[k + 1] / lambdas[k]);
  }
  return best;
}

CritHypotheses check_crit_hypotheses(const DecimationData& dec,
                                     std::optional<Rational> b_override) {
  PolyRoot bound = b_override ? PolyRoot::from_rational(*b_override) : dec.max_exceptional;
  if (b_override && PolyRoot::compare(bound, dec.max_exceptional) < 0) {
    throw Error("b must dominate all forbidden eigenvalues");
  }
  return check_crit_core(dec, bound, exceptional_points(dec));
}

GapReport crit_gap_intervals(const DecimationData& dec, const CritHypotheses& hyp, int k_max,
                             const std::vector<SpectrumRecord>& records,
                             const LimitOptions& opt) {
  GapReport rep;
  rep.method = GapMethod::CRIT_INTERVALS;
  rep.has_gaps = hyp.all_ok();
  rep.stray_bound = hyp.n_shift * hyp.exceptional_count;
  if (!rep.has_gaps) return rep;

  const BranchSystem& sys = *hyp.branches;
  double c = dec.c_delta.get_d();
  double m_big = hyp.big_m.to_double();
  double m_small = hyp.small_m.to_double();
  double rel = std::min(opt.rel_tol, 1e-13);

  // Candidate stray values: c^i lim c^p phi0^(p)(z) for exceptional z and
  // k < i <= k + n_shift (the only admissible form inside a gap interval).
  std::vector<double> base_limits;
  for (const auto& e : dec.exceptional) {
    base_limits.push_back(phi0_limit(sys, c, e.root.to_double(), 0, rel));
  }

  for (int k = 0; k <= k_max; ++k) {
    GapInterval gi;
    gi.k = k;
    // Independent truncated runs for each k (the scaled-limit identity
    // A_k = c^k A_0 is then a checkable property, not a construction).
    gi.a = phi0_limit(sys, c, m_big, k + 1, rel);
    gi.b = phi0_limit(sys, c, m_small, k + 1, rel);
    if (!(gi.a < gi.b)) throw CrossCheckError("gap interval degenerate: A_k >= B_k");
    for (const SpectrumRecord& r : records) {
      if (r.lambda > gi.a * (1 + 1e-12) && r.lambda < gi.b * (1 - 1e-12)) {
        gi.stray_count += r.multiplicity;
        bool matches_form = false;
        for (double lim : base_limits) {
          for (int i = k + 1; i <= k + hyp.n_shift; ++i) {
            double cand = std::pow(c, i) * lim;
            if (std::abs(cand - r.lambda) <= 1e-6 * std::abs(r.lambda)) {
              matches_form = true;
              break;
            }
          }
          if (matches_form) break;
        }
        if (!matches_form) {
          throw CrossCheckError("eigenvalue inside a gap interval lacks the exceptional form");
        }
      }
    }
    if (gi.stray_count > rep.stray_bound) {
      throw CrossCheckError("stray count " + std::to_string(gi.stray_count) +
                            " exceeds the bound " + std::to_string(rep.stray_bound));
    }
    rep.intervals.push_back(gi);
  }
  return rep;
}

std::vector<CorollaryVerdict> corollary_checks(const DecimationData& dec) {
  std::vector<CorollaryVerdict> out;
  const BranchSystem& sys = *dec.branches;
  const auto& br = sys.branches();
  const auto& comps = sys.preimage_intervals();
  const PolyRoot& b = dec.max_exceptional;
  bool contained_b = !comps.empty() && comps.front().first.compare(Rational(0)) >= 0 &&
                     PolyRoot::compare(comps.back().second, b) <= 0;
  bool convex = phi0_convex_on(dec, sys);
  bool phi1_decreasing = br.size() >= 2 && !br[1].degenerate && !br[1].increasing;

  {
    CorollaryVerdict v;
    v.id = 1;
    v.name = "phi1-decreasing";
    std::optional<PolyRoot> phi0_b = br.empty() ? std::nullopt : branch_at(sys, 0, b);
    std::optional<PolyRoot> phi1_b = br.size() < 2 ? std::nullopt : branch_at(sys, 1, b);
    v.hypotheses_hold = contained_b && phi1_decreasing && convex && phi0_b && phi1_b &&
                        PolyRoot::compare(*phi0_b, *phi1_b) < 0;
    if (v.hypotheses_hold) v.implies_theorem = check_crit_hypotheses(dec).all_ok();
    out.push_back(std::move(v));
  }

  {
    CorollaryVerdict v;
    v.id = 2;
    v.name = "consecutive-forbidden";
    std::optional<PolyRoot> phi0_b = br.empty() ? std::nullopt : branch_at(sys, 0, b);
    bool found_pair = false;
    if (contained_b && convex && phi0_b && br.size() >= 2) {
      const PolyRoot& min_phi1 = br[1].z_lo;
      for (size_t i = 0; i + 1 < dec.exceptional.size(); ++i) {
        const PolyRoot& alpha = dec.exceptional[i].root;
        const PolyRoot& beta = dec.exceptional[i + 1].root;
        if (PolyRoot::compare(*phi0_b, alpha) <= 0 && PolyRoot::compare(min_phi1, beta) >= 0) {
          found_pair = true;
          break;
        }
      }
    }
    v.hypotheses_hold = found_pair;
    if (v.hypotheses_hold) v.implies_theorem = check_crit_hypotheses(dec).all_ok();
    out.push_back(std::move(v));
  }

  {
    CorollaryVerdict v;
    v.id = 3;
    v.name = "two-largest-forbidden";
    if (dec.exceptional.size() >= 2) {
      const PolyRoot& b2 = dec.exceptional.back().root;
      const PolyRoot& a2 = dec.exceptional[dec.exceptional.size() - 2].root;
      bool contained_a2 = !comps.empty() && comps.front().first.compare(Rational(0)) >= 0 &&
                          PolyRoot::compare(comps.back().second, a2) <= 0;
      v.hypotheses_hold = contained_a2 && phi1_decreasing && convex;
      if (v.hypotheses_hold) {
        // Augmented forbidden set: drop b2, add the preimages phi_j(b2).
        std::vector<PolyRoot> augmented;
        for (size_t i = 0; i + 1 < dec.exceptional.size(); ++i) {
          augmented.push_back(dec.exceptional[i].root);
        }
        for (size_t j = 0; j < br.size(); ++j) {
          if (auto z = branch_at(sys, static_cast<int>(j), b2)) augmented.push_back(*z);
        }
        PolyRoot a_prime = augmented.front();
        for (const PolyRoot& p : augmented) {
          if (PolyRoot::compare(p, a_prime) > 0) a_prime = p;
        }
        if (PolyRoot::compare(a_prime, a2) != 0) {
          v.implies_theorem = false;
        } else {
          v.implies_theorem = check_crit_core(dec, a2, augmented).all_ok();
        }
      }
    }
    out.push_back(std::move(v));
  }

  return out;
}

}  // namespace specdec
