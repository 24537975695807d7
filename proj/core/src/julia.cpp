#include "specdec/julia.hpp"

#include <algorithm>

namespace specdec {

JuliaHull julia_hull(const DecimationData& dec) {
  const Polynomial& num = dec.map.num();
  const Polynomial& den = dec.map.den();
  std::vector<PolyRoot> candidates;
  auto roots = PolyRoot::isolate_all(num);
  if (!roots.empty()) candidates.push_back(roots.back().root);
  Polynomial fixed = num - Polynomial::monomial(1) * den;
  auto fixed_roots = PolyRoot::isolate_all(fixed);
  if (!fixed_roots.empty()) candidates.push_back(fixed_roots.back().root);
  std::sort(candidates.begin(), candidates.end(),
            [](const PolyRoot& a, const PolyRoot& b) { return PolyRoot::compare(a, b) < 0; });
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](const PolyRoot& a, const PolyRoot& b) {
                                 return PolyRoot::compare(a, b) == 0;
                               }),
                   candidates.end());

  for (const PolyRoot& cand : candidates) {
    if (cand.compare(Rational(0)) <= 0) continue;
    auto sys = std::make_shared<const BranchSystem>(dec.map, cand);
    const auto& comps = sys->preimage_intervals();
    if (comps.empty()) continue;
    bool contained = comps.front().first.compare(Rational(0)) >= 0 &&
                     PolyRoot::compare(comps.back().second, cand) <= 0;
    if (!contained) continue;
    JuliaHull hull;
    hull.a = cand;
    hull.branches = sys;
    hull.a_is_root_of_map = cand.sign_of(num) == 0;
    // Indifferent boundary case R'(a) = 1: flagged, not classified away.
    Polynomial w = num.derivative() * den - num * den.derivative();
    hull.indifferent_flagged = cand.sign_of(w - den * den) == 0;
    return hull;
  }
  throw HullError("no hull candidate satisfies R^{-1}([0,a]) ⊆ [0,a]");
}

IntervalCover initial_cover(const JuliaHull& hull) {
  IntervalCover cover;
  cover.depth = 0;
  CoverInterval whole{AlgebraicReal(hull.branches, {}, PolyRoot::from_rational(Rational(0))),
                      AlgebraicReal(hull.branches, {}, hull.a)};
  cover.intervals.push_back(std::move(whole));
  return cover;
}

IntervalCover cover_step(const JuliaHull& hull, const IntervalCover& cover) {
  const BranchSystem& sys = *hull.branches;
  // Branches are ordered by position and each phi_j is monotone, so emitting
  // per branch (reversed on decreasing branches) keeps pieces globally
  // sorted without any comparison-based sort. Pieces can only touch where
  // two branches meet, so the merge test runs once per branch boundary.
  std::vector<CoverInterval> pieces;
  std::vector<int> piece_branch;
  for (const auto& branch : sys.branches()) {
    AlgebraicReal vlo(hull.branches, {}, branch.val_lo);
    AlgebraicReal vhi(hull.branches, {}, branch.val_hi);
    AlgebraicReal zlo(hull.branches, {}, branch.z_lo);
    AlgebraicReal zhi(hull.branches, {}, branch.z_hi);
    // A branch whose domain is all of [0, a] never clips a cover interval.
    bool full_range = branch.val_lo.compare(Rational(0)) == 0 &&
                      PolyRoot::compare(branch.val_hi, hull.a) == 0;
    std::vector<CoverInterval> local;
    for (const CoverInterval& iv : cover.intervals) {
      bool lo_clamped = false, hi_clamped = false;
      if (!full_range) {
        // Clamp [iv.lo, iv.hi] into the branch domain [val_lo, val_hi].
        lo_clamped = AlgebraicReal::compare(iv.lo, vlo) <= 0;
        hi_clamped = AlgebraicReal::compare(iv.hi, vhi) >= 0;
      }
      const AlgebraicReal& x = lo_clamped ? vlo : iv.lo;
      const AlgebraicReal& y = hi_clamped ? vhi : iv.hi;
      if (!full_range && AlgebraicReal::compare(x, y) > 0) continue;  // empty
      if (branch.degenerate) {
        local.push_back(CoverInterval{zlo, zlo});
        continue;
      }
      CoverInterval img;
      if (branch.increasing) {
        img.lo = lo_clamped ? zlo : x.apply(branch.index);
        img.hi = hi_clamped ? zhi : y.apply(branch.index);
      } else {
        img.lo = hi_clamped ? zlo : y.apply(branch.index);
        img.hi = lo_clamped ? zhi : x.apply(branch.index);
      }
      local.push_back(std::move(img));
    }
    if (!branch.increasing) std::reverse(local.begin(), local.end());
    for (CoverInterval& piece : local) {
      pieces.push_back(std::move(piece));
      piece_branch.push_back(branch.index);
    }
  }
  IntervalCover out;
  out.depth = cover.depth + 1;
  int last_branch = -1;
  for (size_t i = 0; i < pieces.size(); ++i) {
    CoverInterval& piece = pieces[i];
    if (!out.intervals.empty() && piece_branch[i] != last_branch) {
      CoverInterval& last = out.intervals.back();
      int cmp = AlgebraicReal::compare(last.hi, piece.lo);
      if (cmp > 0) throw Error("cover pieces overlap (internal)");
      if (cmp == 0) {  // touching pieces merge
        last.hi = std::move(piece.hi);
        last_branch = piece_branch[i];
        continue;
      }
    }
    out.intervals.push_back(std::move(piece));
    last_branch = piece_branch[i];
  }
  return out;
}

IntervalCover preimage_cover(const JuliaHull& hull, int depth) {
  IntervalCover cover = initial_cover(hull);
  for (int d = 0; d < depth; ++d) cover = cover_step(hull, cover);
  return cover;
}

bool cover_contains(const IntervalCover& outer, const IntervalCover& inner) {
  // Both covers are sorted and disjoint: one merge walk suffices.
  size_t oi = 0;
  for (const CoverInterval& iv : inner.intervals) {
    while (oi < outer.intervals.size() &&
           AlgebraicReal::compare(outer.intervals[oi].hi, iv.hi) < 0) {
      ++oi;
    }
    if (oi == outer.intervals.size()) return false;
    if (AlgebraicReal::compare(outer.intervals[oi].lo, iv.lo) > 0) return false;
  }
  return true;
}

void refine_cover(IntervalCover& cover, const Rational& width) {
  for (CoverInterval& iv : cover.intervals) {
    iv.lo.refine_below(width);
    iv.hi.refine_below(width);
  }
}

double max_interval_length(const IntervalCover& cover, const Rational& width) {
  double best = 0;
  for (const CoverInterval& iv : cover.intervals) {
    AlgebraicReal lo = iv.lo, hi = iv.hi;
    lo.refine_below(width);
    hi.refine_below(width);
    Rational len = hi.enclosure().hi - lo.enclosure().lo;
    best = std::max(best, len.get_d());
  }
  return best;
}

JuliaClassification classify(const DecimationData& dec, const JuliaHull& hull) {
  JuliaClassification out;
  out.a = hull.a;
  out.real_degree_warning = !hull.branches->real_degree_complete();
  const auto& comps = hull.branches->preimage_intervals();
  if (comps.empty()) throw Error("empty preimage of the hull (internal)");
  if (comps.size() == 1) {
    // Connected preimage: it must be [0, a] itself.
    bool is_hull = comps[0].first.compare(Rational(0)) == 0 &&
                   PolyRoot::compare(comps[0].second, hull.a) == 0;
    if (!is_hull) throw Error("connected preimage differs from the hull (internal)");
    out.kind = JuliaKind::INTERVAL;
    out.preimage_equals_hull = true;
  } else {
    out.kind = JuliaKind::TOTALLY_DISCONNECTED;
    out.witness_gap = std::make_pair(comps[0].second, comps[1].first);
  }
  (void)dec;
  return out;
}

std::vector<DnPoint> dn_points(const DecimationData& dec, int n) {
  std::vector<DnPoint> points;
  auto push_unique = [&points](const PolyRoot& r, int order) {
    for (const DnPoint& p : points) {
      if (PolyRoot::compare(p.value, r) == 0) return false;
    }
    points.push_back(DnPoint{r, order});
    return true;
  };
  // sigma(Delta_0) of the complete graph: {0, |V0|/(|V0|-1)}.
  push_unique(PolyRoot::from_rational(Rational(0)), 0);
  Rational top(dec.v0_size, dec.v0_size - 1);
  top.canonicalize();
  push_unique(PolyRoot::from_rational(top), 0);
  for (const auto& e : dec.exceptional) push_unique(e.root, 0);

  size_t frontier_begin = 0;
  for (int order = 1; order <= n; ++order) {
    size_t frontier_end = points.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      PolyRoot target = points[i].value;
      for (const PolyRoot& pre : PolyRoot::preimages_under(dec.map.num(), dec.map.den(), target)) {
        push_unique(pre, order);
      }
    }
    frontier_begin = frontier_end;
  }
  std::sort(points.begin(), points.end(), [](const DnPoint& a, const DnPoint& b) {
    return PolyRoot::compare(a.value, b.value) < 0;
  });
  return points;
}

}  // namespace specdec
