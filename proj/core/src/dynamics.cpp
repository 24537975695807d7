#include "specdec/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "specdec/error.hpp"

namespace specdec {

Rational rational_between(PolyRoot a, PolyRoot b) {
  if (PolyRoot::compare(a, b) >= 0) throw Error("rational_between needs a < b");
  while (a.enclosure().intersects(b.enclosure())) {
    a.refine_step();
    b.refine_step();
  }
  return (a.enclosure().hi + b.enclosure().lo) / 2;
}

namespace {

struct BoundaryPoint {
  PolyRoot at;
  bool is_pole = false;
  bool member = false;  // R(at) in [0, bound]
};

}  // namespace

BranchSystem::BranchSystem(RationalFunction map, PolyRoot bound)
    : map_(std::move(map)), dmap_(map_.derivative()), bound_(std::move(bound)) {
  const Polynomial& p = map_.num();
  const Polynomial& q = map_.den();
  if (p.degree() < 1) throw Error("decimation map must be non-constant");
  Polynomial w = p.derivative() * q - p * q.derivative();

  // Candidate boundary points of R^{-1}([0, b]) and of its monotone pieces:
  // roots of R, preimages of b, critical points, poles.
  std::vector<BoundaryPoint> pts;
  auto add = [&](const PolyRoot& r, bool pole) {
    for (BoundaryPoint& bp : pts) {
      if (PolyRoot::compare(bp.at, r) == 0) {
        bp.is_pole = bp.is_pole || pole;
        return;
      }
    }
    BoundaryPoint bp;
    bp.at = r;
    bp.is_pole = pole;
    pts.push_back(std::move(bp));
  };
  for (auto& ir : PolyRoot::isolate_all(p)) add(ir.root, false);
  for (PolyRoot& r : PolyRoot::preimages_under(p, q, bound_)) add(r, false);
  for (auto& ir : PolyRoot::isolate_all(squarefree_part(w))) add(ir.root, false);
  for (auto& ir : PolyRoot::isolate_all(q)) add(ir.root, true);
  std::sort(pts.begin(), pts.end(), [](const BoundaryPoint& x, const BoundaryPoint& y) {
    return PolyRoot::compare(x.at, y.at) < 0;
  });

  for (BoundaryPoint& bp : pts) {
    if (bp.is_pole) continue;
    PolyRoot img = bp.at.apply_ratfunc(p, q);
    bp.member = img.compare(Rational(0)) >= 0 && PolyRoot::compare(img, bound_) <= 0;
  }

  // Membership of the open gaps between consecutive candidates, by exact
  // evaluation at a rational sample.
  size_t m = pts.size();
  std::vector<char> gap_member(m + 1, 0);
  for (size_t i = 0; i + 1 < m; ++i) {
    Rational t = rational_between(pts[i].at, pts[i + 1].at);
    Rational dv = q.eval(t);
    if (sgn(dv) == 0) throw Error("unexpected pole between boundary points");
    Rational img = p.eval(t) / dv;
    gap_member[i + 1] = sgn(img) >= 0 && bound_.compare(img) >= 0;
  }
  // Unbounded ends: the spectral decimation map grows at infinity, so the
  // preimage must be bounded.
  if (m > 0) {
    for (int side = 0; side < 2; ++side) {
      PolyRoot edge = side == 0 ? pts.front().at : pts.back().at;
      Rational t = side == 0 ? Rational(edge.enclosure().lo - 1) : Rational(edge.enclosure().hi + 1);
      Rational dv = q.eval(t);
      bool member = false;
      if (sgn(dv) != 0) {
        Rational img = p.eval(t) / dv;
        member = sgn(img) >= 0 && bound_.compare(img) >= 0;
      }
      if (member) throw Error("preimage of [0, bound] is unbounded; map outside the supported class");
    }
  }

  // Assemble closed components from the membership pattern.
  std::vector<std::pair<size_t, size_t>> comp_idx;
  size_t i = 0;
  while (i < m) {
    if (!pts[i].member) {
      ++i;
      continue;
    }
    size_t jx = i;
    while (jx + 1 < m && gap_member[jx + 1] && pts[jx + 1].member) ++jx;
    comp_idx.emplace_back(i, jx);
    i = jx + 1;
  }
  for (auto& [lo, hi] : comp_idx) components_.emplace_back(pts[lo].at, pts[hi].at);

  // Split components at interior critical points into monotone branches.
  int index = 0;
  for (auto& [lo, hi] : comp_idx) {
    size_t start = lo;
    for (size_t k = lo; k <= hi; ++k) {
      bool is_break = k == hi || pts[k].at.sign_of(w) == 0;
      if (!is_break) continue;
      if (k == start && k != hi) continue;
      if (k > start || start == hi) {
        Branch b;
        b.index = index++;
        b.z_lo = pts[start].at;
        b.z_hi = pts[k].at;
        b.degenerate = PolyRoot::compare(b.z_lo, b.z_hi) == 0;
        PolyRoot v_at_lo = b.z_lo.apply_ratfunc(p, q);
        PolyRoot v_at_hi = b.degenerate ? v_at_lo : b.z_hi.apply_ratfunc(p, q);
        if (b.degenerate) {
          b.increasing = true;
          b.val_lo = v_at_lo;
          b.val_hi = v_at_hi;
        } else {
          Rational t = rational_between(b.z_lo, b.z_hi);
          b.increasing = sgn(w.eval(t)) > 0;
          b.val_lo = b.increasing ? v_at_lo : v_at_hi;
          b.val_hi = b.increasing ? v_at_hi : v_at_lo;
        }
        b.z_lo_d = b.z_lo.to_double();
        b.z_hi_d = b.z_hi.to_double();
        b.val_lo_d = b.val_lo.to_double();
        b.val_hi_d = b.val_hi.to_double();
        branches_.push_back(std::move(b));
        start = k;
      }
    }
  }

  // Pre-refine the branch frame; comparisons against these endpoints then
  // resolve from cached enclosures in almost all cases.
  Rational frame_width = Rational(1) / (BigInt(1) << 96);
  for (Branch& b : branches_) {
    b.z_lo.refine_below(frame_width);
    b.z_hi.refine_below(frame_width);
    b.val_lo.refine_below(frame_width);
    b.val_hi.refine_below(frame_width);
  }
  for (auto& [lo, hi] : components_) {
    lo.refine_below(frame_width);
    hi.refine_below(frame_width);
  }

  // Degree completeness: generic points of (0, b) should have deg(R) real
  // preimages when the Julia set is real.
  int deg = std::max(p.degree(), q.degree());
  Rational probe = bound_.enclosure().lo / 3 + Rational(1, 7);
  if (sgn(probe) <= 0) probe = Rational(1, 7);
  int count = 0;
  for (const Branch& b : branches_) {
    if (b.val_lo.compare(probe) <= 0 && b.val_hi.compare(probe) >= 0) ++count;
  }
  degree_complete_ = count == deg;
}

PolyRoot BranchSystem::solve_on_branch(int j, const PolyRoot& value) const {
  const Branch& b = branches_.at(j);
  if (PolyRoot::compare(value, b.val_lo) < 0 || PolyRoot::compare(value, b.val_hi) > 0) {
    throw Error("value outside the branch domain");
  }
  if (b.degenerate) return b.z_lo;
  // Endpoint shortcuts keep boundary cases exact and cheap.
  if (PolyRoot::compare(value, b.val_lo) == 0) return b.increasing ? b.z_lo : b.z_hi;
  if (PolyRoot::compare(value, b.val_hi) == 0) return b.increasing ? b.z_hi : b.z_lo;
  std::vector<PolyRoot> cands;
  if (value.is_rational()) {
    Polynomial h = num() - den() * value.rational_value();
    for (auto& ir : PolyRoot::isolate_all(h)) cands.push_back(ir.root);
  } else {
    cands = PolyRoot::preimages_under(num(), den(), value);
  }
  PolyRoot* hit = nullptr;
  for (PolyRoot& c : cands) {
    if (PolyRoot::compare(c, b.z_lo) >= 0 && PolyRoot::compare(c, b.z_hi) <= 0) {
      if (hit) throw Error("branch solve found two roots (internal)");
      hit = &c;
    }
  }
  if (!hit) throw Error("branch solve lost the root (internal)");
  return *hit;
}

double BranchSystem::phi_double(int j, double value) const {
  const Branch& b = branches_.at(j);
  double t = std::min(std::max(value, b.val_lo_d), b.val_hi_d);
  if (b.degenerate) return b.z_lo_d;
  double lo = b.z_lo_d, hi = b.z_hi_d;
  auto rv = [&](double x) { return map_.eval(x); };
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    bool below = rv(mid) < t;
    if (below == b.increasing) lo = mid;
    else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  // Newton polish.
  for (int it = 0; it < 3; ++it) {
    double slope = dmap_.eval(x);
    if (slope == 0.0 || !std::isfinite(slope)) break;
    double nx = x - (rv(x) - t) / slope;
    if (nx >= b.z_lo_d && nx <= b.z_hi_d) x = nx;
  }
  return x;
}

Interval BranchSystem::phi_enclosure(int j, const Interval& value, const Rational& width) const {
  const Branch& b = branches_.at(j);
  if (b.degenerate) {
    PolyRoot z = b.z_lo;
    z.refine_below(width);
    return z.enclosure();
  }
  PolyRoot vlo = b.val_lo, vhi = b.val_hi;
  vlo.refine_below(width / 4);
  vhi.refine_below(width / 4);
  // Clamp into the domain, using outer bounds of the endpoint enclosures.
  Rational t1 = std::max(value.lo, vlo.enclosure().lo);
  Rational t2 = std::min(value.hi, vhi.enclosure().hi);
  if (t1 > t2) throw Error("value interval missed the branch domain (internal)");
  auto z_at = [&](const Rational& t) {
    if (vlo.compare(t) >= 0) return b.increasing ? b.z_lo : b.z_hi;
    if (vhi.compare(t) <= 0) return b.increasing ? b.z_hi : b.z_lo;
    return solve_on_branch(j, PolyRoot::from_rational(t));
  };
  PolyRoot za = z_at(t1), zb = z_at(t2);
  za.refine_below(width / 4);
  zb.refine_below(width / 4);
  Rational lo = std::min(za.enclosure().lo, zb.enclosure().lo);
  Rational hi = std::max(za.enclosure().hi, zb.enclosure().hi);
  return Interval(lo, hi);
}

AlgebraicReal::AlgebraicReal(PolyRoot seed) : seed_(std::move(seed)), enc_(seed_.enclosure()) {}

AlgebraicReal::AlgebraicReal(std::shared_ptr<const BranchSystem> sys, std::vector<int> word,
                             PolyRoot seed)
    : sys_(std::move(sys)), word_(std::move(word)), seed_(std::move(seed)) {
  if (!word_.empty() && !sys_) throw Error("lazy algebraic number needs a branch system");
  refine_below(Rational(1));
}

AlgebraicReal AlgebraicReal::apply(int branch) const {
  if (!sys_) throw Error("apply requires a branch system");
  std::vector<int> w;
  w.reserve(word_.size() + 1);
  w.push_back(branch);
  w.insert(w.end(), word_.begin(), word_.end());
  return AlgebraicReal(sys_, std::move(w), seed_);
}

void AlgebraicReal::refine_below(const Rational& width) {
  if (word_.empty()) {
    seed_.refine_below(width);
    enc_ = seed_.enclosure();
    return;
  }
  if (enc_valid_ && (enc_.is_point() || enc_.width() < width)) return;
  Rational w = width;
  for (int attempt = 0; attempt < 64; ++attempt) {
    PolyRoot s = seed_;
    s.refine_below(w);
    Interval cur = s.enclosure();
    for (auto it = word_.rbegin(); it != word_.rend(); ++it) {
      cur = sys_->phi_enclosure(*it, cur, w);
    }
    if (cur.width() < width || cur.is_point()) {
      enc_ = cur;
      enc_valid_ = true;
      return;
    }
    w = w / 16;
  }
  throw Error("enclosure refinement failed to converge");
}

double AlgebraicReal::to_double() const {
  if (word_.empty()) return seed_.to_double();
  AlgebraicReal copy = *this;
  Rational scale = abs(copy.enc_.lo) + abs(copy.enc_.hi) + 1;
  copy.refine_below(scale / (BigInt(1) << 56));
  return copy.enc_.mid().get_d();
}

bool AlgebraicReal::poly_equals_lazy(PolyRoot x, const AlgebraicReal& lazy) {
  const BranchSystem& sys = *lazy.sys_;
  for (int letter : lazy.word_) {
    const BranchSystem::Branch& b = sys.branches().at(letter);
    if (PolyRoot::compare(x, b.z_lo) < 0 || PolyRoot::compare(x, b.z_hi) > 0) return false;
    x = x.apply_ratfunc(sys.num(), sys.den());
  }
  return PolyRoot::compare(x, lazy.seed_) == 0;
}

bool AlgebraicReal::decide_equal(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (a.word_.empty() && b.word_.empty()) return PolyRoot::compare(a.seed_, b.seed_) == 0;
  if (a.word_.empty()) return poly_equals_lazy(a.seed_, b);
  if (b.word_.empty()) return poly_equals_lazy(b.seed_, a);
  if (a.sys_.get() != b.sys_.get()) throw Error("comparing values from different branch systems");
  if (a.word_.front() == b.word_.front()) {
    AlgebraicReal ia(a.sys_, std::vector<int>(a.word_.begin() + 1, a.word_.end()), a.seed_);
    AlgebraicReal ib(b.sys_, std::vector<int>(b.word_.begin() + 1, b.word_.end()), b.seed_);
    return decide_equal(ia, ib);
  }
  // Different leading branches: equality forces both values onto the shared
  // endpoint of the two branch ranges, which exists only when they touch.
  int ja = a.word_.front(), jb = b.word_.front();
  const auto& bra = a.sys_->branches().at(ja);
  const auto& brb = a.sys_->branches().at(jb);
  const PolyRoot& hi_of_low = ja < jb ? bra.z_hi : brb.z_hi;
  const PolyRoot& lo_of_high = ja < jb ? brb.z_lo : bra.z_lo;
  if (PolyRoot::compare(hi_of_low, lo_of_high) != 0) return false;
  return poly_equals_lazy(hi_of_low, a) && poly_equals_lazy(hi_of_low, b);
}

int AlgebraicReal::compare(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (a.word_.empty() && b.word_.empty()) return PolyRoot::compare(a.seed_, b.seed_);
  // Cached enclosures decide most comparisons without any exact machinery.
  if (a.enc_valid_ || a.word_.empty()) {
    const Interval& ea = a.word_.empty() ? a.seed_.enclosure() : a.enc_;
    const Interval& eb = b.word_.empty() ? b.seed_.enclosure() : b.enc_;
    if ((b.enc_valid_ || b.word_.empty()) && !ea.intersects(eb)) {
      return ea.hi < eb.lo ? -1 : 1;
    }
  }
  if (decide_equal(a, b)) return 0;
  AlgebraicReal x = a, y = b;
  Rational w = Rational(1, 16);
  while (x.enc_.intersects(y.enc_)) {
    x.refine_below(w);
    y.refine_below(w);
    w = w / 16;
  }
  return x.enc_.hi < y.enc_.lo ? -1 : 1;
}

int AlgebraicReal::compare(const PolyRoot& p) const {
  return compare(*this, AlgebraicReal(p));
}

int AlgebraicReal::compare(const Rational& q) const {
  return compare(*this, AlgebraicReal(PolyRoot::from_rational(q)));
}

}  // namespace specdec
