#include "specdec/polyroot.hpp"

#include <algorithm>

#include "specdec/error.hpp"

namespace specdec {

namespace {

std::shared_ptr<const Polynomial> linear_for(const Rational& q) {
  return std::make_shared<const Polynomial>(Polynomial{-q, Rational(1)});
}

Interval interval_div(const Interval& a, const Interval& b) {
  if (sgn(b.lo) <= 0 && sgn(b.hi) >= 0) {
    throw Error("interval division by an interval containing zero");
  }
  Interval inv(Rational(1) / b.hi, Rational(1) / b.lo);
  return a * inv;
}

// Roots of `f` (square-free, non-root endpoints) strictly inside (lo, hi),
// isolated by Sturm-guided bisection. Rational roots hit by a midpoint are
// deflated and the whole isolation restarts, so the usual path assumes f has
// no convenient rational roots left.
struct FactorIsolation {
  std::vector<Rational> exact;
  std::vector<std::pair<Interval, int>> boxes;  // enclosure + sign at lo
  Polynomial reduced;
};

FactorIsolation isolate_squarefree(Polynomial f, Rational lo, Rational hi) {
  FactorIsolation out;
  for (;;) {
    bool deflated = false;
    for (const Rational& e : {lo, hi}) {
      while (f.degree() > 0 && f.sign_at(e) == 0) {
        out.exact.push_back(e);
        f = f.divexact(Polynomial{-e, Rational(1)});
        deflated = true;
      }
    }
    RationalRoots rr = rational_roots(f);
    for (const auto& [r, mult] : rr.roots) {
      if (r >= lo && r <= hi) out.exact.push_back(r);
      f = f.divexact(Polynomial{-r, Rational(1)});
      deflated = true;
    }
    if (!deflated) break;
  }
  out.reduced = f;
  if (f.degree() <= 0) return out;

  SturmSequence sturm(f);
  std::vector<Interval> work{Interval(lo, hi)};
  while (!work.empty()) {
    Interval seg = work.back();
    work.pop_back();
    int n = sturm.count_roots(seg.lo, seg.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.boxes.emplace_back(seg, f.sign_at(seg.lo));
      continue;
    }
    Rational mid = seg.mid();
    if (f.sign_at(mid) == 0) {
      // A rational root the RRT bailout missed: deflate and restart.
      FactorIsolation rest = isolate_squarefree(f.divexact(Polynomial{-mid, Rational(1)}), lo, hi);
      rest.exact.push_back(mid);
      for (const Rational& e : out.exact) rest.exact.push_back(e);
      return rest;
    }
    work.emplace_back(seg.lo, mid);
    work.emplace_back(mid, seg.hi);
  }
  return out;
}

}  // namespace

PolyRoot PolyRoot::from_rational(const Rational& q) {
  return PolyRoot(linear_for(q), Interval::point(q), 0);
}

const Rational& PolyRoot::rational_value() const {
  if (!is_rational()) throw Error("PolyRoot::rational_value on an irrational number");
  return enc_.lo;
}

void PolyRoot::collapse_to(const Rational& q) {
  poly_ = linear_for(q);
  enc_ = Interval::point(q);
  sign_lo_ = 0;
}

void PolyRoot::refine_step() {
  if (is_rational()) return;
  Rational mid = enc_.mid();
  int s = poly_->sign_at(mid);
  if (s == 0) {
    collapse_to(mid);
    return;
  }
  if (s == sign_lo_) {
    enc_.lo = mid;
  } else {
    enc_.hi = mid;
  }
}

void PolyRoot::refine_below(const Rational& width) {
  while (!is_rational() && enc_.width() >= width) refine_step();
}

double PolyRoot::to_double() const {
  if (is_rational()) return enc_.lo.get_d();
  PolyRoot copy = *this;
  // ~2^-60 of the current scale is enough for a faithful double.
  Rational scale = abs(copy.enc_.lo) + abs(copy.enc_.hi) + 1;
  copy.refine_below(scale / (BigInt(1) << 60));
  return copy.enc_.mid().get_d();
}

std::vector<IsolatedRoot> PolyRoot::isolate(const Polynomial& p, const Interval& range) {
  std::vector<IsolatedRoot> out;
  if (p.degree() <= 0) return out;
  for (const auto& [factor, mult] : squarefree_decomposition(p)) {
    FactorIsolation fi = isolate_squarefree(factor, range.lo, range.hi);
    for (const Rational& r : fi.exact) {
      out.push_back(IsolatedRoot{from_rational(r), mult});
    }
    auto shared = std::make_shared<const Polynomial>(fi.reduced);
    for (const auto& [box, slo] : fi.boxes) {
      out.push_back(IsolatedRoot{PolyRoot(shared, box, slo), mult});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const IsolatedRoot& a, const IsolatedRoot& b) { return compare(a.root, b.root) < 0; });
  // Roots of distinct square-free factors may start with overlapping boxes;
  // shrink until the enclosures are pairwise disjoint.
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    while (out[i].root.enclosure().intersects(out[i + 1].root.enclosure())) {
      out[i].root.refine_step();
      out[i + 1].root.refine_step();
    }
  }
  return out;
}

std::vector<IsolatedRoot> PolyRoot::isolate_all(const Polynomial& p) {
  Rational b = p.root_bound();
  return isolate(p, Interval(-b, b));
}

int PolyRoot::compare(const PolyRoot& a, const PolyRoot& b) {
  if (a.is_rational() && b.is_rational()) {
    return cmp(a.enc_.lo, b.enc_.lo) < 0 ? -1 : (a.enc_.lo == b.enc_.lo ? 0 : 1);
  }
  if (!a.enc_.intersects(b.enc_)) return a.enc_.hi < b.enc_.lo ? -1 : 1;
  if (a.is_rational()) return -b.compare(a.enc_.lo);
  if (b.is_rational()) return a.compare(b.enc_.lo);

  // Decide equality once, exactly: a == b iff gcd of the defining
  // polynomials has a root inside the intersection of the enclosures.
  PolyRoot x = a, y = b;
  if (x.enc_.intersects(y.enc_)) {
    Polynomial g = poly_gcd(*x.poly_, *y.poly_);
    if (g.degree() > 0) {
      Interval inter(std::max(x.enc_.lo, y.enc_.lo), std::min(x.enc_.hi, y.enc_.hi));
      // Deflate rational roots sitting exactly on the intersection endpoints;
      // they cannot be the (irrational) shared value.
      for (const Rational& e : {inter.lo, inter.hi}) {
        while (g.degree() > 0 && g.sign_at(e) == 0) {
          g = g.divexact(Polynomial{-e, Rational(1)});
        }
      }
      if (g.degree() > 0 && inter.lo < inter.hi &&
          SturmSequence(g).count_roots(inter.lo, inter.hi) > 0) {
        return 0;
      }
    }
  }
  while (x.enc_.intersects(y.enc_)) {
    x.refine_step();
    y.refine_step();
  }
  return x.enc_.hi < y.enc_.lo ? -1 : 1;
}

int PolyRoot::compare(const Rational& q) const {
  if (is_rational()) {
    int c = cmp(enc_.lo, q);
    return c < 0 ? -1 : (c == 0 ? 0 : 1);
  }
  if (enc_.contains(q) && poly_->sign_at(q) == 0) return 0;
  PolyRoot x = *this;
  while (x.enc_.contains(q)) x.refine_step();
  return x.enc_.hi < q ? -1 : 1;
}

int PolyRoot::sign_of(const Polynomial& h) const {
  if (h.is_zero()) return 0;
  if (is_rational()) return h.sign_at(enc_.lo);
  Polynomial g = poly_gcd(*poly_, h);
  if (g.degree() > 0) {
    Polynomial gg = g;
    for (const Rational& e : {enc_.lo, enc_.hi}) {
      while (gg.degree() > 0 && gg.sign_at(e) == 0) {
        gg = gg.divexact(Polynomial{-e, Rational(1)});
      }
    }
    if (gg.degree() > 0 && SturmSequence(gg).count_roots(enc_.lo, enc_.hi) > 0) return 0;
  }
  PolyRoot x = *this;
  for (;;) {
    Interval v = h.eval(x.enc_);
    if (sgn(v.lo) > 0) return 1;
    if (sgn(v.hi) < 0) return -1;
    x.refine_step();
    if (x.is_rational()) return h.sign_at(x.enc_.lo);
  }
}

PolyRoot PolyRoot::apply_ratfunc(const Polynomial& num, const Polynomial& den) const {
  if (is_rational()) {
    const Rational& q = enc_.lo;
    Rational d = den.eval(q);
    if (sgn(d) == 0) throw PoleError("rational-function evaluation at a pole");
    return from_rational(num.eval(q) / d);
  }
  if (sign_of(den) == 0) throw PoleError("rational-function evaluation at a pole");

  // Defining polynomial of y = num(x)/den(x): interpolate
  // q(y) = Res_w(p(w), num(w) - y*den(w)) from univariate resultants. Samples
  // where the w-leading coefficient of num - y*den vanishes are skipped so
  // every evaluated Sylvester determinant has the same generic size.
  int d = poly_->degree();
  int gen_deg = std::max(num.degree(), den.degree());
  std::vector<Rational> xs, ys;
  xs.reserve(d + 1);
  ys.reserve(d + 1);
  for (int s = 0; static_cast<int>(xs.size()) <= d; ++s) {
    Rational ysample(s);
    if (sgn(num.coeff(gen_deg) - ysample * den.coeff(gen_deg)) == 0) continue;
    Polynomial shifted = num - den * ysample;
    xs.push_back(ysample);
    ys.push_back(resultant(*poly_, shifted));
  }
  // Lagrange interpolation (Newton form).
  std::vector<Rational> divided = ys;
  for (int level = 1; level <= d; ++level) {
    for (int i = d; i >= level; --i) {
      divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level]);
    }
  }
  Polynomial q;  // Newton form -> coefficients
  for (int i = d; i >= 0; --i) {
    q = q * Polynomial{-xs[i], Rational(1)} + Polynomial(divided[i]);
  }
  if (q.is_zero()) throw Error("degenerate resultant while applying a rational function");
  Polynomial qsf = squarefree_part(q);

  // Select the root equal to the actual image by shrinking the interval
  // image of the enclosure until it meets exactly one candidate.
  std::vector<IsolatedRoot> cands = isolate_all(qsf);
  PolyRoot x = *this;
  for (;;) {
    Interval dv = den.eval(x.enc_);
    if (sgn(dv.lo) <= 0 && sgn(dv.hi) >= 0) {
      x.refine_step();
      continue;
    }
    Interval img = interval_div(num.eval(x.enc_), dv);
    std::vector<size_t> hits;
    for (size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].root.enclosure().intersects(img)) hits.push_back(i);
    }
    if (hits.size() == 1) return cands[hits[0]].root;
    if (hits.empty()) throw Error("image selection lost the root (internal)");
    for (size_t i : hits) cands[i].root.refine_step();
    x.refine_step();
  }
}

std::vector<PolyRoot> PolyRoot::preimages_under(const Polynomial& num, const Polynomial& den,
                                                const PolyRoot& target) {
  Polynomial cleared = compose_clearing_denominator(target.defining(), num, den);
  std::vector<PolyRoot> out;
  if (cleared.is_zero()) throw Error("degenerate preimage polynomial (internal)");
  std::vector<IsolatedRoot> roots = isolate_all(squarefree_part(cleared));
  if (target.is_rational() || target.defining().degree() == 1) {
    for (auto& r : roots) out.push_back(r.root);
    return out;
  }
  // Every isolated z maps to SOME root of target.defining(); decide which by
  // interval refinement against the isolating boxes of all those roots.
  std::vector<IsolatedRoot> image_roots = isolate_all(target.defining());
  for (auto& cand : roots) {
    PolyRoot z = cand.root;
    std::vector<PolyRoot> imgs;
    for (auto& ir : image_roots) imgs.push_back(ir.root);
    for (;;) {
      Interval dv = den.eval(z.enclosure());
      if (sgn(dv.lo) <= 0 && sgn(dv.hi) >= 0) {
        z.refine_step();
        continue;
      }
      Interval img = interval_div(num.eval(z.enclosure()), dv);
      std::vector<size_t> hits;
      for (size_t i = 0; i < imgs.size(); ++i) {
        if (imgs[i].enclosure().intersects(img)) hits.push_back(i);
      }
      if (hits.size() == 1) {
        if (compare(imgs[hits[0]], target) == 0) out.push_back(cand.root);
        break;
      }
      if (hits.empty()) throw Error("preimage selection lost the root (internal)");
      for (size_t i : hits) imgs[i].refine_step();
      z.refine_step();
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PolyRoot& a, const PolyRoot& b) { return compare(a, b) < 0; });
  return out;
}

}  // namespace specdec
