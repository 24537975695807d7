#include "specdec/rational.hpp"

#include <cmath>
#include <cstdlib>

namespace specdec {

Rational rational_from_string(const std::string& s) {
  std::string t;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t.empty()) throw ConfigError("empty rational literal");
  mpq_class q;
  if (q.set_str(t, 10) != 0) {
    throw ConfigError("invalid rational literal: '" + s + "'");
  }
  if (q.get_den() == 0) throw ConfigError("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational r(1);
  Rational b = base;
  unsigned e = exp;
  while (e > 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

std::optional<Rational> snap_to_rational(double x, long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents of x.
  double v = x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double fl = std::floor(v);
    if (fl > 9e17 || fl < -9e17) break;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0;
    long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = v - fl;
    if (frac < 1e-18) break;
    v = 1.0 / frac;
  }
  if (q1 <= 0) return std::nullopt;
  Rational cand(p1, q1);
  cand.canonicalize();
  if (std::abs(cand.get_d() - x) <= tol) return cand;
  return std::nullopt;
}

Interval Interval::operator*(const Interval& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  Rational mn = a, mx = a;
  for (const Rational* r : {&b, &c, &d}) {
    if (*r < mn) mn = *r;
    if (*r > mx) mx = *r;
  }
  return Interval(mn, mx);
}

Interval Interval::operator*(const Rational& q) const {
  if (sgn(q) >= 0) return Interval(lo * q, hi * q);
  return Interval(hi * q, lo * q);
}

}  // namespace specdec
