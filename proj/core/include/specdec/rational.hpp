#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "specdec/error.hpp"

namespace specdec {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or "p" (arbitrary precision). Throws ConfigError on garbage.
Rational rational_from_string(const std::string& s);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string rational_to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

Rational rational_pow(const Rational& base, unsigned exp);

/// Best rational approximation of x with denominator <= max_den (continued
/// fractions); empty when even the best one misses x by more than tol.
std::optional<Rational> snap_to_rational(double x, long max_den, double tol);

inline int sign(const Rational& q) { return sgn(q); }

/// Closed interval with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() : lo(0), hi(0) {}
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  static Interval point(const Rational& q) { return Interval(q, q); }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
  bool strictly_before(const Interval& o) const { return hi < o.lo; }

  Interval operator+(const Interval& o) const { return Interval(lo + o.lo, hi + o.hi); }
  Interval operator-(const Interval& o) const { return Interval(lo - o.hi, hi - o.lo); }
  Interval operator*(const Interval& o) const;
  Interval operator+(const Rational& q) const { return Interval(lo + q, hi + q); }
  Interval operator*(const Rational& q) const;
};

}  // namespace specdec
