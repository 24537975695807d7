#include "specdec/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace specdec {

namespace {

const Rational kZero(0);

// Primitive integer form: p * (common denominator) / (content), with a
// positive leading coefficient times `sign_kept` preserving the sign of p.
std::vector<BigInt> primitive_integer(const std::vector<Rational>& c) {
  BigInt den_lcm(1);
  for (const Rational& q : c) {
    BigInt d = q.get_den();
    den_lcm = lcm(den_lcm, d);
  }
  std::vector<BigInt> out;
  out.reserve(c.size());
  BigInt content(0);
  for (const Rational& q : c) {
    BigInt v = q.get_num() * (den_lcm / q.get_den());
    content = gcd(content, v);
    out.push_back(v);
  }
  if (content == 0) return out;
  for (BigInt& v : out) v /= content;
  return out;
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) coeffs_.push_back(c);
}

Polynomial::Polynomial(std::initializer_list<Rational> ascending)
    : coeffs_(ascending) {
  strip();
}

Polynomial Polynomial::from_coeffs(std::vector<Rational> ascending) {
  Polynomial p;
  p.coeffs_ = std::move(ascending);
  p.strip();
  return p;
}

Polynomial Polynomial::monomial(int degree, const Rational& c) {
  Polynomial p;
  if (sgn(c) == 0 || degree < 0) return p;
  p.coeffs_.assign(degree + 1, Rational(0));
  p.coeffs_.back() = c;
  return p;
}

void Polynomial::strip() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[k];
}

const Rational& Polynomial::lead() const {
  if (coeffs_.empty()) return kZero;
  return coeffs_.back();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) out[i] += o.coeffs_[i];
  return from_coeffs(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<Rational> out(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) out[i] -= o.coeffs_[i];
  return from_coeffs(std::move(out));
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (Rational& c : p.coeffs_) c = -c;
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return from_coeffs(std::move(out));
}

Polynomial Polynomial::operator*(const Rational& s) const {
  if (sgn(s) == 0) return Polynomial();
  Polynomial p = *this;
  for (Rational& c : p.coeffs_) c *= s;
  return p;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  Polynomial rem = *this;
  int dd = divisor.degree();
  if (rem.degree() < dd) return {Polynomial(), rem};
  std::vector<Rational> q(rem.degree() - dd + 1, Rational(0));
  const Rational& lc = divisor.lead();
  while (!rem.is_zero() && rem.degree() >= dd) {
    int k = rem.degree() - dd;
    Rational f = rem.lead() / lc;
    q[k] = f;
    // rem -= f * z^k * divisor
    for (int i = 0; i <= dd; ++i) {
      rem.coeffs_[k + i] -= f * divisor.coeffs_[i];
    }
    rem.strip();
  }
  return {from_coeffs(std::move(q)), rem};
}

Polynomial Polynomial::divexact(const Polynomial& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw CrossCheckError("polynomial divexact left a remainder");
  return q;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Rational> out(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return from_coeffs(std::move(out));
}

Polynomial Polynomial::to_monic() const {
  if (is_zero()) return *this;
  return (*this) * (Rational(1) / lead());
}

Rational Polynomial::eval(const Rational& x) const {
  Rational r(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = r * x + *it;
  }
  return r;
}

double Polynomial::eval(double x) const {
  double r = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = r * x + it->get_d();
  }
  return r;
}

Interval Polynomial::eval(const Interval& x) const {
  Interval r = Interval::point(Rational(0));
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = r * x + *it;
  }
  return r;
}

Rational Polynomial::root_bound() const {
  if (coeffs_.size() <= 1) return Rational(1);
  Rational m(0);
  for (size_t i = 0; i + 1 < coeffs_.size(); ++i) {
    Rational a = abs(coeffs_[i]);
    if (a > m) m = a;
  }
  Rational b = Rational(1) + m / abs(lead());
  return b;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational c = coeff(k);
    if (sgn(c) == 0) continue;
    if (first) {
      if (sgn(c) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    Rational a = abs(c);
    if (k == 0 || a != 1) os << a.get_str();
    if (k > 0) {
      if (a != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.to_monic();
  if (b.is_zero()) return a.to_monic();
  // Primitive PRS over the integers keeps coefficient growth in check.
  std::vector<BigInt> u = primitive_integer(a.coeffs());
  std::vector<BigInt> v = primitive_integer(b.coeffs());
  if (u.size() < v.size()) std::swap(u, v);
  auto deg = [](const std::vector<BigInt>& p) { return static_cast<int>(p.size()) - 1; };
  auto strip = [](std::vector<BigInt>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  auto primitive = [](std::vector<BigInt>& p) {
    BigInt g(0);
    for (const BigInt& c : p) g = gcd(g, c);
    if (g > 1) {
      for (BigInt& c : p) c /= g;
    }
  };
  while (!v.empty()) {
    // pseudo-remainder of u by v
    int du = deg(u), dv = deg(v);
    std::vector<BigInt> r = u;
    BigInt lv = v.back();
    for (int k = du - dv; k >= 0; --k) {
      strip(r);
      if (static_cast<int>(r.size()) - 1 != dv + k) continue;
      BigInt lr = r.back();
      for (size_t i = 0; i < r.size(); ++i) r[i] *= lv;
      for (int i = 0; i <= dv; ++i) r[k + i] -= lr * v[i];
      strip(r);
    }
    strip(r);
    primitive(r);
    u = std::move(v);
    v = std::move(r);
  }
  std::vector<Rational> out;
  out.reserve(u.size());
  for (const BigInt& c : u) out.emplace_back(c);
  return Polynomial::from_coeffs(std::move(out)).to_monic();
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.to_monic();
  Polynomial g = poly_gcd(p, p.derivative());
  return p.divexact(g).to_monic();
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() <= 0) return out;
  // Yun's algorithm. The cofactor pair (w, y) must stay consistent, so no
  // rescaling happens until the monic gcd factors are emitted.
  Polynomial d = p.derivative();
  Polynomial g = poly_gcd(p, d);
  Polynomial w = g.degree() > 0 ? p.divexact(g) : p;
  Polynomial y = g.degree() > 0 ? d.divexact(g) : d;
  int i = 1;
  while (w.degree() > 0) {
    if (i > p.degree() + 1) throw Error("squarefree decomposition failed to terminate");
    Polynomial z = y - w.derivative();
    Polynomial f = poly_gcd(w, z);
    if (f.degree() > 0) out.emplace_back(f, i);
    w = w.divexact(f);
    y = z.divexact(f);
    ++i;
  }
  return out;
}

SturmSequence::SturmSequence(const Polynomial& p) {
  chain_.push_back(p);
  if (p.degree() < 1) return;
  chain_.push_back(p.derivative());
  while (chain_.back().degree() > 0) {
    auto [q, r] = chain_[chain_.size() - 2].divmod(chain_.back());
    if (r.is_zero()) break;
    // Normalize to the primitive integer form; scaling by a positive
    // constant preserves the sign pattern.
    std::vector<BigInt> pi = primitive_integer(r.coeffs());
    std::vector<Rational> rc;
    rc.reserve(pi.size());
    for (const BigInt& c : pi) rc.emplace_back(c);
    chain_.push_back(-Polynomial::from_coeffs(std::move(rc)));
  }
}

int SturmSequence::variations_at(const Rational& x) const {
  int var = 0, prev = 0;
  for (const Polynomial& q : chain_) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  if (chain_.empty() || chain_[0].is_zero()) return 0;
  return variations_at(a) - variations_at(b);
}

int SturmSequence::count_all_roots() const {
  if (chain_.empty() || chain_[0].is_zero()) return 0;
  Rational b = chain_[0].root_bound();
  return count_roots(-b, b);
}

Rational resultant(const Polynomial& a, const Polynomial& b) {
  int m = a.degree(), n = b.degree();
  if (m < 0 || n < 0) return Rational(0);
  if (m == 0 && n == 0) return Rational(1);
  if (m == 0) return rational_pow(a.lead(), n);
  if (n == 0) return rational_pow(b.lead(), m);
  // Sylvester matrix, exact Gaussian elimination.
  int size = m + n;
  std::vector<std::vector<Rational>> s(size, std::vector<Rational>(size, Rational(0)));
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) s[r][r + (m - k)] = a.coeff(k);
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) s[n + r][r + (n - k)] = b.coeff(k);
  }
  Rational det(1);
  for (int col = 0; col < size; ++col) {
    int piv = -1;
    for (int r = col; r < size; ++r) {
      if (sgn(s[r][col]) != 0) { piv = r; break; }
    }
    if (piv < 0) return Rational(0);
    if (piv != col) {
      std::swap(s[piv], s[col]);
      det = -det;
    }
    det *= s[col][col];
    Rational inv = Rational(1) / s[col][col];
    for (int r = col + 1; r < size; ++r) {
      if (sgn(s[r][col]) == 0) continue;
      Rational f = s[r][col] * inv;
      for (int c = col; c < size; ++c) s[r][c] -= f * s[col][c];
    }
  }
  return det;
}

Polynomial compose_clearing_denominator(const Polynomial& g, const Polynomial& num,
                                        const Polynomial& den) {
  int dg = g.degree();
  if (dg < 0) return Polynomial();
  // Horner over the rational function: result = sum g_k num^k den^(dg-k).
  Polynomial acc(g.coeff(dg));
  Polynomial dpow(Rational(1));
  for (int k = dg - 1; k >= 0; --k) {
    dpow = dpow * den;
    acc = acc * num + Polynomial(g.coeff(k)) * dpow;
  }
  return acc;
}

RationalRoots rational_roots(const Polynomial& p) {
  RationalRoots out;
  if (p.degree() <= 0) return out;
  auto sf = squarefree_decomposition(p);
  for (auto& [factor, mult] : sf) {
    Polynomial f = factor;
    // Strip z^k.
    while (!f.is_zero() && sgn(f.coeff(0)) == 0) {
      out.roots.emplace_back(Rational(0), mult);
      f = f.divexact(Polynomial::monomial(1));
    }
    if (f.degree() <= 0) continue;
    if (f.degree() == 1) {
      out.roots.emplace_back(-f.coeff(0) / f.coeff(1), mult);
      continue;
    }
    std::vector<BigInt> ic = primitive_integer(f.coeffs());
    BigInt a0 = abs(ic.front());
    BigInt an = abs(ic.back());
    // Beyond desk scale the exhaustive divisor search is pointless; the
    // isolation machinery still produces correct (non-exact) enclosures.
    if (mpz_sizeinbase(a0.get_mpz_t(), 2) > 64 || mpz_sizeinbase(an.get_mpz_t(), 2) > 64) {
      out.complete = false;
      continue;
    }
    // Enumerate divisors by trial division; bail out on huge coefficients.
    auto divisors = [](const BigInt& n, bool& ok) {
      std::vector<BigInt> divs{1};
      BigInt m = n;
      ok = true;
      for (BigInt d(2); d * d <= m; ++d) {
        if (d > 100000) { ok = false; break; }
        while (m % d == 0) {
          size_t cnt = divs.size();
          for (size_t i = 0; i < cnt; ++i) divs.push_back(divs[i] * d);
          m /= d;
          std::sort(divs.begin(), divs.end());
          divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
        }
      }
      if (ok && m > 1) {
        size_t cnt = divs.size();
        for (size_t i = 0; i < cnt; ++i) divs.push_back(divs[i] * m);
      }
      std::sort(divs.begin(), divs.end());
      divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
      return divs;
    };
    bool ok0 = true, okn = true;
    std::vector<BigInt> d0 = divisors(a0, ok0);
    std::vector<BigInt> dn = divisors(an, okn);
    if (!ok0 || !okn || d0.size() * dn.size() > 20000) {
      out.complete = false;
      continue;
    }
    for (const BigInt& num : d0) {
      for (const BigInt& den : dn) {
        for (int s : {1, -1}) {
          Rational cand(s * num, den);
          cand.canonicalize();
          if (sgn(f.eval(cand)) == 0) {
            out.roots.emplace_back(cand, mult);
            Polynomial lin{-cand, Rational(1)};
            f = f.divexact(lin);
          }
        }
        if (f.degree() <= 0) break;
      }
      if (f.degree() <= 0) break;
    }
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace specdec
