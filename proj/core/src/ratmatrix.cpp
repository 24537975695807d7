#include "specdec/ratmatrix.hpp"

#include "specdec/error.hpp"

namespace specdec {

Rational rational_det(RationalMatrix m) {
  size_t n = m.rows();
  Rational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && sgn(m.at(piv, col)) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != col) {
      for (size_t c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(col, c));
      det = -det;
    }
    det *= m.at(col, col);
    Rational inv = Rational(1) / m.at(col, col);
    for (size_t r = col + 1; r < n; ++r) {
      if (sgn(m.at(r, col)) == 0) continue;
      Rational f = m.at(r, col) * inv;
      for (size_t c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
    }
  }
  return det;
}

RationalMatrix rational_solve(RationalMatrix m, RationalMatrix rhs) {
  size_t n = m.rows();
  size_t w = rhs.cols();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && sgn(m.at(piv, col)) == 0) ++piv;
    if (piv == n) throw SingularMatrixError("singular rational matrix");
    if (piv != col) {
      for (size_t c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(col, c));
      for (size_t c = 0; c < w; ++c) std::swap(rhs.at(piv, c), rhs.at(col, c));
    }
    Rational inv = Rational(1) / m.at(col, col);
    for (size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m.at(r, col)) == 0) continue;
      Rational f = m.at(r, col) * inv;
      for (size_t c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
      for (size_t c = 0; c < w; ++c) rhs.at(r, c) -= f * rhs.at(col, c);
    }
  }
  RationalMatrix x(n, w);
  for (size_t r = 0; r < n; ++r) {
    Rational inv = Rational(1) / m.at(r, r);
    for (size_t c = 0; c < w; ++c) x.at(r, c) = rhs.at(r, c) * inv;
  }
  return x;
}

RationalMatrix rational_inverse(const RationalMatrix& m) {
  return rational_solve(m, RationalMatrix::identity(m.rows(), Rational(1)));
}

size_t rational_rank(RationalMatrix m) {
  size_t n = m.rows(), w = m.cols();
  size_t rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < w && row < n; ++col) {
    size_t piv = row;
    while (piv < n && sgn(m.at(piv, col)) == 0) ++piv;
    if (piv == n) continue;
    if (piv != row) {
      for (size_t c = 0; c < w; ++c) std::swap(m.at(piv, c), m.at(row, c));
    }
    Rational inv = Rational(1) / m.at(row, col);
    for (size_t r = row + 1; r < n; ++r) {
      if (sgn(m.at(r, col)) == 0) continue;
      Rational f = m.at(r, col) * inv;
      for (size_t c = col; c < w; ++c) m.at(r, c) -= f * m.at(row, c);
    }
    ++row;
    ++rank;
  }
  return rank;
}

Polynomial charpoly(const RationalMatrix& m) {
  size_t n = m.rows();
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RationalMatrix a = m;  // A_1 = M
  for (size_t k = 1; k <= n; ++k) {
    Rational tr(0);
    for (size_t i = 0; i < n; ++i) tr += a.at(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
    if (k == n) break;
    for (size_t i = 0; i < n; ++i) a.at(i, i) += c[n - k];
    a = m * a;
  }
  return Polynomial::from_coeffs(std::move(c));
}

namespace {

// Fraction-free forward elimination on an augmented polynomial matrix.
// Returns the permutation sign; on exit the first n columns are upper
// triangular and every division performed was exact.
int bareiss_forward(PolyMatrix& m, size_t n) {
  int sign = 1;
  Polynomial prev{Rational(1)};
  for (size_t k = 0; k + 1 < n; ++k) {
    size_t piv = n;
    int best_deg = -1;
    for (size_t r = k; r < n; ++r) {
      int d = m.at(r, k).degree();
      if (d < 0) continue;
      if (piv == n || d < best_deg) {
        piv = r;
        best_deg = d;
      }
    }
    if (piv == n) {
      // Pivot column vanished below the diagonal: determinant is zero.
      for (size_t r = k; r < n; ++r) {
        if (!m.at(r, k).is_zero()) break;
      }
      return 0;
    }
    if (piv != k) {
      for (size_t c = 0; c < m.cols(); ++c) std::swap(m.at(piv, c), m.at(k, c));
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < m.cols(); ++j) {
        Polynomial t = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = t.divexact(prev);
      }
      m.at(i, k) = Polynomial();
    }
    prev = m.at(k, k);
  }
  return sign;
}

}  // namespace

Polynomial bareiss_det(PolyMatrix m) {
  size_t n = m.rows();
  if (n == 0) return Polynomial{Rational(1)};
  int sign = bareiss_forward(m, n);
  if (sign == 0) return Polynomial();
  Polynomial d = m.at(n - 1, n - 1);
  if (m.at(n - 1, n - 1).is_zero()) return Polynomial();
  return sign < 0 ? -d : d;
}

RatFuncMatrix ratfunc_matrix_inverse(const RatFuncMatrix& m) {
  size_t n = m.rows();
  // Clear denominators row-wise: P = diag(d_i) * m with polynomial entries.
  PolyMatrix aug(n, 2 * n);
  std::vector<Polynomial> row_mult(n);
  for (size_t i = 0; i < n; ++i) {
    Polynomial l{Rational(1)};
    for (size_t j = 0; j < n; ++j) {
      const Polynomial& d = m.at(i, j).den();
      l = (l * d).divexact(poly_gcd(l, d));
    }
    row_mult[i] = l;
    for (size_t j = 0; j < n; ++j) {
      aug.at(i, j) = m.at(i, j).num() * l.divexact(m.at(i, j).den());
    }
    aug.at(i, n + i) = l;  // rhs = diag(d_i): solving P X = diag gives m^-1
  }
  int sign = bareiss_forward(aug, n);
  if (sign == 0 || aug.at(n - 1, n - 1).is_zero()) {
    throw SingularMatrixError("matrix of rational functions is singular");
  }
  // Back-substitution over Q(z).
  RatFuncMatrix x(n, n);
  for (size_t ii = n; ii-- > 0;) {
    RationalFunction pivot{aug.at(ii, ii)};
    for (size_t c = 0; c < n; ++c) {
      RationalFunction acc{aug.at(ii, n + c)};
      for (size_t j = ii + 1; j < n; ++j) {
        acc = acc - RationalFunction(aug.at(ii, j)) * x.at(j, c);
      }
      x.at(ii, c) = acc / pivot;
    }
  }
  // Verify exactly: m * x == I.
  RatFuncMatrix prod = m * x;
  RatFuncMatrix id = RatFuncMatrix::identity(n, RationalFunction(Rational(1)));
  if (!(prod == id)) throw CrossCheckError("function-field inverse failed verification");
  return x;
}

}  // namespace specdec
