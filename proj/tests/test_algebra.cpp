#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "specdec/polynomial.hpp"
#include "specdec/polyroot.hpp"
#include "specdec/ratfunc.hpp"
#include "specdec/ratmatrix.hpp"

using namespace specdec;

namespace {

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Polynomial poly(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return Polynomial::from_coeffs(std::move(c));
}

std::mt19937_64 rng(20240817);

Rational random_rational(int max_num = 8, int max_den = 4) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return q(num(rng), den(rng));
}

Polynomial random_poly(int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  int d = deg(rng);
  std::vector<Rational> c;
  for (int i = 0; i <= d; ++i) c.push_back(random_rational());
  return Polynomial::from_coeffs(std::move(c));
}

}  // namespace

TEST_SUITE("polynomial") {
  TEST_CASE("gcd of z^2-1 and z-1 is z-1") {
    Polynomial a = poly({-1, 0, 1});
    Polynomial b = poly({-1, 1});
    CHECK(poly_gcd(a, b) == b);
  }

  TEST_CASE("derivative of z(5-4z) at 0 is 5") {
    Polynomial p = poly({0, 5, -4});
    CHECK(p.derivative().eval(Rational(0)) == Rational(5));
    CHECK(p.derivative() == poly({5, -8}));
  }

  TEST_CASE("(z^2-1)/(z-1) divides exactly") {
    auto [quot, rem] = poly({-1, 0, 1}).divmod(poly({-1, 1}));
    CHECK(quot == poly({1, 1}));
    CHECK(rem.is_zero());
  }

  TEST_CASE("division by zero polynomial throws") {
    CHECK_THROWS_AS(poly({1, 1}).divmod(Polynomial()), DivisionByZeroError);
  }

  TEST_CASE("squarefree decomposition of (z-1/2)^2 (z-5/4)") {
    Polynomial p = Polynomial{q(-1, 2), q(1)} * Polynomial{q(-1, 2), q(1)} * Polynomial{q(-5, 4), q(1)};
    auto sf = squarefree_decomposition(p);
    REQUIRE(sf.size() == 2);
    bool saw_single = false, saw_double = false;
    for (auto& [f, m] : sf) {
      if (m == 1) {
        saw_single = true;
        CHECK(f == Polynomial{q(-5, 4), q(1)});
      }
      if (m == 2) {
        saw_double = true;
        CHECK(f == Polynomial{q(-1, 2), q(1)});
      }
    }
    CHECK(saw_single);
    CHECK(saw_double);
  }

  TEST_CASE("canonical form is idempotent under arithmetic") {
    for (int i = 0; i < 200; ++i) {
      Polynomial a = random_poly(6), b = random_poly(6);
      Polynomial s = a + b;
      CHECK(s == Polynomial::from_coeffs(s.coeffs()));
      Polynomial m = a * b;
      CHECK(m == Polynomial::from_coeffs(m.coeffs()));
      if (!b.is_zero()) {
        auto [quot, rem] = a.divmod(b);
        CHECK(quot * b + rem == a);
      }
    }
  }

  TEST_CASE("interval evaluation bounds the true value") {
    for (int i = 0; i < 100; ++i) {
      Polynomial p = random_poly(5);
      Rational lo = random_rational(), w = abs(random_rational()) + 1;
      Interval box(lo, lo + w);
      Interval img = p.eval(box);
      for (int k = 0; k <= 4; ++k) {
        Rational x = lo + w * Rational(k, 4);
        CHECK(img.contains(p.eval(x)));
      }
    }
  }
}

TEST_SUITE("root isolation") {
  TEST_CASE("4z^2-5z+1 on [0,2] has exact roots 1/4 and 1") {
    auto roots = PolyRoot::isolate(poly({1, -5, 4}), Interval(q(0), q(2)));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].root.is_rational());
    CHECK(roots[0].root.rational_value() == q(1, 4));
    CHECK(roots[0].multiplicity == 1);
    CHECK(roots[1].root.is_rational());
    CHECK(roots[1].root.rational_value() == q(1));
  }

  TEST_CASE("z^2+1 has no real roots") {
    CHECK(PolyRoot::isolate(poly({1, 0, 1}), Interval(q(-10), q(10))).empty());
  }

  TEST_CASE("(z-1/2)^2 (z-5/4) reports multiplicities") {
    Polynomial p = Polynomial{q(-1, 2), q(1)} * Polynomial{q(-1, 2), q(1)} * Polynomial{q(-5, 4), q(1)};
    auto roots = PolyRoot::isolate(p, Interval(q(0), q(2)));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].root.rational_value() == q(1, 2));
    CHECK(roots[0].multiplicity == 2);
    CHECK(roots[1].root.rational_value() == q(5, 4));
    CHECK(roots[1].multiplicity == 1);
  }

  TEST_CASE("irrational roots: z^2-5 isolates sqrt(5)") {
    auto roots = PolyRoot::isolate(poly({-5, 0, 1}), Interval(q(0), q(10)));
    REQUIRE(roots.size() == 1);
    PolyRoot r = roots[0].root;
    CHECK(!r.is_rational());
    r.refine_below(q(1, 1000000000));
    double v = r.to_double();
    CHECK(v == doctest::Approx(2.2360679774997896).epsilon(1e-12));
  }

  TEST_CASE("Sturm count matches isolation on random polynomials") {
    std::mt19937_64 local(7);
    int nontrivial = 0;
    for (int i = 0; i < 1000; ++i) {
      Polynomial p = random_poly(8);
      if (p.degree() < 1) continue;
      ++nontrivial;
      Interval range(q(-6), q(6));
      while (p.sign_at(range.lo) == 0 || p.sign_at(range.hi) == 0) {
        range = Interval(range.lo - 1, range.hi + 1);
      }
      auto roots = PolyRoot::isolate(p, range);
      int distinct = static_cast<int>(roots.size());
      CHECK(SturmSequence(squarefree_part(p)).count_roots(range.lo, range.hi) == distinct);
    }
    CHECK(nontrivial > 800);
  }

  TEST_CASE("comparison decides equality of algebraic numbers") {
    // sqrt(2) arrived at via two different defining polynomials.
    auto a = PolyRoot::isolate(poly({-2, 0, 1}), Interval(q(0), q(2)));
    Polynomial p2 = poly({-2, 0, 1}) * poly({-3, 0, 1});  // (z^2-2)(z^2-3)
    auto b = PolyRoot::isolate(p2, Interval(q(1), q(2)));
    REQUIRE(a.size() == 1);
    REQUIRE(b.size() == 2);
    CHECK(PolyRoot::compare(a[0].root, b[0].root) == 0);
    CHECK(PolyRoot::compare(a[0].root, b[1].root) < 0);
    CHECK(a[0].root.compare(q(3, 2)) < 0);
    CHECK(a[0].root.compare(q(7, 5)) > 0);
  }

  TEST_CASE("sign_of is exact at algebraic points") {
    auto roots = PolyRoot::isolate(poly({-2, 0, 1}), Interval(q(0), q(2)));
    PolyRoot s2 = roots[0].root;
    CHECK(s2.sign_of(poly({-2, 0, 1})) == 0);
    CHECK(s2.sign_of(poly({0, 1})) > 0);       // z > 0 there
    CHECK(s2.sign_of(poly({-3, 0, 1})) < 0);   // z^2 - 3 < 0 at sqrt(2)
  }

  TEST_CASE("apply_ratfunc maps sqrt(5) through R(z) = z(5-4z)") {
    // R((5-sqrt(5))/8) should equal the exact gap endpoint image; check the
    // simpler identity R'(0)=5 via sqrt: y = R(sqrt5) = 5 sqrt5 - 20.
    auto roots = PolyRoot::isolate(poly({-5, 0, 1}), Interval(q(0), q(10)));
    PolyRoot y = roots[0].root.apply_ratfunc(poly({0, 5, -4}), poly({1}));
    // y = 5*sqrt(5) - 20, a root of (y+20)^2 - 125.
    CHECK(y.sign_of(poly({275, 40, 1})) == 0);
    CHECK(y.to_double() == doctest::Approx(5 * 2.23606797749979 - 20).epsilon(1e-12));
  }

  TEST_CASE("preimages_under recovers both SG gap endpoints") {
    // R(z) = z(5-4z); preimages of 5/4: roots of 4z^2-5z+5/4: (5±sqrt5)/8.
    auto pre = PolyRoot::preimages_under(poly({0, 5, -4}), poly({1}),
                                         PolyRoot::from_rational(q(5, 4)));
    REQUIRE(pre.size() == 2);
    CHECK(pre[0].to_double() == doctest::Approx((5 - 2.23606797749979) / 8).epsilon(1e-12));
    CHECK(pre[1].to_double() == doctest::Approx((5 + 2.23606797749979) / 8).epsilon(1e-12));
  }
}

TEST_SUITE("rational functions") {
  TEST_CASE("1/(1-z) + 1/(1-z) = 2/(1-z)") {
    RationalFunction f(poly({1}), poly({1, -1}));
    RationalFunction s = f + f;
    // Canonical form has a monic denominator: 2/(1-z) = -2/(z-1).
    CHECK(s == RationalFunction(poly({-2}), poly({-1, 1})));
  }

  TEST_CASE("phi_SG evaluates to 3/5 at 0") {
    // phi(z) = (6-4z)/((4z-2)(4z-5))
    RationalFunction phi(poly({6, -4}), poly({-2, 4}) * poly({-5, 4}));
    CHECK(phi.eval(q(0)) == q(3, 5));
  }

  TEST_CASE("pole evaluation throws") {
    RationalFunction f(poly({1}), poly({1, -1}));
    CHECK_THROWS_AS(f.eval(q(1)), PoleError);
  }

  TEST_CASE("derivative of z(5-4z) is 5-8z") {
    RationalFunction f(poly({0, 5, -4}), poly({1}));
    CHECK(f.derivative() == RationalFunction(poly({5, -8}), poly({1})));
  }

  TEST_CASE("evaluate-then-arithmetic commutes with arithmetic-then-evaluate") {
    std::mt19937_64 local(99);
    for (int i = 0; i < 200; ++i) {
      RationalFunction f(random_poly(4), poly({1, 1}) * poly({3, 1}));
      RationalFunction g(random_poly(4), poly({2, 1}));
      Rational x = random_rational(10, 7);
      if (x == q(-1) || x == q(-3) || x == q(-2)) continue;
      RationalFunction sum = f + g, prod = f * g;
      CHECK(sum.eval(x) == f.eval(x) + g.eval(x));
      CHECK(prod.eval(x) == f.eval(x) * g.eval(x));
    }
  }
}

TEST_SUITE("matrices over fields") {
  TEST_CASE("inverse of [[1-z]] is [[1/(1-z)]]") {
    RatFuncMatrix m(1, 1);
    m.at(0, 0) = RationalFunction(poly({1, -1}), poly({1}));
    RatFuncMatrix inv = ratfunc_matrix_inverse(m);
    CHECK(inv.at(0, 0) == RationalFunction(poly({1}), poly({1, -1})));
  }

  TEST_CASE("inverse of the identity is the identity") {
    RatFuncMatrix id = RatFuncMatrix::identity(3, RationalFunction(q(1)));
    CHECK(ratfunc_matrix_inverse(id) == id);
  }

  TEST_CASE("(D - zI)^{-1} for the gasket matches the circulant inverse") {
    // D = I - (1/4) (triangle adjacency); entries alpha on the diagonal and
    // beta off it, with alpha=(3/4-z)/((z-1/2)(z-5/4)), beta=(1/4)/(same).
    RatFuncMatrix dz(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        dz.at(r, c) = r == c ? RationalFunction(poly({1, -1}), poly({1}))
                             : RationalFunction(q(-1, 4));
      }
    }
    RatFuncMatrix inv = ratfunc_matrix_inverse(dz);
    Polynomial denom = Polynomial{q(-1, 2), q(1)} * Polynomial{q(-5, 4), q(1)};
    RationalFunction alpha(Polynomial{q(3, 4), q(-1)}, denom);
    RationalFunction beta(Polynomial{q(1, 4)}, denom);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        CHECK(inv.at(r, c) == (r == c ? alpha : beta));
      }
    }
  }

  TEST_CASE("singular function matrix throws") {
    RatFuncMatrix m(2, 2);
    m.at(0, 0) = RationalFunction(poly({0, 1}), poly({1}));
    m.at(0, 1) = RationalFunction(poly({0, 2}), poly({1}));
    m.at(1, 0) = RationalFunction(poly({0, 1}), poly({1}));
    m.at(1, 1) = RationalFunction(poly({0, 2}), poly({1}));
    CHECK_THROWS_AS(ratfunc_matrix_inverse(m), SingularMatrixError);
  }

  TEST_CASE("random function matrices: inverse times original is the identity") {
    std::mt19937_64 local(3);
    int tested = 0;
    for (int i = 0; i < 60 && tested < 40; ++i) {
      RatFuncMatrix m(2, 2);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          m.at(r, c) = RationalFunction(random_poly(2), poly({1, 1}));
        }
      }
      try {
        RatFuncMatrix inv = ratfunc_matrix_inverse(m);
        RatFuncMatrix prod = m * inv;
        CHECK(prod == RatFuncMatrix::identity(2, RationalFunction(q(1))));
        ++tested;
      } catch (const SingularMatrixError&) {
        continue;
      }
    }
    CHECK(tested >= 20);
  }

  TEST_CASE("charpoly of the triangle Laplacian") {
    // K3 probabilistic Laplacian: eigenvalues 0, 3/2, 3/2.
    RationalMatrix m(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m.at(r, c) = r == c ? q(1) : q(-1, 2);
    }
    Polynomial cp = charpoly(m);
    Polynomial expected = Polynomial{q(0), q(1)} * Polynomial{q(-3, 2), q(1)} * Polynomial{q(-3, 2), q(1)};
    CHECK(cp == expected);
  }

  TEST_CASE("rational rank and determinant") {
    RationalMatrix m(2, 2);
    m.at(0, 0) = q(1); m.at(0, 1) = q(2);
    m.at(1, 0) = q(2); m.at(1, 1) = q(4);
    CHECK(rational_det(m) == q(0));
    CHECK(rational_rank(m) == 1);
  }
}
