#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specdec/catalog.hpp"
#include "specdec/decimation.hpp"
#include "specdec/eigensolve.hpp"
#include "specdec/matrices.hpp"

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

const FractalStructure& interval() { return catalog_find("unit-interval")->structure; }
const FractalStructure& gasket() { return catalog_find("sierpinski-gasket")->structure; }

const DecimationData& gasket_dec() {
  static const DecimationData dec = analyze_decimation(gasket());
  return dec;
}

const DecimationData& interval_dec() {
  static const DecimationData dec = analyze_decimation(interval());
  return dec;
}

}  // namespace

TEST_SUITE("schur complement") {
  TEST_CASE("interval: S(z) = (1-z)I - (1/(1-z)) (1/2) J") {
    auto chain = build_chain(interval(), 1);
    RatFuncMatrix s = schur_complement(block_decompose(laplacian_matrix(chain, 1)));
    RationalFunction diag_expected =
        RationalFunction(poly({1, -1})) - RationalFunction(poly({1}), poly({2, -2}));
    RationalFunction off_expected = RationalFunction(poly({-1}), poly({2, -2}));
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        CHECK(s.at(r, c) == (r == c ? diag_expected : off_expected));
      }
    }
  }

  TEST_CASE("gasket: S entries match the hand circulant computation") {
    auto chain = build_chain(gasket(), 1);
    RatFuncMatrix s = schur_complement(block_decompose(laplacian_matrix(chain, 1)));
    Polynomial denom = Polynomial{q(-1, 2), q(1)} * Polynomial{q(-5, 4), q(1)};
    RationalFunction alpha(Polynomial{q(3, 4), q(-1)}, denom);
    RationalFunction beta(Polynomial{q(1, 4)}, denom);
    RationalFunction eighth(q(1, 8));
    RationalFunction diag_expected =
        RationalFunction(poly({1, -1})) - eighth * (alpha + alpha + beta + beta);
    RationalFunction off_expected = -(eighth * (alpha + beta + beta + beta));
    CHECK(s.at(0, 0) == diag_expected);
    CHECK(s.at(0, 1) == off_expected);
    CHECK(s.at(1, 2) == off_expected);
  }
}

TEST_SUITE("phi and R extraction") {
  TEST_CASE("interval: R = 4z - 2z^2, phi = 1/(2-2z), c_delta = 4, E = {1}") {
    const DecimationData& dec = interval_dec();
    CHECK(dec.map == RationalFunction(poly({0, 4, -2})));
    CHECK(dec.phi == RationalFunction(poly({1}), poly({2, -2})));
    CHECK(dec.c_delta == q(4));
    REQUIRE(dec.exceptional.size() == 1);
    CHECK(dec.exceptional[0].root.rational_value() == q(1));
  }

  TEST_CASE("gasket: R = z(5-4z), phi = (6-4z)/((4z-2)(4z-5))") {
    const DecimationData& dec = gasket_dec();
    CHECK(dec.map == RationalFunction(poly({0, 5, -4})));
    CHECK(dec.phi == RationalFunction(poly({6, -4}), poly({-2, 4}) * poly({-5, 4})));
    CHECK(dec.c_delta == q(5));
    REQUIRE(dec.exceptional.size() == 3);
    CHECK(dec.exceptional[0].root.rational_value() == q(1, 2));
    CHECK(dec.exceptional[1].root.rational_value() == q(5, 4));
    CHECK(dec.exceptional[2].root.rational_value() == q(3, 2));
    // sigma(D) = {1/2, 5/4 (double)}: det(zI - D) = (z-1/2)(z-5/4)^2.
    Polynomial expected_cp =
        Polynomial{q(-1, 2), q(1)} * Polynomial{q(-5, 4), q(1)} * Polynomial{q(-5, 4), q(1)};
    CHECK(dec.d_charpoly == expected_cp);
  }

  TEST_CASE("R(0) = 0 for every analyzable catalog structure") {
    for (const CatalogEntry& e : catalog()) {
      DecimationData dec = analyze_decimation(e.structure);
      CHECK(sgn(dec.map.num().eval(q(0))) == 0);
      CHECK(dec.c_delta > 1);
      CHECK(dec.map_degree >= 2);
      CHECK(dec.phi.num().degree() < dec.phi.den().degree());
    }
  }

  TEST_CASE("non-symmetric structures are refused") {
    FractalStructure s;
    s.name = "lopsided";
    s.num_cells = 4;
    s.boundary_size = 2;
    s.v1_size = 5;
    s.v0_embedding = {0, 1};
    s.cell_maps = {{0, 2}, {2, 4}, {4, 1}, {2, 3}};
    CHECK_THROWS_AS(analyze_decimation(s), NotFullySymmetricError);
  }
}

TEST_SUITE("dimension report") {
  TEST_CASE("gasket: N=3, c=5/3, r=3/5, regular, d_S = 2 log3/log5") {
    DimensionReport rep = dimension_report(gasket_dec());
    CHECK(rep.n_cells == 3);
    CHECK(rep.c == q(5, 3));
    CHECK(rep.r == q(3, 5));
    CHECK(rep.regular);
    CHECK(rep.d_s == doctest::Approx(2 * std::log(3.0) / std::log(5.0)).epsilon(1e-12));
    CHECK(rep.d_s == doctest::Approx(1.36521).epsilon(1e-5));
    CHECK(rep.d_s == doctest::Approx(2 * rep.d_r / (rep.d_r + 1)).epsilon(1e-12));
  }

  TEST_CASE("interval: d_S = 1 within 1e-12") {
    DimensionReport rep = dimension_report(interval_dec());
    CHECK(rep.c == q(2));
    CHECK(rep.r == q(1, 2));
    CHECK(rep.regular);
    CHECK(std::abs(rep.d_s - 1.0) < 1e-12);
    CHECK(rep.d_r == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("d_S = 2 d_R / (d_R + 1) on the full catalog") {
    for (const CatalogEntry& e : catalog()) {
      DimensionReport rep = dimension_report(analyze_decimation(e.structure));
      if (!std::isnan(rep.d_s)) {
        CHECK(rep.d_s == doctest::Approx(2 * rep.d_r / (rep.d_r + 1)).epsilon(1e-12));
      }
      CHECK(rep.regular == (rep.c_delta > rep.n_cells));
    }
  }
}

TEST_SUITE("interpolation oracle") {
  TEST_CASE("oracle recovers the symbolic phi and R on the catalog") {
    for (const CatalogEntry& e : catalog()) {
      DecimationData dec = analyze_decimation(e.structure);
      PhiR fit = interpolation_oracle(e.structure);
      CHECK(fit.map == dec.map);
      CHECK(fit.phi == dec.phi);
    }
  }
}

TEST_SUITE("branches") {
  TEST_CASE("gasket branches over [0, 3/2]") {
    const DecimationData& dec = gasket_dec();
    const auto& br = dec.branches->branches();
    REQUIRE(br.size() == 2);
    CHECK(br[0].z_lo.rational_value() == q(0));
    CHECK(br[0].z_hi.rational_value() == q(1, 2));
    CHECK(br[0].increasing);
    CHECK(br[1].z_lo.rational_value() == q(3, 4));
    CHECK(br[1].z_hi.rational_value() == q(5, 4));
    CHECK(!br[1].increasing);
    // phi_0(0) = 0.
    PolyRoot z0 = dec.branches->solve_on_branch(0, PolyRoot::from_rational(q(0)));
    CHECK(z0.rational_value() == q(0));
    // phi_0(3/2) = 1/2, phi_1(3/2) = 3/4 (preimages of the largest
    // exceptional value).
    PolyRoot a = dec.branches->solve_on_branch(0, PolyRoot::from_rational(q(3, 2)));
    PolyRoot b = dec.branches->solve_on_branch(1, PolyRoot::from_rational(q(3, 2)));
    CHECK(a.rational_value() == q(1, 2));
    CHECK(b.rational_value() == q(3, 4));
    CHECK(dec.branches->real_degree_complete());
  }

  TEST_CASE("interval branches over [0, 1] do not stay inside [0, 1]") {
    const DecimationData& dec = interval_dec();
    const auto& br = dec.branches->branches();
    REQUIRE(br.size() == 2);
    // Branch ranges: [0, 1 - sqrt(2)/2] and [1 + sqrt(2)/2, 2].
    CHECK(br[0].z_lo.rational_value() == q(0));
    CHECK(br[0].z_hi.to_double() == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-12));
    CHECK(br[1].z_lo.to_double() == doctest::Approx(1 + std::sqrt(0.5)).epsilon(1e-12));
    CHECK(br[1].z_hi.rational_value() == q(2));
    // Hence the preimage is NOT contained in [0, bound]: containment checks
    // belong to the julia/gaps modules.
    CHECK(PolyRoot::compare(dec.branches->preimage_intervals().back().second,
                            dec.max_exceptional) > 0);
  }

  TEST_CASE("phi_double tracks the exact branch solve") {
    const DecimationData& dec = gasket_dec();
    for (double t : {0.0, 0.3, 0.7, 1.1, 1.5}) {
      double fast = dec.branches->phi_double(0, t);
      PolyRoot slow = dec.branches->solve_on_branch(
          0, PolyRoot::from_rational(snap_to_rational(t, 100, 1e-9).value_or(Rational(0))));
      if (t == 0.0 || t == 1.5) {
        CHECK(fast == doctest::Approx(slow.to_double()).epsilon(1e-12));
      } else {
        CHECK(fast == doctest::Approx(slow.to_double()).epsilon(1e-10));
      }
    }
  }
}

TEST_SUITE("algebraic reals") {
  TEST_CASE("lazy branch values compare exactly") {
    const DecimationData& dec = gasket_dec();
    auto sys = dec.branches;
    // phi_0(3/2) = 1/2 lazily vs the exact rational.
    AlgebraicReal lazy(sys, {0}, PolyRoot::from_rational(q(3, 2)));
    CHECK(lazy.compare(q(1, 2)) == 0);
    AlgebraicReal lazy2(sys, {1}, PolyRoot::from_rational(q(3, 2)));
    CHECK(lazy2.compare(q(3, 4)) == 0);
    CHECK(AlgebraicReal::compare(lazy, lazy2) < 0);
    // Deeper word: phi_0(phi_0(3/2)) = phi_0(1/2).
    AlgebraicReal deep(sys, {0, 0}, PolyRoot::from_rational(q(3, 2)));
    AlgebraicReal direct(sys, {0}, PolyRoot::from_rational(q(1, 2)));
    CHECK(AlgebraicReal::compare(deep, direct) == 0);
  }

  TEST_CASE("enclosures refine to requested widths") {
    const DecimationData& dec = gasket_dec();
    AlgebraicReal x(dec.branches, {0, 0, 0, 1}, PolyRoot::from_rational(q(3, 2)));
    x.refine_below(q(1, 10000000000L));
    CHECK(x.enclosure().width() < q(1, 10000000000L));
    double v = x.to_double();
    // Independent double iteration.
    double t = 1.5;
    t = dec.branches->phi_double(1, t);
    for (int i = 0; i < 3; ++i) t = dec.branches->phi_double(0, t);
    CHECK(v == doctest::Approx(t).epsilon(1e-9));
  }
}

TEST_SUITE("level spectra") {
  TEST_CASE("gasket level 0: {0 (x1), 3/2 (x2)} with exact recognition") {
    auto chain = build_chain(gasket(), 0);
    LevelSpectrumResult spec = level_spectrum(chain, gasket_dec(), 0);
    REQUIRE(spec.entries.size() == 2);
    CHECK(spec.entries[0].multiplicity == 1);
    CHECK(spec.entries[1].multiplicity == 2);
    REQUIRE(spec.entries[0].exact.has_value());
    CHECK(*spec.entries[0].exact == q(0));
    REQUIRE(spec.entries[1].exact.has_value());
    CHECK(*spec.entries[1].exact == q(3, 2));
  }

  TEST_CASE("gasket level 1 passes the decimation cross-check") {
    auto chain = build_chain(gasket(), 2);
    LevelSpectrumResult spec = level_spectrum(chain, gasket_dec(), 1);
    int total = 0;
    for (const auto& e : spec.entries) total += e.multiplicity;
    CHECK(total == 6);
    // Eigenvalues away from E = {1/2, 5/4, 3/2} map into sigma(Delta_0).
    for (const auto& e : spec.entries) {
      bool exceptional = std::abs(e.value - 0.5) < 1e-6 || std::abs(e.value - 1.25) < 1e-6 ||
                         std::abs(e.value - 1.5) < 1e-6;
      if (exceptional) continue;
      double rz = gasket_dec().map.eval(e.value);
      CHECK((std::abs(rz) < 1e-8 || std::abs(rz - 1.5) < 1e-8));
    }
    LevelSpectrumResult spec2 = level_spectrum(chain, gasket_dec(), 2);
    int total2 = 0;
    for (const auto& e : spec2.entries) total2 += e.multiplicity;
    CHECK(total2 == 15);
  }

  TEST_CASE("interval level 2 spectrum and Dirichlet variant") {
    auto chain = build_chain(interval(), 2);
    LevelSpectrumResult neumann = level_spectrum(chain, interval_dec(), 2);
    int total = 0;
    for (const auto& e : neumann.entries) total += e.multiplicity;
    CHECK(total == 5);
    CHECK(neumann.entries.front().value == doctest::Approx(0.0));
    LevelSpectrumResult dirich = level_spectrum(chain, interval_dec(), 2, true);
    int dtotal = 0;
    for (const auto& e : dirich.entries) dtotal += e.multiplicity;
    CHECK(dtotal == 3);
    // Dirichlet path eigenvalues: 1 - cos(k pi/4) for k=1,2,3 on the
    // interior path... the 3-vertex interior chain has spectrum
    // {1 - sqrt(2)/2, 1, 1 + sqrt(2)/2}.
    CHECK(dirich.entries.front().value == doctest::Approx(1 - std::sqrt(0.5)).epsilon(1e-9));
    CHECK(dirich.entries.back().value == doctest::Approx(1 + std::sqrt(0.5)).epsilon(1e-9));
  }

  TEST_CASE("eigenvector extension has a small residual") {
    auto chain = build_chain(gasket(), 2);
    // Start from a level-1 eigenvector with a non-exceptional eigenvalue.
    EigenDecomposition ed = laplacian_eigen(chain, 1);
    const DecimationData& dec = gasket_dec();
    int pick = -1;
    for (size_t i = 0; i < ed.values.size(); ++i) {
      double z = ed.values[i];
      if (std::abs(z - 0.5) > 1e-6 && std::abs(z - 1.25) > 1e-6 && std::abs(z - 1.5) > 1e-6 &&
          z > 1e-9) {
        pick = static_cast<int>(i);
        break;
      }
    }
    REQUIRE(pick >= 0);
    double z1 = ed.values[pick];
    std::vector<double> v1(ed.vectors.rows());
    for (size_t r = 0; r < ed.vectors.rows(); ++r) v1[r] = ed.vectors.at(r, pick);
    // Lift z1 to level 2 through phi_0 and extend the eigenvector.
    double z2 = dec.branches->phi_double(0, z1);
    std::vector<double> v2 = extend_eigenvector(chain, 2, v1, z2);
    Matrix<double> m2 = laplacian_double(chain, 2);
    double norm = 0, res = 0;
    for (size_t r = 0; r < m2.rows(); ++r) {
      double acc = 0;
      for (size_t c = 0; c < m2.cols(); ++c) acc += m2.at(r, c) * v2[c];
      res = std::max(res, std::abs(acc - z2 * v2[r]));
      norm = std::max(norm, std::abs(v2[r]));
    }
    CHECK(res <= 1e-8 * norm);
    // Restriction returns the original vector exactly.
    for (size_t r = 0; r < v1.size(); ++r) CHECK(v2[r] == v1[r]);
  }

  TEST_CASE("extension at an exceptional value throws") {
    auto chain = build_chain(gasket(), 1);
    std::vector<double> v0(3, 1.0);
    CHECK_THROWS_AS(extend_eigenvector(chain, 1, v0, 1.25), ExceptionalValueError);
  }

  TEST_CASE("constant vector extends to the constant vector at 0") {
    auto chain = build_chain(gasket(), 2);
    std::vector<double> ones(chain[1].num_vertices, 1.0);
    std::vector<double> ext = extend_eigenvector(chain, 2, ones, 0.0);
    for (double v : ext) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
  }
}
