#include "doctest.h"

#include <cmath>
#include <random>

#include "zetascope/coefficients.hpp"

using namespace zetascope;

namespace {

SparsePolynomial make(std::initializer_list<std::pair<Exponent, Rational>> terms, int dim = 2) {
  SparsePolynomial p(dim);
  for (const auto& [a, c] : terms) p.add_term(a, c);
  return p;
}

struct Setup {
  SparsePolynomial f;
  NewtonPolyhedron N;
  Fan fan;
  std::vector<CandidatePole> poles;
  Setup(SparsePolynomial poly, const Rational& depth) : f(std::move(poly)) {
    N = newton_polyhedron(f);
    fan = smooth_subdivision(normal_fan(N, f));
    poles = candidate_poles(fan, N, depth);
  }
  const CandidatePole& at(const Rational& lambda) const {
    for (const auto& p : poles)
      if (p.lambda == lambda) return p;
    throw std::runtime_error("pole not found");
  }
};

Rational rational_value(const AlgebraicScalar& s) {
  // value of a scalar that normalises to a plain rational
  if (s.is_zero()) return 0;
  REQUIRE(s.terms().size() == 1);
  REQUIRE(s.terms()[0].base == 1);
  return s.terms()[0].r;
}

}  // namespace

TEST_CASE("mu vectors of the worked example") {
  IMat gens = {{2, 1}, {1, 1}};
  IVec nu = {0, 0};
  CHECK(mu_vector(nu, gens, {0, 0}) == IVec{0, 0});
  CHECK(mu_vector(nu, gens, {1, 0}) == IVec{-2, -1});
  IVec nu2 = {3, 1};
  CHECK(mu_vector(nu2, gens, {0, 0}) == nu2);
}

TEST_CASE("power jet of the worked chart") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  const CandidatePole& p = s.at(Rational(1, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  REQUIRE(charts.size() == 1);
  const ChartData& cd = charts.begin()->second;
  PowerJet pj = f_sigma_power_jet(cd, Rational(1, 2), 2);
  CHECK(pj.series.coefficient({0, 0}) == 1);
  CHECK(pj.series.coefficient({2, 0}) == Rational(-1, 2));
  CHECK(pj.series.coefficient({0, 2}) == Rational(-1, 2));
  CHECK(rational_value(AlgebraicScalar::power_term(1, 1, Rational(-1, 2))) == 1);

  // constant unit factor: series collapses to 1
  SparsePolynomial g(1);
  g.add_term({2}, 1);
  Setup s1(g, Rational(1, 2));
  ChartMap charts1 = charts_for_pole(s1.at(Rational(1, 2)), s1.fan, s1.f, s1.N);
  PowerJet pj1 = f_sigma_power_jet(charts1.begin()->second, Rational(1, 2), 3);
  CHECK(pj1.series == TruncatedSeries::one(1, 3));

  // geometric series: (1 + y1)^{-1}
  ChartData cdg;
  cdg.lVec = {1};
  cdg.normSums = {1};
  cdg.fSigma = SparsePolynomial(1);
  cdg.fSigma.add_term({0}, 1);
  cdg.fSigma.add_term({1}, 1);
  cdg.c0 = 1;
  PowerJet pjg = f_sigma_power_jet(cdg, Rational(1), 2);
  CHECK(pjg.series.coefficient({0}) == 1);
  CHECK(pjg.series.coefficient({1}) == -1);
  CHECK(pjg.series.coefficient({2}) == 1);
}

TEST_CASE("deepest coefficient of the worked example is 1/6") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  const CandidatePole& p = s.at(Rational(1, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  SparsePolynomial jet = SparsePolynomial::constant(2, 1);
  AlgebraicScalar a = deepest_coefficient_abs(p, s.fan, charts, jet);
  CHECK(rational_value(a) == Rational(1, 6));
}

TEST_CASE("deepest coefficient for f = x^2 is phi(0)") {
  SparsePolynomial f(1);
  f.add_term({2}, 1);
  Setup s(f, Rational(1, 2));
  const CandidatePole& p = s.at(Rational(1, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  AlgebraicScalar a = deepest_coefficient_abs(p, s.fan, charts, SparsePolynomial::constant(1, 1));
  CHECK(rational_value(a) == 1);
}

TEST_CASE("odd nu parity zeroes every term") {
  Setup s(make({{{2, 0}, 1}, {{0, 4}, 1}}), Rational(3, 2));
  const CandidatePole& p = s.at(Rational(3, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  AlgebraicScalar a = deepest_coefficient_abs(p, s.fan, charts, SparsePolynomial::constant(2, 1));
  CHECK(a.is_zero());
}

TEST_CASE("not-applicable signalling") {
  Setup s(make({{{3, 0}, 1}, {{0, 2}, -1}}), Rational(5, 6));
  const CandidatePole& p = s.at(Rational(5, 6));  // k_1 = 1 < 2
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  CHECK_THROWS_AS(deepest_coefficient_abs(p, s.fan, charts, SparsePolynomial::constant(2, 1)),
                  not_applicable);
  CHECK_THROWS_AS(
      deepest_coefficient_signed(p, s.fan, charts, SparsePolynomial::constant(2, 1)),
      not_applicable);
}

TEST_CASE("sign counts of the worked chart and of x^3") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  const CandidatePole& p = s.at(Rational(1, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  const SigmaCone& sc = p.sigma[2][0];
  SignProfile sp = sign_counts(charts.at(sc.rayIds), sc.nu);
  CHECK(sp.qPlus.size() == 4);
  CHECK(sp.qMinus.empty());
  CHECK(sp.cPlus == 4);
  CHECK(sp.cMinus == 0);

  SparsePolynomial cube(1);
  cube.add_term({3}, 1);
  Setup s3(cube, Rational(1, 3));
  const CandidatePole& p3 = s3.at(Rational(1, 3));
  ChartMap charts3 = charts_for_pole(p3, s3.fan, s3.f, s3.N);
  SignProfile sp3 = sign_counts(charts3.begin()->second, p3.sigma[1][0].nu);
  CHECK(sp3.qPlus.size() == 1);
  CHECK(sp3.qMinus.size() == 1);
  CHECK(sp3.cPlus == 1);
  CHECK(sp3.cMinus == 1);
}

TEST_CASE("quadrant identity on randomized charts") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> lv(1, 7), nv(0, 6), dims(1, 3), sign(0, 1);
  int cases = 0;
  while (cases < 200) {
    int n = dims(rng);
    ChartData cd;
    cd.lVec.resize(n);
    for (int i = 0; i < n; ++i) cd.lVec[i] = lv(rng);
    cd.c0 = sign(rng) ? Rational(3, 2) : Rational(-2, 5);
    IVec nu(n);
    for (int i = 0; i < n; ++i) nu[i] = nv(rng);
    SignProfile sp = sign_counts(cd, nu);
    long long expect = 1;
    for (int i = 0; i < n; ++i) expect *= (nu[i] % 2 == 0) ? 2 : 0;
    CHECK(sp.cPlus + sp.cMinus == expect);
    CHECK(sp.qPlus.size() + sp.qMinus.size() == (1u << n));
    ++cases;
  }
}

TEST_CASE("signed deepest coefficients of the worked example") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  const CandidatePole& p = s.at(Rational(1, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  auto [bp, bm] = deepest_coefficient_signed(p, s.fan, charts, SparsePolynomial::constant(2, 1));
  CHECK(rational_value(bp) == Rational(1, 6));
  CHECK(bm.is_zero());
}

TEST_CASE("signed deepest coefficients of x^3") {
  SparsePolynomial cube(1);
  cube.add_term({3}, 1);
  Setup s(cube, Rational(1, 3));
  const CandidatePole& p = s.at(Rational(1, 3));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  auto [ap, am] = deepest_coefficient_signed(p, s.fan, charts, SparsePolynomial::constant(1, 1));
  CHECK(rational_value(ap) == Rational(1, 3));
  CHECK(rational_value(am) == Rational(1, 3));
}

TEST_CASE("splitting identity a+ + a- = a for non-integer lambda") {
  std::vector<Setup> setups;
  setups.emplace_back(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  SparsePolynomial cube(1);
  cube.add_term({3}, 1);
  setups.emplace_back(cube, Rational(1, 3));
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> co(-3, 3);
  for (const auto& s : setups) {
    const CandidatePole& p = s.poles[0];
    ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
    for (int rep = 0; rep < 100; ++rep) {
      SparsePolynomial jet(s.f.dim());
      for (int t = 0; t < 3; ++t) {
        Exponent e(s.f.dim());
        for (int i = 0; i < s.f.dim(); ++i) e[i] = std::uniform_int_distribution<int>(0, 2)(rng);
        jet.add_term(e, co(rng));
      }
      if (jet.is_zero()) jet = SparsePolynomial::constant(s.f.dim(), 1);
      AlgebraicScalar a = deepest_coefficient_abs(p, s.fan, charts, jet);
      auto [apl, ami] = deepest_coefficient_signed(p, s.fan, charts, jet);
      CHECK((apl + ami) == a);
      CHECK(std::fabs((apl + ami).float_value() - a.float_value()) <= 1e-12);
    }
  }
}

TEST_CASE("jet linearity of the deepest coefficient") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  const CandidatePole& p = s.at(Rational(1, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> co(-4, 4), ex(0, 3);
  for (int rep = 0; rep < 50; ++rep) {
    SparsePolynomial j1(2), j2(2);
    for (int t = 0; t < 3; ++t) {
      j1.add_term({ex(rng), ex(rng)}, co(rng));
      j2.add_term({ex(rng), ex(rng)}, co(rng));
    }
    Rational c(co(rng), 3);
    SparsePolynomial combo = j1.scaled(c) + j2;
    AlgebraicScalar left = deepest_coefficient_abs(p, s.fan, charts, combo);
    AlgebraicScalar right =
        deepest_coefficient_abs(p, s.fan, charts, j1).scaled(c) +
        deepest_coefficient_abs(p, s.fan, charts, j2);
    CHECK(left == right);
  }
}

TEST_CASE("support locality: only jet coefficients on Delta points matter") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  const CandidatePole& p = s.at(Rational(1, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  SparsePolynomial j1 = SparsePolynomial::constant(2, 1);
  SparsePolynomial j2 = j1;
  j2.add_term({1, 0}, 5);
  j2.add_term({0, 3}, -2);  // off Delta = {(0,0)}
  CHECK(deepest_coefficient_abs(p, s.fan, charts, j1) ==
        deepest_coefficient_abs(p, s.fan, charts, j2));
  auto [p1, m1] = deepest_coefficient_signed(p, s.fan, charts, j1);
  auto [p2, m2] = deepest_coefficient_signed(p, s.fan, charts, j2);
  CHECK(p1 == p2);
  CHECK(m1 == m2);
}

TEST_CASE("oscillatory leading coefficients of the closed-form cases") {
  // W1: sqrt(pi) e^{i pi/4} / 6
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  const CandidatePole& p = s.at(Rational(1, 2));
  ChartMap charts = charts_for_pole(p, s.fan, s.f, s.N);
  auto [bp, bm] = deepest_coefficient_signed(p, s.fan, charts, SparsePolynomial::constant(2, 1));
  std::complex<double> c = oscillating_leading(p.lambda, 2, bp, bm);
  double expect = std::sqrt(M_PI) * std::cos(M_PI / 4) / 6.0;
  CHECK(c.real() == doctest::Approx(expect).epsilon(1e-13));
  CHECK(c.imag() == doctest::Approx(expect).epsilon(1e-13));

  // x^3: Gamma(1/3)/sqrt(3), real
  SparsePolynomial cube(1);
  cube.add_term({3}, 1);
  Setup s3(cube, Rational(1, 3));
  const CandidatePole& p3 = s3.at(Rational(1, 3));
  ChartMap charts3 = charts_for_pole(p3, s3.fan, s3.f, s3.N);
  auto [b3p, b3m] = deepest_coefficient_signed(p3, s3.fan, charts3,
                                               SparsePolynomial::constant(1, 1));
  std::complex<double> c3 = oscillating_leading(p3.lambda, 1, b3p, b3m);
  CHECK(c3.real() == doctest::Approx(std::tgamma(1.0 / 3.0) / std::sqrt(3.0)).epsilon(1e-13));
  CHECK(c3.imag() == doctest::Approx(0.0).epsilon(1e-15));

  // zero inputs give zero
  std::complex<double> cz = oscillating_leading(Rational(1, 2), 2, AlgebraicScalar{},
                                                AlgebraicScalar{});
  CHECK(cz == std::complex<double>(0.0, 0.0));
}

TEST_CASE("bundled deepest data reports applicability") {
  Setup s(make({{{3, 0}, 1}, {{0, 2}, -1}}), Rational(1));
  DeepestCoefficients d =
      compute_deepest(s.at(Rational(5, 6)), s.fan, s.f, s.N, SparsePolynomial::constant(2, 1));
  CHECK_FALSE(d.applicable);
  CHECK(!d.reason.empty());

  Setup w(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}), Rational(1, 2));
  DeepestCoefficients dw =
      compute_deepest(w.at(Rational(1, 2)), w.fan, w.f, w.N, SparsePolynomial::constant(2, 1));
  CHECK(dw.applicable);
  CHECK(dw.absValid);
  CHECK(dw.signedValid);
  CHECK_FALSE(dw.oscIntegerCaveat);
  CHECK(rational_value(dw.a) == Rational(1, 6));
}
