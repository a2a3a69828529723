#include "doctest.h"

#include <cmath>

#include "zetascope/nondegeneracy.hpp"

using namespace zetascope;

namespace {

SparsePolynomial make(std::initializer_list<std::pair<Exponent, Rational>> terms, int dim = 2) {
  SparsePolynomial p(dim);
  for (const auto& [a, c] : terms) p.add_term(a, c);
  return p;
}

NondegeneracyVerdict run(const SparsePolynomial& f) {
  NewtonPolyhedron N = newton_polyhedron(f);
  return check_nondegenerate(f, N, 40, 12345);
}

// Dense grid scan over torus points of [-3,3]^2, step 1/200: reports true when
// some grid point zeroes f_gamma and its gradient to tolerance 1e-6, measured
// against the term-magnitude scale at that point (gamma-parts have no constant
// term, so an absolute test would trigger spuriously near the origin).
bool grid_scan_degenerate(const SparsePolynomial& f) {
  NewtonPolyhedron N = newton_polyhedron(f);
  const double tol = 1e-6;
  auto abs_poly = [](const SparsePolynomial& p) {
    SparsePolynomial q(p.dim());
    for (const auto& [a, c] : p.terms()) q.add_term(a, boost::multiprecision::abs(c));
    return q;
  };
  for (std::size_t id = 0; id < N.compactFaces.size(); ++id) {
    SparsePolynomial g = gamma_part(f, N, static_cast<int>(id));
    SparsePolynomial gx = g.derivative(0), gy = g.derivative(1);
    SparsePolynomial ga = abs_poly(g), gxa = abs_poly(gx), gya = abs_poly(gy);
    for (int i = -600; i <= 600; ++i) {
      if (i == 0) continue;
      for (int j = -600; j <= 600; ++j) {
        if (j == 0) continue;
        std::vector<double> x = {i / 200.0, j / 200.0};
        std::vector<double> ax = {std::fabs(x[0]), std::fabs(x[1])};
        if (std::fabs(g.eval(x)) <= tol * ga.eval(ax) &&
            std::fabs(gx.eval(x)) <= tol * gxa.eval(ax) &&
            std::fabs(gy.eval(x)) <= tol * gya.eval(ax))
          return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("edge parts with empty real torus zero sets are proven non-degenerate") {
  NondegeneracyVerdict v = run(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}));
  CHECK(v.status == NdStatus::Proven);
}

TEST_CASE("the cusp is proven non-degenerate") {
  NondegeneracyVerdict v = run(make({{{3, 0}, 1}, {{0, 2}, -1}}));
  CHECK(v.status == NdStatus::Proven);
}

TEST_CASE("the squared linear form is degenerate with witness x = -y") {
  NondegeneracyVerdict v = run(make({{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}}));
  REQUIRE(v.status == NdStatus::Degenerate);
  REQUIRE(v.witness.size() == 2);
  double x = v.witness[0], y = v.witness[1];
  CHECK(x != 0.0);
  CHECK(y != 0.0);
  CHECK(x / y == doctest::Approx(-1.0).epsilon(1e-9));
  SparsePolynomial g = make({{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}});
  CHECK(std::fabs(g.eval(v.witness)) < 1e-9);
  CHECK(std::fabs(g.derivative(0).eval(v.witness)) < 1e-9);
  CHECK(std::fabs(g.derivative(1).eval(v.witness)) < 1e-9);
}

TEST_CASE("one-variable polynomials are vacuously non-degenerate") {
  SparsePolynomial f(1);
  f.add_term({2}, 1);
  NondegeneracyVerdict v = run(f);
  CHECK(v.status == NdStatus::Proven);
}

TEST_CASE("x^3 + y^3 has a torus zero but no critical one") {
  NondegeneracyVerdict v = run(make({{{3, 0}, 1}, {{0, 3}, 1}}));
  CHECK(v.status == NdStatus::Proven);
}

TEST_CASE("verdicts agree with the dense grid scan on the regression corpus") {
  std::vector<SparsePolynomial> corpus = {
      make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}),
      make({{{3, 0}, 1}, {{0, 2}, -1}}),
      make({{{2, 0}, 1}, {{0, 4}, 1}}),
      make({{{2, 0}, 1}, {{0, 2}, 1}}),
      make({{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}}),       // (x+y)^2
      make({{{2, 0}, 1}, {{1, 1}, -2}, {{0, 2}, 1}}),      // (x-y)^2
      make({{{3, 0}, 1}, {{0, 3}, 1}}),
      make({{{3, 0}, 1}, {{0, 3}, -1}}),
      make({{{5, 0}, 1}, {{0, 2}, 1}}),
      make({{{4, 0}, 1}, {{2, 1}, 2}, {{0, 2}, 1}}),       // (x^2+y)^2
      make({{{4, 0}, 1}, {{2, 1}, 1}, {{0, 2}, 1}}),
      make({{{6, 0}, 1}, {{0, 6}, 1}}),
      make({{{6, 0}, 1}, {{3, 3}, 2}, {{0, 6}, 1}}),       // (x^3+y^3)^2
      make({{{6, 0}, 1}, {{3, 3}, -1}, {{0, 6}, 1}}),
      make({{{2, 0}, 1}, {{1, 1}, 3}, {{0, 2}, 1}}),
      make({{{4, 0}, 1}, {{0, 4}, -1}}),
      make({{{2, 0}, 4}, {{1, 1}, 4}, {{0, 2}, 1}}),       // (2x+y)^2
      make({{{3, 0}, 1}, {{2, 1}, 3}, {{1, 2}, 3}, {{0, 3}, 1}}),  // (x+y)^3
      make({{{4, 0}, 1}, {{1, 1}, 1}, {{0, 4}, 1}}),
      make({{{2, 0}, 1}, {{1, 2}, -2}, {{0, 4}, 1}}),      // (x - y^2)^2
  };
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(i);
    NondegeneracyVerdict v = check_nondegenerate(corpus[i], newton_polyhedron(corpus[i]), 40, 7);
    bool engine_degenerate = (v.status == NdStatus::Degenerate);
    CHECK(engine_degenerate == grid_scan_degenerate(corpus[i]));
  }
}

TEST_CASE("verdicts are deterministic for a fixed seed in dimension three") {
  SparsePolynomial f(3);
  f.add_term({2, 0, 0}, 1);
  f.add_term({0, 2, 0}, 1);
  f.add_term({0, 0, 2}, 1);
  f.add_term({1, 1, 1}, -3);
  NewtonPolyhedron N = newton_polyhedron(f);
  NondegeneracyVerdict a = check_nondegenerate(f, N, 25, 99);
  NondegeneracyVerdict b = check_nondegenerate(f, N, 25, 99);
  CHECK(a.status == b.status);
  CHECK(a.witness == b.witness);
}
