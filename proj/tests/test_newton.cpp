#include "doctest.h"

#include <random>
#include <set>

#include "zetascope/newton.hpp"

using namespace zetascope;

namespace {

SparsePolynomial make(std::initializer_list<std::pair<Exponent, Rational>> terms, int dim = 2) {
  SparsePolynomial p(dim);
  for (const auto& [a, c] : terms) p.add_term(a, c);
  return p;
}

bool has_facet(const NewtonPolyhedron& N, const IVec& normal, long long offset) {
  for (const auto& f : N.facets)
    if (f.normal == normal && f.offset == offset) return true;
  return false;
}

}  // namespace

TEST_CASE("newton polyhedron of the cusp x^3 - y^2") {
  SparsePolynomial f = make({{{3, 0}, 1}, {{0, 2}, -1}});
  NewtonPolyhedron N = newton_polyhedron(f);
  CHECK(N.vertices == std::vector<Exponent>{{0, 2}, {3, 0}});
  CHECK(N.facets.size() == 3);
  CHECK(has_facet(N, {1, 0}, 0));
  CHECK(has_facet(N, {0, 1}, 0));
  CHECK(has_facet(N, {2, 3}, 6));
}

TEST_CASE("newton polyhedron of x^4 + x^2 y^2 + y^6") {
  SparsePolynomial f = make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}});
  NewtonPolyhedron N = newton_polyhedron(f);
  CHECK(N.vertices == std::vector<Exponent>{{0, 6}, {2, 2}, {4, 0}});
  CHECK(has_facet(N, {1, 1}, 4));
  CHECK(has_facet(N, {2, 1}, 6));
  // compact faces: three vertices and two compact edges
  int edges = 0, verts = 0;
  for (const auto& face : N.compactFaces) {
    if (face.dim == 0) ++verts;
    if (face.dim == 1) ++edges;
  }
  CHECK(verts == 3);
  CHECK(edges == 2);
}

TEST_CASE("newton polyhedron of a monomial in one variable") {
  SparsePolynomial f(1);
  f.add_term({1}, 1);
  NewtonPolyhedron N = newton_polyhedron(f);
  CHECK(N.vertices == std::vector<Exponent>{{1}});
  REQUIRE(N.facets.size() == 1);
  CHECK(N.facets[0].normal == IVec{1});
  CHECK(N.facets[0].offset == 1);
  CHECK_THROWS_AS(newton_polyhedron(SparsePolynomial(1)), input_error);
}

TEST_CASE("gamma parts restrict to face support") {
  SparsePolynomial f = make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}});
  NewtonPolyhedron N = newton_polyhedron(f);
  // find the edge with normal (1,1)
  int edgeId = -1, vertexId = -1;
  for (std::size_t i = 0; i < N.compactFaces.size(); ++i) {
    const auto& face = N.compactFaces[i];
    if (face.dim == 1) {
      for (int fi : face.facetIds)
        if (N.facets[fi].normal == IVec{1, 1}) edgeId = static_cast<int>(i);
    }
    if (face.dim == 0 && N.vertices[face.vertexIds[0]] == Exponent{0, 6})
      vertexId = static_cast<int>(i);
  }
  REQUIRE(edgeId >= 0);
  REQUIRE(vertexId >= 0);
  CHECK(gamma_part(f, N, edgeId) == make({{{4, 0}, 1}, {{2, 2}, 1}}));
  CHECK(gamma_part(f, N, vertexId) == make({{{0, 6}, 1}}));

  SparsePolynomial cusp = make({{{3, 0}, 1}, {{0, 2}, -1}});
  NewtonPolyhedron Nc = newton_polyhedron(cusp);
  int cuspEdge = -1;
  for (std::size_t i = 0; i < Nc.compactFaces.size(); ++i)
    if (Nc.compactFaces[i].dim == 1) cuspEdge = static_cast<int>(i);
  REQUIRE(cuspEdge >= 0);
  CHECK(gamma_part(cusp, Nc, cuspEdge) == cusp);
  CHECK_THROWS_AS(gamma_part(cusp, Nc, 99), input_error);
}

TEST_CASE("support_min evaluates the support function") {
  SparsePolynomial cusp = make({{{3, 0}, 1}, {{0, 2}, -1}});
  NewtonPolyhedron Nc = newton_polyhedron(cusp);
  CHECK(support_min({2, 3}, Nc) == 6);
  CHECK(support_min({0, 0}, Nc) == 0);
  CHECK_THROWS_AS(support_min({-1, 0}, Nc), input_error);

  SparsePolynomial f = make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}});
  NewtonPolyhedron N = newton_polyhedron(f);
  CHECK(support_min({1, 1}, N) == 4);
}

TEST_CASE("support_min agrees with the raw support minimum on random functionals") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> ex(0, 7), co(-5, 5), nt(1, 7), av(0, 9);
  for (int rep = 0; rep < 20; ++rep) {
    SparsePolynomial p(2);
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
      int c = co(rng);
      p.add_term({ex(rng), ex(rng)}, c == 0 ? 1 : c);
    }
    if (p.is_zero()) p.add_term({1, 1}, 1);
    NewtonPolyhedron N = newton_polyhedron(p);
    for (int k = 0; k < 10; ++k) {
      IVec a = {av(rng), av(rng)};
      long long raw = dot(a, p.support()[0]);
      for (const auto& s : p.support()) raw = std::min(raw, dot(a, s));
      CHECK(support_min(a, N) == raw);
    }
  }
}

TEST_CASE("facet inequalities are tight and valid on the support") {
  std::mt19937 rng(202);
  std::uniform_int_distribution<int> ex(0, 8), co(-5, 5), nt(1, 8);
  for (int rep = 0; rep < 25; ++rep) {
    SparsePolynomial p(2);
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
      int c = co(rng);
      p.add_term({ex(rng), ex(rng)}, c == 0 ? 1 : c);
    }
    if (p.is_zero()) p.add_term({2, 3}, 1);
    NewtonPolyhedron N = newton_polyhedron(p);
    for (const auto& facet : N.facets) {
      long long best = dot(facet.normal, p.support()[0]);
      for (const auto& s : p.support()) {
        CHECK(dot(facet.normal, s) >= facet.offset);
        best = std::min(best, dot(facet.normal, s));
      }
      CHECK(best == facet.offset);
      long long g = 0;
      for (long long v : facet.normal) g = gcd_ll(g, v);
      CHECK(g == 1);
    }
  }
}

TEST_CASE("compact faces lie on a strictly positive supporting functional") {
  SparsePolynomial f = make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}});
  NewtonPolyhedron N = newton_polyhedron(f);
  for (const auto& face : N.compactFaces) {
    IVec sum(2, 0);
    for (int fi : face.facetIds)
      for (int k = 0; k < 2; ++k) sum[k] += N.facets[fi].normal[k];
    CHECK(sum[0] > 0);
    CHECK(sum[1] > 0);
    long long v0 = dot(sum, N.vertices[face.vertexIds[0]]);
    long long mn = v0;
    for (const auto& v : N.vertices) mn = std::min(mn, dot(sum, v));
    for (int vi : face.vertexIds) CHECK(dot(sum, N.vertices[vi]) == v0);
    CHECK(v0 == mn);
  }
}

TEST_CASE("a three-variable polyhedron is computed exactly") {
  // f = x^2 + y^2 + z^2 + xyz
  SparsePolynomial f(3);
  f.add_term({2, 0, 0}, 1);
  f.add_term({0, 2, 0}, 1);
  f.add_term({0, 0, 2}, 1);
  f.add_term({1, 1, 1}, 1);
  NewtonPolyhedron N = newton_polyhedron(f);
  CHECK(N.vertices.size() == 3);  // (1,1,1) is inside conv + R_+^3
  bool found = false;
  for (const auto& facet : N.facets)
    if (facet.normal == IVec{1, 1, 1} && facet.offset == 2) found = true;
  CHECK(found);
}

TEST_CASE("convenience detection and witnesses") {
  SparsePolynomial f = make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}});
  ConvenienceResult r = is_convenient(f);
  CHECK(r.convenient);
  CHECK(*r.axisWitness[0] == Exponent{4, 0});
  CHECK(*r.axisWitness[1] == Exponent{0, 6});

  SparsePolynomial g = make({{{2, 1}, 1}});
  ConvenienceResult rg = is_convenient(g);
  CHECK_FALSE(rg.convenient);
  CHECK(rg.failingAxes == std::vector<int>{0, 1});

  SparsePolynomial h(1);
  h.add_term({2}, 1);
  CHECK(is_convenient(h).convenient);
}
