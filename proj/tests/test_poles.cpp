#include "doctest.h"

#include <set>

#include "zetascope/poles.hpp"

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
  Setup(SparsePolynomial poly) : f(std::move(poly)), N(newton_polyhedron(f)) {
    fan = smooth_subdivision(normal_fan(N, f));
  }
};

const CandidatePole& pole_at(const std::vector<CandidatePole>& poles, const Rational& lambda) {
  for (const auto& p : poles)
    if (p.lambda == lambda) return p;
  REQUIRE(false);
  throw std::runtime_error("unreachable");
}

std::set<IVec> sigma_ray_vectors(const Fan& fan, const std::vector<SigmaCone>& cones) {
  std::set<IVec> out;
  for (const auto& sc : cones)
    for (int id : sc.rayIds) out.insert(fan.rays[id]);
  return out;
}

}  // namespace

TEST_CASE("candidate poles of the cusp up to depth 1") {
  Setup s(make({{{3, 0}, 1}, {{0, 2}, -1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(1));
  REQUIRE(poles.size() == 2);
  CHECK(poles[0].lambda == Rational(5, 6));
  CHECK(poles[1].lambda == Rational(1));
  CHECK(poles[0].index == 1);
  CHECK(poles[1].index == 2);
  // lambda_1 = 5/6 comes only from the ray (2,3) and has k_1 = 1
  CHECK(poles[0].kj == 1);
  REQUIRE(poles[0].sigma[1].size() == 1);
  CHECK(s.fan.rays[poles[0].sigma[1][0].rayIds[0]] == IVec{2, 3});
  CHECK(poles[0].sigma[1][0].nu == IVec{0});
  CHECK(poles[0].sigma[2].empty());
}

TEST_CASE("candidate poles of x^4 + x^2 y^2 + y^6 up to 3/4") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(3, 4));
  REQUIRE(poles.size() == 3);
  CHECK(poles[0].lambda == Rational(1, 2));
  CHECK(poles[1].lambda == Rational(2, 3));
  CHECK(poles[2].lambda == Rational(3, 4));
  // lambda_1 = 1/2: both strictly positive rays contribute with nu = 0
  CHECK(sigma_ray_vectors(s.fan, poles[0].sigma[1]) == std::set<IVec>{{2, 1}, {1, 1}});
  REQUIRE(poles[0].sigma[2].size() == 1);
  CHECK(poles[0].sigma[2][0].nu == IVec{0, 0});
  CHECK(poles[0].kj == 2);
}

TEST_CASE("candidate poles in one variable") {
  SparsePolynomial f(1);
  f.add_term({2}, 1);
  NewtonPolyhedron N = newton_polyhedron(f);
  Fan fan = smooth_subdivision(normal_fan(N, f));
  auto poles = candidate_poles(fan, N, Rational(1));
  REQUIRE(poles.size() == 2);
  CHECK(poles[0].lambda == Rational(1, 2));
  CHECK(poles[1].lambda == Rational(1));
  CHECK_THROWS_AS(candidate_poles(fan, N, Rational(0)), input_error);
}

TEST_CASE("profile of lambda = 3/2 for x^2 + y^4") {
  Setup s(make({{{2, 0}, 1}, {{0, 4}, 1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(3, 2));
  const CandidatePole& p = pole_at(poles, Rational(3, 2));
  REQUIRE(p.sigma[2].size() == 1);
  const SigmaCone& sc = p.sigma[2][0];
  std::set<IVec> rays;
  for (int id : sc.rayIds) rays.insert(s.fan.rays[id]);
  CHECK(rays == std::set<IVec>{{2, 1}, {1, 1}});
  // nu values 3 (for (2,1)) and 1 (for (1,1)), in the cone's generator order
  for (std::size_t i = 0; i < sc.rayIds.size(); ++i) {
    if (s.fan.rays[sc.rayIds[i]] == IVec{2, 1}) CHECK(sc.nu[i] == 3);
    if (s.fan.rays[sc.rayIds[i]] == IVec{1, 1}) CHECK(sc.nu[i] == 1);
  }
  CHECK(p.maxNonemptyK == 2);
  CHECK(p.kj == 2);
}

TEST_CASE("a lambda off every ladder and not an integer would have kj = 0") {
  Setup s(make({{{2, 0}, 1}, {{0, 4}, 1}}));
  // 7/5 is not in any ladder of x^2 + y^4
  CandidatePole p;
  p.lambda = Rational(7, 5);
  p.index = 99;
  pole_profile(p, s.fan, s.N);
  CHECK(p.maxNonemptyK == 0);
  CHECK(p.kj == 0);
  CHECK(p.contributingRayIds.empty());
}

TEST_CASE("ladder membership invariant for every reported pole") {
  for (auto f : {make({{{3, 0}, 1}, {{0, 2}, -1}}), make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}),
                 make({{{2, 0}, 1}, {{0, 4}, 1}})}) {
    Setup s(std::move(f));
    auto poles = candidate_poles(s.fan, s.N, Rational(3));
    for (const auto& p : poles) {
      for (int id : p.contributingRayIds) {
        long long l = support_min(s.fan.rays[id], s.N);
        long long norm = 0;
        for (long long v : s.fan.rays[id]) norm += v;
        Rational nu = p.lambda * l - norm;
        CHECK(is_integer(nu));
        CHECK(nu >= 0);
      }
      CHECK((p.isInteger ? p.kj == p.maxNonemptyK + 1 : p.kj == p.maxNonemptyK));
    }
  }
}

TEST_CASE("delta regions of the worked example collapse to the origin") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(1, 2));
  const CandidatePole& p = pole_at(poles, Rational(1, 2));
  DeltaRegion region = delta_lattice_points(p, 2, s.fan);
  CHECK(region.latticePoints == std::vector<Exponent>{{0, 0}});
}

TEST_CASE("delta region of x^2 + y^4 at lambda = 3/2, k = 2") {
  Setup s(make({{{2, 0}, 1}, {{0, 4}, 1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(3, 2));
  const CandidatePole& p = pole_at(poles, Rational(3, 2));
  DeltaRegion region = delta_lattice_points(p, 2, s.fan);
  CHECK(region.latticePoints == std::vector<Exponent>{{0, 0}, {0, 1}, {1, 0}});
  CHECK_THROWS_AS(delta_lattice_points(p, 0, s.fan), input_error);
}

TEST_CASE("delta regions are monotone decreasing in k") {
  Setup s(make({{{2, 0}, 1}, {{0, 4}, 1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(5, 2));
  for (const auto& p : poles) {
    for (int k = 1; k + 1 <= p.maxNonemptyK; ++k) {
      if (p.sigma[k].empty() || p.sigma[k + 1].empty()) continue;
      auto big = delta_lattice_points(p, k, s.fan).latticePoints;
      auto small = delta_lattice_points(p, k + 1, s.fan).latticePoints;
      for (const auto& a : small)
        CHECK(std::binary_search(big.begin(), big.end(), a));
    }
  }
}

TEST_CASE("parity certificate marks lambda = 3/2 of x^2 + y^4 as fake") {
  Setup s(make({{{2, 0}, 1}, {{0, 4}, 1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(3, 2));
  const CandidatePole& p = pole_at(poles, Rational(3, 2));
  auto certs = vanishing_certificates(p, {{0, 0}}, s.fan);
  bool killed_from_1 = false;
  for (const auto& c : certs)
    if (c.rule == VanishingRule::ParityMT_i && c.kFrom == 1 && c.kTo == 2 && c.killsAbs)
      killed_from_1 = true;
  CHECK(killed_from_1);
}

TEST_CASE("no vanishing certificate for the true deepest pole of the worked example") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(1, 2));
  const CandidatePole& p = pole_at(poles, Rational(1, 2));
  auto certs = vanishing_certificates(p, {{0, 0}}, s.fan);
  CHECK(certs.empty());
}

TEST_CASE("far-away jet support produces a support certificate") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}));
  auto poles = candidate_poles(s.fan, s.N, Rational(1, 2));
  const CandidatePole& p = pole_at(poles, Rational(1, 2));
  auto certs = vanishing_certificates(p, {{5, 5}}, s.fan);
  bool vt = false, vt2 = false;
  for (const auto& c : certs) {
    if (c.rule == VanishingRule::SupportVT_i && c.kFrom <= 2 && c.killsAbs) vt = true;
    if (c.rule == VanishingRule::SupportVT2_i && c.killsSigned && c.killsOsc) vt2 = true;
  }
  CHECK(vt);
  CHECK(vt2);
}

TEST_CASE("pole lists are deterministic") {
  Setup s(make({{{4, 0}, 1}, {{2, 2}, 1}, {{0, 6}, 1}}));
  auto a = candidate_poles(s.fan, s.N, Rational(2));
  auto b = candidate_poles(s.fan, s.N, Rational(2));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lambda == b[i].lambda);
    CHECK(a[i].kj == b[i].kj);
    CHECK(a[i].contributingRayIds == b[i].contributingRayIds);
  }
}

TEST_CASE("default depth covers the leading poles") {
  Setup s(make({{{3, 0}, 1}, {{0, 2}, -1}}));
  Rational d = default_pole_depth(s.fan, s.N);
  CHECK(d > 1);
}
