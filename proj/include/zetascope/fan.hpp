#pragma once

#include <vector>

#include "zetascope/newton.hpp"

namespace zetascope {

/// Rational polyhedral fan on R_+^n. Rays are primitive integer vectors.
/// Maximal cones are ray-index tuples; for a smooth fan they are ordered so
/// the generator matrix (rows a^1..a^n) has determinant +1.
struct Fan {
  int dim = 0;
  std::vector<IVec> rays;
  std::vector<std::vector<int>> maxCones;
  bool simplicial = false;
  bool smooth = false;
  std::vector<int> insertedRays;  // ray ids created by the subdivision

  const IVec& ray(int id) const { return rays[id]; }
  IMat generators(const std::vector<int>& cone) const {
    IMat g;
    g.reserve(cone.size());
    for (int id : cone) g.push_back(rays[id]);
    return g;
  }
};

struct SubdivisionOptions {
  int coneBudget = 100000;
};

/// Dual fan of the Newton polyhedron: maximal cones are the vertex normal
/// cones. Rejects non-convenient input (resolution requires convenience).
Fan normal_fan(const NewtonPolyhedron& N, const SparsePolynomial& f);

/// Simplicial refinement with every maximal cone unimodular. Deterministic:
/// pulling triangulation, then stellar subdivision at the parallelepiped
/// lattice point with minimal coordinate sum (lexicographic tie-break).
Fan smooth_subdivision(const Fan& fan0, const SubdivisionOptions& opts = {});

/// Per-chart resolution data for a maximal cone of a smooth fan.
struct ChartData {
  std::vector<int> coneRayIds;  // oriented, det +1
  IMat gens;                    // rows a^1..a^n
  IVec lVec;                    // l(a^i)
  IVec normSums;                // |a^i|
  SparsePolynomial fSigma;
  Rational c0;                  // fSigma(0) != 0
};

ChartData chart_data(const Fan& fan, int maxConeIndex, const SparsePolynomial& f,
                     const NewtonPolyhedron& N);

/// Exact membership of a rational point in a simplicial cone given by rows.
bool cone_contains(const IMat& gens, const std::vector<Rational>& w);

}  // namespace zetascope
