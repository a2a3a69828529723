#pragma once

#include <optional>
#include <vector>

#include "zetascope/linalg.hpp"
#include "zetascope/polynomial.hpp"

namespace zetascope {

/// Supporting halfspace <a, x> >= offset with primitive inner normal a >= 0.
struct Facet {
  IVec normal;
  long long offset;
};

/// A compact face, recorded through its vertices and its full active facet set.
struct CompactFace {
  int dim;
  std::vector<int> vertexIds;
  std::vector<int> facetIds;
};

/// Newton polyhedron conv(support(f) + R_+^n): vertices, facets with inner
/// normals, and the lattice of compact faces.
struct NewtonPolyhedron {
  int dim = 0;
  std::vector<Exponent> vertices;
  std::vector<Facet> facets;
  std::vector<CompactFace> compactFaces;
  std::vector<Exponent> support;  // support of f, sorted
};

NewtonPolyhedron newton_polyhedron(const SparsePolynomial& f);

/// The gamma-part: sub-sum of f supported on the given compact face.
SparsePolynomial gamma_part(const SparsePolynomial& f, const NewtonPolyhedron& N, int faceId);

/// min over the polyhedron of <a, .>, attained at a vertex since a >= 0.
long long support_min(const IVec& a, const NewtonPolyhedron& N);

struct ConvenienceResult {
  bool convenient = false;
  std::vector<std::optional<Exponent>> axisWitness;  // per axis
  std::vector<int> failingAxes;
};

/// f is convenient when the support contains a pure power of every variable.
ConvenienceResult is_convenient(const SparsePolynomial& f);

}  // namespace zetascope
