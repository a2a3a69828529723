#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetascope/newton.hpp"

namespace zetascope {

enum class NdStatus { Proven, ProbablyNondegenerate, Degenerate };

struct FaceCheckDetail {
  int faceId;
  std::string method;  // "vertex", "edge-sturm", "randomized"
  bool degenerate;
};

struct NondegeneracyVerdict {
  NdStatus status = NdStatus::Proven;
  int trials = 0;
  std::vector<double> witness;  // nonempty iff Degenerate; all coordinates nonzero
  int witnessFaceId = -1;
  std::vector<FaceCheckDetail> detail;
};

/// Checks that no gamma-part has a real critical zero on the torus.
/// n <= 2: exact decision (vertices vacuous, edges by Sturm on the
/// quasi-homogeneous reduction). n >= 3: seeded randomized search.
NondegeneracyVerdict check_nondegenerate(const SparsePolynomial& f, const NewtonPolyhedron& N,
                                         int trials, unsigned seed);

/// Best-effort scan for a critical zero of f itself on 0 < |x| < r; a finding
/// only warns (the isolated-singularity hypothesis is a documented
/// precondition, not verified exactly).
std::optional<std::vector<double>> isolated_singularity_scan(const SparsePolynomial& f, double r,
                                                             unsigned seed);

}  // namespace zetascope
