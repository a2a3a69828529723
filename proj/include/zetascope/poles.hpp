#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zetascope/fan.hpp"

namespace zetascope {

/// A cone of Sigma_j^{(k)}: every generator a^i has l(a^i) > 0 and
/// lambda_j * l(a^i) - |a^i| = nu_i in Z_+.
struct SigmaCone {
  std::vector<int> rayIds;  // k = rayIds.size(); for k = n the oriented order
  IVec nu;
};

struct CandidatePole {
  Rational lambda;  // the candidate is -lambda
  int index = 0;    // 1-based, increasing lambda
  bool isInteger = false;
  bool fromIntegerLadder = false;
  std::vector<int> contributingRayIds;         // rays a with lambda in K(a)
  std::vector<std::vector<SigmaCone>> sigma;   // sigma[k] = Sigma_j^{(k)}, k = 0..n
  int maxNonemptyK = 0;                        // max k with Sigma_j^{(k)} nonempty
  int kj = 0;                                  // order bound (integer case adds 1)
};

struct DeltaRegion {
  int poleIndex = 0;
  int k = 0;
  std::vector<SigmaCone> cones;          // the defining systems
  std::vector<Exponent> latticePoints;   // sorted union of integer points
};

enum class VanishingRule {
  ParityMT_i,
  ParityMT_ii,
  SupportVT_i,
  SupportVT_ii,
  SupportVT2_i,
  SupportVT2_ii,
};

std::string rule_name(VanishingRule rule);

/// Machine-checkable certificate: coefficients in the range kFrom..kTo of the
/// listed families vanish by the named rule.
struct VanishingCertificate {
  int poleIndex = 0;
  VanishingRule rule;
  int kFrom = 0;
  int kTo = 0;
  bool killsAbs = false;     // a_{j,k}
  bool killsSigned = false;  // a^{+-}_{j,k}
  bool killsOsc = false;     // c_{j,k}
  // evidence: per-cone odd nu positions for parity rules
  std::vector<std::pair<std::vector<int>, int>> oddNuWitness;  // (rayIds, odd index i)
  // evidence: verified empty intersection for support rules
  std::vector<Exponent> deltaPoints;
};

/// All candidate poles -lambda with lambda <= lambdaMax, profiles filled,
/// sorted by decreasing -lambda (increasing lambda).
std::vector<CandidatePole> candidate_poles(const Fan& fan, const NewtonPolyhedron& N,
                                           const Rational& lambdaMax);

/// Fills sigma tables, nu vectors, contributing rays and the order bound of a
/// pole with only lambda set.
void pole_profile(CandidatePole& pole, const Fan& fan, const NewtonPolyhedron& N);

DeltaRegion delta_lattice_points(const CandidatePole& pole, int k, const Fan& fan);

std::vector<VanishingCertificate> vanishing_certificates(const CandidatePole& pole,
                                                         const std::vector<Exponent>& jetSupport,
                                                         const Fan& fan);

/// Default enumeration depth: 2 * max over strictly positive rays of (|a|+n)/l.
Rational default_pole_depth(const Fan& fan, const NewtonPolyhedron& N);

}  // namespace zetascope
