#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "zetascope/algebraic.hpp"
#include "zetascope/poles.hpp"
#include "zetascope/series.hpp"

namespace zetascope {

/// mu(sigma, alpha)_i = nu_i - <a^i, alpha>; negative entries kill the term.
IVec mu_vector(const IVec& nu, const IMat& gens, const Exponent& alpha);

/// Taylor data of |f_sigma|^{-lambda} at 0: a rational series times the
/// symbolic unit |c0|^{-lambda}.
struct PowerJet {
  TruncatedSeries series;
  AlgebraicScalar unit;
};
PowerJet f_sigma_power_jet(const ChartData& cd, const Rational& lambda, int D);

/// Sign quadrants of a chart: Q_+- = {eps : +-f_sigma(0) prod eps_i^{l_i} > 0}
/// and the nu-weighted counts c_+- with c_+ + c_- = prod(1 + (-1)^{nu_i}).
struct SignProfile {
  std::vector<std::vector<int>> qPlus, qMinus;
  long long cPlus = 0, cMinus = 0;
};
SignProfile sign_counts(const ChartData& cd, const IVec& nu);

/// Charts for every cone of Sigma_j^{(n)}, keyed by oriented ray-id tuple.
using ChartMap = std::map<std::vector<int>, ChartData>;
ChartMap charts_for_pole(const CandidatePole& pole, const Fan& fan, const SparsePolynomial& f,
                         const NewtonPolyhedron& N);

/// a_{j,n}(phi), exact. Requires k_j = n and lambda_j not an odd integer.
AlgebraicScalar deepest_coefficient_abs(const CandidatePole& pole, const Fan& fan,
                                        const ChartMap& charts, const SparsePolynomial& jet);

/// b^{+-}_{j,n}(phi), exact; equal to a^{+-}_{j,n}(phi) when lambda_j is not
/// an integer. Requires k_j = n.
std::pair<AlgebraicScalar, AlgebraicScalar> deepest_coefficient_signed(
    const CandidatePole& pole, const Fan& fan, const ChartMap& charts,
    const SparsePolynomial& jet);

/// Gamma(lambda_j)/(n-1)! (e^{i pi lambda/2} b+ + e^{-i pi lambda/2} b-).
std::complex<double> oscillating_leading(const Rational& lambda, int n,
                                         const AlgebraicScalar& bPlus,
                                         const AlgebraicScalar& bMinus);

/// Bundled deepest-pole data with applicability flags.
struct DeepestCoefficients {
  int poleIndex = 0;
  bool applicable = false;          // k_j = n
  std::string reason;               // set when not applicable
  bool absValid = false;            // THA hypothesis: lambda not an odd integer
  bool signedValid = false;         // THB hypothesis: lambda not an integer
  bool oscIntegerCaveat = false;    // c_osc reported for integer lambda
  AlgebraicScalar a, aPlus, aMinus, bPlus, bMinus;
  std::complex<double> cOsc{0.0, 0.0};
};
DeepestCoefficients compute_deepest(const CandidatePole& pole, const Fan& fan,
                                    const SparsePolynomial& f, const NewtonPolyhedron& N,
                                    const SparsePolynomial& jet);

}  // namespace zetascope
