#pragma once

#include <complex>
#include <functional>

#include "zetascope/quadrature.hpp"

namespace zetascope {

enum class Side { Plus, Minus };

/// Residue of the one-dimensional continuation of x_{+-}^{l lambda + m} at
/// lambda = -(m+r)/l. jetCoeffs[k] is the Taylor coefficient phi^{(k)}(0)/k!.
Rational residue_1d(const Rational& l, const Rational& m, int r,
                    const std::vector<Rational>& jetCoeffs, Side side);

/// Monomial-weight continuation data.
struct MonomialWeightSpec {
  std::vector<Rational> lVec;  // l_i > 0
  std::vector<Rational> mVec;  // m_i >= 0
  enum class Kind { PlusOnly, Absolute } kind = Kind::Absolute;
};

/// Deepest Laurent coefficient of the monomial-weight continuation when
/// every axis participates (k_j = n): the closed form in l_i, nu_i and the
/// jet derivative. Throws not_applicable when some nu_i fails to be a
/// non-negative integer.
Rational monomial_laurent_deepest(const MonomialWeightSpec& spec, const Rational& lambdaJ,
                                  const SparsePolynomial& jet);

/// Z_f(phi)(lambda) for real lambda inside the convergence window.
double zeta_quadrature(const SparsePolynomial& f, const PlateauTestFunction& phi, double lambda,
                       ZetaMode mode, const QuadratureOptions& opts = {});

struct PoleModel {
  double lambda = 0.0;  // candidate at -lambda
  int maxOrder = 1;
};

struct FitOptions {
  QuadratureOptions quad{};
  int samples = 24;           // direct-fit grid size
  int analyticDegree = 1;     // direct-fit regular part c_0 + c_1 t
  double tMin = 0.02;
  double tMax = 0.2;
  int ladderSamples = 48;     // strip grid for deflated deep-pole fits
  int ladderDegree = 12;      // Chebyshev degree of the ladder regular part
  double ladderPenalty = 1e-3;  // Tikhonov weight on singular columns
  double stripMargin = 0.02;  // distance kept from the first pole
};

struct LaurentFitResult {
  std::vector<double> singular;  // singular[k-1] multiplies (lambda+lambda_j)^{-k}
  std::vector<double> analytic;
  std::vector<double> offsets;   // sampled offsets from the expansion point
  double residualRms = 0.0;
  double condition = 0.0;
  bool illConditioned = false;
  bool deflated = false;  // deep-pole ladder path
};

using ZetaSampler = std::function<double(double lambda)>;

/// Least-squares Laurent data at lambda = -lambdaJ from samples of Z.
/// Leading pole (lambdaJ <= every known pole): direct fit of
/// sum a_k t^{-k} + c_0 + c_1 t on offsets in [tMin, tMax]. Deeper lambdaJ:
/// samples stay inside the convergent strip; earlier poles are deflated by a
/// simultaneous ladder fit whose singular columns carry a small penalty, so
/// pole content appears only where the data demands it.
LaurentFitResult laurent_fit_sampled(const ZetaSampler& Z, double lambdaJ, int kMax,
                                     std::vector<double> offsets,
                                     std::vector<PoleModel> knownPoles, const FitOptions& opts);

LaurentFitResult laurent_fit(const SparsePolynomial& f, const PlateauTestFunction& phi,
                             const Rational& lambdaJ, int kMax, std::vector<double> offsets,
                             const std::vector<PoleModel>& knownPoles, const FitOptions& opts);

/// Same fit against the monomial-weight integrand (H for Absolute, G for
/// PlusOnly).
LaurentFitResult laurent_fit_monomial(const MonomialWeightSpec& spec,
                                      const PlateauTestFunction& phi, const Rational& lambdaJ,
                                      int kMax, std::vector<double> offsets,
                                      const std::vector<PoleModel>& knownPoles,
                                      const FitOptions& opts);

struct OscFitResult {
  std::complex<double> leading;
  double relResidual = 0.0;
  std::vector<double> tGrid;
};

/// Fits I_f(phi)(t) = c t^{-lambda_j} (log t)^{k_j - 1} (1 + d / log t) over
/// the given t grid and returns c.
OscFitResult oscillatory_fit(const SparsePolynomial& f, const PlateauTestFunction& phi,
                             const std::vector<double>& tGrid, const Rational& lambdaJ, int kj,
                             const FitOptions& opts);

}  // namespace zetascope
