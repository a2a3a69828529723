#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "zetascope/plateau.hpp"

namespace zetascope {

struct QuadratureOptions {
  double tol = 1e-8;
  int maxCellsPerBox = 200000;
  double shellWidth = 6.0;
  int maxShells = 700;
};

struct QuadratureResult {
  double value = 0.0;
  double errorEstimate = 0.0;
  long long evaluations = 0;
};

enum class ZetaMode { Abs, Plus, Minus };

/// Integrand data for int w(x) jet(x) chi(|x|) dx evaluated per orthant in
/// log coordinates x_i = eps_i R exp(-u_i). The weight w is either |f|^lambda
/// (with Plus/Minus variants f_+^lambda, f_-^lambda) or a monomial weight
/// prod |x_i|^{e_i} (Abs) / prod x_{i+}^{e_i} (Plus).
class LogOrthantIntegrand {
 public:
  // power weight |f|^lambda
  LogOrthantIntegrand(const SparsePolynomial& f, double lambda, ZetaMode mode,
                      const PlateauTestFunction& phi);
  // monomial weight with exponents e_i; absolute value or positive part
  LogOrthantIntegrand(const std::vector<double>& exps, bool positivePart,
                      const PlateauTestFunction& phi);

  int dim() const { return n_; }
  /// Orthant signs; returns false when the integrand vanishes identically
  /// there (positive-part weights off the positive orthant).
  bool set_orthant(const std::vector<int>& eps);
  /// Variables in which every f- and jet-exponent is even: the two orthant
  /// halves coincide and one of them can stand for both.
  std::vector<bool> even_variables() const;

  double operator()(const double* u) const;

 private:
  struct Term {
    std::vector<double> alpha;
    double logAbsCoef;
    bool negative;
    std::vector<bool> oddExp;
    double sign = 1.0;  // coefficient sign times orthant sign
  };
  static std::vector<Term> prepare(const SparsePolynomial& p);

  int n_;
  bool monomial_;
  double lambda_ = 0.0;
  ZetaMode mode_ = ZetaMode::Abs;
  bool positivePart_ = false;
  std::vector<double> exps_;
  std::vector<Term> fTerms_;
  std::vector<Term> jetTerms_;
  const PlateauTestFunction* phi_;
  double logR_;
  double R_;
  double chiOneBelowU_;  // for all u_i >= this, chi == 1
};

/// Adaptive tensor Gauss-Kronrod 7-15 cubature over a box (dim <= 3).
QuadratureResult integrate_box(const std::function<double(const double*)>& f,
                               const std::vector<double>& lo, const std::vector<double>& hi,
                               double tol, int maxCells);

/// Improper integral of a LogOrthantIntegrand over (0,inf)^n by expanding
/// shells with geometric tail extrapolation. Throws quadrature_error when the
/// shell sums do not contract.
QuadratureResult integrate_orthant_tail(const LogOrthantIntegrand& f, double tol,
                                        const QuadratureOptions& opts);

/// Z_f(phi)(lambda) (or the signed variants) by summing orthant integrals.
QuadratureResult zeta_quadrature_full(const SparsePolynomial& f, const PlateauTestFunction& phi,
                                      double lambda, ZetaMode mode,
                                      const QuadratureOptions& opts);

/// int prod |x_i|^{e_i} (or x_{i+}^{e_i}) phi dx, same machinery.
QuadratureResult monomial_weight_quadrature(const std::vector<double>& exps, bool positivePart,
                                            const PlateauTestFunction& phi,
                                            const QuadratureOptions& opts);

/// Oscillatory integral I_f(phi)(t) = int e^{i t f} phi dx, adaptive complex
/// cubature in the original coordinates.
struct ComplexResult {
  std::complex<double> value;
  double errorEstimate;
};
ComplexResult oscillatory_integral(const SparsePolynomial& f, const PlateauTestFunction& phi,
                                   double t, double tol, int maxCells);

}  // namespace zetascope
