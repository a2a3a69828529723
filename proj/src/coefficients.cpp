#include "zetascope/coefficients.hpp"

#include <cmath>

namespace zetascope {

namespace {

Rational factorial(long long k) {
  Rational f = 1;
  for (long long i = 2; i <= k; ++i) f *= i;
  return f;
}

// Truncation order: the largest total derivative order requested by any
// alpha in Delta with all mu_i >= 0.
int series_order_for(const SigmaCone& sc, const IMat& gens,
                     const std::vector<Exponent>& deltaPoints) {
  long long D = 0;
  for (const auto& alpha : deltaPoints) {
    IVec mu = mu_vector(sc.nu, gens, alpha);
    long long total = 0;
    bool ok = true;
    for (long long m : mu) {
      if (m < 0) {
        ok = false;
        break;
      }
      total += m;
    }
    if (ok) D = std::max(D, total);
  }
  return static_cast<int>(D);
}

}  // namespace

IVec mu_vector(const IVec& nu, const IMat& gens, const Exponent& alpha) {
  IVec mu(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) mu[i] = nu[i] - dot(gens[i], alpha);
  return mu;
}

PowerJet f_sigma_power_jet(const ChartData& cd, const Rational& lambda, int D) {
  const int n = cd.fSigma.dim();
  if (cd.c0 == 0) throw internal_error("chart unit factor vanishes at the origin");
  // |f_sigma| = |c0| (1 + u) near 0 with u = (f_sigma - c0)/c0, 1 + u > 0.
  TruncatedSeries u(n, D);
  for (const auto& [a, c] : cd.fSigma.terms()) {
    if (total_degree(a) == 0) continue;
    u.add_term(a, c / cd.c0);
  }
  PowerJet out{binomial_series_pow(u, -lambda, D),
               AlgebraicScalar::power_term(Rational(1), boost::multiprecision::abs(cd.c0),
                                           -lambda)};
  return out;
}

SignProfile sign_counts(const ChartData& cd, const IVec& nu) {
  const int n = static_cast<int>(cd.lVec.size());
  if (n > 20) throw input_error("sign enumeration limited to 20 variables");
  if (cd.c0 == 0) throw internal_error("sign profile of a chart with c0 = 0");
  SignProfile sp;
  const int s0 = cd.c0 > 0 ? 1 : -1;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> eps(n);
    int sign_l = 1, sign_nu = 1;
    for (int i = 0; i < n; ++i) {
      eps[i] = (mask & (1u << i)) ? -1 : 1;
      if (eps[i] < 0 && cd.lVec[i] % 2 != 0) sign_l = -sign_l;
      if (eps[i] < 0 && nu[i] % 2 != 0) sign_nu = -sign_nu;
    }
    if (s0 * sign_l > 0) {
      sp.qPlus.push_back(eps);
      sp.cPlus += sign_nu;
    } else {
      sp.qMinus.push_back(eps);
      sp.cMinus += sign_nu;
    }
  }
  return sp;
}

ChartMap charts_for_pole(const CandidatePole& pole, const Fan& fan, const SparsePolynomial& f,
                         const NewtonPolyhedron& N) {
  ChartMap charts;
  const int n = fan.dim;
  if (n >= static_cast<int>(pole.sigma.size())) return charts;
  for (const auto& sc : pole.sigma[n]) {
    for (std::size_t i = 0; i < fan.maxCones.size(); ++i) {
      if (fan.maxCones[i] == sc.rayIds) {
        charts.emplace(sc.rayIds, chart_data(fan, static_cast<int>(i), f, N));
        break;
      }
    }
  }
  return charts;
}

AlgebraicScalar deepest_coefficient_abs(const CandidatePole& pole, const Fan& fan,
                                        const ChartMap& charts, const SparsePolynomial& jet) {
  const int n = fan.dim;
  if (pole.kj != n)
    throw not_applicable("deepest coefficient requires k_j = n, got k_j = " +
                         std::to_string(pole.kj));
  if (pole.isInteger && boost::multiprecision::numerator(pole.lambda) % 2 != 0)
    throw not_applicable("deepest coefficient requires lambda_j not an odd integer");

  DeltaRegion region = delta_lattice_points(pole, n, fan);
  AlgebraicScalar acc;
  for (const auto& sc : pole.sigma[n]) {
    bool all_even = true;
    for (long long v : sc.nu)
      if (v % 2 != 0) all_even = false;
    if (!all_even) continue;  // the parity factor 1 + (-1)^{nu_i} vanishes
    const ChartData& cd = charts.at(sc.rayIds);
    int D = series_order_for(sc, cd.gens, region.latticePoints);
    PowerJet pj = f_sigma_power_jet(cd, pole.lambda, D);
    for (const auto& alpha : region.latticePoints) {
      Rational calpha = jet.coefficient(alpha);
      if (calpha == 0) continue;
      IVec mu = mu_vector(sc.nu, cd.gens, alpha);
      bool ok = true;
      for (long long m : mu)
        if (m < 0) ok = false;
      if (!ok) continue;
      Rational factor = calpha;
      for (int i = 0; i < n; ++i) factor *= Rational(2) / (Rational(cd.lVec[i]) * factorial(mu[i]));
      Exponent muExp(mu.begin(), mu.end());
      Rational deriv = jet_derivative_at_zero(pj.series, muExp);
      acc = acc + pj.unit.scaled(factor * deriv);
    }
  }
  return acc;
}

std::pair<AlgebraicScalar, AlgebraicScalar> deepest_coefficient_signed(
    const CandidatePole& pole, const Fan& fan, const ChartMap& charts,
    const SparsePolynomial& jet) {
  const int n = fan.dim;
  if (pole.kj != n)
    throw not_applicable("signed deepest coefficient requires k_j = n, got k_j = " +
                         std::to_string(pole.kj));
  DeltaRegion region = delta_lattice_points(pole, n, fan);
  AlgebraicScalar plus, minus;
  for (const auto& sc : pole.sigma[n]) {
    const ChartData& cd = charts.at(sc.rayIds);
    SignProfile sp = sign_counts(cd, sc.nu);
    if (sp.cPlus == 0 && sp.cMinus == 0) continue;
    int D = series_order_for(sc, cd.gens, region.latticePoints);
    PowerJet pj = f_sigma_power_jet(cd, pole.lambda, D);
    for (const auto& alpha : region.latticePoints) {
      Rational calpha = jet.coefficient(alpha);
      if (calpha == 0) continue;
      IVec mu = mu_vector(sc.nu, cd.gens, alpha);
      bool ok = true;
      for (long long m : mu)
        if (m < 0) ok = false;
      if (!ok) continue;
      Rational factor = calpha;
      for (int i = 0; i < n; ++i) factor *= Rational(1) / (Rational(cd.lVec[i]) * factorial(mu[i]));
      Exponent muExp(mu.begin(), mu.end());
      Rational deriv = jet_derivative_at_zero(pj.series, muExp);
      plus = plus + pj.unit.scaled(factor * deriv * sp.cPlus);
      minus = minus + pj.unit.scaled(factor * deriv * sp.cMinus);
    }
  }
  return {plus, minus};
}

std::complex<double> oscillating_leading(const Rational& lambda, int n,
                                         const AlgebraicScalar& bPlus,
                                         const AlgebraicScalar& bMinus) {
  double lam = to_double(lambda);
  double gamma = std::tgamma(lam);
  double fact = 1.0;
  for (int k = 2; k <= n - 1; ++k) fact *= k;
  double bp = bPlus.float_value(), bm = bMinus.float_value();
  double phase = M_PI * lam / 2.0;
  double re = gamma / fact * std::cos(phase) * (bp + bm);
  double im = gamma / fact * std::sin(phase) * (bp - bm);
  return {re, im};
}

DeepestCoefficients compute_deepest(const CandidatePole& pole, const Fan& fan,
                                    const SparsePolynomial& f, const NewtonPolyhedron& N,
                                    const SparsePolynomial& jet) {
  DeepestCoefficients out;
  out.poleIndex = pole.index;
  const int n = fan.dim;
  if (pole.kj != n) {
    out.applicable = false;
    out.reason = "k_j = " + std::to_string(pole.kj) + " differs from n = " + std::to_string(n);
    return out;
  }
  out.applicable = true;
  ChartMap charts = charts_for_pole(pole, fan, f, N);
  const bool oddInteger =
      pole.isInteger && boost::multiprecision::numerator(pole.lambda) % 2 != 0;
  out.absValid = !oddInteger;
  if (out.absValid) out.a = deepest_coefficient_abs(pole, fan, charts, jet);
  auto [bp, bm] = deepest_coefficient_signed(pole, fan, charts, jet);
  out.bPlus = bp;
  out.bMinus = bm;
  out.signedValid = !pole.isInteger;
  if (out.signedValid) {
    out.aPlus = bp;
    out.aMinus = bm;
  }
  out.oscIntegerCaveat = pole.isInteger;
  out.cOsc = oscillating_leading(pole.lambda, n, bp, bm);
  return out;
}

}  // namespace zetascope
