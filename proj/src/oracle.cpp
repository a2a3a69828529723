#include "zetascope/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "zetascope/parallel.hpp"

namespace zetascope {

namespace {

// min ||A x - b|| by Householder QR; columns are pre-scaled to unit RMS by
// the caller. condOut receives max|R_ii|/min|R_ii|.
std::vector<double> qr_solve(std::vector<std::vector<double>> cols, std::vector<double> b,
                             double* condOut, double* residOut) {
  const int m = static_cast<int>(b.size());
  const int k = static_cast<int>(cols.size());
  if (m < k) throw input_error("least squares needs at least as many samples as parameters");
  std::vector<long double> R(static_cast<std::size_t>(k) * k, 0.0L);
  std::vector<std::vector<long double>> A(k);
  for (int j = 0; j < k; ++j) A[j] = std::vector<long double>(cols[j].begin(), cols[j].end());
  std::vector<long double> rhs(b.begin(), b.end());

  for (int j = 0; j < k; ++j) {
    long double norm2 = 0;
    for (int i = j; i < m; ++i) norm2 += A[j][i] * A[j][i];
    long double alpha = std::sqrt((double)norm2);
    if (A[j][j] > 0) alpha = -alpha;
    long double v0 = A[j][j] - alpha;
    std::vector<long double> v(m, 0.0L);
    v[j] = v0;
    for (int i = j + 1; i < m; ++i) v[i] = A[j][i];
    long double vnorm2 = v0 * v0;
    for (int i = j + 1; i < m; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 > 0) {
      for (int c = j; c < k; ++c) {
        long double dot = 0;
        for (int i = j; i < m; ++i) dot += v[i] * A[c][i];
        long double f = 2.0L * dot / vnorm2;
        for (int i = j; i < m; ++i) A[c][i] -= f * v[i];
      }
      long double dot = 0;
      for (int i = j; i < m; ++i) dot += v[i] * rhs[i];
      long double f = 2.0L * dot / vnorm2;
      for (int i = j; i < m; ++i) rhs[i] -= f * v[i];
    }
    for (int c = j; c < k; ++c) R[j * k + c] = A[c][j];
  }
  long double rmax = 0, rmin = std::numeric_limits<long double>::infinity();
  for (int j = 0; j < k; ++j) {
    long double d = std::fabs((double)R[j * k + j]);
    rmax = std::max(rmax, d);
    rmin = std::min(rmin, d);
  }
  if (condOut) *condOut = rmin > 0 ? static_cast<double>(rmax / rmin) : 1e300;
  std::vector<double> x(k, 0.0);
  for (int j = k - 1; j >= 0; --j) {
    long double s = rhs[j];
    for (int c = j + 1; c < k; ++c) s -= R[j * k + c] * x[c];
    x[j] = R[j * k + j] != 0 ? static_cast<double>(s / R[j * k + j]) : 0.0;
  }
  if (residOut) {
    long double r2 = 0;
    for (int i = k; i < m; ++i) r2 += rhs[i] * rhs[i];
    *residOut = std::sqrt(static_cast<double>(r2) / std::max(1, m - k));
  }
  return x;
}

double cheb(int m, double s) {
  if (m == 0) return 1.0;
  double t0 = 1.0, t1 = s;
  for (int i = 1; i < m; ++i) {
    double t2 = 2 * s * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

std::vector<double> default_offsets(int samples, double tMin, double tMax) {
  std::vector<double> t(samples);
  for (int i = 0; i < samples; ++i)
    t[i] = tMin * std::pow(tMax / tMin, samples == 1 ? 0.0 : i / (samples - 1.0));
  return t;
}

std::vector<double> sample_all(const ZetaSampler& Z, const std::vector<double>& lams) {
  std::vector<double> out(lams.size());
  parallel_for_ordered(static_cast<int>(lams.size()), [&](int i) { out[i] = Z(lams[i]); });
  return out;
}

}  // namespace

Rational residue_1d(const Rational& l, const Rational& m, int r,
                    const std::vector<Rational>& jetCoeffs, Side side) {
  if (r <= 0) throw input_error("residue index r must be a positive integer");
  if (l <= 0) throw input_error("l must be positive");
  if (m < 0) throw input_error("m must be non-negative");
  // <delta^{(r-1)}, phi> = (-1)^{r-1} phi^{(r-1)}(0); the + side pairs with
  // (-1)^{r-1} delta^{(r-1)}, cancelling the sign.
  Rational der = r - 1 < static_cast<int>(jetCoeffs.size()) ? jetCoeffs[r - 1] : Rational(0);
  for (int i = 2; i <= r - 1; ++i) der *= i;  // phi^{(r-1)}(0)
  Rational fact = 1;
  for (int i = 2; i <= r - 1; ++i) fact *= i;
  Rational res = der / (fact * l);
  if (side == Side::Minus && (r - 1) % 2 != 0) res = -res;
  return res;
}

Rational monomial_laurent_deepest(const MonomialWeightSpec& spec, const Rational& lambdaJ,
                                  const SparsePolynomial& jet) {
  const int n = static_cast<int>(spec.lVec.size());
  if (static_cast<int>(spec.mVec.size()) != n || jet.dim() != n)
    throw input_error("monomial weight spec dimensions disagree");
  Exponent nu(n);
  for (int i = 0; i < n; ++i) {
    if (spec.lVec[i] <= 0 || spec.mVec[i] < 0)
      throw input_error("monomial weight needs l_i > 0 and m_i >= 0");
    Rational v = lambdaJ * spec.lVec[i] - spec.mVec[i] - 1;
    if (v < 0 || !is_integer(v))
      throw not_applicable("axis " + std::to_string(i + 1) +
                           " does not reach lambda_j: nu_i is not a non-negative integer");
    nu[i] = static_cast<int>(integer_part(v).convert_to<long long>());
  }
  // d^nu phi(0) = nu! c_nu; the factor prod 1/(l_i nu_i!) cancels nu!.
  Rational out = jet.coefficient(nu);
  for (int i = 0; i < n; ++i) {
    out /= spec.lVec[i];
    if (spec.kind == MonomialWeightSpec::Kind::Absolute) out *= (nu[i] % 2 == 0 ? 2 : 0);
  }
  return out;
}

double zeta_quadrature(const SparsePolynomial& f, const PlateauTestFunction& phi, double lambda,
                       ZetaMode mode, const QuadratureOptions& opts) {
  return zeta_quadrature_full(f, phi, lambda, mode, opts).value;
}

LaurentFitResult laurent_fit_sampled(const ZetaSampler& Z, double lambdaJ, int kMax,
                                     std::vector<double> offsets,
                                     std::vector<PoleModel> knownPoles, const FitOptions& opts) {
  if (kMax < 1) throw input_error("kMax must be at least 1");
  std::sort(knownPoles.begin(), knownPoles.end(),
            [](const PoleModel& a, const PoleModel& b) { return a.lambda < b.lambda; });
  const double lambda1 = knownPoles.empty() ? lambdaJ : knownPoles.front().lambda;
  LaurentFitResult out;

  if (lambdaJ <= lambda1 + 1e-12) {
    // leading pole: direct fit of sum a_k t^{-k} + c_0 + c_1 t, with the
    // singular parts of deeper known poles as lightly penalized extra columns
    // so their curvature does not leak into the target coefficients
    if (offsets.empty()) offsets = default_offsets(opts.samples, opts.tMin, opts.tMax);
    std::vector<double> lams(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) lams[i] = -lambdaJ + offsets[i];
    std::vector<double> vals = sample_all(Z, lams);
    const int m = static_cast<int>(offsets.size());
    std::vector<std::vector<double>> cols;
    std::vector<bool> penalized;
    for (int k = 1; k <= kMax; ++k) {
      std::vector<double> c(m);
      for (int i = 0; i < m; ++i) c[i] = std::pow(offsets[i], -k);
      cols.push_back(std::move(c));
      penalized.push_back(false);
    }
    for (int d = 0; d <= opts.analyticDegree; ++d) {
      std::vector<double> c(m);
      for (int i = 0; i < m; ++i) c[i] = std::pow(offsets[i], d);
      cols.push_back(std::move(c));
      penalized.push_back(false);
    }
    int nbCols = 0;
    for (const auto& p : knownPoles) {
      if (std::fabs(p.lambda - lambdaJ) < 1e-12) continue;
      for (int k = 1; k <= p.maxOrder; ++k) {
        std::vector<double> c(m);
        for (int i = 0; i < m; ++i) c[i] = std::pow(offsets[i] + (p.lambda - lambdaJ), -k);
        cols.push_back(std::move(c));
        penalized.push_back(true);
        ++nbCols;
      }
    }
    const int kAll = static_cast<int>(cols.size());
    std::vector<double> scale(kAll);
    for (int j = 0; j < kAll; ++j) {
      double s2 = 0;
      for (double v : cols[j]) s2 += v * v;
      scale[j] = std::sqrt(s2 / m);
      for (double& v : cols[j]) v /= scale[j];
    }
    std::vector<double> rhs = vals;
    if (nbCols > 0) {
      rhs.resize(m + kAll, 0.0);
      for (int j = 0; j < kAll; ++j) {
        cols[j].resize(m + kAll, 0.0);
        if (penalized[j]) cols[j][m + j] = opts.ladderPenalty;
      }
    }
    double cond = 0, resid = 0;
    std::vector<double> x = qr_solve(cols, rhs, &cond, &resid);
    for (int j = 0; j < kAll; ++j) x[j] /= scale[j];
    out.singular.assign(x.begin(), x.begin() + kMax);
    out.analytic.assign(x.begin() + kMax, x.begin() + kMax + opts.analyticDegree + 1);
    out.offsets = offsets;
    out.condition = cond;
    out.residualRms = resid;
    out.illConditioned = cond > 1e12;
    return out;
  }

  // deeper pole: simultaneous ladder fit inside the convergent strip with a
  // penalty that keeps singular content out of the regular part
  out.deflated = true;
  double span = lambda1 - opts.stripMargin;
  if (span <= opts.tMin)
    throw input_error("convergent strip too narrow to fit a deeper pole");
  std::vector<double> t = default_offsets(opts.ladderSamples, opts.tMin, span);
  std::vector<double> lams(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) lams[i] = -lambda1 + t[i];
  std::vector<double> vals = sample_all(Z, lams);
  const int m = static_cast<int>(lams.size());

  bool targetKnown = false;
  for (auto& p : knownPoles) {
    if (std::fabs(p.lambda - lambdaJ) < 1e-12) {
      p.maxOrder = std::max(p.maxOrder, kMax);
      targetKnown = true;
    }
  }
  if (!targetKnown) knownPoles.push_back({lambdaJ, kMax});

  double lamLo = lams.front(), lamHi = lams.back();
  double center = 0.5 * (lamLo + lamHi), half = 0.5 * (lamHi - lamLo);
  std::vector<std::vector<double>> cols;
  std::vector<bool> isPole;
  std::vector<std::pair<double, int>> poleOf;
  for (const auto& p : knownPoles) {
    for (int k = 1; k <= p.maxOrder; ++k) {
      std::vector<double> c(m);
      for (int i = 0; i < m; ++i) c[i] = std::pow(lams[i] + p.lambda, -k);
      cols.push_back(std::move(c));
      isPole.push_back(true);
      poleOf.push_back({p.lambda, k});
    }
  }
  for (int d = 0; d <= opts.ladderDegree; ++d) {
    std::vector<double> c(m);
    for (int i = 0; i < m; ++i) c[i] = cheb(d, (lams[i] - center) / half);
    cols.push_back(std::move(c));
    isPole.push_back(false);
    poleOf.push_back({0.0, 0});
  }
  const int k = static_cast<int>(cols.size());
  std::vector<double> scale(k);
  for (int j = 0; j < k; ++j) {
    double s2 = 0;
    for (double v : cols[j]) s2 += v * v;
    scale[j] = std::sqrt(s2 / m);
    for (double& v : cols[j]) v /= scale[j];
  }
  // penalty rows: mu on singular columns only
  std::vector<double> rhs = vals;
  rhs.resize(m + k, 0.0);
  for (int j = 0; j < k; ++j) {
    cols[j].resize(m + k, 0.0);
    if (isPole[j]) cols[j][m + j] = opts.ladderPenalty;
  }
  double cond = 0, resid = 0;
  std::vector<double> x = qr_solve(cols, rhs, &cond, &resid);
  for (int j = 0; j < k; ++j) x[j] /= scale[j];

  out.singular.assign(kMax, 0.0);
  for (int j = 0; j < k; ++j) {
    if (isPole[j] && std::fabs(poleOf[j].first - lambdaJ) < 1e-12 && poleOf[j].second <= kMax)
      out.singular[poleOf[j].second - 1] = x[j];
  }
  for (int j = 0; j < k; ++j)
    if (!isPole[j]) out.analytic.push_back(x[j]);
  out.offsets = t;
  out.condition = cond;
  out.residualRms = resid;
  out.illConditioned = cond > 1e12;
  return out;
}

LaurentFitResult laurent_fit(const SparsePolynomial& f, const PlateauTestFunction& phi,
                             const Rational& lambdaJ, int kMax, std::vector<double> offsets,
                             const std::vector<PoleModel>& knownPoles, const FitOptions& opts) {
  ZetaSampler Z = [&f, &phi, &opts](double lambda) {
    return zeta_quadrature(f, phi, lambda, ZetaMode::Abs, opts.quad);
  };
  return laurent_fit_sampled(Z, to_double(lambdaJ), kMax, std::move(offsets), knownPoles, opts);
}

LaurentFitResult laurent_fit_monomial(const MonomialWeightSpec& spec,
                                      const PlateauTestFunction& phi, const Rational& lambdaJ,
                                      int kMax, std::vector<double> offsets,
                                      const std::vector<PoleModel>& knownPoles,
                                      const FitOptions& opts) {
  const int n = static_cast<int>(spec.lVec.size());
  std::vector<double> l(n), mm(n);
  for (int i = 0; i < n; ++i) {
    l[i] = to_double(spec.lVec[i]);
    mm[i] = to_double(spec.mVec[i]);
  }
  bool positive = spec.kind == MonomialWeightSpec::Kind::PlusOnly;
  ZetaSampler Z = [l, mm, positive, &phi, &opts](double lambda) {
    std::vector<double> exps(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) exps[i] = l[i] * lambda + mm[i];
    return monomial_weight_quadrature(exps, positive, phi, opts.quad).value;
  };
  return laurent_fit_sampled(Z, to_double(lambdaJ), kMax, std::move(offsets), knownPoles, opts);
}

OscFitResult oscillatory_fit(const SparsePolynomial& f, const PlateauTestFunction& phi,
                             const std::vector<double>& tGrid, const Rational& lambdaJ, int kj,
                             const FitOptions& opts) {
  if (tGrid.size() < 3) throw input_error("oscillatory fit needs at least three t samples");
  const double lam = to_double(lambdaJ);
  const int m = static_cast<int>(tGrid.size());
  std::vector<std::complex<double>> vals(m);
  parallel_for_ordered(m, [&](int i) {
    vals[i] =
        oscillatory_integral(f, phi, tGrid[i], opts.quad.tol, opts.quad.maxCellsPerBox).value;
  });
  // model: c t^{-lam} (log t)^{kj-1} + d t^{-lam} (log t)^{kj-2}
  std::vector<std::vector<double>> cols(2, std::vector<double>(m));
  for (int i = 0; i < m; ++i) {
    double lt = std::log(tGrid[i]);
    double base = std::pow(tGrid[i], -lam);
    cols[0][i] = base * std::pow(lt, kj - 1);
    cols[1][i] = base * std::pow(lt, kj - 2);
  }
  std::vector<double> scale(2);
  for (int j = 0; j < 2; ++j) {
    double s2 = 0;
    for (double v : cols[j]) s2 += v * v;
    scale[j] = std::sqrt(s2 / m);
    for (double& v : cols[j]) v /= scale[j];
  }
  std::vector<double> re(m), im(m);
  for (int i = 0; i < m; ++i) {
    re[i] = vals[i].real();
    im[i] = vals[i].imag();
  }
  double condR, residR, condI, residI;
  std::vector<double> xr = qr_solve(cols, re, &condR, &residR);
  std::vector<double> xi = qr_solve(cols, im, &condI, &residI);
  OscFitResult out;
  out.leading = {xr[0] / scale[0], xi[0] / scale[0]};
  double mag = std::abs(out.leading);
  out.relResidual = mag > 0 ? std::hypot(residR, residI) / mag : std::hypot(residR, residI);
  out.tGrid = tGrid;
  return out;
}

}  // namespace zetascope
