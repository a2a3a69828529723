#include "zetascope/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace zetascope {

namespace {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15 constants).
constexpr double kGK[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule15 {
  double node[15];
  double wk[15];
  double wg[15];  // zero off Gauss nodes
};

const Rule15& rule15() {
  static const Rule15 r = [] {
    Rule15 r{};
    for (int i = 0; i < 7; ++i) {
      r.node[i] = -kGK[i];
      r.node[14 - i] = kGK[i];
      r.wk[i] = r.wk[14 - i] = kWK[i];
    }
    r.node[7] = 0.0;
    r.wk[7] = kWK[7];
    for (int i = 0; i < 15; ++i) r.wg[i] = 0.0;
    r.wg[1] = r.wg[13] = kWG[0];
    r.wg[3] = r.wg[11] = kWG[1];
    r.wg[5] = r.wg[9] = kWG[2];
    r.wg[7] = kWG[3];
    return r;
  }();
  return r;
}

template <class V>
double vnorm(const V& v) {
  if constexpr (std::is_same_v<V, double>)
    return std::fabs(v);
  else
    return std::abs(v);
}

template <class V, class F>
void eval_cell(const F& f, const std::vector<double>& lo, const std::vector<double>& hi, V& valueK,
               double& err, double axisErr[3], long long& evals) {
  const Rule15& r = rule15();
  const int d = static_cast<int>(lo.size());
  double half[3], mid[3];
  double scale = 1.0;
  for (int i = 0; i < d; ++i) {
    half[i] = 0.5 * (hi[i] - lo[i]);
    mid[i] = 0.5 * (hi[i] + lo[i]);
    scale *= half[i];
  }
  V sumK{}, sumG{};
  V mixed[3] = {V{}, V{}, V{}};  // Gauss along one axis, Kronrod along the rest
  int idx[3] = {0, 0, 0};
  double x[3];
  const long long total = d == 1 ? 15 : (d == 2 ? 225 : 3375);
  for (long long it = 0; it < total; ++it) {
    long long t = it;
    double wK = 1.0, wG = 1.0;
    for (int i = 0; i < d; ++i) {
      idx[i] = static_cast<int>(t % 15);
      t /= 15;
      x[i] = mid[i] + half[i] * r.node[idx[i]];
      wK *= r.wk[idx[i]];
      wG *= r.wg[idx[i]];
    }
    V v = f(x);
    sumK += v * wK;
    if (wG != 0.0) sumG += v * wG;
    for (int i = 0; i < d; ++i) {
      double wgi = r.wg[idx[i]];
      if (wgi != 0.0) mixed[i] += v * (wK / r.wk[idx[i]] * wgi);
    }
  }
  evals += total;
  valueK = sumK * scale;
  err = vnorm(V(sumK - sumG)) * scale;
  for (int i = 0; i < d; ++i) axisErr[i] = vnorm(V(sumK - mixed[i])) * scale;
}

template <class V>
struct AdaptiveOutcome {
  V value{};
  double err = 0.0;
  long long evals = 0;
};

template <class V, class F>
AdaptiveOutcome<V> integrate_box_impl(const F& f, std::vector<double> lo0,
                                      std::vector<double> hi0, double tol, int maxCells) {
  struct Cell {
    std::vector<double> lo, hi;
    V value;
    double err;
    double axisErr[3];
    long long id;
  };
  std::vector<Cell> done;
  auto cmp = [](const Cell& a, const Cell& b) {
    if (a.err != b.err) return a.err < b.err;
    return a.id > b.id;
  };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> heap(cmp);
  long long evals = 0, nextId = 0;
  Cell root{std::move(lo0), std::move(hi0), V{}, 0.0, {0, 0, 0}, nextId++};
  eval_cell<V>(f, root.lo, root.hi, root.value, root.err, root.axisErr, evals);
  heap.push(std::move(root));
  double errSum = heap.top().err;
  int cells = 1;
  while (errSum > tol && cells < maxCells && !heap.empty()) {
    Cell c = heap.top();
    heap.pop();
    if (c.err <= 0.0) {
      done.push_back(std::move(c));
      continue;
    }
    errSum -= c.err;
    // split along the axis with the largest one-axis rule disagreement;
    // fall back to the widest axis when the indicator is flat
    int axis = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < c.lo.size(); ++i)
      if (c.axisErr[i] > best) {
        best = c.axisErr[i];
        axis = static_cast<int>(i);
      }
    if (best <= 0.0) {
      double w = -1.0;
      for (std::size_t i = 0; i < c.lo.size(); ++i)
        if (c.hi[i] - c.lo[i] > w) {
          w = c.hi[i] - c.lo[i];
          axis = static_cast<int>(i);
        }
    }
    double cut = 0.5 * (c.lo[axis] + c.hi[axis]);
    for (int side = 0; side < 2; ++side) {
      Cell child;
      child.lo = c.lo;
      child.hi = c.hi;
      (side == 0 ? child.hi : child.lo)[axis] = cut;
      child.id = nextId++;
      eval_cell<V>(f, child.lo, child.hi, child.value, child.err, child.axisErr, evals);
      errSum += child.err;
      heap.push(std::move(child));
    }
    ++cells;
  }
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(), [](const Cell& a, const Cell& b) { return a.id < b.id; });
  AdaptiveOutcome<V> out;
  double err = 0.0;
  V acc{};
  for (const auto& c : done) {
    acc += c.value;
    err += c.err;
  }
  out.value = acc;
  out.err = err;
  out.evals = evals;
  return out;
}

std::vector<std::pair<std::vector<double>, std::vector<double>>> shell_boxes(double b, double a,
                                                                             int n) {
  std::vector<std::pair<std::vector<double>, std::vector<double>>> boxes;
  if (b == 0.0) {
    boxes.push_back({std::vector<double>(n, 0.0), std::vector<double>(n, a)});
    return boxes;
  }
  if (n == 1) {
    boxes.push_back({{b}, {a}});
  } else if (n == 2) {
    boxes.push_back({{b, 0}, {a, a}});
    boxes.push_back({{0, b}, {b, a}});
  } else {
    boxes.push_back({{b, 0, 0}, {a, a, a}});
    boxes.push_back({{0, b, 0}, {b, a, a}});
    boxes.push_back({{0, 0, b}, {b, b, a}});
  }
  return boxes;
}

}  // namespace

LogOrthantIntegrand::LogOrthantIntegrand(const SparsePolynomial& f, double lambda, ZetaMode mode,
                                         const PlateauTestFunction& phi)
    : n_(f.dim()),
      monomial_(false),
      lambda_(lambda),
      mode_(mode),
      fTerms_(prepare(f)),
      jetTerms_(prepare(phi.jet)),
      phi_(&phi),
      logR_(std::log(phi.outer())),
      R_(phi.outer()) {
  if (n_ > 3) throw input_error("quadrature supports up to three variables");
  if (fTerms_.size() > 32 || jetTerms_.size() > 32)
    throw input_error("quadrature integrands are limited to 32 terms");
  chiOneBelowU_ = std::log(R_ * std::sqrt(static_cast<double>(n_)) / phi.inner());
}

LogOrthantIntegrand::LogOrthantIntegrand(const std::vector<double>& exps, bool positivePart,
                                         const PlateauTestFunction& phi)
    : n_(static_cast<int>(exps.size())),
      monomial_(true),
      positivePart_(positivePart),
      exps_(exps),
      jetTerms_(prepare(phi.jet)),
      phi_(&phi),
      logR_(std::log(phi.outer())),
      R_(phi.outer()) {
  if (n_ > 3) throw input_error("quadrature supports up to three variables");
  if (phi.jet.dim() != n_) throw input_error("jet dimension does not match the weight");
  if (jetTerms_.size() > 32) throw input_error("quadrature integrands are limited to 32 terms");
  chiOneBelowU_ = std::log(R_ * std::sqrt(static_cast<double>(n_)) / phi.inner());
}

std::vector<LogOrthantIntegrand::Term> LogOrthantIntegrand::prepare(const SparsePolynomial& p) {
  std::vector<Term> out;
  for (const auto& [a, c] : p.terms()) {
    Term t;
    t.alpha.assign(a.begin(), a.end());
    t.logAbsCoef = std::log(std::fabs(to_double(c)));
    t.negative = c < 0;
    for (int e : a) t.oddExp.push_back(e % 2 != 0);
    out.push_back(std::move(t));
  }
  return out;
}

bool LogOrthantIntegrand::set_orthant(const std::vector<int>& eps) {
  if (static_cast<int>(eps.size()) != n_) throw input_error("orthant sign length mismatch");
  if (monomial_ && positivePart_) {
    for (int e : eps)
      if (e < 0) return false;
  }
  auto apply = [&](std::vector<Term>& terms) {
    for (auto& t : terms) {
      double s = t.negative ? -1.0 : 1.0;
      for (int i = 0; i < n_; ++i)
        if (t.oddExp[i] && eps[i] < 0) s = -s;
      t.sign = s;
    }
  };
  apply(fTerms_);
  apply(jetTerms_);
  return true;
}

std::vector<bool> LogOrthantIntegrand::even_variables() const {
  std::vector<bool> even(n_, true);
  for (const auto& t : jetTerms_)
    for (int i = 0; i < n_; ++i)
      if (t.oddExp[i]) even[i] = false;
  if (!monomial_) {
    for (const auto& t : fTerms_)
      for (int i = 0; i < n_; ++i)
        if (t.oddExp[i]) even[i] = false;
  } else if (positivePart_) {
    even.assign(n_, false);
  }
  return even;
}

double LogOrthantIntegrand::operator()(const double* u) const {
  // |x|/R and the cutoff
  double s2 = 0.0;
  double minU = u[0];
  for (int i = 0; i < n_; ++i) {
    double e = std::exp(-u[i]);
    s2 += e * e;
    minU = std::min(minU, u[i]);
  }
  double chi = 1.0;
  if (minU < chiOneBelowU_) {
    double radius = R_ * std::sqrt(s2);
    if (radius >= phi_->outer()) return 0.0;
    chi = phi_->chi(radius);
    if (chi == 0.0) return 0.0;
  }

  double E;
  if (monomial_) {
    E = 0.0;
    for (int i = 0; i < n_; ++i) E += exps_[i] * (logR_ - u[i]);
  } else {
    double M = -std::numeric_limits<double>::infinity();
    double L[32];
    int nt = static_cast<int>(fTerms_.size());
    for (int t = 0; t < nt; ++t) {
      const Term& term = fTerms_[t];
      double l = term.logAbsCoef;
      for (int i = 0; i < n_; ++i) l += term.alpha[i] * (logR_ - u[i]);
      L[t] = l;
      if (l > M) M = l;
    }
    double S = 0.0;
    for (int t = 0; t < nt; ++t) S += fTerms_[t].sign * std::exp(L[t] - M);
    if (mode_ == ZetaMode::Plus && S <= 0.0) return 0.0;
    if (mode_ == ZetaMode::Minus && S >= 0.0) return 0.0;
    if (S == 0.0) return 0.0;
    E = lambda_ * (M + std::log(std::fabs(S)));
  }

  // jet in the same stable form
  double Mj = -std::numeric_limits<double>::infinity();
  double Lj[32];
  int njt = static_cast<int>(jetTerms_.size());
  if (njt == 0) return 0.0;
  for (int t = 0; t < njt; ++t) {
    const Term& term = jetTerms_[t];
    double l = term.logAbsCoef;
    for (int i = 0; i < n_; ++i) l += term.alpha[i] * (logR_ - u[i]);
    Lj[t] = l;
    if (l > Mj) Mj = l;
  }
  double Sj = 0.0;
  for (int t = 0; t < njt; ++t) Sj += jetTerms_[t].sign * std::exp(Lj[t] - Mj);
  if (Sj == 0.0) return 0.0;

  E += Mj + std::log(std::fabs(Sj));
  for (int i = 0; i < n_; ++i) E += logR_ - u[i];  // Jacobian prod R e^{-u_i}
  if (E > 700.0) E = 700.0;
  double v = std::exp(E);
  return (Sj < 0.0 ? -v : v) * chi;
}

QuadratureResult integrate_box(const std::function<double(const double*)>& f,
                               const std::vector<double>& lo, const std::vector<double>& hi,
                               double tol, int maxCells) {
  auto out = integrate_box_impl<double>(f, lo, hi, tol, maxCells);
  return {out.value, out.err, out.evals};
}

QuadratureResult integrate_orthant_tail(const LogOrthantIntegrand& f, double tol,
                                        const QuadratureOptions& opts) {
  const int n = f.dim();
  auto call = [&f](const double* u) { return f(u); };
  QuadratureResult total;
  double W = opts.shellWidth;
  double U = 0.0;
  double prevAbs = -1.0, prevW = 0.0, ratio = -1.0, prevRatio = -1.0;
  int zeroRun = 0;
  const int minShells = 4;
  for (int k = 0; k < opts.maxShells; ++k) {
    double tolK = 0.25 * tol / ((k + 1.0) * (k + 2.0));
    auto boxes = shell_boxes(U, U + W, n);
    double Sk = 0.0;
    for (const auto& [lo, hi] : boxes) {
      auto r = integrate_box_impl<double>(call, lo, hi, tolK / boxes.size(), opts.maxCellsPerBox);
      Sk += r.value;
      total.errorEstimate += r.err;
      total.evaluations += r.evals;
    }
    total.value += Sk;
    U += W;
    double a = std::fabs(Sk);
    if (a == 0.0) {
      ++zeroRun;
      if (k >= minShells && zeroRun >= 3) return total;  // support exhausted
      prevAbs = -1.0;
      ratio = prevRatio = -1.0;
      continue;
    }
    zeroRun = 0;
    // ratios are meaningful only between equal-width shells
    if (prevAbs > 0.0 && prevW == W) {
      prevRatio = ratio;
      ratio = a / prevAbs;
    } else {
      ratio = prevRatio = -1.0;
    }
    prevAbs = a;
    prevW = W;
    if (k >= minShells && ratio > 0.0) {
      double rho = std::max(ratio, prevRatio > 0 ? prevRatio : ratio);
      if (rho < 0.995) {
        double tail = a * rho / (1.0 - rho);
        if (tail < 0.5 * tol) {
          total.value += (Sk < 0 ? -tail : tail);
          total.errorEstimate += tail;
          return total;
        }
      }
      // slow contraction per shell: widen subsequent shells
      if (ratio > 0.45 && W < 512.0) W *= 2.0;
    }
  }
  throw quadrature_error("shell sums did not contract to the requested tolerance",
                         total.errorEstimate + (prevAbs > 0 ? prevAbs * 100 : 0.0));
}

namespace {

QuadratureResult orthant_sum(LogOrthantIntegrand& g, double tol, const QuadratureOptions& opts) {
  const int n = g.dim();
  std::vector<bool> even = g.even_variables();
  std::vector<int> freeVars;
  long long mult = 1;
  for (int i = 0; i < n; ++i) {
    if (even[i])
      mult *= 2;
    else
      freeVars.push_back(i);
  }
  const int nf = static_cast<int>(freeVars.size());
  long long orthants = 1LL << nf;
  QuadratureResult total;
  double tolEach = tol / static_cast<double>(orthants * mult);
  for (long long mask = 0; mask < orthants; ++mask) {
    std::vector<int> eps(n, 1);
    for (int i = 0; i < nf; ++i)
      if (mask & (1LL << i)) eps[freeVars[i]] = -1;
    if (!g.set_orthant(eps)) continue;
    QuadratureResult r = integrate_orthant_tail(g, tolEach, opts);
    total.value += mult * r.value;
    total.errorEstimate += mult * r.errorEstimate;
    total.evaluations += r.evaluations;
  }
  return total;
}

}  // namespace

QuadratureResult zeta_quadrature_full(const SparsePolynomial& f, const PlateauTestFunction& phi,
                                      double lambda, ZetaMode mode,
                                      const QuadratureOptions& opts) {
  if (phi.jet.is_zero()) return {0.0, 0.0, 0};
  LogOrthantIntegrand g(f, lambda, mode, phi);
  QuadratureResult r = orthant_sum(g, opts.tol, opts);
  if (r.errorEstimate > opts.tol)
    throw quadrature_error("quadrature did not reach the requested tolerance", r.errorEstimate);
  return r;
}

QuadratureResult monomial_weight_quadrature(const std::vector<double>& exps, bool positivePart,
                                            const PlateauTestFunction& phi,
                                            const QuadratureOptions& opts) {
  if (phi.jet.is_zero()) return {0.0, 0.0, 0};
  LogOrthantIntegrand g(exps, positivePart, phi);
  QuadratureResult r = orthant_sum(g, opts.tol, opts);
  if (r.errorEstimate > opts.tol)
    throw quadrature_error("quadrature did not reach the requested tolerance", r.errorEstimate);
  return r;
}

ComplexResult oscillatory_integral(const SparsePolynomial& f, const PlateauTestFunction& phi,
                                   double t, double tol, int maxCells) {
  const int n = f.dim();
  if (n > 3) throw input_error("oscillatory quadrature supports up to three variables");
  double R = phi.outer();
  std::vector<double> lo(n, -R), hi(n, R);
  auto g = [&](const double* x) -> std::complex<double> {
    std::vector<double> xv(x, x + n);
    double p = phi.eval(xv);
    if (p == 0.0) return {0.0, 0.0};
    double ph = t * f.eval(xv);
    return {p * std::cos(ph), p * std::sin(ph)};
  };
  auto out = integrate_box_impl<std::complex<double>>(g, lo, hi, tol, maxCells);
  if (out.err > tol)
    throw quadrature_error("oscillatory quadrature did not resolve the phase", out.err);
  return {out.value, out.err};
}

}  // namespace zetascope
