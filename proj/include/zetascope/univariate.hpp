#pragma once

#include <vector>

#include "zetascope/rational.hpp"

namespace zetascope {

/// Dense univariate polynomial over Q; coeffs[i] multiplies w^i. Trimmed.
using UniPoly = std::vector<Rational>;

inline void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int uni_degree(const UniPoly& p) { return static_cast<int>(p.size()) - 1; }

inline UniPoly uni_derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<int>(i));
  uni_trim(d);
  return d;
}

inline Rational uni_eval(const UniPoly& p, const Rational& x) {
  Rational s = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + *it;
  return s;
}

inline double uni_eval(const UniPoly& p, double x) {
  double s = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * x + to_double(*it);
  return s;
}

/// Remainder of a by b (b nonzero).
inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
  uni_trim(a);
  while (uni_degree(a) >= uni_degree(b) && !a.empty()) {
    Rational f = a.back() / b.back();
    int shift = uni_degree(a) - uni_degree(b);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    uni_trim(a);
  }
  return a;
}

/// Monic gcd over Q.
inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    UniPoly r = uni_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

/// Sturm chain of a squarefree-or-not polynomial.
inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  UniPoly a = p;
  uni_trim(a);
  if (a.empty()) return chain;
  chain.push_back(a);
  UniPoly b = uni_derivative(a);
  while (!b.empty()) {
    chain.push_back(b);
    UniPoly r = uni_rem(chain[chain.size() - 2], b);
    for (auto& c : r) c = -c;
    uni_trim(r);
    b = std::move(r);
  }
  return chain;
}

inline int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline int sturm_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int v = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_of(uni_eval(p, x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

/// Number of distinct real roots in (a, b].
inline int uni_roots_in(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
  return sturm_variations(chain, a) - sturm_variations(chain, b);
}

/// A bound B with all real roots in (-B, B).
inline Rational uni_root_bound(const UniPoly& p) {
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    Rational a = p[i] / p.back();
    if (a < 0) a = -a;
    if (a > m) m = a;
  }
  return m + 1;
}

/// True when p has a real root different from 0.
inline bool uni_has_nonzero_real_root(UniPoly p) {
  uni_trim(p);
  std::size_t k = 0;
  while (k < p.size() && p[k] == 0) ++k;
  p.erase(p.begin(), p.begin() + k);  // strip roots at 0
  if (uni_degree(p) < 1) return false;
  auto chain = sturm_chain(p);
  Rational B = uni_root_bound(p);
  return uni_roots_in(chain, -B, B) > 0;
}

/// One real root of p (nonzero if possible), isolated by Sturm bisection to
/// the given width. Requires a nonzero real root to exist.
inline Rational uni_isolate_nonzero_root(UniPoly p, const Rational& width) {
  uni_trim(p);
  std::size_t k = 0;
  while (k < p.size() && p[k] == 0) ++k;
  p.erase(p.begin(), p.begin() + k);
  auto chain = sturm_chain(p);
  Rational B = uni_root_bound(p);
  Rational lo = -B, hi = B;
  if (uni_roots_in(chain, -B, B) <= 0)
    throw internal_error("root isolation called without a real root");
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (uni_eval(p, mid) == 0) {
      // exact hit: nudge the bracket onto the root
      if (mid != 0) return mid;
      // root exactly at 0 was stripped; fall through on a half with a root
    }
    if (uni_roots_in(chain, lo, mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace zetascope
