#pragma once

#include <map>
#include <vector>

#include "zetascope/polynomial.hpp"

namespace zetascope {

/// Truncated multivariate power series: terms of total degree <= order.
/// Arithmetic is closed under the truncation.
class TruncatedSeries {
 public:
  TruncatedSeries(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1) throw input_error("series dimension must be >= 1");
    if (order < 0) throw input_error("series order must be >= 0");
  }

  static TruncatedSeries from_polynomial(const SparsePolynomial& p, int order) {
    TruncatedSeries s(p.dim(), order);
    for (const auto& [a, c] : p.terms())
      if (total_degree(a) <= order) s.terms_.emplace(a, c);
    return s;
  }

  static TruncatedSeries one(int dim, int order) {
    TruncatedSeries s(dim, order);
    s.terms_.emplace(Exponent(dim, 0), Rational(1));
    return s;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  Rational coefficient(const Exponent& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponent(dim_, 0)); }

  void add_term(const Exponent& a, const Rational& c) {
    if (total_degree(a) > order_) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
      if (c != 0) terms_.emplace(a, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    TruncatedSeries r = *this;
    for (const auto& [a, c] : o.terms_) r.add_term(a, c);
    return r;
  }

  /// Product truncated at min(order, o.order).
  TruncatedSeries operator*(const TruncatedSeries& o) const {
    if (dim_ != o.dim_) throw input_error("series dimension mismatch");
    TruncatedSeries r(dim_, std::min(order_, o.order_));
    for (const auto& [a, ca] : terms_) {
      int da = total_degree(a);
      if (da > r.order_) continue;
      for (const auto& [b, cb] : o.terms_) {
        if (da + total_degree(b) > r.order_) continue;
        Exponent e(dim_);
        for (int i = 0; i < dim_; ++i) e[i] = a[i] + b[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  TruncatedSeries scaled(const Rational& c) const {
    TruncatedSeries r(dim_, order_);
    if (c == 0) return r;
    for (const auto& [a, ca] : terms_) r.terms_.emplace(a, ca * c);
    return r;
  }

  bool operator==(const TruncatedSeries& o) const {
    return dim_ == o.dim_ && order_ == o.order_ && terms_ == o.terms_;
  }

 private:
  int dim_;
  int order_;
  std::map<Exponent, Rational> terms_;
};

/// (1 + u)^s = sum_{k=0..D} C(s,k) u^k for a series u with u(0) = 0 and a
/// rational exponent s; C(s,k) = s(s-1)...(s-k+1)/k! stays rational.
inline TruncatedSeries binomial_series_pow(const TruncatedSeries& u, const Rational& s, int D) {
  if (u.constant_term() != 0)
    throw input_error("binomial series requires zero constant term");
  TruncatedSeries base(u.dim(), D);
  for (const auto& [a, c] : u.terms())
    base.add_term(a, c);
  TruncatedSeries result = TruncatedSeries::one(u.dim(), D);
  TruncatedSeries upow = TruncatedSeries::one(u.dim(), D);
  Rational binom = 1;
  for (int k = 1; k <= D; ++k) {
    upow = upow * base;
    if (upow.terms().empty()) break;  // u^k exceeded the truncation order
    binom *= (s - (k - 1));
    binom /= k;
    result = result + upow.scaled(binom);
  }
  return result;
}

/// mu! * (coefficient of y^mu): the mixed partial derivative at 0 of the
/// function the series represents. Requires |mu| <= truncation order.
inline Rational jet_derivative_at_zero(const TruncatedSeries& t, const Exponent& mu) {
  if (static_cast<int>(mu.size()) != t.dim())
    throw input_error("derivative multi-index length does not match dimension");
  if (total_degree(mu) > t.order())
    throw precision_error("derivative order exceeds series truncation order " +
                          std::to_string(t.order()));
  Rational c = t.coefficient(mu);
  for (int m : mu) {
    for (int k = 2; k <= m; ++k) c *= k;
  }
  return c;
}

}  // namespace zetascope
