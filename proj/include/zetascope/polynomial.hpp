#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "zetascope/rational.hpp"

namespace zetascope {

/// Exponent vector alpha in Z_+^n. Length is the ambient dimension.
using Exponent = std::vector<int>;

inline int total_degree(const Exponent& a) {
  return std::accumulate(a.begin(), a.end(), 0);
}

template <class V, class W>
long long dot(const V& a, const W& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long long>(a[i]) * static_cast<long long>(b[i]);
  return s;
}

/// Sparse multivariate polynomial over exact rationals.
/// Invariants: no zero coefficients stored, all exponent keys have length dim
/// and non-negative entries.
class SparsePolynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  SparsePolynomial() : dim_(0) {}
  explicit SparsePolynomial(int dim) : dim_(dim) {
    if (dim < 1) throw input_error("polynomial dimension must be >= 1");
  }

  static SparsePolynomial constant(int dim, const Rational& c) {
    SparsePolynomial p(dim);
    p.add_term(Exponent(dim, 0), c);
    return p;
  }

  static SparsePolynomial monomial(int dim, const Exponent& a, const Rational& c) {
    SparsePolynomial p(dim);
    p.add_term(a, c);
    return p;
  }

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const Exponent& a, const Rational& c) {
    check_exponent(a);
    if (c == 0) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
      terms_.emplace(a, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponent& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Support of the polynomial as a sorted list of exponents.
  std::vector<Exponent> support() const {
    std::vector<Exponent> s;
    s.reserve(terms_.size());
    for (const auto& [a, c] : terms_) s.push_back(a);
    return s;
  }

  SparsePolynomial operator+(const SparsePolynomial& o) const {
    check_same_dim(o);
    SparsePolynomial r = *this;
    for (const auto& [a, c] : o.terms_) r.add_term(a, c);
    return r;
  }

  SparsePolynomial operator-(const SparsePolynomial& o) const {
    check_same_dim(o);
    SparsePolynomial r = *this;
    for (const auto& [a, c] : o.terms_) r.add_term(a, -c);
    return r;
  }

  SparsePolynomial operator*(const SparsePolynomial& o) const {
    check_same_dim(o);
    SparsePolynomial r(dim_);
    for (const auto& [a, ca] : terms_) {
      for (const auto& [b, cb] : o.terms_) {
        Exponent e(dim_);
        for (int i = 0; i < dim_; ++i) e[i] = a[i] + b[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  SparsePolynomial scaled(const Rational& c) const {
    SparsePolynomial r(dim_);
    if (c == 0) return r;
    for (const auto& [a, ca] : terms_) r.terms_.emplace(a, ca * c);
    return r;
  }

  /// Formal partial derivative with respect to variable i (0-based).
  SparsePolynomial derivative(int i) const {
    SparsePolynomial r(dim_);
    for (const auto& [a, c] : terms_) {
      if (a[i] == 0) continue;
      Exponent e = a;
      e[i] -= 1;
      r.add_term(e, c * a[i]);
    }
    return r;
  }

  double eval(const std::vector<double>& x) const {
    double s = 0.0;
    for (const auto& [a, c] : terms_) {
      double t = to_double(c);
      for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < a[i]; ++k) t *= x[i];
      }
      s += t;
    }
    return s;
  }

  Rational eval_exact(const std::vector<Rational>& x) const {
    Rational s = 0;
    for (const auto& [a, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < dim_; ++i) {
        for (int k = 0; k < a[i]; ++k) t *= x[i];
      }
      s += t;
    }
    return s;
  }

  bool operator==(const SparsePolynomial& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }

 private:
  void check_exponent(const Exponent& a) const {
    if (static_cast<int>(a.size()) != dim_)
      throw input_error("exponent length " + std::to_string(a.size()) +
                        " does not match dimension " + std::to_string(dim_));
    for (int v : a)
      if (v < 0) throw input_error("negative exponent entry");
  }
  void check_same_dim(const SparsePolynomial& o) const {
    if (dim_ != o.dim_) throw input_error("polynomial dimension mismatch");
  }

  int dim_;
  TermMap terms_;
};

/// Substitutes x_j -> prod_i y_i^{A[i][j]}, sending the term x^alpha to
/// y^{A alpha}. A must be n x n with non-negative entries.
inline SparsePolynomial monomial_pullback(const SparsePolynomial& p,
                                          const std::vector<std::vector<long long>>& A) {
  const int n = p.dim();
  if (static_cast<int>(A.size()) != n)
    throw input_error("pullback matrix row count does not match dimension");
  for (const auto& row : A) {
    if (static_cast<int>(row.size()) != n)
      throw input_error("pullback matrix is not square");
    for (long long v : row)
      if (v < 0) throw input_error("pullback matrix has a negative entry");
  }
  SparsePolynomial r(n);
  for (const auto& [a, c] : p.terms()) {
    Exponent e(n, 0);
    for (int i = 0; i < n; ++i) {
      long long s = 0;
      for (int j = 0; j < n; ++j) s += A[i][j] * a[j];
      e[i] = static_cast<int>(s);
    }
    r.add_term(e, c);
  }
  return r;
}

}  // namespace zetascope
