#pragma once

#include <algorithm>
#include <vector>

#include "zetascope/rational.hpp"

namespace zetascope {

/// Exact finite sum  sum_k r_k * b_k^{e_k}  with rational r_k, e_k and
/// rational bases b_k > 0, kept unevaluated so that sums over cones of
/// incommensurable algebraic numbers stay exact. Terms with equal
/// (base, exponent) merge; base 1 (or exponent 0) folds into a plain
/// rational term (base 1, exponent 0).
class AlgebraicScalar {
 public:
  struct Term {
    Rational r;
    Rational base;  // > 0
    Rational expo;
  };

  AlgebraicScalar() = default;

  static AlgebraicScalar from_rational(const Rational& r) {
    AlgebraicScalar a;
    if (r != 0) a.terms_.push_back({r, Rational(1), Rational(0)});
    return a;
  }

  static AlgebraicScalar power_term(const Rational& r, const Rational& base, const Rational& expo) {
    if (base <= 0) throw input_error("algebraic scalar base must be positive");
    AlgebraicScalar a;
    if (r != 0) {
      if (base == 1 || expo == 0)
        a.terms_.push_back({r, Rational(1), Rational(0)});
      else
        a.terms_.push_back({r, base, expo});
    }
    return a;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  AlgebraicScalar operator+(const AlgebraicScalar& o) const {
    AlgebraicScalar r = *this;
    r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
    r.normalize();
    return r;
  }

  AlgebraicScalar operator-(const AlgebraicScalar& o) const {
    return *this + o.scaled(Rational(-1));
  }

  AlgebraicScalar scaled(const Rational& c) const {
    AlgebraicScalar r;
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.r *= c;
    return r;
  }

  bool operator==(const AlgebraicScalar& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (terms_[i].r != o.terms_[i].r || terms_[i].base != o.terms_[i].base ||
          terms_[i].expo != o.terms_[i].expo)
        return false;
    }
    return true;
  }

  /// Evaluation at 128-bit float precision.
  Quad eval_quad() const {
    Quad s = 0;
    for (const auto& t : terms_) {
      Quad b = t.base.convert_to<Quad>();
      Quad e = t.expo.convert_to<Quad>();
      s += t.r.convert_to<Quad>() * boost::multiprecision::pow(b, e);
    }
    return s;
  }

  /// Double value, taken as the rounding of the 128-bit evaluation.
  double float_value() const { return eval_quad().convert_to<double>(); }

 private:
  void normalize() {
    for (auto& t : terms_) {
      if (t.base == 1 || t.expo == 0) {
        t.base = 1;
        t.expo = 0;
      }
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
      if (a.base != b.base) return a.base < b.base;
      return a.expo < b.expo;
    });
    std::vector<Term> merged;
    for (const auto& t : terms_) {
      if (!merged.empty() && merged.back().base == t.base && merged.back().expo == t.expo) {
        merged.back().r += t.r;
      } else {
        merged.push_back(t);
      }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.r == 0; }),
                 merged.end());
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
};

}  // namespace zetascope
