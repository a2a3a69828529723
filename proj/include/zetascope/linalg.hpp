#pragma once

#include <vector>

#include "zetascope/rational.hpp"

namespace zetascope {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;

inline long long gcd_ll(long long a, long long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Divides by the gcd of the entries; flips sign so the first nonzero is > 0
/// when requested.
inline IVec primitive(IVec v, bool canonical_sign = false) {
  long long g = 0;
  for (long long x : v) g = gcd_ll(g, x);
  if (g > 1)
    for (long long& x : v) x /= g;
  if (canonical_sign) {
    for (long long x : v) {
      if (x > 0) break;
      if (x < 0) {
        for (long long& y : v) y = -y;
        break;
      }
    }
  }
  return v;
}

/// Exact determinant (Bareiss fraction-free elimination).
inline BigInt determinant(const IMat& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return n == 0 ? BigInt(1) : sign * a[n - 1][n - 1];
}

/// Rank of an integer matrix (rows of equal length), exact.
inline int rank(const IMat& m) {
  if (m.empty()) return 0;
  std::vector<std::vector<Rational>> a(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    a[i] = std::vector<Rational>(m[i].begin(), m[i].end());
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[r], a[p]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

/// Solves A x = b exactly over the rationals. Returns false if A is singular.
inline bool solve_rational(const IMat& A, const std::vector<Rational>& b,
                           std::vector<Rational>& x) {
  const int n = static_cast<int>(A.size());
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = A[i][j];
    a[i][n] = b[i];
  }
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (a[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) return false;
    std::swap(a[c], a[p]);
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (int j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  x.assign(n, Rational(0));
  for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return true;
}

/// One primitive integer kernel vector of a rank n-1 system (rows * x = 0),
/// computed by rational elimination and denominator clearing. Rows must have
/// length n and rank exactly n-1.
inline bool kernel_vector(const IMat& rows, int n, IVec& out) {
  std::vector<std::vector<Rational>> a(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    a[i] = std::vector<Rational>(rows[i].begin(), rows[i].end());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < static_cast<int>(a.size()); ++c) {
    int p = -1;
    for (std::size_t i = r; i < a.size(); ++i)
      if (a[i][c] != 0) {
        p = static_cast<int>(i);
        break;
      }
    if (p < 0) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (static_cast<int>(i) == r || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[r][c];
      for (int j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r != n - 1) return false;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = -1;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) {
      free_col = c;
      break;
    }
  std::vector<Rational> x(n, Rational(0));
  x[free_col] = 1;
  for (int i = r - 1; i >= 0; --i) {
    Rational s = a[i][free_col];
    x[pivot_col[i]] = -s / a[i][pivot_col[i]];
  }
  BigInt lcm = 1;
  for (const auto& q : x) {
    BigInt d = boost::multiprecision::denominator(q);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  IVec v(n);
  for (int c = 0; c < n; ++c) {
    Rational q = x[c] * Rational(lcm);
    v[c] = boost::multiprecision::numerator(q).convert_to<long long>();
  }
  out = primitive(std::move(v), true);
  return true;
}

}  // namespace zetascope
