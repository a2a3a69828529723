#include "zetascope/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace zetascope {

namespace {

// Extreme rays of the H-cone {a : rows * a >= 0 componentwise}: a primitive r
// is extreme when some rank n-1 subset of rows vanishes on it and all rows are
// non-negative on it.
std::vector<IVec> extreme_rays(const IMat& rows, int n) {
  if (n == 1) return {IVec{1}};
  std::set<IVec> out;
  const int m = static_cast<int>(rows.size());
  std::vector<int> stack;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(stack.size()) == n - 1) {
      IMat sub;
      for (int s : stack) sub.push_back(rows[s]);
      IVec r;
      if (!kernel_vector(sub, n, r)) return;
      for (int sign = 0; sign < 2; ++sign) {
        bool ok = true;
        for (const auto& row : rows)
          if (dot(row, r) < 0) {
            ok = false;
            break;
          }
        if (ok) {
          out.insert(r);
          break;
        }
        for (long long& v : r) v = -v;
      }
      return;
    }
    for (int i = start; i < m; ++i) {
      stack.push_back(i);
      rec(i + 1);
      stack.pop_back();
    }
  };
  rec(0);
  return {out.begin(), out.end()};
}

// Facets of a rank-d cone spanned by the given rays: subsets supported by a
// functional vanishing on them, strictly one-signed on the rest, nonzero on
// the span.
struct ConeFacet {
  std::vector<int> rayIdx;  // positions into the ray list
};

std::vector<ConeFacet> cone_facets(const std::vector<IVec>& rays, int d) {
  const int m = static_cast<int>(rays.size());
  const int n = static_cast<int>(rays[0].size());
  std::set<std::vector<int>> seen;
  std::vector<ConeFacet> out;
  std::vector<int> stack;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(stack.size()) == d - 1) {
      IMat sub;
      for (int s : stack) sub.push_back(rays[s]);
      if (rank(sub) != d - 1) return;
      // functional h in span(rays), vanishing on sub: express h = B^T beta
      // with B a basis of the span, <h, s> = 0.
      IMat basis;
      for (const auto& r : rays) {
        IMat test = basis;
        test.push_back(r);
        if (rank(test) > static_cast<int>(basis.size())) basis = std::move(test);
        if (static_cast<int>(basis.size()) == d) break;
      }
      // rows of M: for each s in sub, the vector of <s, b_j>
      IMat M;
      for (const auto& s : sub) {
        IVec row(d);
        for (int j = 0; j < d; ++j) row[j] = dot(s, basis[j]);
        M.push_back(std::move(row));
      }
      IVec beta;
      if (!kernel_vector(M, d, beta)) return;
      std::vector<long long> h(n, 0);
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < n; ++k) h[k] += beta[j] * basis[j][k];
      int pos = 0, neg = 0;
      std::vector<int> active;
      for (int i = 0; i < m; ++i) {
        long long v = dot(h, rays[i]);
        if (v > 0)
          ++pos;
        else if (v < 0)
          ++neg;
        else
          active.push_back(i);
      }
      if (pos > 0 && neg > 0) return;
      IMat act;
      for (int i : active) act.push_back(rays[i]);
      if (rank(act) != d - 1) return;
      if (seen.insert(active).second) out.push_back({active});
      return;
    }
    for (int i = start; i < m; ++i) {
      stack.push_back(i);
      rec(i + 1);
      stack.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(),
            [](const ConeFacet& a, const ConeFacet& b) { return a.rayIdx < b.rayIdx; });
  return out;
}

// Pulling triangulation of a rank-d cone, recursing through facets that miss
// the lexicographically smallest ray.
void triangulate(const std::vector<IVec>& rays, int d, std::vector<std::vector<IVec>>& out) {
  if (static_cast<int>(rays.size()) == d) {
    out.push_back(rays);
    return;
  }
  int pull = 0;
  for (int i = 1; i < static_cast<int>(rays.size()); ++i)
    if (rays[i] < rays[pull]) pull = i;
  for (const auto& facet : cone_facets(rays, d)) {
    bool has_pull = false;
    for (int i : facet.rayIdx)
      if (i == pull) {
        has_pull = true;
        break;
      }
    if (has_pull) continue;
    std::vector<IVec> frays;
    for (int i : facet.rayIdx) frays.push_back(rays[i]);
    std::vector<std::vector<IVec>> sub;
    triangulate(frays, d - 1, sub);
    for (auto& s : sub) {
      s.push_back(rays[pull]);
      out.push_back(std::move(s));
    }
  }
}

long long abs_det(const IMat& m) {
  BigInt d = determinant(m);
  if (d < 0) d = -d;
  return d.convert_to<long long>();
}

}  // namespace

bool cone_contains(const IMat& gens, const std::vector<Rational>& w) {
  const int n = static_cast<int>(w.size());
  IMat M(n, IVec(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int k = 0; k < n; ++k) M[k][i] = gens[i][k];
  if (gens.size() == static_cast<std::size_t>(n)) {
    std::vector<Rational> t;
    if (!solve_rational(M, w, t)) return false;
    for (const auto& c : t)
      if (c < 0) return false;
    return true;
  }
  throw internal_error("membership for non-simplicial cones is not supported here");
}

Fan normal_fan(const NewtonPolyhedron& N, const SparsePolynomial& f) {
  ConvenienceResult conv = is_convenient(f);
  if (!conv.convenient) {
    std::string axes;
    for (int i : conv.failingAxes) axes += (axes.empty() ? "" : ",") + std::to_string(i + 1);
    throw input_error("polynomial is not convenient: no pure power of variable(s) " + axes);
  }
  const int n = N.dim;
  Fan fan;
  fan.dim = n;

  std::vector<std::vector<IVec>> vertexCones;
  for (const auto& v : N.vertices) {
    IMat rows;
    for (const auto& w : N.vertices) {
      if (w == v) continue;
      IVec d(n);
      for (int k = 0; k < n; ++k) d[k] = w[k] - v[k];
      rows.push_back(std::move(d));
    }
    for (int i = 0; i < n; ++i) {
      IVec e(n, 0);
      e[i] = 1;
      rows.push_back(std::move(e));
    }
    vertexCones.push_back(extreme_rays(rows, n));
  }

  std::set<IVec> raySet;
  for (const auto& cone : vertexCones)
    for (const auto& r : cone) raySet.insert(r);
  fan.rays.assign(raySet.begin(), raySet.end());
  if (n == 2) {
    std::sort(fan.rays.begin(), fan.rays.end(), [](const IVec& a, const IVec& b) {
      return a[0] * b[1] - a[1] * b[0] > 0;  // circular order from (1,0) to (0,1)
    });
  }
  auto ray_id = [&](const IVec& r) {
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
      if (fan.rays[i] == r) return static_cast<int>(i);
    throw internal_error("ray lookup failed");
  };
  for (const auto& cone : vertexCones) {
    std::vector<int> ids;
    for (const auto& r : cone) ids.push_back(ray_id(r));
    std::sort(ids.begin(), ids.end());
    fan.maxCones.push_back(std::move(ids));
  }
  std::sort(fan.maxCones.begin(), fan.maxCones.end());
  fan.maxCones.erase(std::unique(fan.maxCones.begin(), fan.maxCones.end()), fan.maxCones.end());
  fan.simplicial = true;
  for (const auto& c : fan.maxCones)
    if (static_cast<int>(c.size()) != n) fan.simplicial = false;
  fan.smooth = false;
  return fan;
}

Fan smooth_subdivision(const Fan& fan0, const SubdivisionOptions& opts) {
  const int n = fan0.dim;
  Fan fan;
  fan.dim = n;
  fan.rays = fan0.rays;

  auto ray_id = [&](const IVec& r) {
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
      if (fan.rays[i] == r) return static_cast<int>(i);
    fan.rays.push_back(r);
    fan.insertedRays.push_back(static_cast<int>(fan.rays.size()) - 1);
    return static_cast<int>(fan.rays.size()) - 1;
  };

  // triangulate non-simplicial maximal cones (pulling, deterministic)
  std::vector<std::vector<int>> cones;
  for (const auto& c : fan0.maxCones) {
    if (static_cast<int>(c.size()) == n) {
      cones.push_back(c);
      continue;
    }
    std::vector<IVec> rays;
    for (int id : c) rays.push_back(fan0.rays[id]);
    std::vector<std::vector<IVec>> simplices;
    triangulate(rays, n, simplices);
    for (const auto& s : simplices) {
      std::vector<int> ids;
      for (const auto& r : s) ids.push_back(ray_id(r));
      std::sort(ids.begin(), ids.end());
      cones.push_back(std::move(ids));
    }
  }

  // stellar subdivision until unimodular
  auto cone_key = [&](const std::vector<int>& c) {
    std::vector<IVec> k;
    for (int id : c) k.push_back(fan.rays[id]);
    std::sort(k.begin(), k.end());
    return k;
  };
  while (true) {
    if (static_cast<int>(cones.size()) > opts.coneBudget)
      throw resource_error("smooth subdivision exceeded the cone budget of " +
                           std::to_string(opts.coneBudget) + " cones");
    int worst = -1;
    std::vector<IVec> worstKey;
    for (std::size_t ci = 0; ci < cones.size(); ++ci) {
      if (abs_det(fan.generators(cones[ci])) <= 1) continue;
      auto key = cone_key(cones[ci]);
      if (worst < 0 || key < worstKey) {
        worst = static_cast<int>(ci);
        worstKey = std::move(key);
      }
    }
    if (worst < 0) break;

    const auto& sigma = cones[worst];
    IMat gens = fan.generators(sigma);
    // lattice points of the half-open parallelepiped {sum t_i g_i, t in [0,1)^n}
    IVec boxHi(n, 0);
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) boxHi[k] += gens[i][k];
      boxHi[k] -= 1;
      if (boxHi[k] < 0) boxHi[k] = 0;
    }
    IMat M(n, IVec(n));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) M[k][i] = gens[i][k];
    bool haveBest = false;
    Rational bestSum;
    IVec bestW;
    IVec w(n, 0);
    std::function<void(int)> scan = [&](int k) {
      if (k == n) {
        bool zero = true;
        for (long long v : w)
          if (v != 0) zero = false;
        if (zero) return;
        std::vector<Rational> rhs(w.begin(), w.end()), t;
        if (!solve_rational(M, rhs, t)) return;
        Rational sum = 0;
        for (const auto& c : t) {
          if (c < 0 || c >= 1) return;
          sum += c;
        }
        if (!haveBest || sum < bestSum || (sum == bestSum && w < bestW)) {
          haveBest = true;
          bestSum = sum;
          bestW = w;
        }
        return;
      }
      for (long long v = 0; v <= boxHi[k]; ++v) {
        w[k] = v;
        scan(k + 1);
      }
      w[k] = 0;
    };
    scan(0);
    if (!haveBest)
      throw internal_error("no parallelepiped lattice point in a cone of multiplicity > 1");

    int wId = ray_id(bestW);
    std::vector<std::vector<int>> next;
    for (const auto& c : cones) {
      IMat cg = fan.generators(c);
      IMat Mc(n, IVec(n));
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) Mc[k][i] = cg[i][k];
      std::vector<Rational> rhs(bestW.begin(), bestW.end()), t;
      bool inside = solve_rational(Mc, rhs, t);
      if (inside)
        for (const auto& v : t)
          if (v < 0) inside = false;
      if (!inside) {
        next.push_back(c);
        continue;
      }
      for (int i = 0; i < n; ++i) {
        if (t[i] <= 0) continue;
        std::vector<int> piece = c;
        piece[i] = wId;
        std::sort(piece.begin(), piece.end());
        next.push_back(std::move(piece));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cones = std::move(next);
  }

  // orient every maximal cone to determinant +1
  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    BigInt d = determinant(fan.generators(c));
    if (d == -1)
      std::swap(c[0], c[1]);
    else if (d != 1)
      throw internal_error("non-unimodular cone after subdivision");
  }
  std::sort(cones.begin(), cones.end());
  fan.maxCones = std::move(cones);
  fan.simplicial = true;
  fan.smooth = true;
  return fan;
}

ChartData chart_data(const Fan& fan, int maxConeIndex, const SparsePolynomial& f,
                     const NewtonPolyhedron& N) {
  const int n = fan.dim;
  ChartData cd;
  cd.coneRayIds = fan.maxCones.at(maxConeIndex);
  cd.gens = fan.generators(cd.coneRayIds);
  if (determinant(cd.gens) != 1)
    throw internal_error("chart cone is not oriented to determinant +1");
  cd.lVec.resize(n);
  cd.normSums.resize(n);
  for (int i = 0; i < n; ++i) {
    cd.lVec[i] = support_min(cd.gens[i], N);
    cd.normSums[i] = 0;
    for (int k = 0; k < n; ++k) cd.normSums[i] += cd.gens[i][k];
  }
  SparsePolynomial pulled = monomial_pullback(f, cd.gens);
  cd.fSigma = SparsePolynomial(n);
  for (const auto& [a, c] : pulled.terms()) {
    Exponent e(n);
    for (int i = 0; i < n; ++i) {
      e[i] = a[i] - static_cast<int>(cd.lVec[i]);
      if (e[i] < 0)
        throw internal_error("chart pullback is not divisible by the exceptional monomial");
    }
    cd.fSigma.add_term(e, c);
  }
  for (int i = 0; i < n; ++i) {
    bool hits_zero = false;
    for (const auto& [a, c] : cd.fSigma.terms())
      if (a[i] == 0) hits_zero = true;
    if (!hits_zero) throw internal_error("chart unit factor has a monomial factor");
  }
  cd.c0 = cd.fSigma.coefficient(Exponent(n, 0));
  if (cd.c0 == 0) throw internal_error("chart unit factor vanishes at the origin");
  return cd;
}

}  // namespace zetascope
