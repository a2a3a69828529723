#include "zetascope/newton.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace zetascope {

namespace {

// Facet candidates are normals of hyperplanes spanned by n-1 independent
// vectors drawn from support-point differences and coordinate directions
// (coordinate directions account for the recession cone R_+^n, so no far-point
// augmentation is needed). A candidate a >= 0 is a facet when the face it
// supports has affine dimension n-1, counting recession directions e_j with
// a_j = 0.
std::vector<Facet> enumerate_facets(const std::vector<Exponent>& pts, int n) {
  std::vector<IVec> dirs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      IVec d(n);
      for (int k = 0; k < n; ++k) d[k] = pts[j][k] - pts[i][k];
      dirs.push_back(primitive(std::move(d), true));
    }
  for (int i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    dirs.push_back(e);
  }
  std::sort(dirs.begin(), dirs.end());
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

  std::set<std::pair<IVec, long long>> found;
  std::vector<int> idx(n - 1);
  const int m = static_cast<int>(dirs.size());

  auto consider = [&](const IMat& span) {
    IVec normal;
    if (!kernel_vector(span, n, normal)) return;
    bool nonneg = true, nonpos = true;
    for (long long v : normal) {
      if (v < 0) nonneg = false;
      if (v > 0) nonpos = false;
    }
    if (nonpos && !nonneg)
      for (long long& v : normal) v = -v;
    else if (!nonneg)
      return;
    long long l = dot(normal, pts[0]);
    for (const auto& p : pts) l = std::min(l, dot(normal, p));
    // dimension of the supported face, recession included
    IMat face_span;
    const Exponent* base = nullptr;
    for (const auto& p : pts) {
      if (dot(normal, p) != l) continue;
      if (!base) {
        base = &p;
        continue;
      }
      IVec d(n);
      for (int k = 0; k < n; ++k) d[k] = p[k] - (*base)[k];
      face_span.push_back(std::move(d));
    }
    for (int k = 0; k < n; ++k) {
      if (normal[k] == 0) {
        IVec e(n, 0);
        e[k] = 1;
        face_span.push_back(std::move(e));
      }
    }
    if (rank(face_span) == n - 1) found.insert({normal, l});
  };

  if (n == 1) {
    long long l = pts[0][0];
    for (const auto& p : pts) l = std::min<long long>(l, p[0]);
    return {{IVec{1}, l}};
  }

  // all (n-1)-subsets of candidate spanning directions
  std::vector<int> stack;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(stack.size()) == n - 1) {
      IMat span;
      for (int s : stack) span.push_back(dirs[s]);
      if (rank(span) == n - 1) consider(span);
      return;
    }
    for (int i = start; i < m; ++i) {
      stack.push_back(i);
      rec(i + 1);
      stack.pop_back();
    }
  };
  rec(0);

  std::vector<Facet> facets;
  for (const auto& [a, l] : found) facets.push_back({a, l});
  return facets;
}

}  // namespace

NewtonPolyhedron newton_polyhedron(const SparsePolynomial& f) {
  if (f.is_zero()) throw input_error("Newton polyhedron of the zero polynomial");
  NewtonPolyhedron N;
  N.dim = f.dim();
  N.support = f.support();
  const int n = N.dim;

  N.facets = enumerate_facets(N.support, n);

  // vertices: support points whose active facet normals span R^n
  std::vector<std::vector<int>> activeOf;
  for (const auto& p : N.support) {
    IMat act;
    std::vector<int> ids;
    for (std::size_t fi = 0; fi < N.facets.size(); ++fi) {
      if (dot(N.facets[fi].normal, p) == N.facets[fi].offset) {
        act.push_back(N.facets[fi].normal);
        ids.push_back(static_cast<int>(fi));
      }
    }
    if (rank(act) == n) {
      N.vertices.push_back(p);
      activeOf.push_back(ids);
    }
  }

  // compact faces: closures of vertex sets under common active facets; a face
  // is compact exactly when the sum of its active normals is strictly positive
  std::set<std::vector<int>> seen;
  const int nf = static_cast<int>(N.facets.size());
  for (unsigned mask = 1; mask < (1u << nf); ++mask) {
    std::vector<int> vs;
    for (std::size_t vi = 0; vi < N.vertices.size(); ++vi) {
      bool all = true;
      for (int fi = 0; fi < nf && all; ++fi)
        if (mask & (1u << fi))
          if (dot(N.facets[fi].normal, N.vertices[vi]) != N.facets[fi].offset) all = false;
      if (all) vs.push_back(static_cast<int>(vi));
    }
    if (vs.empty() || !seen.insert(vs).second) continue;
    std::vector<int> activeAll;
    for (int fi = 0; fi < nf; ++fi) {
      bool all = true;
      for (int vi : vs)
        if (dot(N.facets[fi].normal, N.vertices[vi]) != N.facets[fi].offset) {
          all = false;
          break;
        }
      if (all) activeAll.push_back(fi);
    }
    IVec sum(n, 0);
    for (int fi : activeAll)
      for (int k = 0; k < n; ++k) sum[k] += N.facets[fi].normal[k];
    bool strictly_positive = true;
    for (long long v : sum)
      if (v <= 0) strictly_positive = false;
    if (!strictly_positive) continue;
    IMat span;
    for (std::size_t t = 1; t < vs.size(); ++t) {
      IVec d(n);
      for (int k = 0; k < n; ++k) d[k] = N.vertices[vs[t]][k] - N.vertices[vs[0]][k];
      span.push_back(std::move(d));
    }
    CompactFace face;
    face.dim = span.empty() ? 0 : rank(span);
    face.vertexIds = vs;
    face.facetIds = activeAll;
    N.compactFaces.push_back(std::move(face));
  }
  std::sort(N.compactFaces.begin(), N.compactFaces.end(),
            [](const CompactFace& a, const CompactFace& b) {
              if (a.dim != b.dim) return a.dim < b.dim;
              return a.vertexIds < b.vertexIds;
            });
  return N;
}

SparsePolynomial gamma_part(const SparsePolynomial& f, const NewtonPolyhedron& N, int faceId) {
  if (faceId < 0 || faceId >= static_cast<int>(N.compactFaces.size()))
    throw input_error("face id out of range for this polyhedron");
  if (f.dim() != N.dim) throw input_error("polynomial does not match polyhedron dimension");
  const CompactFace& face = N.compactFaces[faceId];
  SparsePolynomial g(f.dim());
  for (const auto& [a, c] : f.terms()) {
    bool on = true;
    for (int fi : face.facetIds)
      if (dot(N.facets[fi].normal, a) != N.facets[fi].offset) {
        on = false;
        break;
      }
    if (on) g.add_term(a, c);
  }
  return g;
}

long long support_min(const IVec& a, const NewtonPolyhedron& N) {
  if (static_cast<int>(a.size()) != N.dim)
    throw input_error("support functional length does not match dimension");
  for (long long v : a)
    if (v < 0) throw input_error("support functional must be non-negative");
  long long best = dot(a, N.vertices[0]);
  for (const auto& v : N.vertices) best = std::min(best, dot(a, v));
  return best;
}

ConvenienceResult is_convenient(const SparsePolynomial& f) {
  const int n = f.dim();
  ConvenienceResult r;
  r.axisWitness.assign(n, std::nullopt);
  for (const auto& [a, c] : f.terms()) {
    int axis = -1;
    bool pure = true;
    for (int i = 0; i < n && pure; ++i) {
      if (a[i] > 0) {
        if (axis >= 0)
          pure = false;
        else
          axis = i;
      }
    }
    if (pure && axis >= 0 && !r.axisWitness[axis]) r.axisWitness[axis] = a;
  }
  r.convenient = true;
  for (int i = 0; i < n; ++i) {
    if (!r.axisWitness[i]) {
      r.convenient = false;
      r.failingAxes.push_back(i);
    }
  }
  return r;
}

}  // namespace zetascope
