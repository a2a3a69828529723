#include "zetascope/poles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace zetascope {

namespace {

struct RayData {
  long long l;
  long long norm;  // |a|
};

std::vector<RayData> ray_data(const Fan& fan, const NewtonPolyhedron& N) {
  std::vector<RayData> out;
  out.reserve(fan.rays.size());
  for (const auto& r : fan.rays) {
    long long norm = 0;
    for (long long v : r) norm += v;
    out.push_back({support_min(r, N), norm});
  }
  return out;
}

// nu with lambda * l = |a| + nu, when it is a non-negative integer.
std::optional<long long> ladder_index(const Rational& lambda, const RayData& rd) {
  if (rd.l <= 0) return std::nullopt;
  Rational nu = lambda * rd.l - rd.norm;
  if (nu < 0 || !is_integer(nu)) return std::nullopt;
  return integer_part(nu).convert_to<long long>();
}

// All distinct cones of a simplicial fan grouped by dimension: nonempty
// subsets of maximal cone generator sets. For k = n the oriented maximal
// order is kept; lower-dimensional faces are listed with ascending ray ids.
std::vector<std::vector<std::vector<int>>> all_faces(const Fan& fan) {
  const int n = fan.dim;
  std::vector<std::set<std::vector<int>>> byDim(n + 1);
  for (const auto& cone : fan.maxCones) {
    const int m = static_cast<int>(cone.size());
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> ids;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) ids.push_back(cone[i]);
      if (static_cast<int>(ids.size()) == n) {
        byDim[n].insert(cone);  // oriented order
      } else {
        std::sort(ids.begin(), ids.end());
        byDim[ids.size()].insert(std::move(ids));
      }
    }
  }
  std::vector<std::vector<std::vector<int>>> out(n + 1);
  for (int k = 1; k <= n; ++k) out[k].assign(byDim[k].begin(), byDim[k].end());
  return out;
}

}  // namespace

std::string rule_name(VanishingRule rule) {
  switch (rule) {
    case VanishingRule::ParityMT_i: return "ParityMT_i";
    case VanishingRule::ParityMT_ii: return "ParityMT_ii";
    case VanishingRule::SupportVT_i: return "SupportVT_i";
    case VanishingRule::SupportVT_ii: return "SupportVT_ii";
    case VanishingRule::SupportVT2_i: return "SupportVT2_i";
    case VanishingRule::SupportVT2_ii: return "SupportVT2_ii";
  }
  return "?";
}

void pole_profile(CandidatePole& pole, const Fan& fan, const NewtonPolyhedron& N) {
  const int n = fan.dim;
  std::vector<RayData> rd = ray_data(fan, N);
  pole.isInteger = is_integer(pole.lambda);
  pole.contributingRayIds.clear();
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    if (ladder_index(pole.lambda, rd[i])) pole.contributingRayIds.push_back(static_cast<int>(i));

  pole.sigma.assign(n + 1, {});
  auto faces = all_faces(fan);
  for (int k = 1; k <= n; ++k) {
    for (const auto& ids : faces[k]) {
      SigmaCone sc;
      sc.rayIds = ids;
      bool ok = true;
      for (int id : ids) {
        auto nu = ladder_index(pole.lambda, rd[id]);
        if (!nu) {
          ok = false;
          break;
        }
        sc.nu.push_back(*nu);
      }
      if (ok) pole.sigma[k].push_back(std::move(sc));
    }
  }
  pole.maxNonemptyK = 0;  // Sigma_j^{(0)} = {zero cone} is always nonempty
  for (int k = n; k >= 1; --k)
    if (!pole.sigma[k].empty()) {
      pole.maxNonemptyK = k;
      break;
    }
  pole.kj = pole.isInteger ? pole.maxNonemptyK + 1 : pole.maxNonemptyK;
}

std::vector<CandidatePole> candidate_poles(const Fan& fan, const NewtonPolyhedron& N,
                                           const Rational& lambdaMax) {
  if (lambdaMax <= 0) throw input_error("pole enumeration depth must be positive");
  std::vector<RayData> rd = ray_data(fan, N);
  std::set<Rational> values;
  for (BigInt m = 1; Rational(m) <= lambdaMax; ++m) values.insert(Rational(m));
  for (const auto& r : rd) {
    if (r.l <= 0) continue;
    for (long long nu = 0;; ++nu) {
      Rational lambda(r.norm + nu, r.l);
      if (lambda > lambdaMax) break;
      values.insert(lambda);
    }
  }
  std::vector<CandidatePole> poles;
  int index = 1;
  for (const auto& lambda : values) {
    CandidatePole p;
    p.lambda = lambda;
    p.index = index++;
    p.fromIntegerLadder = is_integer(lambda);
    pole_profile(p, fan, N);
    poles.push_back(std::move(p));
  }
  return poles;
}

DeltaRegion delta_lattice_points(const CandidatePole& pole, int k, const Fan& fan) {
  if (k < 1 || k >= static_cast<int>(pole.sigma.size()) || pole.sigma[k].empty())
    throw input_error("Delta_{j,k} requested for empty Sigma_j^{(k)}");
  const int n = fan.dim;
  DeltaRegion region;
  region.poleIndex = pole.index;
  region.k = k;
  region.cones = pole.sigma[k];
  std::set<Exponent> pts;
  for (const auto& sc : region.cones) {
    // bounding box: alpha_m <= min_i nu_i / a^i_m (every a^i strictly positive)
    std::vector<long long> hi(n, 0);
    for (int m = 0; m < n; ++m) {
      long long best = -1;
      for (std::size_t i = 0; i < sc.rayIds.size(); ++i) {
        long long a = fan.rays[sc.rayIds[i]][m];
        if (a <= 0) throw internal_error("Sigma_j cone with a non-positive generator entry");
        long long cap = sc.nu[i] / a;
        best = best < 0 ? cap : std::min(best, cap);
      }
      hi[m] = best;
    }
    Exponent alpha(n, 0);
    std::function<void(int)> scan = [&](int m) {
      if (m == n) {
        for (std::size_t i = 0; i < sc.rayIds.size(); ++i)
          if (dot(fan.rays[sc.rayIds[i]], alpha) > sc.nu[i]) return;
        pts.insert(alpha);
        return;
      }
      for (long long v = 0; v <= hi[m]; ++v) {
        alpha[m] = static_cast<int>(v);
        scan(m + 1);
      }
      alpha[m] = 0;
    };
    scan(0);
  }
  region.latticePoints.assign(pts.begin(), pts.end());
  return region;
}

std::vector<VanishingCertificate> vanishing_certificates(const CandidatePole& pole,
                                                         const std::vector<Exponent>& jetSupport,
                                                         const Fan& fan) {
  std::vector<VanishingCertificate> certs;
  const int n = fan.dim;
  const bool integer = pole.isInteger;
  const bool oddInteger = integer && boost::multiprecision::numerator(pole.lambda) % 2 != 0;

  auto parity_holds = [&](int k) -> std::optional<std::vector<std::pair<std::vector<int>, int>>> {
    // every cone of Sigma_j^{(k)} has some odd nu_i (vacuously true if empty)
    std::vector<std::pair<std::vector<int>, int>> witness;
    if (k < 1 || k > n) return std::nullopt;
    for (const auto& sc : pole.sigma[k]) {
      int odd = -1;
      for (std::size_t i = 0; i < sc.nu.size(); ++i)
        if (sc.nu[i] % 2 != 0) {
          odd = static_cast<int>(i);
          break;
        }
      if (odd < 0) return std::nullopt;
      witness.emplace_back(sc.rayIds, odd);
    }
    return witness;
  };

  auto delta_disjoint = [&](int k) -> std::optional<std::vector<Exponent>> {
    if (k < 1 || k > n || pole.sigma[k].empty()) return std::nullopt;
    DeltaRegion region = delta_lattice_points(pole, k, fan);
    for (const auto& a : jetSupport)
      if (std::binary_search(region.latticePoints.begin(), region.latticePoints.end(), a))
        return std::nullopt;
    return region.latticePoints;
  };

  for (int k = 1; k <= pole.kj; ++k) {
    // Parity rules for a_{j,k..kj}
    if (!oddInteger) {
      if (auto w = parity_holds(k)) {
        VanishingCertificate c;
        c.poleIndex = pole.index;
        c.rule = VanishingRule::ParityMT_i;
        c.kFrom = k;
        c.kTo = pole.kj;
        c.killsAbs = true;
        c.oddNuWitness = std::move(*w);
        certs.push_back(std::move(c));
      }
    } else if (k >= 2) {
      if (auto w = parity_holds(k - 1)) {
        VanishingCertificate c;
        c.poleIndex = pole.index;
        c.rule = VanishingRule::ParityMT_ii;
        c.kFrom = k;
        c.kTo = pole.kj;
        c.killsAbs = true;
        c.oddNuWitness = std::move(*w);
        certs.push_back(std::move(c));
      }
    }
    // Taylor-support rules; the jet support is exact by the plateau construction.
    if (!oddInteger) {
      if (auto pts = delta_disjoint(k)) {
        VanishingCertificate c;
        c.poleIndex = pole.index;
        c.rule = VanishingRule::SupportVT_i;
        c.kFrom = k;
        c.kTo = pole.kj;
        c.killsAbs = true;
        c.deltaPoints = std::move(*pts);
        certs.push_back(std::move(c));
      }
    }
    if (integer && k >= 2) {
      if (auto pts = delta_disjoint(k - 1)) {
        VanishingCertificate c;
        c.poleIndex = pole.index;
        c.rule = VanishingRule::SupportVT_ii;
        c.kFrom = k;
        c.kTo = pole.kj;
        c.killsAbs = true;
        c.deltaPoints = std::move(*pts);
        certs.push_back(std::move(c));
      }
    }
    if (!integer) {
      if (auto pts = delta_disjoint(k)) {
        VanishingCertificate c;
        c.poleIndex = pole.index;
        c.rule = VanishingRule::SupportVT2_i;
        c.kFrom = k;
        c.kTo = pole.kj;
        c.killsSigned = true;
        c.killsOsc = true;
        c.deltaPoints = std::move(*pts);
        certs.push_back(std::move(c));
      }
    } else if (k >= 2) {
      if (auto pts = delta_disjoint(k - 1)) {
        VanishingCertificate c;
        c.poleIndex = pole.index;
        c.rule = VanishingRule::SupportVT2_ii;
        c.kFrom = k;
        c.kTo = pole.kj;
        c.killsSigned = true;
        c.killsOsc = true;
        c.deltaPoints = std::move(*pts);
        certs.push_back(std::move(c));
      }
    }
  }
  return certs;
}

Rational default_pole_depth(const Fan& fan, const NewtonPolyhedron& N) {
  std::vector<RayData> rd = ray_data(fan, N);
  Rational best = 0;
  for (const auto& r : rd) {
    if (r.l <= 0) continue;
    Rational v(r.norm + fan.dim, r.l);
    if (v > best) best = v;
  }
  if (best == 0) best = 1;
  return 2 * best;
}

}  // namespace zetascope
