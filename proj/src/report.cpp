#include "zetascope/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zetascope {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Exponent parse_exps(const json& j, int n, const char* where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw input_error(std::string(where) + ": exps must be an array of length " +
                      std::to_string(n));
  Exponent e(n);
  for (int i = 0; i < n; ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 0)
      throw input_error(std::string(where) + ": exponents must be non-negative integers");
    e[i] = static_cast<int>(j[i].get<long long>());
  }
  return e;
}

SparsePolynomial parse_terms(const json& j, int n, const char* where) {
  if (!j.is_array()) throw input_error(std::string(where) + ": expected an array of terms");
  SparsePolynomial p(n);
  for (const auto& term : j) {
    if (!term.contains("exps") || !term.contains("coef"))
      throw input_error(std::string(where) + ": each term needs exps and coef");
    p.add_term(parse_exps(term["exps"], n, where), parse_rational(term["coef"].get<std::string>()));
  }
  return p;
}

ordered_json rational_json(const Rational& q) { return rational_string(q); }

ordered_json scalar_json(const AlgebraicScalar& s) {
  ordered_json terms = ordered_json::array();
  for (const auto& t : s.terms())
    terms.push_back({rational_string(t.r), rational_string(t.base), rational_string(t.expo)});
  return ordered_json{{"terms", std::move(terms)}, {"float", s.float_value()}};
}

ordered_json exponent_json(const Exponent& e) {
  ordered_json a = ordered_json::array();
  for (int v : e) a.push_back(v);
  return a;
}

ordered_json ivec_json(const IVec& v) {
  ordered_json a = ordered_json::array();
  for (long long x : v) a.push_back(x);
  return a;
}

std::string nd_status_name(NdStatus s) {
  switch (s) {
    case NdStatus::Proven: return "proven";
    case NdStatus::ProbablyNondegenerate: return "probably_nondegenerate";
    case NdStatus::Degenerate: return "degenerate";
  }
  return "?";
}

}  // namespace

std::string content_hash(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return buf;
}

ProblemSpec parse_problem(const json& j) {
  ProblemSpec spec;
  if (!j.contains("variables") || !j["variables"].is_array() || j["variables"].empty())
    throw input_error("problem needs a non-empty variables array");
  for (const auto& v : j["variables"]) spec.variables.push_back(v.get<std::string>());
  const int n = static_cast<int>(spec.variables.size());
  if (n > 4) throw input_error("exact mode supports at most 4 variables");

  if (!j.contains("f")) throw input_error("problem needs the polynomial f");
  spec.f = parse_terms(j["f"], n, "f");
  if (spec.f.is_zero()) throw input_error("f must be nonzero");

  SparsePolynomial jet = SparsePolynomial::constant(n, 1);
  Rational ri(1, 2), ro(1);
  if (j.contains("phi")) {
    const auto& p = j["phi"];
    if (p.contains("jet")) jet = parse_terms(p["jet"], n, "phi.jet");
    if (p.contains("r_inner")) ri = parse_rational(p["r_inner"].get<std::string>());
    if (p.contains("r_outer")) ro = parse_rational(p["r_outer"].get<std::string>());
  }
  spec.phi = PlateauTestFunction(jet, ri, ro);

  if (j.contains("depth")) {
    spec.depth = parse_rational(j["depth"].get<std::string>());
    if (spec.depth <= 0) throw input_error("depth must be positive");
  }
  if (j.contains("options")) {
    const auto& o = j["options"];
    if (o.contains("seed")) spec.options.seed = o["seed"].get<unsigned>();
    if (o.contains("tolerance")) spec.options.tolerance = o["tolerance"].get<double>();
    if (o.contains("verify")) spec.options.verify = o["verify"].get<bool>();
    if (o.contains("t_grid"))
      for (const auto& t : o["t_grid"]) spec.options.tGrid.push_back(t.get<double>());
    if (o.contains("max_series_degree"))
      spec.options.maxSeriesDegree = o["max_series_degree"].get<int>();
    if (o.contains("trials")) spec.options.trials = o["trials"].get<int>();
  }
  return spec;
}

ProblemSpec parse_problem_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw input_error("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  return parse_problem(j);
}

namespace {

ordered_json newton_json(const NewtonPolyhedron& N, const ConvenienceResult& conv) {
  ordered_json out;
  ordered_json verts = ordered_json::array();
  for (const auto& v : N.vertices) verts.push_back(exponent_json(v));
  out["vertices"] = std::move(verts);
  ordered_json facets = ordered_json::array();
  for (const auto& f : N.facets)
    facets.push_back({{"normal", ivec_json(f.normal)}, {"offset", f.offset}});
  out["facets"] = std::move(facets);
  ordered_json faces = ordered_json::array();
  for (const auto& f : N.compactFaces) {
    ordered_json fj;
    fj["dim"] = f.dim;
    fj["vertices"] = f.vertexIds;
    fj["facets"] = f.facetIds;
    faces.push_back(std::move(fj));
  }
  out["compact_faces"] = std::move(faces);
  out["convenient"] = conv.convenient;
  ordered_json wit = ordered_json::array();
  for (const auto& w : conv.axisWitness)
    wit.push_back(w ? exponent_json(*w) : ordered_json(nullptr));
  out["axis_witnesses"] = std::move(wit);
  return out;
}

ordered_json fan_json(const Fan& fan) {
  ordered_json out;
  ordered_json rays = ordered_json::array();
  for (const auto& r : fan.rays) rays.push_back(ivec_json(r));
  out["rays"] = std::move(rays);
  out["max_cones"] = fan.maxCones;
  out["inserted_rays"] = fan.insertedRays;
  return out;
}

ordered_json certificate_json(const VanishingCertificate& c) {
  ordered_json out;
  out["rule"] = rule_name(c.rule);
  out["k_from"] = c.kFrom;
  out["k_to"] = c.kTo;
  ordered_json kills = ordered_json::array();
  if (c.killsAbs) kills.push_back("a");
  if (c.killsSigned) kills.push_back("a_pm");
  if (c.killsOsc) kills.push_back("c");
  out["kills"] = std::move(kills);
  ordered_json ev;
  if (!c.oddNuWitness.empty() ||
      (c.rule == VanishingRule::ParityMT_i || c.rule == VanishingRule::ParityMT_ii)) {
    ordered_json odd = ordered_json::array();
    for (const auto& [rays, idx] : c.oddNuWitness)
      odd.push_back({{"rays", rays}, {"odd_index", idx}});
    ev["odd_nu"] = std::move(odd);
  } else {
    ordered_json pts = ordered_json::array();
    for (const auto& p : c.deltaPoints) pts.push_back(exponent_json(p));
    ev["delta_points"] = std::move(pts);
  }
  out["evidence"] = std::move(ev);
  return out;
}

struct PipelineData {
  NewtonPolyhedron N;
  ConvenienceResult conv;
  NondegeneracyVerdict nd;
  Fan fan;
  std::vector<CandidatePole> poles;
  Rational depth;
};

ordered_json deepest_json(const DeepestCoefficients& d) {
  ordered_json out;
  out["applicable"] = d.applicable;
  if (!d.applicable) {
    out["reason"] = d.reason;
    return out;
  }
  out["a_valid"] = d.absValid;
  if (d.absValid) out["a"] = scalar_json(d.a);
  out["signed_valid"] = d.signedValid;
  if (d.signedValid) {
    out["a_plus"] = scalar_json(d.aPlus);
    out["a_minus"] = scalar_json(d.aMinus);
  }
  out["b_plus"] = scalar_json(d.bPlus);
  out["b_minus"] = scalar_json(d.bMinus);
  out["c_osc"] = ordered_json{{"re", d.cOsc.real()}, {"im", d.cOsc.imag()}};
  if (d.oscIntegerCaveat) out["c_osc_integer_caveat"] = true;
  return out;
}

// Verification checks: leading-pole Laurent fit, certified-fake-pole fits,
// and the oscillatory leading coefficient.
ordered_json run_verification(const ProblemSpec& spec, const PipelineData& pd,
                              const std::vector<DeepestCoefficients>& deepest, int poleFilter,
                              bool& allPass) {
  ordered_json checks = ordered_json::array();
  const int n = spec.f.dim();
  FitOptions fopts;
  fopts.quad.tol = spec.options.tolerance;

  std::vector<PoleModel> models;
  for (const auto& p : pd.poles)
    models.push_back({to_double(p.lambda), std::max(1, std::min(p.kj, n))});

  auto add_check = [&](const std::string& name, double predicted, double fitted, double tol) {
    double absErr = std::fabs(fitted - predicted);
    double relErr = predicted != 0 ? absErr / std::fabs(predicted) : absErr;
    bool pass = absErr <= tol || (predicted != 0 && relErr <= tol);
    ordered_json c{{"name", name},        {"predicted", predicted}, {"fitted", fitted},
                   {"abs_err", absErr},   {"rel_err", relErr},      {"pass", pass}};
    if (!pass) allPass = false;
    checks.push_back(std::move(c));
  };

  double leadingScale = 0.0;
  for (std::size_t pi = 0; pi < pd.poles.size(); ++pi) {
    const CandidatePole& pole = pd.poles[pi];
    if (poleFilter > 0 && pole.index != poleFilter) continue;
    const DeepestCoefficients& d = deepest[pi];

    bool certifiedFake = false;
    auto certs = vanishing_certificates(pole, spec.phi.jet.support(), pd.fan);
    for (const auto& c : certs)
      if (c.killsAbs && c.kFrom == 1) certifiedFake = true;

    if (pole.index == 1) {
      int kMax = std::max(1, std::min(pole.kj, n));
      LaurentFitResult fit = laurent_fit(spec.f, spec.phi, pole.lambda, kMax, {}, models, fopts);
      for (double s : fit.singular) leadingScale = std::max(leadingScale, std::fabs(s));
      if (d.applicable && d.absValid) {
        double predicted = d.a.float_value();
        add_check("laurent_deepest@" + rational_string(pole.lambda), predicted,
                  fit.singular[kMax - 1], 5e-3);
      } else if (certifiedFake) {
        for (int k = 0; k < kMax; ++k)
          add_check("fake_pole@" + rational_string(pole.lambda) + "/k" + std::to_string(k + 1),
                    0.0, fit.singular[k],
                    1e-3 * std::max(leadingScale, 1e-6));
      }
      continue;
    }

    if (certifiedFake) {
      int kMax = std::max(1, std::min(pole.kj, n));
      LaurentFitResult fit = laurent_fit(spec.f, spec.phi, pole.lambda, kMax, {}, models, fopts);
      double scale = std::max(leadingScale, 1e-6);
      for (int k = 0; k < kMax; ++k)
        add_check("fake_pole@" + rational_string(pole.lambda) + "/k" + std::to_string(k + 1), 0.0,
                  fit.singular[k], 1e-3 * scale);
    }
  }

  // oscillatory leading coefficient of the first applicable pole
  for (std::size_t pi = 0; pi < pd.poles.size(); ++pi) {
    const CandidatePole& pole = pd.poles[pi];
    if (poleFilter > 0 && pole.index != poleFilter) continue;
    const DeepestCoefficients& d = deepest[pi];
    if (!d.applicable) continue;
    if (n >= 2 && spec.options.tGrid.empty()) break;  // slow check is opt-in
    std::vector<double> tGrid = spec.options.tGrid;
    if (tGrid.empty())
      for (int i = 0; i < 8; ++i) tGrid.push_back(40.0 * std::pow(10.0, i / 7.0));
    FitOptions oopts = fopts;
    oopts.quad.tol = std::max(1e-6, spec.options.tolerance);
    if (n >= 2) oopts.quad.tol = std::max(1e-4, oopts.quad.tol);
    OscFitResult osc = oscillatory_fit(spec.f, spec.phi, tGrid, pole.lambda, pole.kj, oopts);
    double predMag = std::abs(d.cOsc);
    double tol = (n == 1 ? 0.05 : 0.10) * std::max(predMag, 1e-12);
    add_check("oscillatory_leading@" + rational_string(pole.lambda) + "/re", d.cOsc.real(),
              osc.leading.real(), tol);
    add_check("oscillatory_leading@" + rational_string(pole.lambda) + "/im", d.cOsc.imag(),
              osc.leading.imag(), tol);
    break;
  }
  return checks;
}

}  // namespace

AnalyzeOutcome run_analyze(const ProblemSpec& spec, Stage stage, int poleFilter) {
  AnalyzeOutcome out;
  ordered_json& rep = out.report;
  rep["schema"] = "zetascope-report/1";

  ordered_json input;
  input["variables"] = spec.variables;
  ordered_json fterms = ordered_json::array();
  for (const auto& [a, c] : spec.f.terms())
    fterms.push_back({{"exps", exponent_json(a)}, {"coef", rational_string(c)}});
  input["f"] = std::move(fterms);
  ordered_json jterms = ordered_json::array();
  for (const auto& [a, c] : spec.phi.jet.terms())
    jterms.push_back({{"exps", exponent_json(a)}, {"coef", rational_string(c)}});
  input["phi"] = ordered_json{{"jet", std::move(jterms)},
                              {"r_inner", rational_string(spec.phi.rInner)},
                              {"r_outer", rational_string(spec.phi.rOuter)}};
  input["seed"] = spec.options.seed;
  rep["input"] = std::move(input);
  rep["input_hash"] = content_hash(rep["input"].dump());

  PipelineData pd;
  pd.N = newton_polyhedron(spec.f);
  pd.conv = is_convenient(spec.f);
  rep["newton"] = newton_json(pd.N, pd.conv);

  std::vector<std::string> warnings;
  if (!pd.conv.convenient) {
    std::string axes;
    for (int i : pd.conv.failingAxes)
      axes += (axes.empty() ? "" : ", ") + spec.variables[i];
    rep["error"] = "f is not convenient (no pure power of: " + axes +
                   "); the toric resolution requires convenience";
    out.exitCode = 2;
    return out;
  }

  pd.nd = check_nondegenerate(spec.f, pd.N, spec.options.trials, spec.options.seed);
  ordered_json nd;
  nd["status"] = nd_status_name(pd.nd.status);
  nd["trials"] = pd.nd.trials;
  ordered_json detail = ordered_json::array();
  for (const auto& d : pd.nd.detail)
    detail.push_back(
        {{"face", d.faceId}, {"method", d.method}, {"degenerate", d.degenerate}});
  nd["faces"] = std::move(detail);
  if (pd.nd.status == NdStatus::Degenerate) {
    nd["witness"] = pd.nd.witness;
    nd["witness_face"] = pd.nd.witnessFaceId;
  }
  rep["nondegeneracy"] = std::move(nd);
  if (pd.nd.status == NdStatus::Degenerate) {
    rep["error"] =
        "f is degenerate: a gamma-part has a real critical zero on the torus; "
        "every result downstream assumes non-degeneracy";
    out.exitCode = 2;
    return out;
  }
  if (pd.nd.status == NdStatus::ProbablyNondegenerate)
    warnings.push_back("non-degeneracy was only checked by randomized search (n >= 3)");

  if (auto w = isolated_singularity_scan(spec.f, 0.5 * to_double(spec.phi.rInner),
                                         spec.options.seed)) {
    std::ostringstream os;
    os << "possible non-isolated singularity: critical zero of f near (";
    for (std::size_t i = 0; i < w->size(); ++i) os << (i ? ", " : "") << (*w)[i];
    os << "); the isolated-singularity hypothesis is a documented precondition";
    warnings.push_back(os.str());
  }

  Fan fan0 = normal_fan(pd.N, spec.f);
  pd.fan = smooth_subdivision(fan0);
  rep["fan"] = fan_json(pd.fan);

  pd.depth = spec.depth > 0 ? spec.depth : default_pole_depth(pd.fan, pd.N);
  rep["depth"] = rational_string(pd.depth);
  pd.poles = candidate_poles(pd.fan, pd.N, pd.depth);

  const int n = spec.f.dim();
  std::vector<DeepestCoefficients> deepest(pd.poles.size());
  ordered_json polesJson = ordered_json::array();
  for (std::size_t pi = 0; pi < pd.poles.size(); ++pi) {
    const CandidatePole& pole = pd.poles[pi];
    ordered_json pj;
    pj["index"] = pole.index;
    pj["lambda"] = rational_string(pole.lambda);
    pj["integer"] = pole.isInteger;
    pj["kj"] = pole.kj;
    pj["k_max_nonempty"] = pole.maxNonemptyK;
    pj["contributing_rays"] = pole.contributingRayIds;
    ordered_json sig;
    for (int k = 1; k <= n; ++k) {
      if (pole.sigma[k].empty()) continue;
      ordered_json list = ordered_json::array();
      for (const auto& sc : pole.sigma[k])
        list.push_back({{"rays", sc.rayIds}, {"nu", ivec_json(sc.nu)}});
      sig[std::to_string(k)] = std::move(list);
    }
    pj["sigma"] = std::move(sig);
    ordered_json deltas;
    for (int k = 1; k <= std::min(pole.maxNonemptyK, n); ++k) {
      if (pole.sigma[k].empty()) continue;
      DeltaRegion region = delta_lattice_points(pole, k, pd.fan);
      ordered_json pts = ordered_json::array();
      for (const auto& a : region.latticePoints) pts.push_back(exponent_json(a));
      deltas[std::to_string(k)] = std::move(pts);
    }
    pj["delta_points"] = std::move(deltas);
    ordered_json certs = ordered_json::array();
    for (const auto& c : vanishing_certificates(pole, spec.phi.jet.support(), pd.fan))
      certs.push_back(certificate_json(c));
    pj["certificates"] = std::move(certs);

    if (stage != Stage::Poles && (poleFilter == 0 || pole.index == poleFilter)) {
      // series budget guard before the exact computation
      bool withinBudget = true;
      if (pole.kj == n)
        for (const auto& sc : pole.sigma[n]) {
          long long total = 0;
          for (long long v : sc.nu) total += v;
          if (total > spec.options.maxSeriesDegree) withinBudget = false;
        }
      if (!withinBudget) {
        DeepestCoefficients d;
        d.poleIndex = pole.index;
        d.applicable = false;
        d.reason = "series degree exceeds max_series_degree";
        deepest[pi] = d;
      } else {
        deepest[pi] = compute_deepest(pole, pd.fan, spec.f, pd.N, spec.phi.jet);
      }
      pj["deepest"] = deepest_json(deepest[pi]);
      if (deepest[pi].applicable && pole.isInteger)
        warnings.push_back("lambda = " + rational_string(pole.lambda) +
                           " is an integer: the signed split is withheld and c_osc carries "
                           "the integer caveat");
    }
    polesJson.push_back(std::move(pj));
  }
  rep["poles"] = std::move(polesJson);

  warnings.push_back(
      "k_j is an upper bound relative to the computed smooth subdivision; a different "
      "subdivision may give different (still valid) bounds");
  rep["warnings"] = warnings;

  bool wantVerify = stage == Stage::Verify || (stage == Stage::Analyze && spec.options.verify);
  if (wantVerify) {
    bool allPass = true;
    rep["verification"] = run_verification(spec, pd, deepest, poleFilter, allPass);
    if (!allPass) out.exitCode = 3;
  }
  return out;
}

std::string render_text(const ordered_json& rep) {
  std::ostringstream os;
  os << "zetascope report (schema " << rep["schema"].get<std::string>() << ")\n";
  if (rep.contains("error")) {
    os << "ERROR: " << rep["error"].get<std::string>() << "\n";
    return os.str();
  }
  const auto& nd = rep["nondegeneracy"];
  os << "nondegeneracy: " << nd["status"].get<std::string>() << "\n";
  os << "fan rays:";
  for (const auto& r : rep["fan"]["rays"]) os << " " << r.dump();
  os << "\npoles (depth " << rep["depth"].get<std::string>() << "):\n";
  os << "  idx  lambda     kj  certificates  deepest\n";
  for (const auto& p : rep["poles"]) {
    os << "  " << p["index"].get<int>() << "    -" << p["lambda"].get<std::string>() << "    "
       << p["kj"].get<int>() << "   ";
    if (p["certificates"].empty())
      os << "-";
    else {
      bool fake = false;
      for (const auto& c : p["certificates"])
        if (c["k_from"].get<int>() == 1)
          for (const auto& k : c["kills"])
            if (k.get<std::string>() == "a") fake = true;
      os << p["certificates"].size() << (fake ? " (fake pole)" : "");
    }
    os << "  ";
    if (p.contains("deepest")) {
      const auto& d = p["deepest"];
      if (d["applicable"].get<bool>()) {
        if (d.contains("a")) os << "a = " << d["a"]["float"].get<double>();
        os << "  c_osc = " << d["c_osc"]["re"].get<double>() << " + "
           << d["c_osc"]["im"].get<double>() << "i";
      } else {
        os << "(" << d["reason"].get<std::string>() << ")";
      }
    }
    os << "\n";
  }
  if (rep.contains("verification")) {
    os << "verification:\n";
    for (const auto& c : rep["verification"]) {
      os << "  " << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  "
         << c["name"].get<std::string>() << "  predicted " << c["predicted"].get<double>()
         << "  fitted " << c["fitted"].get<double>() << "  rel_err "
         << c["rel_err"].get<double>() << "\n";
    }
  }
  for (const auto& w : rep["warnings"]) os << "note: " << w.get<std::string>() << "\n";
  return os.str();
}

}  // namespace zetascope
