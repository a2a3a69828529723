#pragma once

#include <string>

#include "json.hpp"
#include "zetascope/coefficients.hpp"
#include "zetascope/nondegeneracy.hpp"
#include "zetascope/oracle.hpp"

namespace zetascope {

struct ProblemOptions {
  unsigned seed = 12345;
  double tolerance = 1e-8;
  bool verify = false;
  std::vector<double> tGrid;  // oscillatory check grid; enables the n >= 2 check
  int maxSeriesDegree = 64;
  int trials = 40;  // randomized non-degeneracy starts (n >= 3)
};

struct ProblemSpec {
  std::vector<std::string> variables;
  SparsePolynomial f;
  PlateauTestFunction phi;
  Rational depth = 0;  // 0: use the default enumeration depth
  ProblemOptions options;
};

/// Parses and validates a problem description; throws input_error with a
/// line:column prefix on malformed JSON.
ProblemSpec parse_problem(const nlohmann::json& j);
ProblemSpec parse_problem_text(const std::string& text);

enum class Stage {
  Poles,         // polyhedron, fan, non-degeneracy, poles, certificates
  Coefficients,  // + deepest-pole coefficients
  Analyze,       // everything (+ numeric verification when options.verify)
  Verify,        // force numeric verification
};

struct AnalyzeOutcome {
  nlohmann::ordered_json report;
  int exitCode = 0;  // 0 success, 2 precondition failure, 3 verification failure
};

/// Runs the pipeline. poleFilter > 0 restricts coefficient/verification
/// stages to that pole index.
AnalyzeOutcome run_analyze(const ProblemSpec& spec, Stage stage, int poleFilter = 0);

/// Human-readable rendering of a report.
std::string render_text(const nlohmann::ordered_json& report);

/// FNV-1a 64-bit content hash, hex-encoded.
std::string content_hash(const std::string& bytes);

}  // namespace zetascope
