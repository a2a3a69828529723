#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "zetascope/report.hpp"

namespace {

struct CommonArgs {
  std::string file;
  std::string depth;
  std::string format = "json";
  std::string outPath;
  bool verify = false;
  long long seed = -1;
  double tol = -1.0;
  int pole = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool withPole) {
  cmd->add_option("file", args.file, "problem JSON file")->required();
  cmd->add_option("--depth", args.depth, "candidate-pole enumeration depth (rational p/q)");
  cmd->add_option("--format", args.format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--out", args.outPath, "write the report to this path instead of stdout");
  cmd->add_flag("--verify", args.verify, "run the numeric verification stage");
  cmd->add_option("--seed", args.seed, "override the random seed");
  cmd->add_option("--tol", args.tol, "override the quadrature tolerance");
  if (withPole) cmd->add_option("--pole", args.pole, "restrict to this pole index (1-based)");
}

int run(const CommonArgs& args, zetascope::Stage stage) {
  std::ifstream in(args.file);
  if (!in) {
    std::cerr << "cannot open " << args.file << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  zetascope::ProblemSpec spec;
  try {
    spec = zetascope::parse_problem_text(ss.str());
  } catch (const zetascope::input_error& e) {
    std::cerr << args.file << ": " << e.what() << "\n";
    return 2;
  }
  if (!args.depth.empty()) spec.depth = zetascope::parse_rational(args.depth);
  if (args.seed >= 0) spec.options.seed = static_cast<unsigned>(args.seed);
  if (args.tol > 0) spec.options.tolerance = args.tol;
  if (args.verify) spec.options.verify = true;

  zetascope::AnalyzeOutcome outcome;
  try {
    outcome = zetascope::run_analyze(spec, stage, args.pole);
  } catch (const zetascope::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  outcome.report["input_file_hash"] = zetascope::content_hash(ss.str());

  std::string text = args.format == "text" ? zetascope::render_text(outcome.report)
                                           : outcome.report.dump(2) + "\n";
  if (args.outPath.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(args.outPath);
    out << text;
  }
  return outcome.exitCode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zetascope: pole analysis of local zeta functions of convenient "
               "non-degenerate polynomials"};
  app.require_subcommand(1);

  CommonArgs aAnalyze, aPoles, aCoeff, aVerify;
  add_common(app.add_subcommand("analyze", "full pipeline"), aAnalyze, true);
  add_common(app.add_subcommand("poles", "stop after poles and certificates"), aPoles, false);
  add_common(app.add_subcommand("coeff", "deepest-pole coefficients"), aCoeff, true);
  add_common(app.add_subcommand("verify", "numeric verification"), aVerify, true);

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("analyze")) return run(aAnalyze, zetascope::Stage::Analyze);
  if (app.got_subcommand("poles")) return run(aPoles, zetascope::Stage::Poles);
  if (app.got_subcommand("coeff")) return run(aCoeff, zetascope::Stage::Coefficients);
  if (app.got_subcommand("verify")) return run(aVerify, zetascope::Stage::Verify);
  return 1;
}
