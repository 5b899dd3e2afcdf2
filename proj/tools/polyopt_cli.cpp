#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "polyopt/errors.hpp"
#include "polyopt/oracle_verify.hpp"
#include "polyopt/problem_parser.hpp"
#include "polyopt/result_document.hpp"

using namespace polyopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitGenericity = 3;
constexpr int kExitInfeasible = 4;

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Loaded {
  ProblemSource src;
  Problem problem;
};

Loaded load(const std::string& path) {
  Loaded l;
  l.src = parse_source(read_input(path));
  l.problem = to_problem(l.src);
  return l;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact constrained polynomial minimization"};
  app.require_subcommand(1);

  std::string problem_path, result_path, out_path;
  SolverConfig cfg;
  std::string format = "json";
  int precision = 20;
  VerifyOptions vopts;
  double box = 0;

  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("problem", problem_path, "problem file, '-' for stdin")->required();
    cmd->add_option("--seed", cfg.seed, "random seed");
    cmd->add_option("--alpha-bound", cfg.alpha_bound, "separating form coefficients lie in [-B, B]")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-retries", cfg.max_retries, "fresh forms tried after a genericity failure")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--parallel", cfg.parallel, "candidates solved concurrently")->check(CLI::PositiveNumber);
    cmd->add_flag("--dedupe", cfg.dedupe, "drop entries describing the same point");
  };

  CLI::App* solve = app.add_subcommand("solve", "compute the minimizer family");
  add_solver_flags(solve);
  solve->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  solve->add_option("--precision", precision, "decimal digits of the approximations")->check(CLI::Range(1, 1000));
  solve->add_option("-o,--output", out_path, "write the result here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "check a result against sampling and interval tests");
  add_solver_flags(verify);
  verify->add_option("--result", result_path, "JSON result to check (solved afresh when absent)");
  verify->add_option("--samples", vopts.samples, "rejection samples");
  verify->add_option("--box", box, "half-width of the sampling box")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    Loaded in = load(problem_path);
    if (solve->parsed()) {
      const MinimizerFamily fam = finding_minimum(in.problem, cfg);
      const std::string doc =
          emit_result(fam, in.problem, in.src.vars, format == "json" ? OutputFormat::kJson : OutputFormat::kText, precision);
      if (out_path.empty()) {
        std::cout << doc;
      } else {
        std::ofstream(out_path) << doc;
      }
      return kExitOk;
    }
    MinimizerFamily fam = result_path.empty() ? finding_minimum(in.problem, cfg)
                                              : family_from_json(nlohmann::json::parse(read_input(result_path)));
    if (box > 0) vopts.box = box;
    vopts.seed = cfg.seed;
    const VerifyReport rep = oracle_verify(in.problem, fam, vopts);
    std::cout << rep.summary();
    return rep.ok() ? kExitOk : kExitFailure;
  } catch (const ParseError& e) {
    std::cerr << "polyopt: " << problem_path << ":" << e.what() << "\n";
    return kExitParse;
  } catch (const InvalidInput& e) {
    std::cerr << "polyopt: " << problem_path << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const RetriesExhausted& e) {
    std::cerr << "polyopt: " << e.what() << "\n";
    return kExitGenericity;
  } catch (const NoFeasibleCriticalPoint& e) {
    std::cerr << "polyopt: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "polyopt: " << e.what() << "\n";
    return kExitFailure;
  }
}
