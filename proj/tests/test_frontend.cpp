#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "polyopt/oracle_verify.hpp"
#include "polyopt/problem_parser.hpp"
#include "polyopt/result_document.hpp"
#include "test_util.hpp"

using namespace polyopt;
using namespace polyopt::testing;
using nlohmann::json;

namespace {

const char* kLine = "vars: x1 x2\nminimize: x1^2 + x2^2\neq: x1 + x2 - 1\n";
const char* kCircle = "vars: x1 x2\nminimize: x1\neq: x1^2 + x2^2 - 1\n";
const char* kDisk = "vars: x1 x2\nminimize: (x1 - 2)^2 + x2^2\nge: 1 - x1^2 - x2^2\n";

ParseError parse_error(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error for: " << text);
  return ParseError(0, 0, "");
}

SparsePoly random_sparse(std::mt19937_64& rng, size_t vars) {
  std::uniform_int_distribution<int> terms(1, 5), exp(0, 3);
  SparsePoly p(vars);
  while (p.total_degree() <= 0) {
    p = SparsePoly(vars);
    for (int t = terms(rng); t > 0; --t) {
      SparsePoly::Exponents e(vars);
      for (auto& x : e) x = static_cast<std::uint32_t>(exp(rng));
      p.add_term(e, random_rat(rng, -12, 12, true));
    }
  }
  return p;
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(POLYOPT_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string(POLYOPT_TMP) + "/" + name;
  std::ofstream(path) << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("parse examples") {
  Problem p = parse_problem(kLine);
  CHECK(p.n == 2);
  CHECK(p.m == 1);
  CHECK(p.l == 1);
  CHECK(p.d == 2);
  CHECK(parse_problem("vars: x y\nminimize: x^3 + y\n").d == 4);
  CHECK(parse_problem("vars: x y\nminimize: x^3 + y\ndegree: 6\n").d == 6);
  CHECK(parse_problem("vars: x y\nminimize: x + y\ndegree: 3\n").d == 4);
  CHECK_THROWS_AS(parse_problem("vars: x y\nminimize: x^3 + y\ndegree: 2\n"), InvalidInput);
  auto e = parse_error("vars: x1\nminimize: x1\n");
  CHECK(e.line() == 1);
  CHECK(std::string(e.what()).find("two variables") != std::string::npos);
}

TEST_CASE("parse errors carry positions") {
  auto e = parse_error("vars: x y\nminimize: x + z\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 15);
  CHECK(std::string(e.what()).find("unknown variable 'z'") != std::string::npos);
  e = parse_error("vars: x y\nminimize: x +* y\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 14);
  e = parse_error("vars: x y\nminimize: x\neq: 3 + 0*x\n");
  CHECK(e.line() == 3);
  CHECK(std::string(e.what()).find("constant") != std::string::npos);
  e = parse_error("vars: x y\nminimize: x / y\n");
  CHECK(std::string(e.what()).find("non-constant") != std::string::npos);
  CHECK(parse_error("vars: x y\nminimize: x / (1 - 1)\n").line() == 2);
  CHECK(parse_error("minimize: x\n").line() == 1);
  CHECK(parse_error("vars: x y\n").line() >= 1);
  CHECK(parse_error("vars: x y\nminimize: (x + y\n").line() == 2);
  CHECK(parse_error("vars: x y\nminimize: x^y\n").line() == 2);
  CHECK(parse_error("vars: x x\nminimize: x\n").line() == 1);
  CHECK(parse_error("vars: x y\nminimize: x\nle: y\n").line() == 3);
  CHECK(parse_error("vars: x y\neq: x\nminimize: y\n").line() == 2);
  CHECK(parse_error("vars: x y\nminimize: x\n\n  # note\n  ge: y +\n").line() == 5);
}

TEST_CASE("literals and constraint order") {
  ProblemSource src = parse_source("vars: a, b\nminimize: 0.25*a - 3/4*b^2 # comment\nge: a\neq: b - 1.5\n");
  SparsePoly expect = SparsePoly::variable(2, 0) * make_rat(1, 4) -
                      SparsePoly::variable(2, 1) * SparsePoly::variable(2, 1) * make_rat(3, 4);
  CHECK(src.objective == expect);
  REQUIRE(src.constraints.size() == 2);
  Problem p = to_problem(src);
  CHECK(p.l == 1);
  // the equality moves first
  const std::vector<Rat> pt{Rat(2), Rat(5)};
  CHECK(p.f[0].eval(RatRing{}, std::span<const Rat>(pt))[0] == make_rat(7, 2));
  CHECK(p.f[1].eval(RatRing{}, std::span<const Rat>(pt))[0] == Rat(2));
  CHECK(parse_source("vars: x y\nminimize: -x^2\n").objective ==
        SparsePoly::constant(2, Rat(0)) - SparsePoly::variable(2, 0) * SparsePoly::variable(2, 0));
}

TEST_CASE("pretty print round trip corpus") {
  std::vector<std::string> corpus{kLine, kCircle, kDisk,
                                  "vars: x y z\nminimize: x*y*z - 1/3\nge: x\nge: y\nge: z\neq: x + y + z - 1\n",
                                  "vars: u v\nminimize: (u - v)^4\neq: u^2 - 2\ndegree: 6\n",
                                  "vars: p q\nminimize: -p + 0.5*q\nge: 1 - p^2 - q^2\nge: p - q\n"};
  std::mt19937_64 rng(61);
  while (corpus.size() < 50) {
    ProblemSource s;
    const size_t n = 2 + corpus.size() % 3;
    for (size_t j = 0; j < n; ++j) s.vars.push_back((corpus.size() % 2 ? "x" : "w_") + std::to_string(j + 1));
    s.objective = random_sparse(rng, n);
    for (size_t i = 0; i < corpus.size() % 4; ++i)
      s.constraints.push_back({i % 2 ? ConstraintKind::kGe : ConstraintKind::kEq, random_sparse(rng, n), 0});
    if (corpus.size() % 5 == 0) s.degree = 8;
    corpus.push_back(pretty_print(s));
  }
  for (const auto& text : corpus) {
    const ProblemSource a = parse_source(text);
    const std::string printed = pretty_print(a);
    const ProblemSource b = parse_source(printed);
    CHECK(a == b);
    CHECK(pretty_print(b) == printed);
  }
}

TEST_CASE("json result round trip and schema") {
  const ProblemSource src = parse_source(kCircle);
  const Problem p = to_problem(src);
  SolverConfig cfg;
  cfg.seed = 5;
  const MinimizerFamily fam = finding_minimum(p, cfg);
  const json doc = result_to_json(fam, p, src.vars, 20);

  CHECK(doc["schema"] == kResultSchema);
  for (const char* key : {"vars", "alpha", "entries"}) CHECK(doc[key].is_array());
  for (const char* key : {"seed", "g_min"}) CHECK(doc[key].is_string());
  for (const char* key : {"n", "m", "l", "d", "retries", "precision"}) CHECK(doc[key].is_number_integer());
  for (const auto& e : doc["entries"]) {
    CHECK(e["p"].is_array());
    CHECK(e["v"].size() == 2);
    CHECK(e["thom"].size() + 1 == e["p"].size() - 1);
    CHECK(e["candidate"]["label"].is_string());
    for (const auto& c : e["p"]) CHECK(is_canonical(parse_rat(c.get<std::string>())));
  }

  const MinimizerFamily back = family_from_json(doc);
  REQUIRE(back.entries.size() == fam.entries.size());
  for (size_t i = 0; i < fam.entries.size(); ++i) {
    CHECK(back.entries[i].geomres.p == fam.entries[i].geomres.p);
    CHECK(back.entries[i].geomres.v == fam.entries[i].geomres.v);
    CHECK(back.entries[i].thom == fam.entries[i].thom);
    CHECK(back.entries[i].candidate == fam.entries[i].candidate);
    CHECK(back.entries[i].h == fam.entries[i].h);
  }
  CHECK(back.alpha == fam.alpha);
  CHECK(result_to_json(back, p, src.vars, 20) == doc);
  CHECK_THROWS_AS(family_from_json(json{{"schema", "other"}}), InvalidInput);
}

TEST_CASE("benchmark json and text output") {
  const ProblemSource src = parse_source(kLine);
  const Problem p = to_problem(src);
  SolverConfig cfg;
  cfg.seed = 1;
  cfg.dedupe = true;
  const MinimizerFamily fam = finding_minimum(p, cfg);
  const json doc = json::parse(emit_result(fam, p, src.vars, OutputFormat::kJson, 12));
  REQUIRE(doc["entries"].size() == 1);
  CHECK(doc["entries"][0]["point"] == json{"0.500000000000", "0.500000000000"});
  CHECK(doc["g_min"] == "0.500000000000");
  const std::string text = emit_result(fam, p, src.vars, OutputFormat::kText, 5);
  CHECK(text.find("minimum: 0.50000") != std::string::npos);
  CHECK(text.find("x2 = 0.50000") != std::string::npos);
}

TEST_CASE("thirty digits of an irrational minimizer") {
  const ProblemSource src = parse_source("vars: x1 x2\nminimize: x1\neq: x1^2 + x2^2 - 2\n");
  const Problem p = to_problem(src);
  const MinimizerFamily fam = finding_minimum(p, SolverConfig{});
  const json doc = result_to_json(fam, p, src.vars, 30);
  const std::string x1 = doc["entries"][0]["point"][0];
  CHECK(x1 == "-1.414213562373095048801688724210");
  // |x1 + sqrt2| <= 10^-30 through exact squares
  const Rat a = -parse_rat("1414213562373095048801688724210/1000000000000000000000000000000");
  const Rat tol = decimal_width(29);
  CHECK((-a - tol) * (-a - tol) < 2);
  CHECK((-a + tol) * (-a + tol) > 2);
}

TEST_CASE("oracle verify") {
  for (const char* text : {kLine, kCircle, kDisk}) {
    const Problem p = parse_problem(text);
    const MinimizerFamily fam = finding_minimum(p, SolverConfig{});
    VerifyOptions opts;
    opts.samples = 20000;
    opts.box = 3.0;
    const VerifyReport rep = oracle_verify(p, fam, opts);
    CHECK_MESSAGE(rep.ok(), rep.summary());
    CHECK(rep.feasible_samples > 0);
    CHECK_FALSE(rep.box_heuristic);

    // claimed minimum lowered by one
    MinimizerFamily bad = fam;
    for (auto& e : bad.entries) e.h = compose(e.h, UPoly{1, 1});
    const VerifyReport tampered = oracle_verify(p, bad, opts);
    CHECK_FALSE(tampered.ok());
    bool mismatch = false;
    for (const auto& v : tampered.violations) mismatch = mismatch || v.kind == "value-mismatch";
    CHECK(mismatch);
  }
  // unbounded feasible set, no box given
  const Problem line = parse_problem(kLine);
  VerifyOptions opts;
  opts.samples = 1000;
  const VerifyReport rep = oracle_verify(line, finding_minimum(line, SolverConfig{}), opts);
  CHECK(rep.box_heuristic);
  CHECK(rep.entries_checked > 0);
  CHECK(rep.summary().find("sampling box heuristic") != std::string::npos);
}

TEST_CASE("sampling catches a claim above the true minimum") {
  // a wrong family: the point (1, 0) offered for the circle
  const Problem p = parse_problem(kCircle);
  MinimizerFamily fam = finding_minimum(p, SolverConfig{});
  for (auto& e : fam.entries) {
    e.thom.signs = {-e.thom.signs[0]};
    e.value_thom.signs = {-e.value_thom.signs[0]};
  }
  VerifyOptions opts;
  opts.samples = 2000;
  const VerifyReport rep = oracle_verify(p, fam, opts);
  bool below = false;
  for (const auto& v : rep.violations) below = below || v.kind == "sample-below-minimum";
  CHECK(below);
}

TEST_CASE("cli exit codes and determinism") {
  const std::string line = temp_file("line.txt", kLine);
  const std::string bad = temp_file("bad.txt", "vars: x y\nminimize: x +\n");
  const std::string infeasible = temp_file("infeasible.txt", "vars: x y\nminimize: x\nge: -x^2 - y^2 - 1\n");
  CHECK(run_cli("solve " + line + " --seed 3") == 0);
  CHECK(run_cli("solve " + bad) == 2);
  CHECK(run_cli("solve " + infeasible) == 4);
  CHECK(run_cli("solve " + line + " --alpha-bound 1 --max-retries 0 --seed 2") == 3);
  CHECK(run_cli("verify " + line + " --samples 1000 --box 2") == 0);

  const std::string out1 = std::string(POLYOPT_TMP) + "/r1.json", out2 = std::string(POLYOPT_TMP) + "/r2.json";
  REQUIRE(run_cli("solve " + line + " --seed 11 -o " + out1) == 0);
  REQUIRE(run_cli("solve " + line + " --seed 11 --parallel 2 -o " + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(run_cli("verify " + line + " --result " + out1 + " --samples 1000") == 0);
}
