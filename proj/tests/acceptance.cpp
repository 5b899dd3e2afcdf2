// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "polyopt/lifting.hpp"
#include "polyopt/oracle_verify.hpp"
#include "polyopt/problem_parser.hpp"
#include "polyopt/result_document.hpp"
#include "test_util.hpp"

using namespace polyopt;
using namespace polyopt::testing;
using nlohmann::json;

namespace {

struct Bench {
  std::string name, file;
  std::vector<Rat> point;
  Rat gmin;
};

const std::vector<Bench>& benches() {
  static const std::vector<Bench> b{
      {"a", "line.txt", {make_rat(1, 2), make_rat(1, 2)}, make_rat(1, 2)},
      {"b", "circle.txt", {Rat(-1), Rat(0)}, Rat(-1)},
      {"c", "disk.txt", {Rat(1), Rat(0)}, Rat(1)},
  };
  return b;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string problem_path(const Bench& b) { return std::string(POLYOPT_PROBLEMS) + "/" + b.file; }

// "-0.50" -> -1/2
Rat decimal_rat(const std::string& s) {
  const bool neg = !s.empty() && s[0] == '-';
  std::string body = neg ? s.substr(1) : s;
  const size_t dot = body.find('.');
  size_t frac = 0;
  if (dot != std::string::npos) {
    frac = body.size() - dot - 1;
    body.erase(dot, 1);
  }
  Int num(body, 10), den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
  Rat r = make_rat(num, den);
  return neg ? Rat(-r) : r;
}

bool value_is(const MinimizerEntry& e, const Rat& c) {
  const UPoly hs = value_polynomial(e.h);
  if (sgn(hs(c)) != 0) return false;
  ThomEncoding t;
  for (const auto& d : thom_derivatives(hs)) t.signs.push_back(sgn(d(c)));
  return t == e.value_thom;
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(POLYOPT_CLI) + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct Run {
  ProblemSource src;
  Problem problem;
  MinimizerFamily fam;
  double seconds = 0;
};

std::vector<Run>& runs() {
  static std::vector<Run> r;
  return r;
}

constexpr std::uint64_t kSeed = 20261016;

// 1. end-to-end benchmarks
bool benchmarks(std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (const Bench& b : benches()) {
    Run r;
    r.src = parse_source(slurp(problem_path(b)));
    r.problem = to_problem(r.src);
    SolverConfig cfg;
    cfg.seed = kSeed;
    const auto t0 = std::chrono::steady_clock::now();
    r.fam = finding_minimum(r.problem, cfg);
    const json doc = json::parse(emit_result(r.fam, r.problem, r.src.vars, OutputFormat::kJson, 20));
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool good = !r.fam.entries.empty() && r.seconds < 120;
    double err = 0;
    for (size_t i = 0; i < r.fam.entries.size(); ++i) {
      for (size_t j = 0; j < b.point.size(); ++j)
        err = std::max(err, std::abs(Rat(decimal_rat(doc["entries"][i]["point"][j]) - b.point[j]).get_d()));
      good = good && value_is(r.fam.entries[i], b.gmin);
    }
    err = std::max(err, std::abs(Rat(decimal_rat(doc["g_min"]) - b.gmin).get_d()));
    good = good && err <= 1e-9;
    os << b.name << ": " << r.fam.entries.size() << " entries, err " << err << ", " << r.seconds << " s; ";
    ok = ok && good;
    runs().push_back(std::move(r));
  }
  detail = os.str();
  return ok;
}

std::vector<GeomRes>& produced() {
  static std::vector<GeomRes> r;
  return r;
}

// 2. initial resolutions have exactly D_s points
bool cardinalities(std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (size_t n : {2, 3})
    for (int d : {2, 4}) {
      SparsePoly g(n), lin = SparsePoly::constant(n, Rat(-1));
      for (size_t j = 0; j < n; ++j) {
        g += SparsePoly::variable(n, j).pow(static_cast<unsigned>(d));
        lin += SparsePoly::variable(n, j);
      }
      const SparsePoly quad = SparsePoly::variable(n, 0) * SparsePoly::variable(n, 1) - SparsePoly::constant(n, Rat(2));
      const Problem p = problem_from_polys({lin, quad}, g, 1, d);
      const DeformationData dd = build_deformation(p);
      std::vector<Rat> alpha;
      for (size_t j = 0; j < n; ++j) alpha.push_back(make_rat(static_cast<long>(5 + 3 * j), static_cast<long>(11 - j)));
      for (const Candidate& c : enumerate_candidates(p)) {
        if (c.s() > 2) continue;
        const GeomRes r = initial_geomres(p, dd, c, alpha);
        const std::int64_t expect = bezout_bound(static_cast<int>(n), d, static_cast<int>(c.s()));
        if (r.degree() != expect) {
          ok = false;
          os << "n=" << n << " d=" << d << " " << c.label() << ": " << r.degree() << " != " << expect << "; ";
        }
        produced().push_back(r);
      }
      os << "n=" << n << ",d=" << d << " ok; ";
    }
  detail = os.str();
  return ok;
}

// 3. lifted parametrizations solve the deformed system to order 2 n D_s + 1
bool lifting_residuals(std::string& detail) {
  size_t checked = 0;
  bool ok = true;
  for (const Run& r : runs()) {
    const DeformationData dd = build_deformation(r.problem);
    for (const Candidate& c : enumerate_candidates(r.problem)) {
      const GeomRes init = initial_geomres(r.problem, dd, c, r.fam.alpha);
      const DeformedSystem sys = build_deformed_system(r.problem, dd, c);
      const auto kappa = static_cast<size_t>(2 * static_cast<std::int64_t>(r.problem.n) * c.bezout + 1);
      const LiftedRes lifted = newton_lift_t(init, sys, kappa);
      for (const auto& res : lifting_residual(lifted, sys))
        for (const auto& coeff : res) ok = ok && coeff.is_zero();
      produced().push_back(init);
      produced().push_back(geometric_resolution(r.problem, dd, c, r.fam.alpha));
      ++checked;
    }
  }
  detail = std::to_string(checked) + " candidates";
  return ok && checked > 0;
}

// 4. every resolution from runs 1-2 is valid
bool validity(std::string& detail) {
  size_t bad = 0, total = 0;
  auto check = [&](const GeomRes& r) {
    ++total;
    if (!resolution_is_valid(r)) ++bad;
  };
  for (const GeomRes& r : produced()) check(r);
  for (const Run& r : runs())
    for (const auto& e : r.fam.entries) check(e.geomres);
  detail = std::to_string(total) + " resolutions, " + std::to_string(bad) + " invalid";
  return bad == 0 && total > 0;
}

// 5. sign determination against evaluation at isolated roots
bool sign_oracle(std::string& detail) {
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_int_distribution<int> dp(1, 12), dk(0, 4), dq(0, 12);
  size_t mismatches = 0;
  for (int it = 0; it < 100; ++it) {
    const UPoly p = random_poly(rng, dp(rng), -20, 20);
    std::vector<UPoly> qs;
    for (int k = dk(rng); k > 0; --k) qs.push_back(random_poly(rng, dq(rng), -20, 20));
    std::map<std::vector<int>, int> got;
    for (const auto& row : sign_determination(p, qs)) got[row.signs] = row.count;
    if (got != signs_by_evaluation(p, qs)) ++mismatches;
  }
  detail = "100 instances, " + std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

// 6. Thom order against numeric order
bool thom_order(std::string& detail) {
  std::mt19937_64 rng(kSeed + 6);
  size_t pairs = 0, mismatches = 0;
  for (int it = 0; it < 100; ++it) {
    const UPoly p = random_squarefree(rng, 12);
    const auto ivs = isolate_roots(p);
    std::vector<ThomEncoding> enc;
    for (const auto& iv : ivs) {
      ThomEncoding t;
      for (const auto& d : thom_derivatives(p)) t.signs.push_back(sign_by_bisection(p, iv.lo, iv.hi, d));
      enc.push_back(t);
    }
    for (size_t i = 0; i < enc.size(); ++i)
      for (size_t j = 0; j < enc.size(); ++j) {
        ++pairs;
        const int expect = i < j ? -1 : (i == j ? 0 : 1);
        if (thom_compare(enc[i], enc[j], sgn(p.leading())) != expect) ++mismatches;
      }
  }
  detail = std::to_string(pairs) + " pairs, " + std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

// 7. rejection sampling finds nothing below the minimum
bool sampling(std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (size_t i = 0; i < runs().size(); ++i) {
    VerifyOptions opts;
    opts.samples = 100000;
    opts.seed = kSeed;
    opts.tolerance = 1e-9;
    const VerifyReport rep = oracle_verify(runs()[i].problem, runs()[i].fam, opts);
    os << benches()[i].name << ": " << rep.feasible_samples << " feasible, " << rep.violations.size() << " violations; ";
    ok = ok && rep.ok() && rep.samples == 100000;
  }
  detail = os.str();
  return ok;
}

// 8. same seed, same bytes
bool determinism(std::string& detail) {
  bool ok = true;
  for (const Bench& b : benches()) {
    const std::string o1 = std::string(POLYOPT_TMP) + "/det_" + b.name + "_1.json";
    const std::string o2 = std::string(POLYOPT_TMP) + "/det_" + b.name + "_2.json";
    const std::string args = "solve " + problem_path(b) + " --seed 77 -o ";
    if (run_cli(args + o1) != 0 || run_cli(args + o2 + " --parallel 4") != 0) return false;
    ok = ok && slurp(o1) == slurp(o2) && !slurp(o1).empty();
  }
  detail = "3 benchmarks, sequential vs parallel";
  return ok;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool(std::string&)>>> criteria{
      {"1 benchmark correctness", benchmarks},   {"2 initial-variety cardinality", cardinalities},
      {"3 lifting residual", lifting_residuals}, {"4 resolution validity", validity},
      {"5 sign-determination oracle", sign_oracle}, {"6 Thom ordering", thom_order},
      {"7 oracle sampling", sampling},            {"8 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s (%.1f s): %s\n", ok ? "PASS" : "FAIL", name.c_str(), secs, detail.c_str());
    std::fflush(stdout);
    failed += ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
