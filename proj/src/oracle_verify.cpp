#include "polyopt/oracle_verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "polyopt/result_document.hpp"

namespace polyopt {

namespace {

struct IntervalRing {
  using Element = RootInterval;
  RootInterval from_rat(const Rat& c) const { return {c, c}; }
  RootInterval add(const RootInterval& a, const RootInterval& b) const { return {a.lo + b.lo, a.hi + b.hi}; }
  RootInterval sub(const RootInterval& a, const RootInterval& b) const { return {a.lo - b.hi, a.hi - b.lo}; }
  RootInterval mul(const RootInterval& a, const RootInterval& b) const {
    const Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
  }
};

double magnitude(const RootInterval& iv) { return std::max(std::abs(iv.lo.get_d()), std::abs(iv.hi.get_d())); }

RootInterval det_interval(const std::vector<std::vector<RootInterval>>& m) {
  const IntervalRing ring;
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  RootInterval acc{Rat(0), Rat(0)};
  for (size_t c = 0; c < n; ++c) {
    std::vector<std::vector<RootInterval>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<RootInterval> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    const RootInterval t = ring.mul(m[0][c], det_interval(minor));
    acc = c % 2 ? ring.sub(acc, t) : ring.add(acc, t);
  }
  return acc;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void check_entry(const Problem& problem, const MinimizerEntry& e, size_t index, const Rat& claim, double tol,
                 std::vector<Violation>& out) {
  const std::string tag = "entry " + std::to_string(index + 1) + ": ";
  const Rat w = decimal_width(29);
  const std::vector<RootInterval> x = entry_point(e, w);
  const IntervalRing ring;
  for (size_t i = 0; i < problem.m; ++i) {
    const RootInterval v = problem.f[i].eval(ring, std::span<const RootInterval>(x))[0];
    const bool ok = i < problem.l ? magnitude(v) <= tol : v.lo.get_d() >= -tol;
    if (!ok) out.push_back({"infeasible", tag + "constraint " + std::to_string(i + 1) + " = " + fmt(v.lo.get_d())});
  }
  std::vector<std::vector<RootInterval>> rows;
  rows.push_back(slp_gradient(problem.g).eval(ring, std::span<const RootInterval>(x)));
  for (size_t i : e.candidate.active) rows.push_back(slp_gradient(problem.f[i]).eval(ring, std::span<const RootInterval>(x)));
  for (auto& r : rows) r.erase(r.begin());
  const size_t k = rows.size();
  if (k <= problem.n) {
    // every k x k minor of [grad g; grad f_S] vanishes
    std::vector<size_t> cols(k);
    for (size_t j = 0; j < k; ++j) cols[j] = j;
    while (true) {
      std::vector<std::vector<RootInterval>> m(k);
      for (size_t r = 0; r < k; ++r)
        for (size_t c : cols) m[r].push_back(rows[r][c]);
      const RootInterval d = det_interval(m);
      if (magnitude(d) > tol) {
        out.push_back({"not-stationary", tag + "Lagrange minor = " + fmt(d.lo.get_d())});
        break;
      }
      size_t j = k;
      while (j > 0 && cols[j - 1] == problem.n - k + j - 1) --j;
      if (j == 0) break;
      ++cols[j - 1];
      for (size_t r = j; r < k; ++r) cols[r] = cols[r - 1] + 1;
    }
  }
  const RootInterval gv = problem.g.eval(ring, std::span<const RootInterval>(x))[0];
  const double gap = std::max(std::abs(Rat(gv.lo - claim).get_d()), std::abs(Rat(gv.hi - claim).get_d()));
  if (gap > tol) out.push_back({"value-mismatch", tag + "g(point) = " + fmt(gv.lo.get_d()) + ", claimed " + fmt(claim.get_d())});
}

// Newton projection onto the equality constraints; false if it does not settle.
bool project(const Problem& problem, const std::vector<Slp>& grads, Eigen::VectorXd& x) {
  const DoubleRing ring;
  const size_t l = problem.l, n = problem.n;
  for (int it = 0; it < 40; ++it) {
    Eigen::VectorXd f(l);
    Eigen::MatrixXd j(l, n);
    std::vector<double> pt(x.data(), x.data() + n);
    for (size_t i = 0; i < l; ++i) {
      const auto gr = grads[i].eval(ring, std::span<const double>(pt));
      f(static_cast<long>(i)) = gr[0];
      for (size_t c = 0; c < n; ++c) j(static_cast<long>(i), static_cast<long>(c)) = gr[c + 1];
    }
    if (f.norm() < 1e-13) return true;
    if (!f.allFinite() || !j.allFinite()) return false;
    x -= j.completeOrthogonalDecomposition().solve(f);
  }
  return false;
}

}  // namespace

std::string VerifyReport::summary() const {
  std::ostringstream os;
  os << "entries checked: " << entries_checked << "\n";
  os << "samples: " << samples << ", feasible: " << feasible_samples << ", box: [-" << fmt(box) << ", " << fmt(box)
     << "]^n" << (box_heuristic ? " (sampling box heuristic)" : "") << "\n";
  os << "claimed minimum: " << fmt(claimed_min);
  if (feasible_samples > 0) os << ", best sample: " << fmt(best_sample);
  os << "\n";
  os << "violations: " << violations.size() << "\n";
  for (const auto& v : violations) os << "  " << v.kind << ": " << v.detail << "\n";
  return os.str();
}

VerifyReport oracle_verify(const Problem& problem, const MinimizerFamily& fam, const VerifyOptions& opts) {
  VerifyReport rep;
  rep.best_sample = std::numeric_limits<double>::infinity();
  if (fam.entries.empty()) {
    rep.violations.push_back({"empty", "the family has no entries"});
    return rep;
  }
  const RootInterval claim_iv = entry_value(fam.entries[0], decimal_width(29));
  const Rat claim = (claim_iv.lo + claim_iv.hi) / 2;
  rep.claimed_min = claim.get_d();

  double extent = 1;
  for (size_t i = 0; i < fam.entries.size(); ++i) {
    check_entry(problem, fam.entries[i], i, claim, opts.tolerance, rep.violations);
    for (const auto& c : entry_point(fam.entries[i], make_rat(1, 1000000))) extent = std::max(extent, magnitude(c));
    ++rep.entries_checked;
  }

  rep.box_heuristic = !opts.box.has_value();
  rep.box = opts.box.value_or(4 * extent);
  std::mt19937_64 rng = stream_rng(opts.seed, kSamplingStream);
  std::uniform_real_distribution<double> coord(-rep.box, rep.box);
  std::vector<Slp> eq_grads;
  for (size_t i = 0; i < problem.l; ++i) eq_grads.push_back(slp_gradient(problem.f[i]));
  const DoubleRing ring;
  size_t below = 0;
  double worst = 0;
  std::vector<double> worst_point;
  for (size_t s = 0; s < opts.samples; ++s) {
    Eigen::VectorXd x(static_cast<long>(problem.n));
    for (long j = 0; j < x.size(); ++j) x(j) = coord(rng);
    ++rep.samples;
    if (problem.l > 0 && !project(problem, eq_grads, x)) continue;
    const std::vector<double> pt(x.data(), x.data() + x.size());
    bool feasible = true;
    for (size_t i = problem.l; i < problem.m && feasible; ++i)
      feasible = problem.f[i].eval(ring, std::span<const double>(pt))[0] >= 0;
    if (!feasible) continue;
    ++rep.feasible_samples;
    const double g = problem.g.eval(ring, std::span<const double>(pt))[0];
    rep.best_sample = std::min(rep.best_sample, g);
    if (g < rep.claimed_min - opts.tolerance) {
      ++below;
      if (rep.claimed_min - g > worst) {
        worst = rep.claimed_min - g;
        worst_point = pt;
      }
    }
  }
  if (below > 0) {
    std::ostringstream os;
    os << below << " feasible sample(s) below the claimed minimum, worst by " << fmt(worst) << " at (";
    for (size_t j = 0; j < worst_point.size(); ++j) os << (j ? ", " : "") << fmt(worst_point[j]);
    os << ")";
    rep.violations.push_back({"sample-below-minimum", os.str()});
  }
  return rep;
}

}  // namespace polyopt
