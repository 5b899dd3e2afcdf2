#include "polyopt/optimizer.hpp"

#include <algorithm>
#include <future>
#include <optional>

#include "polyopt/errors.hpp"
#include "polyopt/lifting.hpp"

namespace polyopt {

namespace {

std::vector<UPoly> x_coords(const GeomRes& gr) { return {gr.v.begin(), gr.v.begin() + static_cast<long>(gr.x_count)}; }

ThomEncoding slice(const std::vector<int>& signs, size_t from, size_t to) {
  return ThomEncoding{std::vector<int>(signs.begin() + static_cast<long>(from), signs.begin() + static_cast<long>(to))};
}

// Determinant of a small matrix over Q[u]/p by cofactor expansion.
UPoly det_mod(const std::vector<std::vector<UPoly>>& m, const UPoly& p) {
  const size_t n = m.size();
  if (n == 0) return UPoly{1};
  if (n == 1) return m[0][0] % p;
  UPoly acc;
  for (size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<UPoly>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<UPoly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    UPoly term = (m[0][c] * det_mod(minor, p)) % p;
    acc = c % 2 ? acc - term : acc + term;
  }
  return acc % p;
}

void combinations(size_t n, size_t k, std::vector<size_t>& cur, std::vector<std::vector<size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (size_t i = cur.empty() ? 0 : cur.back() + 1; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, cur, out);
    cur.pop_back();
  }
}

CandidateResult solve_candidate(const Problem& problem, const DeformationData& dd, const Candidate& c,
                                const std::vector<Rat>& alpha) {
  GeomRes gr = geometric_resolution(problem, dd, c, alpha);
  if (!verify_candidate(gr, problem, c))
    throw SeparationFailure("resolution of " + c.label() + " does not solve its system", Stage::kVerification);
  CandidateResult r = min_in_geomres(gr, problem);
  r.candidate = c;
  return r;
}

std::vector<MinimizerEntry> entries_of(const CandidateResult& r) {
  std::vector<MinimizerEntry> out;
  for (const auto& t : r.thoms) out.push_back({r.geomres, t, r.candidate, r.h, r.value_thom});
  return out;
}

}  // namespace

UPoly value_polynomial(const UPoly& h) { return squarefree_part(h).monic(); }

UPoly compose_mod(const UPoly& f, const UPoly& g, const UPoly& p) {
  UPoly acc;
  const UPoly gr = g % p;
  for (int i = f.degree(); i >= 0; --i) acc = (acc * gr + UPoly::constant(f.coeff(static_cast<size_t>(i)))) % p;
  return acc;
}

UPoly resultant_h(const GeomRes& gr, const Slp& g) {
  const int d = gr.p.degree();
  if (d <= 0) return UPoly{1};
  const auto xs = x_coords(gr);
  const UPoly gv = slp_compose_univariate(g, xs, gr.p);
  // traces of gv^k through the power sums of p, then Newton's identities
  const std::vector<Rat> s = root_power_sums(gr.p, static_cast<size_t>(d));
  std::vector<Rat> tr(static_cast<size_t>(d) + 1);
  UPoly pw{1};
  for (int k = 1; k <= d; ++k) {
    pw = (pw * gv) % gr.p;
    Rat t(0);
    for (int i = 0; i <= pw.degree(); ++i) t += pw.coeff(static_cast<size_t>(i)) * s[static_cast<size_t>(i)];
    tr[static_cast<size_t>(k)] = t;
  }
  // h = u^d + e_1 u^(d-1) + ... with k e_k = -(tr_k + sum_{i<k} e_i tr_{k-i})
  std::vector<Rat> e(static_cast<size_t>(d) + 1);
  e[0] = 1;
  for (int k = 1; k <= d; ++k) {
    Rat acc = tr[static_cast<size_t>(k)];
    for (int i = 1; i < k; ++i) acc += e[static_cast<size_t>(i)] * tr[static_cast<size_t>(k - i)];
    e[static_cast<size_t>(k)] = -acc / k;
  }
  std::vector<Rat> coeffs(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) coeffs[static_cast<size_t>(d - k)] = e[static_cast<size_t>(k)];
  return UPoly(std::move(coeffs));
}

CandidateResult min_in_geomres(const GeomRes& gr, const Problem& problem) {
  CandidateResult r;
  r.geomres = gr;
  if (gr.empty()) return r;
  const auto xs = x_coords(gr);
  r.h = resultant_h(gr, problem.g);
  const UPoly hs = value_polynomial(r.h);
  const UPoly gv = slp_compose_univariate(problem.g, xs, gr.p);

  std::vector<UPoly> qs;
  for (const auto& f : problem.f) qs.push_back(slp_compose_univariate(f, xs, gr.p));
  const size_t root_offset = qs.size();
  for (const auto& d : thom_derivatives(gr.p)) qs.push_back(d);
  const size_t value_offset = qs.size();
  for (const auto& d : thom_derivatives(hs)) qs.push_back(compose_mod(d, gv, gr.p));

  bool found = false;
  for (const auto& row : sign_determination(gr.p, qs)) {
    if (row.count != 1) throw InvariantViolation("derivative signs do not separate the roots");
    bool feasible = true;
    for (size_t i = 0; i < problem.m; ++i) {
      const int s = row.signs[i];
      if (i < problem.l ? s != 0 : s < 0) feasible = false;
    }
    if (!feasible) continue;
    const ThomEncoding root = slice(row.signs, root_offset, value_offset);
    const ThomEncoding value = slice(row.signs, value_offset, row.signs.size());
    const int cmp = found ? thom_compare(value, r.value_thom) : -1;
    if (cmp < 0) {
      r.thoms.clear();
      r.value_thom = value;
      found = true;
    }
    if (cmp <= 0) r.thoms.push_back(root);
  }
  r.empty = !found;
  // increasing root order keeps the output independent of table order
  std::sort(r.thoms.begin(), r.thoms.end(),
            [](const ThomEncoding& a, const ThomEncoding& b) { return thom_compare(a, b) < 0; });
  return r;
}

int comparing_minimums(const CandidateResult& r1, const CandidateResult& r2, const Slp& g) {
  if (r1.empty || r2.empty) throw InvalidInput("comparing_minimums needs two non-empty results");
  const GeomRes u = geomres_union(r1.geomres, r2.geomres);
  const UPoly hs = value_polynomial(resultant_h(u, g));
  const UPoly gv = slp_compose_univariate(g, x_coords(u), u.p);

  std::vector<UPoly> qs;
  auto add_root_polys = [&qs](const UPoly& p) {
    const size_t from = qs.size();
    qs.push_back(p);
    for (const auto& d : thom_derivatives(p)) qs.push_back(d);
    return from;
  };
  const size_t o1 = add_root_polys(r1.geomres.p);
  const size_t o2 = add_root_polys(r2.geomres.p);
  const size_t ov = qs.size();
  for (const auto& d : thom_derivatives(hs)) qs.push_back(compose_mod(d, gv, u.p));

  std::optional<ThomEncoding> v1, v2;
  for (const auto& row : sign_determination(u.p, qs)) {
    if (row.signs[o1] == 0 && slice(row.signs, o1 + 1, o2) == r1.thoms.front()) v1 = slice(row.signs, ov, qs.size());
    if (row.signs[o2] == 0 && slice(row.signs, o2 + 1, ov) == r2.thoms.front()) v2 = slice(row.signs, ov, qs.size());
  }
  if (!v1 || !v2) throw SeparationFailure("minimizing root not found in the union", Stage::kComparison);
  return thom_compare(*v1, *v2);
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

std::vector<Rat> draw_alpha(std::uint64_t seed, int attempt, size_t n, long bound) {
  std::mt19937_64 rng = stream_rng(seed, static_cast<std::uint32_t>(attempt));
  std::uniform_int_distribution<long> dist(-bound, bound);
  std::vector<Rat> alpha;
  for (size_t j = 0; j < n; ++j) alpha.emplace_back(dist(rng));
  return alpha;
}

bool verify_candidate(const GeomRes& gr, const Problem& problem, const Candidate& c) {
  if (!resolution_is_valid(gr)) return false;
  if (gr.empty()) return true;
  const auto xs = x_coords(gr);
  if (xs.size() != problem.n) return false;
  std::vector<std::vector<UPoly>> rows;
  rows.push_back(slp_compose_univariate_all(slp_gradient(problem.g), xs, gr.p));
  for (size_t i : c.active) {
    auto grad = slp_compose_univariate_all(slp_gradient(problem.f[i]), xs, gr.p);
    if (!grad[0].is_zero()) return false;
    rows.push_back(std::move(grad));
  }
  // drop the value column, keep the partial derivatives
  for (auto& row : rows) row.erase(row.begin());
  const size_t k = rows.size();
  if (k > problem.n) return true;
  std::vector<std::vector<size_t>> cols;
  std::vector<size_t> cur;
  combinations(problem.n, k, cur, cols);
  for (const auto& cs : cols) {
    std::vector<std::vector<UPoly>> m(k);
    for (size_t r = 0; r < k; ++r)
      for (size_t col : cs) m[r].push_back(rows[r][col]);
    if (!det_mod(m, gr.p).is_zero()) return false;
  }
  return true;
}

bool same_point(const MinimizerEntry& a, const MinimizerEntry& b) {
  const GeomRes& ra = a.geomres;
  std::vector<UPoly> qs = thom_derivatives(ra.p);
  const size_t off = qs.size();
  qs.push_back(b.geomres.p);
  // xi_a is a root of p_b; it must be the one encoded by b's Thom encoding
  for (const auto& d : thom_derivatives(b.geomres.p)) qs.push_back(d);
  const size_t voff = qs.size();
  for (size_t j = 0; j < ra.x_count; ++j) qs.push_back((ra.v[j] - b.geomres.v[j]) % ra.p);
  for (const auto& row : sign_determination(ra.p, qs)) {
    if (slice(row.signs, 0, off) != a.thom) continue;
    if (row.signs[off] != 0 || slice(row.signs, off + 1, voff) != b.thom) return false;
    for (size_t j = voff; j < row.signs.size(); ++j)
      if (row.signs[j] != 0) return false;
    return true;
  }
  return false;
}

MinimizerFamily finding_minimum(const Problem& problem, const SolverConfig& cfg) {
  problem.validate();
  if (cfg.alpha_bound < 1) throw InvalidInput("alpha bound must be positive");
  const DeformationData dd = build_deformation(problem);
  const std::vector<Candidate> cands = enumerate_candidates(problem);
  std::string last;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    const std::vector<Rat> alpha = draw_alpha(cfg.seed, attempt, problem.n, cfg.alpha_bound);
    try {
      std::vector<CandidateResult> results(cands.size());
      const size_t width = static_cast<size_t>(std::max(1, cfg.parallel));
      for (size_t start = 0; start < cands.size(); start += width) {
        std::vector<std::future<CandidateResult>> jobs;
        const size_t stop = std::min(cands.size(), start + width);
        for (size_t i = start; i < stop; ++i)
          jobs.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, solve_candidate,
                                    std::cref(problem), std::cref(dd), std::cref(cands[i]), std::cref(alpha)));
        for (size_t i = start; i < stop; ++i) results[i] = jobs[i - start].get();
      }

      const CandidateResult* best = nullptr;
      MinimizerFamily fam;
      fam.alpha = alpha;
      fam.retries = attempt;
      fam.seed = cfg.seed;
      for (const auto& r : results) {
        if (r.empty) continue;
        const int sign = best ? comparing_minimums(*best, r, problem.g) : 1;
        if (sign > 0) {
          best = &r;
          fam.entries = entries_of(r);
        } else if (sign == 0) {
          for (auto& e : entries_of(r)) fam.entries.push_back(std::move(e));
        }
      }
      if (!best)
        throw NoFeasibleCriticalPoint(attempt, "no candidate has a critical point in the feasible set (after " +
                                                   std::to_string(attempt) + " retries)");
      if (cfg.dedupe) {
        std::vector<MinimizerEntry> kept;
        for (auto& e : fam.entries) {
          bool dup = false;
          for (const auto& k : kept) dup = dup || same_point(k, e);
          if (!dup) kept.push_back(std::move(e));
        }
        fam.entries = std::move(kept);
      }
      return fam;
    } catch (const GenericityFailure& e) {
      last = e.what();
    }
  }
  throw RetriesExhausted(cfg.max_retries + 1, last);
}

}  // namespace polyopt
