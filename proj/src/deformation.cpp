#include "polyopt/deformation.hpp"

#include <sstream>

#include "polyopt/errors.hpp"
#include "polyopt/upoly.hpp"

namespace polyopt {

namespace {

bool is_prime(long x) {
  if (x < 2) return false;
  for (long k = 2; k * k <= x; ++k) {
    if (x % k == 0) return false;
  }
  return true;
}

SlpBuilder::Node eval_upoly(SlpBuilder& b, const UPoly& p, SlpBuilder::Node x) {
  SlpBuilder::Node acc = b.constant(Rat(0));
  for (int i = p.degree(); i >= 0; --i) acc = b.add(b.mul(acc, x), b.constant(p.coeff(static_cast<size_t>(i))));
  return acc;
}

}  // namespace

void Problem::validate() const {
  if (n < 2) throw InvalidInput("at least two variables are required");
  if (l > m) throw InvalidInput("more equality constraints than constraints");
  if (f.size() != m) throw InvalidInput("constraint count does not match m");
  if (d < 2 || d % 2 != 0) throw InvalidInput("degree bound must be even and at least 2");
  auto check = [this](const Slp& s, const std::string& what) {
    if (s.inputs() != n) throw InvalidInput(what + " has the wrong number of inputs");
    if (s.output_count() != 1) throw InvalidInput(what + " must have exactly one output");
  };
  check(g, "objective");
  for (size_t i = 0; i < m; ++i) check(f[i], "constraint " + std::to_string(i + 1));
}

Problem problem_from_polys(const std::vector<SparsePoly>& f, const SparsePoly& g, size_t l, int d) {
  Problem p;
  p.n = g.vars();
  p.m = f.size();
  p.l = l;
  int maxdeg = std::max(g.total_degree(), 1);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].vars() != p.n) throw InvalidInput("constraint " + std::to_string(i + 1) + " uses a different variable count");
    if (f[i].total_degree() <= 0) throw InvalidInput("constraint " + std::to_string(i + 1) + " is constant");
    maxdeg = std::max(maxdeg, f[i].total_degree());
  }
  if (d >= 0 && d < maxdeg) throw InvalidInput("degree bound " + std::to_string(d) + " is below the input degree " + std::to_string(maxdeg));
  if (d < 0) d = maxdeg;
  p.d = std::max(2, d + (d % 2));
  p.g = slp_from_sparse(std::vector{g});
  for (const auto& fi : f) p.f.push_back(slp_from_sparse(std::vector{fi}));
  p.validate();
  return p;
}

std::string Candidate::label() const {
  std::ostringstream os;
  os << "{";
  for (size_t k = 0; k < active.size(); ++k) {
    if (k) os << ",";
    os << active[k] + 1 << (sigma[k] > 0 ? "+" : "-");
  }
  os << "}";
  return os.str();
}

std::vector<long> primes_after(int n, int m) {
  std::vector<long> out;
  long x = n + 2;
  while (static_cast<int>(out.size()) < m) {
    if (is_prime(x)) out.push_back(x);
    ++x;
  }
  return out;
}

DeformationData build_deformation(const Problem& p) {
  p.validate();
  DeformationData dd;
  dd.q.push_back(static_cast<long>(p.n) + 1);
  for (long q : primes_after(static_cast<int>(p.n), static_cast<int>(p.m))) dd.q.push_back(q);
  dd.a.assign(p.m + 1, std::vector<Rat>(p.n + 1));
  for (size_t i = 0; i <= p.m; ++i) {
    for (size_t j = 0; j <= p.n; ++j) dd.a[i][j] = make_rat(1, dd.q[i] - static_cast<long>(j));
  }
  const UPoly td = chebyshev(p.d);
  {
    SlpBuilder b(p.n);
    SlpBuilder::Node acc = b.constant(Rat(0));
    for (size_t j = 1; j <= p.n; ++j) acc = acc + dd.a[0][j] * eval_upoly(b, td, b.input(j - 1));
    dd.tilde_g = b.build(std::vector{acc});
  }
  const UPoly td_plus_one = td + UPoly{1};
  for (size_t i = 1; i <= p.m; ++i) {
    SlpBuilder b(p.n);
    SlpBuilder::Node acc = b.constant(dd.a[i][0]);
    for (size_t j = 1; j <= p.n; ++j) acc = acc + dd.a[i][j] * eval_upoly(b, td_plus_one, b.input(j - 1));
    dd.tilde_f.push_back(b.build(std::vector{acc}));
  }
  return dd;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t bezout_bound(int n, int d, int s) {
  if (s < 0 || s > n || d < 2) throw InvalidInput("bezout_bound needs 0 <= s <= n and d >= 2");
  std::int64_t r = binomial(n, s);
  for (int i = 0; i < s; ++i) r *= d;
  for (int i = 0; i < n - s; ++i) r *= d - 1;
  return r;
}

std::vector<Candidate> enumerate_candidates(const Problem& p) {
  p.validate();
  const size_t smax = std::min(p.n, p.m);
  std::vector<Candidate> out;
  for (size_t s = 0; s <= smax; ++s) {
    // subsets of size s in lexicographic order
    std::vector<size_t> idx(s);
    for (size_t k = 0; k < s; ++k) idx[k] = k;
    while (true) {
      size_t free_signs = 0;
      for (size_t i : idx) free_signs += i < p.l ? 1 : 0;
      for (size_t mask = 0; mask < (size_t{1} << free_signs); ++mask) {
        Candidate c;
        c.active = idx;
        size_t bit = 0;
        for (size_t i : idx) {
          if (i < p.l) {
            c.sigma.push_back((mask >> bit) & 1U ? -1 : +1);
            ++bit;
          } else {
            c.sigma.push_back(+1);
          }
        }
        c.bezout = bezout_bound(static_cast<int>(p.n), p.d, static_cast<int>(s));
        out.push_back(std::move(c));
      }
      // next combination
      size_t k = s;
      while (k > 0 && idx[k - 1] == p.m - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (size_t r = k; r < s; ++r) idx[r] = idx[r - 1] + 1;
    }
  }
  return out;
}

std::int64_t candidate_count_formula(size_t n, size_t m, size_t l) {
  std::int64_t total = 0;
  const size_t smax = std::min(n, m);
  for (size_t s = 0; s <= smax; ++s) {
    for (size_t s1 = 0; s1 <= std::min(s, l); ++s1) {
      const size_t s2 = s - s1;
      if (s2 > m - l) continue;
      total += binomial(static_cast<int>(l), static_cast<int>(s1)) *
               binomial(static_cast<int>(m - l), static_cast<int>(s2)) * (std::int64_t{1} << s1);
    }
  }
  return total;
}

DeformedSystem build_deformed_system(const Problem& p, const DeformationData& dd, const Candidate& c) {
  const size_t n = p.n, s = c.s();
  if (c.sigma.size() != s) throw InvalidInput("candidate sign vector has the wrong length");

  // Homotopies as slps over (t, x): H = t*h + sign*(1 - t)*h0, then gradients.
  auto homotopy_gradient = [n](const Slp& target, const Slp& start, int sign) {
    SlpBuilder b(n + 1);
    std::vector<SlpBuilder::Node> x;
    for (size_t j = 0; j < n; ++j) x.push_back(b.input(j + 1));
    const SlpBuilder::Node t = b.input(0);
    const SlpBuilder::Node h = b.inline_slp(target, x)[0];
    const SlpBuilder::Node h0 = b.inline_slp(start, x)[0];
    SlpBuilder::Node one_minus_t = Rat(1) - t;
    SlpBuilder::Node start_term = one_minus_t * h0;
    SlpBuilder::Node expr = sign > 0 ? t * h + start_term : t * h - start_term;
    return slp_gradient(b.build(std::vector{expr}));
  };

  SlpBuilder b(1 + n + s);
  std::vector<SlpBuilder::Node> tx;
  for (size_t k = 0; k <= n; ++k) tx.push_back(b.input(k));
  std::vector<SlpBuilder::Node> outputs;
  std::vector<std::vector<SlpBuilder::Node>> grad_f;
  for (size_t k = 0; k < s; ++k) {
    const size_t i = c.active[k];
    if (i >= p.m) throw InvalidInput("candidate refers to a missing constraint");
    Slp hg = homotopy_gradient(p.f[i], dd.tilde_f[i], c.sigma[k]);
    auto nodes = b.inline_slp(hg, tx);  // [F, dF/dt, dF/dx_1, ...]
    outputs.push_back(nodes[0]);
    grad_f.push_back(std::move(nodes));
  }
  Slp gg = homotopy_gradient(p.g, dd.tilde_g, +1);
  auto gnodes = b.inline_slp(gg, tx);
  for (size_t j = 0; j < n; ++j) {
    SlpBuilder::Node acc = gnodes[j + 2];
    for (size_t k = 0; k < s; ++k) acc = acc - b.input(1 + n + k) * grad_f[k][j + 2];
    outputs.push_back(acc);
  }
  return DeformedSystem{b.build(outputs), n, s};
}

}  // namespace polyopt
