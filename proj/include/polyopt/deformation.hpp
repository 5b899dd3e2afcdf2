#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyopt/rat.hpp"
#include "polyopt/slp.hpp"

namespace polyopt {

/// min g subject to f_1 = ... = f_l = 0, f_{l+1} >= 0, ..., f_m >= 0 over R^n.
/// Constraints are indexed from 0 internally; the first `l` are equalities.
struct Problem {
  size_t n = 0;
  size_t m = 0;
  size_t l = 0;
  std::vector<Slp> f;
  Slp g;
  /// Even bound on every degree.
  int d = 2;

  /// Throws InvalidInput unless n >= 2, l <= m, d even >= 2 and every slp
  /// has n inputs and one output.
  void validate() const;
};

struct DeformationData {
  /// q_0 = n + 1, then the m consecutive primes after n + 1.
  std::vector<long> q;
  /// Cauchy matrix a_ij = 1 / (q_i - j), (m+1) x (n+1).
  std::vector<std::vector<Rat>> a;
  Slp tilde_g;
  std::vector<Slp> tilde_f;
};

/// One element of the candidate set: active constraints and their signs.
struct Candidate {
  std::vector<size_t> active;  // S, ascending
  std::vector<int> sigma;      // +1 / -1 per active constraint; +1 forced for inequalities
  std::int64_t bezout = 0;     // D_s

  size_t s() const { return active.size(); }
  std::string label() const;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// F_i^{sigma_i} (i in S) and the dehomogenized Lagrange polynomials G_j,
/// as one slp over inputs (t, x_1..x_n, lambda_1..lambda_s) whose outputs are
/// [F_{S_1}, ..., F_{S_s}, G_1, ..., G_n].
struct DeformedSystem {
  Slp system;
  size_t n = 0;
  size_t s = 0;

  size_t unknowns() const { return n + s; }
};

/// Builds a Problem from sparse polynomials. Throws InvalidInput on constant
/// constraints; `d` < 0 picks the smallest even bound >= every degree, an odd
/// override is rounded up.
Problem problem_from_polys(const std::vector<SparsePoly>& f, const SparsePoly& g, size_t l, int d = -1);

std::vector<long> primes_after(int n, int m);

DeformationData build_deformation(const Problem& p);

std::vector<Candidate> enumerate_candidates(const Problem& p);

/// Size of the candidate set from the closed-form count.
std::int64_t candidate_count_formula(size_t n, size_t m, size_t l);

DeformedSystem build_deformed_system(const Problem& p, const DeformationData& dd, const Candidate& c);

/// C(n, s) d^s (d-1)^(n-s).
std::int64_t bezout_bound(int n, int d, int s);

std::int64_t binomial(int n, int k);

}  // namespace polyopt
