#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polyopt/deformation.hpp"
#include "polyopt/initsolve.hpp"
#include "polyopt/realalg.hpp"

namespace polyopt {

struct SolverConfig {
  std::uint64_t seed = 0;
  long alpha_bound = 1L << 15;
  /// Attempts after the first one.
  int max_retries = 5;
  int parallel = 1;
  bool dedupe = false;
};

struct CandidateResult {
  Candidate candidate;
  GeomRes geomres;
  bool empty = true;
  /// Minimizing roots of p among the feasible ones.
  std::vector<ThomEncoding> thoms;
  /// Monic; its roots are the g-values over the points of geomres.
  UPoly h{1};
  /// The minimal value as a root of the squarefree part of h.
  ThomEncoding value_thom;
};

struct MinimizerEntry {
  GeomRes geomres;
  ThomEncoding thom;
  Candidate candidate;
  UPoly h{1};
  ThomEncoding value_thom;
};

struct MinimizerFamily {
  std::vector<MinimizerEntry> entries;
  std::vector<Rat> alpha;
  /// Attempts that failed a genericity check before this one succeeded.
  int retries = 0;
  std::uint64_t seed = 0;
};

/// Monic squarefree part of h, the polynomial the value encodings refer to.
UPoly value_polynomial(const UPoly& h);

/// f(G) mod p by Horner's rule.
UPoly compose_mod(const UPoly& f, const UPoly& g, const UPoly& p);

/// Characteristic polynomial of multiplication by g(v(u)) modulo p.
UPoly resultant_h(const GeomRes& gr, const Slp& g);

CandidateResult min_in_geomres(const GeomRes& gr, const Problem& problem);

/// Sign of (minimum of r1) - (minimum of r2). Both must be non-empty and
/// share the separating form.
int comparing_minimums(const CandidateResult& r1, const CandidateResult& r2, const Slp& g);

/// Independent generator for one stream of a seeded run. Attempt k of the
/// solver uses stream k; other consumers use streams from kSamplingStream up.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint32_t stream);
inline constexpr std::uint32_t kSamplingStream = 1u << 20;

/// Separating form drawn for attempt `attempt` of a run seeded with `seed`.
std::vector<Rat> draw_alpha(std::uint64_t seed, int attempt, size_t n, long bound);

/// Exact check that every point of gr solves the t = 1 Lagrange system of
/// the candidate with multipliers eliminated: f_S = 0 and rank [grad g; grad f_S] <= s.
bool verify_candidate(const GeomRes& gr, const Problem& problem, const Candidate& c);

/// Runs every candidate under one random form and folds the minima.
MinimizerFamily finding_minimum(const Problem& problem, const SolverConfig& cfg);

/// True if the two entries denote the same point.
bool same_point(const MinimizerEntry& a, const MinimizerEntry& b);

}  // namespace polyopt
