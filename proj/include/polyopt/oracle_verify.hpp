#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyopt/optimizer.hpp"

namespace polyopt {

struct VerifyOptions {
  std::size_t samples = 100000;
  /// Half-width of the sampling box [-b, b]^n; inferred when absent.
  std::optional<double> box;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
};

struct Violation {
  std::string kind;
  std::string detail;
};

struct VerifyReport {
  std::size_t entries_checked = 0;
  std::size_t samples = 0;
  std::size_t feasible_samples = 0;
  double box = 0;
  /// The box was guessed from the output points, not given.
  bool box_heuristic = false;
  double claimed_min = 0;
  /// Smallest g over feasible samples (+inf if none).
  double best_sample = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// (a) interval checks of every output point: feasibility, rank condition of
/// the candidate's Lagrange system, and agreement of g with the claimed
/// minimum; (b) rejection sampling of E for values below the claim.
VerifyReport oracle_verify(const Problem& problem, const MinimizerFamily& fam, const VerifyOptions& opts);

}  // namespace polyopt
