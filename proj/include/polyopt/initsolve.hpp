#pragma once

#include <vector>

#include "polyopt/deformation.hpp"
#include "polyopt/upoly.hpp"

namespace polyopt {

/// Points (v_1(xi), ..., v_k(xi)) over the roots xi of p. The first x_count
/// coordinates are x_1..x_n; the rest are multipliers. alpha covers only x.
struct GeomRes {
  UPoly p{1};
  std::vector<UPoly> v;
  std::vector<Rat> alpha;
  size_t x_count = 0;

  size_t coord_count() const { return v.size(); }
  int degree() const { return p.degree(); }
  bool empty() const { return p.degree() <= 0; }
  static GeomRes empty_like(const std::vector<Rat>& alpha, size_t coords);
};

/// p monic and squarefree, deg v_j < deg p, sum alpha_j v_j = u mod p.
bool resolution_is_valid(const GeomRes& r);

/// Solves A_B y = rhs and returns c = y - 1, the Chebyshev target values.
/// Throws InvariantViolation if A_B is singular or some c_i equals +-1.
std::vector<Rat> solve_block_linear(const std::vector<std::vector<Rat>>& a_b, const std::vector<Rat>& rhs);

/// Multipliers for block B: a_0j - sum_k a_{S_k j} lambda_k = 0 for j not in B.
/// B and S are 0-based (B indexes variables, S indexes constraints).
std::vector<Rat> lambda_for_block(const std::vector<std::vector<Rat>>& a, const std::vector<size_t>& b,
                                  const std::vector<size_t>& s);

/// Resolution of the product of root sets of h_1, ..., h_k (each squarefree)
/// with respect to sum alpha_j x_j. Empty if some h_j is constant.
GeomRes separated_product(const std::vector<UPoly>& h, const std::vector<Rat>& alpha);

/// Block variety: T_d' = 0 and T_d = e(j) for j in B, T_d(x_j) = c_j otherwise;
/// multipliers fixed to lambda. `c` lists targets for the coordinates outside B
/// in increasing order.
GeomRes geomres_block(int d, size_t n, const std::vector<size_t>& b, const std::vector<int>& e,
                      const std::vector<Rat>& c, const std::vector<Rat>& lambda, const std::vector<Rat>& alpha);

GeomRes geomres_union(const GeomRes& r1, const GeomRes& r2);

/// Resolution of the t = 0 system of a candidate over (x, lambda).
GeomRes initial_geomres(const Problem& p, const DeformationData& dd, const Candidate& c,
                        const std::vector<Rat>& alpha);

}  // namespace polyopt
