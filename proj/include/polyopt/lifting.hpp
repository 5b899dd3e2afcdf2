#pragma once

#include <vector>

#include "polyopt/deformation.hpp"
#include "polyopt/initsolve.hpp"
#include "polyopt/ring.hpp"
#include "polyopt/series.hpp"

namespace polyopt {

/// (Q[u]/p)[t]/t^K: elements are K coefficients, each reduced mod p.
class QSeriesRing {
 public:
  using Element = std::vector<UPoly>;
  QSeriesRing(UPoly modulus, size_t kappa);

  const UPoly& modulus() const { return q_.modulus(); }
  size_t kappa() const { return kappa_; }
  Element zero() const { return Element(kappa_); }
  Element from_rat(const Rat& c) const;
  Element from_base(const UPoly& a) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  /// Pads or truncates to this ring's precision.
  Element resize(Element a) const;
  bool is_zero(const Element& a) const;

 private:
  QuotientRing q_;
  size_t kappa_;
};

/// Determinant and adjugate by the Faddeev-LeVerrier recurrence; works in any
/// commutative Q-algebra.
template <CommutativeRing R>
std::pair<typename R::Element, std::vector<std::vector<typename R::Element>>> det_adjugate(
    const R& ring, const std::vector<std::vector<typename R::Element>>& m) {
  using E = typename R::Element;
  const size_t n = m.size();
  auto matmul = [&](const std::vector<std::vector<E>>& a, const std::vector<std::vector<E>>& b) {
    std::vector<std::vector<E>> c(n, std::vector<E>(n, ring.from_rat(Rat(0))));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < n; ++j) c[i][j] = ring.add(c[i][j], ring.mul(a[i][k], b[k][j]));
    return c;
  };
  std::vector<std::vector<E>> mk(n, std::vector<E>(n, ring.from_rat(Rat(0))));
  for (size_t i = 0; i < n; ++i) mk[i][i] = ring.from_rat(Rat(1));
  E c = ring.from_rat(Rat(1));
  for (size_t k = 1; k <= n; ++k) {
    auto am = matmul(m, mk);
    E tr = ring.from_rat(Rat(0));
    for (size_t i = 0; i < n; ++i) tr = ring.add(tr, am[i][i]);
    c = ring.mul(ring.from_rat(Rat(-1) / Rat(static_cast<long>(k))), tr);
    if (k == n) {
      const Rat sign_det = n % 2 ? Rat(-1) : Rat(1);
      const Rat sign_adj = n % 2 ? Rat(1) : Rat(-1);
      for (auto& row : mk)
        for (auto& x : row) x = ring.mul(ring.from_rat(sign_adj), x);
      return {ring.mul(ring.from_rat(sign_det), c), mk};
    }
    for (size_t i = 0; i < n; ++i) am[i][i] = ring.add(am[i][i], c);
    mk = std::move(am);
  }
  // n == 0
  return {ring.from_rat(Rat(1)), {}};
}

struct LiftedRes {
  /// Branches are indexed by the roots of p0; every coordinate lives in
  /// (Q[u]/p0)[t]/t^kappa.
  UPoly p0{1};
  size_t kappa = 1;
  size_t x_count = 0;
  std::vector<QSeriesRing::Element> coords;
  /// P(t, U, alpha) = prod over branches (U - l_alpha), coefficients of U^0..U^D.
  std::vector<TruncSeries> p_t;
  /// y_derivs[j][h]: d/dy_j of the U^h coefficient at y = alpha.
  std::vector<std::vector<TruncSeries>> y_derivs;
};

struct PhatData {
  std::vector<UPoly> phat_coeffs;                // in t, for U^0..U^D
  std::vector<std::vector<UPoly>> phat_yderivs;  // [j][h]
  UPoly q_t{1};
};

/// Newton-Hensel lifting of `init` to precision kappa. Throws LiftingFailure
/// when the Jacobian is not invertible.
LiftedRes newton_lift_t(const GeomRes& init, const DeformedSystem& sys, size_t kappa);

/// The deformed system evaluated at the lifted coordinates (zero when exact).
std::vector<QSeriesRing::Element> lifting_residual(const LiftedRes& lifted, const DeformedSystem& sys);

/// Characteristic polynomial of l(x, y) = sum y_j x_j over the branches, to
/// first order in y - alpha. The points do not depend on y, so no further
/// Newton step is needed. Throws SeparationFailure (stage lifting) when
/// P(0, U, alpha) is not squarefree.
LiftedRes newton_lift_y(LiftedRes lifted, const std::vector<Rat>& alpha);

/// Pade reconstruction of every coefficient with budget (bound, bound),
/// brought to a common denominator and stripped of common factors in t.
PhatData reconstruct_phat(const LiftedRes& lifted, int bound);

/// Resolution of the points of P^(1, u, y) with respect to alpha.
GeomRes specialize_t1(const PhatData& ph, const std::vector<Rat>& alpha);

/// Initial solve, lifting, reconstruction and specialization for one
/// candidate. The result carries only x-coordinates.
GeomRes geometric_resolution(const Problem& p, const DeformationData& dd, const Candidate& c,
                             const std::vector<Rat>& alpha);

}  // namespace polyopt
