#include "polyopt/lifting.hpp"

#include "polyopt/errors.hpp"

namespace polyopt {

QSeriesRing::QSeriesRing(UPoly modulus, size_t kappa) : q_(std::move(modulus)), kappa_(kappa) {
  if (kappa == 0) throw InvalidInput("series precision must be positive");
}

QSeriesRing::Element QSeriesRing::from_rat(const Rat& c) const {
  Element e(kappa_);
  e[0] = UPoly::constant(c);
  return e;
}

QSeriesRing::Element QSeriesRing::from_base(const UPoly& a) const {
  Element e(kappa_);
  e[0] = q_.reduce(a);
  return e;
}

QSeriesRing::Element QSeriesRing::add(const Element& a, const Element& b) const {
  Element r(kappa_);
  for (size_t i = 0; i < kappa_; ++i) r[i] = a[i] + b[i];
  return r;
}

QSeriesRing::Element QSeriesRing::sub(const Element& a, const Element& b) const {
  Element r(kappa_);
  for (size_t i = 0; i < kappa_; ++i) r[i] = a[i] - b[i];
  return r;
}

QSeriesRing::Element QSeriesRing::mul(const Element& a, const Element& b) const {
  Element r(kappa_);
  for (size_t k = 0; k < kappa_; ++k) {
    UPoly acc;
    for (size_t i = 0; i <= k; ++i) {
      if (a[i].is_zero() || b[k - i].is_zero()) continue;
      acc += a[i] * b[k - i];
    }
    r[k] = q_.reduce(acc);
  }
  return r;
}

QSeriesRing::Element QSeriesRing::resize(Element a) const {
  a.resize(kappa_);
  return a;
}

bool QSeriesRing::is_zero(const Element& a) const {
  for (const auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}

namespace {

using Mat = std::vector<std::vector<QSeriesRing::Element>>;

// Values and Jacobian of the system at (t, z) over the series ring.
std::pair<std::vector<QSeriesRing::Element>, Mat> eval_with_jacobian(const QSeriesRing& ring,
                                                                     const DeformedSystem& sys,
                                                                     const std::vector<QSeriesRing::Element>& z) {
  const size_t nz = z.size();
  DualRing<QSeriesRing> dual(ring, nz);
  std::vector<DualRing<QSeriesRing>::Element> in;
  QSeriesRing::Element t = ring.zero();
  if (ring.kappa() > 1) t[1] = UPoly{1};
  in.push_back(dual.lift(t));
  for (size_t j = 0; j < nz; ++j) in.push_back(dual.variable(z[j], j));
  auto out = sys.system.eval(dual, std::span<const DualRing<QSeriesRing>::Element>(in));
  std::vector<QSeriesRing::Element> values;
  Mat jac;
  for (auto& o : out) {
    values.push_back(std::move(o.value));
    jac.push_back(std::move(o.eps));
  }
  return {values, jac};
}

Mat mat_mul(const QSeriesRing& ring, const Mat& a, const Mat& b) {
  const size_t n = a.size();
  Mat c(n, std::vector<QSeriesRing::Element>(n, ring.zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) c[i][j] = ring.add(c[i][j], ring.mul(a[i][k], b[k][j]));
  return c;
}

std::vector<QSeriesRing::Element> mat_vec(const QSeriesRing& ring, const Mat& a,
                                          const std::vector<QSeriesRing::Element>& v) {
  std::vector<QSeriesRing::Element> r(a.size(), ring.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < v.size(); ++k) r[i] = ring.add(r[i], ring.mul(a[i][k], v[k]));
  return r;
}

// Trace over Q of an element of (Q[u]/p0)[t] given the power sums of p0.
TruncSeries trace(const QSeriesRing::Element& a, const std::vector<Rat>& psums) {
  TruncSeries r(a.size());
  for (size_t k = 0; k < a.size(); ++k) {
    Rat acc(0);
    for (int h = 0; h <= a[k].degree(); ++h) acc += a[k].coeff(static_cast<size_t>(h)) * psums[static_cast<size_t>(h)];
    r[k] = acc;
  }
  return r;
}

UPoly eval_coeffs_at_one(const std::vector<UPoly>& c) {
  std::vector<Rat> out;
  for (const auto& p : c) out.push_back(p(Rat(1)));
  return UPoly(std::move(out));
}

}  // namespace

LiftedRes newton_lift_t(const GeomRes& init, const DeformedSystem& sys, size_t kappa) {
  if (kappa == 0) throw InvalidInput("lifting precision must be positive");
  if (init.coord_count() != sys.unknowns()) throw InvalidInput("resolution and system disagree on the unknowns");
  if (init.empty()) throw InvalidInput("cannot lift an empty resolution");
  LiftedRes out;
  out.p0 = init.p;
  out.kappa = kappa;
  out.x_count = init.x_count;
  const size_t nz = init.coord_count();

  QSeriesRing ring(init.p, 1);
  std::vector<QSeriesRing::Element> z;
  for (const auto& v : init.v) z.push_back(ring.from_base(v));

  // J(0)^-1 by adjugate and an inverse of the determinant mod p0.
  Mat jinv;
  {
    auto [vals, jac] = eval_with_jacobian(ring, sys, z);
    for (const auto& v : vals)
      if (!ring.is_zero(v)) throw InvalidInput("initial resolution does not solve the start system");
    QuotientRing base(init.p);
    std::vector<std::vector<UPoly>> j0(nz, std::vector<UPoly>(nz));
    for (size_t i = 0; i < nz; ++i)
      for (size_t k = 0; k < nz; ++k) j0[i][k] = jac[i][k][0];
    auto [det, adj] = det_adjugate(base, j0);
    auto inv = inverse_mod(det, init.p);
    if (!inv) throw LiftingFailure("Jacobian is singular at some start point");
    jinv.assign(nz, std::vector<QSeriesRing::Element>(nz));
    for (size_t i = 0; i < nz; ++i)
      for (size_t k = 0; k < nz; ++k) jinv[i][k] = ring.from_base(base.mul(adj[i][k], *inv));
  }

  size_t prec = 1;
  while (prec < kappa) {
    const size_t next = std::min(2 * prec, kappa);
    QSeriesRing r(init.p, next);
    for (auto& zj : z) zj = r.resize(std::move(zj));
    for (auto& row : jinv)
      for (auto& x : row) x = r.resize(std::move(x));
    auto [vals, jac] = eval_with_jacobian(r, sys, z);
    // Jinv += Jinv (I - J Jinv)
    Mat e = mat_mul(r, jac, jinv);
    for (size_t i = 0; i < nz; ++i)
      for (size_t k = 0; k < nz; ++k) e[i][k] = r.sub(i == k ? r.from_rat(Rat(1)) : r.zero(), e[i][k]);
    Mat corr = mat_mul(r, jinv, e);
    for (size_t i = 0; i < nz; ++i)
      for (size_t k = 0; k < nz; ++k) jinv[i][k] = r.add(jinv[i][k], corr[i][k]);
    auto step = mat_vec(r, jinv, vals);
    for (size_t j = 0; j < nz; ++j) z[j] = r.sub(z[j], step[j]);
    prec = next;
  }
  out.coords = std::move(z);
  return out;
}

std::vector<QSeriesRing::Element> lifting_residual(const LiftedRes& lifted, const DeformedSystem& sys) {
  QSeriesRing ring(lifted.p0, lifted.kappa);
  std::vector<QSeriesRing::Element> in;
  QSeriesRing::Element t = ring.zero();
  if (ring.kappa() > 1) t[1] = UPoly{1};
  in.push_back(t);
  for (const auto& c : lifted.coords) in.push_back(ring.resize(c));
  return sys.system.eval(ring, std::span<const QSeriesRing::Element>(in));
}

LiftedRes newton_lift_y(LiftedRes lifted, const std::vector<Rat>& alpha) {
  const size_t n = lifted.x_count;
  if (alpha.size() != n) throw InvalidInput("alpha must cover the x-coordinates");
  const int dd = lifted.p0.degree();
  const auto D = static_cast<size_t>(dd);
  const size_t kappa = lifted.kappa;
  QSeriesRing ring(lifted.p0, kappa);
  const auto psums = root_power_sums(lifted.p0.monic(), D);

  QSeriesRing::Element ell = ring.zero();
  for (size_t j = 0; j < n; ++j) ell = ring.add(ell, ring.mul(ring.from_rat(alpha[j]), ring.resize(lifted.coords[j])));

  // Power sums of l over the branches, with first-order parts k Tr(l^(k-1) x_j).
  SeriesRing sr(kappa);
  DualRing<SeriesRing> dual(sr, n);
  std::vector<DualRing<SeriesRing>::Element> N(D + 1, dual.from_rat(Rat(0)));
  QSeriesRing::Element pw = ring.from_rat(Rat(1));  // l^(k-1)
  for (size_t k = 1; k <= D; ++k) {
    DualRing<SeriesRing>::Element nk = dual.from_rat(Rat(0));
    for (size_t j = 0; j < n; ++j) nk.eps[j] = trace(ring.mul(pw, ring.resize(lifted.coords[j])), psums) * Rat(static_cast<long>(k));
    pw = ring.mul(pw, ell);
    nk.value = trace(pw, psums);
    N[k] = std::move(nk);
  }
  // Newton identities: e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_(k-i) N_i.
  std::vector<DualRing<SeriesRing>::Element> e{dual.from_rat(Rat(1))};
  for (size_t k = 1; k <= D; ++k) {
    auto acc = dual.from_rat(Rat(0));
    for (size_t i = 1; i <= k; ++i) {
      auto term = dual.mul(e[k - i], N[i]);
      acc = i % 2 ? dual.add(acc, term) : dual.sub(acc, term);
    }
    e.push_back(dual.mul(dual.from_rat(Rat(1) / Rat(static_cast<long>(k))), acc));
  }
  lifted.p_t.assign(D + 1, TruncSeries(kappa));
  lifted.y_derivs.assign(n, std::vector<TruncSeries>(D + 1, TruncSeries(kappa)));
  for (size_t h = 0; h <= D; ++h) {
    const size_t k = D - h;
    const Rat sign = k % 2 ? Rat(-1) : Rat(1);
    lifted.p_t[h] = e[k].value * sign;
    for (size_t j = 0; j < n; ++j) lifted.y_derivs[j][h] = e[k].eps[j] * sign;
  }
  std::vector<Rat> at0;
  for (const auto& c : lifted.p_t) at0.push_back(c[0]);
  if (!is_squarefree(UPoly(at0))) throw SeparationFailure("linear form does not separate the start points", Stage::kLifting);
  return lifted;
}

PhatData reconstruct_phat(const LiftedRes& lifted, int bound) {
  if (lifted.p_t.empty()) throw InvalidInput("characteristic polynomial has not been computed");
  const size_t n = lifted.y_derivs.size();
  const size_t terms = lifted.p_t.size();
  std::vector<std::pair<UPoly, UPoly>> fr;
  for (const auto& s : lifted.p_t) fr.push_back(pade_reconstruct(s, bound, bound));
  for (const auto& row : lifted.y_derivs)
    for (const auto& s : row) fr.push_back(pade_reconstruct(s, bound, bound));

  UPoly q{1};
  for (const auto& [num, den] : fr) q = q * exact_div(den, upoly_gcd(q, den));
  std::vector<UPoly> nums;
  UPoly content;
  for (const auto& [num, den] : fr) {
    nums.push_back(num * exact_div(q, den));
    if (!nums.back().is_zero()) content = content.is_zero() ? nums.back() : upoly_gcd(content, nums.back());
  }
  if (!content.is_zero() && content.degree() > 0) {
    for (auto& x : nums) x = exact_div(x, content);
  }
  PhatData ph;
  ph.q_t = q;
  ph.phat_coeffs.assign(nums.begin(), nums.begin() + static_cast<long>(terms));
  ph.phat_yderivs.resize(n);
  for (size_t j = 0; j < n; ++j)
    ph.phat_yderivs[j].assign(nums.begin() + static_cast<long>(terms * (j + 1)),
                              nums.begin() + static_cast<long>(terms * (j + 2)));
  return ph;
}

GeomRes specialize_t1(const PhatData& ph, const std::vector<Rat>& alpha) {
  const size_t n = ph.phat_yderivs.size();
  if (alpha.size() != n) throw InvalidInput("alpha must cover the x-coordinates");
  const UPoly p1 = eval_coeffs_at_one(ph.phat_coeffs);
  if (p1.is_zero()) throw DegenerateSpecialization("P^(1, u, alpha) vanishes identically");
  GeomRes r = GeomRes::empty_like(alpha, n);
  if (p1.degree() == 0) return r;
  const UPoly dp1 = p1.derivative();
  const UPoly q = upoly_gcd(p1, dp1);
  r.p = exact_div(p1, q).monic();
  auto inv = inverse_mod(exact_div(dp1, q) % r.p, r.p);
  if (!inv) throw InvariantViolation("specialized polynomial is not squarefree after gcd removal");
  for (size_t j = 0; j < n; ++j) {
    const UPoly dy = eval_coeffs_at_one(ph.phat_yderivs[j]);
    DivMod qr = divmod(dy, q);
    if (!qr.remainder.is_zero()) throw DegenerateSpecialization("y-derivative is not divisible by the multiple part");
    r.v[j] = (-(qr.quotient % r.p) * *inv) % r.p;
  }
  return r;
}

GeomRes geometric_resolution(const Problem& p, const DeformationData& dd, const Candidate& c,
                             const std::vector<Rat>& alpha) {
  GeomRes init = initial_geomres(p, dd, c, alpha);
  DeformedSystem sys = build_deformed_system(p, dd, c);
  const int bound = static_cast<int>(p.n) * static_cast<int>(c.bezout);
  const auto kappa = static_cast<size_t>(2 * bound + 1);
  LiftedRes lifted = newton_lift_y(newton_lift_t(init, sys, kappa), alpha);
  GeomRes r = specialize_t1(reconstruct_phat(lifted, bound), alpha);
  if (!resolution_is_valid(r)) throw SeparationFailure("specialized resolution failed validation", Stage::kVerification);
  return r;
}

}  // namespace polyopt
