#include "polyopt/series.hpp"

#include <algorithm>

#include "polyopt/errors.hpp"

namespace polyopt {

TruncSeries TruncSeries::from_poly(const UPoly& p, size_t kappa) {
  TruncSeries s(kappa);
  for (size_t i = 0; i < kappa && i < p.size(); ++i) s.coeffs_[i] = p.coeff(i);
  return s;
}

TruncSeries TruncSeries::constant(const Rat& c, size_t kappa) {
  TruncSeries s(kappa);
  s.coeffs_[0] = c;
  return s;
}

TruncSeries TruncSeries::variable(size_t kappa) {
  TruncSeries s(kappa);
  if (kappa > 1) s.coeffs_[1] = 1;
  return s;
}

bool TruncSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return sgn(c) == 0; });
}

TruncSeries TruncSeries::with_order(size_t kappa) const {
  TruncSeries s(kappa);
  for (size_t i = 0; i < kappa && i < coeffs_.size(); ++i) s.coeffs_[i] = coeffs_[i];
  return s;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  if (o.order() != order()) throw InvalidInput("series precision mismatch");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  if (o.order() != order()) throw InvalidInput("series precision mismatch");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  if (a.order() != b.order()) throw InvalidInput("series precision mismatch");
  const size_t k = a.order();
  TruncSeries r(k);
  Rat tmp;
  for (size_t i = 0; i < k; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (size_t j = 0; i + j < k; ++j) {
      tmp = a.coeffs_[i] * b.coeffs_[j];
      r.coeffs_[i + j] += tmp;
    }
  }
  return r;
}

TruncSeries operator*(TruncSeries a, const Rat& c) {
  for (auto& x : a.coeffs_) x *= c;
  return a;
}

TruncSeries TruncSeries::inverse() const {
  if (coeffs_.empty() || sgn(coeffs_[0]) == 0) throw SingularElement("series with zero constant term");
  const size_t k = order();
  TruncSeries r(k);
  const Rat inv0 = 1 / coeffs_[0];
  r.coeffs_[0] = inv0;
  for (size_t n = 1; n < k; ++n) {
    Rat acc(0);
    for (size_t i = 1; i <= n; ++i) acc += coeffs_[i] * r.coeffs_[n - i];
    r.coeffs_[n] = -acc * inv0;
  }
  return r;
}

TruncSeries series_arith(const TruncSeries& a, const TruncSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::kAdd: return a + b;
    case SeriesOp::kMul: return a * b;
    case SeriesOp::kInv: return a.inverse();
  }
  throw InvalidInput("unknown series operation");
}

std::pair<UPoly, UPoly> pade_reconstruct(const TruncSeries& s, int num_deg, int den_deg) {
  const auto kappa = static_cast<int>(s.order());
  if (num_deg < 0 || den_deg < 0 || kappa < num_deg + den_deg + 1) {
    throw InvalidInput("Pade degree budget exceeds series precision");
  }
  // Extended Euclid on (t^kappa, s): every remainder r_i = s_i t^kappa + t_i s,
  // so r_i == t_i s mod t^kappa. Stop at the first remainder of degree <= num_deg.
  UPoly r0 = UPoly::monomial(Rat(1), static_cast<size_t>(kappa));
  UPoly r1 = s.to_poly();
  UPoly t0;
  UPoly t1 = UPoly::constant(Rat(1));
  while (r1.degree() > num_deg) {
    auto [q, r] = divmod(r0, r1);
    UPoly t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  UPoly num = std::move(r1);
  UPoly den = std::move(t1);
  if (den.degree() > den_deg || sgn(den.coeff(0)) == 0) {
    throw ReconstructionFailure("no rational function within degrees (" + std::to_string(num_deg) +
                                ", " + std::to_string(den_deg) + ")");
  }
  if (!num.is_zero()) {
    UPoly g = upoly_gcd(num, den);
    if (g.degree() > 0) {
      num = exact_div(num, g);
      den = exact_div(den, g);
    }
  } else {
    den = UPoly::constant(Rat(1));
  }
  Rat inv = 1 / den.coeff(0);
  return {num * inv, den * inv};
}

}  // namespace polyopt
