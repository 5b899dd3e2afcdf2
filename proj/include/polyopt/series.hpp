#pragma once

#include <utility>
#include <vector>

#include "polyopt/rat.hpp"
#include "polyopt/upoly.hpp"

namespace polyopt {

/// Power series in t truncated at order kappa: exactly kappa coefficients,
/// arithmetic modulo t^kappa.
class TruncSeries {
 public:
  explicit TruncSeries(size_t kappa = 1) : coeffs_(kappa) {}
  TruncSeries(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {}

  /// The truncation of a polynomial in t.
  static TruncSeries from_poly(const UPoly& p, size_t kappa);
  static TruncSeries constant(const Rat& c, size_t kappa);
  /// The series t (zero when kappa == 1).
  static TruncSeries variable(size_t kappa);

  size_t order() const { return coeffs_.size(); }
  const Rat& operator[](size_t i) const { return coeffs_[i]; }
  Rat& operator[](size_t i) { return coeffs_[i]; }
  std::span<const Rat> coeffs() const { return coeffs_; }
  bool is_zero() const;

  UPoly to_poly() const { return UPoly(coeffs_); }
  /// Same series at a different precision (pads with zeros or truncates).
  TruncSeries with_order(size_t kappa) const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(TruncSeries a, const Rat& c);
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) = default;

  /// Inverse of a unit; SingularElement when the constant term is zero.
  TruncSeries inverse() const;

 private:
  std::vector<Rat> coeffs_;
};

enum class SeriesOp { kAdd, kMul, kInv };

/// a op b for add/mul, inv(a) for kInv (b ignored). Operands must share kappa.
TruncSeries series_arith(const TruncSeries& a, const TruncSeries& b, SeriesOp op);

/// Rational reconstruction (N, D) with deg N <= num_deg, deg D <= den_deg,
/// D(0) = 1 and N/D == s mod t^kappa. Throws ReconstructionFailure.
std::pair<UPoly, UPoly> pade_reconstruct(const TruncSeries& s, int num_deg, int den_deg);

}  // namespace polyopt
