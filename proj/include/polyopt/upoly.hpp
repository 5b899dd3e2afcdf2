#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "polyopt/rat.hpp"

namespace polyopt {

/// Dense univariate polynomial over Q, lowest degree first. The zero
/// polynomial is the empty coefficient vector; otherwise the leading
/// coefficient is nonzero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  UPoly(std::initializer_list<long> coeffs);
  UPoly(std::initializer_list<Rat> coeffs) : UPoly(std::vector<Rat>(coeffs)) {}

  static UPoly constant(const Rat& c);
  static UPoly monomial(const Rat& c, size_t degree);
  /// The polynomial u.
  static UPoly identity();

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  size_t size() const { return coeffs_.size(); }

  /// Coefficient of u^i, zero beyond the degree.
  const Rat& coeff(size_t i) const;
  const Rat& leading() const;
  std::span<const Rat> coeffs() const { return coeffs_; }

  Rat operator()(const Rat& x) const;
  UPoly derivative() const;
  /// k-th derivative.
  UPoly derivative(int k) const;
  UPoly monic() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const Rat& c);

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rat& c) { return a *= c; }
  friend UPoly operator*(const Rat& c, UPoly a) { return a *= c; }
  friend UPoly operator-(UPoly a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

struct DivMod {
  UPoly quotient;
  UPoly remainder;
};

/// Euclidean division; throws InvalidInput on a zero divisor.
DivMod divmod(const UPoly& a, const UPoly& b);
UPoly operator/(const UPoly& a, const UPoly& b);
UPoly operator%(const UPoly& a, const UPoly& b);

/// a / b, throwing InvariantViolation when the division leaves a remainder.
UPoly exact_div(const UPoly& a, const UPoly& b);

/// Monic gcd. gcd(p, 0) = monic(p); both zero is an InvalidInput.
UPoly upoly_gcd(const UPoly& a, const UPoly& b);

struct ExtGcd {
  UPoly gcd;  // monic
  UPoly s;    // s*a + t*b = gcd
  UPoly t;
};
ExtGcd ext_gcd(const UPoly& a, const UPoly& b);

/// Inverse of a modulo m, or an empty result when gcd(a, m) != 1.
std::optional<UPoly> inverse_mod(const UPoly& a, const UPoly& m);

/// Resultant by the subresultant pseudo-remainder sequence. Both inputs
/// must be nonzero.
Rat upoly_resultant(const UPoly& a, const UPoly& b);

/// Unique interpolant of degree < points.size(); abscissae must be distinct.
UPoly upoly_eval_interp(std::span<const std::pair<Rat, Rat>> points);

/// Chebyshev polynomial of the first kind.
UPoly chebyshev(int e);

/// f(g(u)).
UPoly compose(const UPoly& f, const UPoly& g);

/// f(u) at c*u, i.e. coefficients scaled by powers of c.
UPoly scale_argument(const UPoly& f, const Rat& c);

/// f(u + c).
UPoly taylor_shift(const UPoly& f, const Rat& c);

/// p / gcd(p, p').
UPoly squarefree_part(const UPoly& p);
bool is_squarefree(const UPoly& p);

/// Power sums N_k = sum over roots of r^k for k in [0, count), of a monic p.
std::vector<Rat> root_power_sums(const UPoly& monic_p, size_t count);

std::string to_string(const UPoly& p, const std::string& var = "u");

}  // namespace polyopt
