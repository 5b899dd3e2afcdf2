#include "polyopt/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>

#include "polyopt/errors.hpp"

namespace polyopt {

namespace {

const Rat kZero(0);

Rat pow_rat(const Rat& base, long e) {
  if (e < 0) {
    if (sgn(base) == 0) throw InvariantViolation("negative power of zero");
    return pow_rat(Rat(1 / base), -e);
  }
  Rat r(1);
  Rat b = base;
  auto n = static_cast<unsigned long>(e);
  while (n > 0) {
    if (n & 1U) r *= b;
    n >>= 1U;
    if (n > 0) b *= b;
  }
  return r;
}

// lc(b)^(deg a - deg b + 1) * a  mod b
UPoly pseudo_remainder(const UPoly& a, const UPoly& b) {
  int delta = a.degree() - b.degree();
  if (delta < 0) return a;
  return (a * pow_rat(b.leading(), delta + 1)) % b;
}

Rat resultant_impl(UPoly a, UPoly b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  if (b.degree() == 0) return pow_rat(b.leading(), a.degree());
  if (a.degree() == 0) return pow_rat(a.leading(), b.degree());
  Rat s(1);
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if ((a.degree() % 2) && (b.degree() % 2)) s = -s;
  }
  Rat g(1);
  Rat h(1);
  while (true) {
    int delta = a.degree() - b.degree();
    if ((a.degree() % 2) && (b.degree() % 2)) s = -s;
    UPoly r = pseudo_remainder(a, b);
    if (r.is_zero()) return Rat(0);
    a = std::move(b);
    b = r * Rat(1 / (g * pow_rat(h, delta)));
    g = a.leading();
    h = pow_rat(g, delta) / pow_rat(h, delta - 1);
    if (b.degree() > 0) continue;
    h = pow_rat(b.leading(), a.degree()) / pow_rat(h, a.degree() - 1);
    return s * h;
  }
}

}  // namespace

UPoly::UPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly::UPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

UPoly UPoly::constant(const Rat& c) { return UPoly(std::vector<Rat>{c}); }

UPoly UPoly::monomial(const Rat& c, size_t degree) {
  std::vector<Rat> v(degree + 1);
  v[degree] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::identity() { return monomial(Rat(1), 1); }

void UPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

const Rat& UPoly::coeff(size_t i) const { return i < coeffs_.size() ? coeffs_[i] : kZero; }

const Rat& UPoly::leading() const { return coeffs_.empty() ? kZero : coeffs_.back(); }

Rat UPoly::operator()(const Rat& x) const {
  Rat acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rat> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::derivative(int k) const {
  UPoly r = *this;
  for (int i = 0; i < k; ++i) r = r.derivative();
  return r;
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  return *this * Rat(1 / leading());
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const UPoly& o) {
  *this = *this * o;
  return *this;
}

UPoly& UPoly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  Rat tmp;
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      tmp = a.coeffs_[i] * b.coeffs_[j];
      r[i + j] += tmp;
    }
  }
  return UPoly(std::move(r));
}

UPoly operator-(UPoly a) {
  for (auto& x : a.coeffs_) x = -x;
  return a;
}

DivMod divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly{}, a};
  std::vector<Rat> rem(a.coeffs().begin(), a.coeffs().end());
  const int db = b.degree();
  std::vector<Rat> quo(static_cast<size_t>(a.degree() - db + 1));
  const Rat inv_lc = 1 / b.leading();
  Rat tmp;
  for (int i = a.degree(); i >= db; --i) {
    if (sgn(rem[static_cast<size_t>(i)]) == 0) continue;
    Rat q = rem[static_cast<size_t>(i)] * inv_lc;
    for (int j = 0; j <= db; ++j) {
      tmp = q * b.coeff(static_cast<size_t>(j));
      rem[static_cast<size_t>(i - db + j)] -= tmp;
    }
    quo[static_cast<size_t>(i - db)] = std::move(q);
  }
  rem.resize(static_cast<size_t>(db));
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly operator/(const UPoly& a, const UPoly& b) { return divmod(a, b).quotient; }

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).remainder; }

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InvariantViolation("inexact polynomial division");
  return q;
}

namespace {

constexpr std::uint64_t kImagePrime = 4294967291ULL;

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1U, a = a * a % kImagePrime)
    if (e & 1U) r = r * a % kImagePrime;
  return r;
}

// Image of p in F_q[u]; nullopt when a denominator or the leading
// coefficient vanishes mod q.
std::optional<std::vector<std::uint64_t>> mod_image(const UPoly& p) {
  std::vector<std::uint64_t> out;
  for (const Rat& c : p.coeffs()) {
    const std::uint64_t den = mpz_fdiv_ui(c.get_den_mpz_t(), kImagePrime);
    if (den == 0) return std::nullopt;
    out.push_back(mpz_fdiv_ui(c.get_num_mpz_t(), kImagePrime) * pow_mod(den, kImagePrime - 2) % kImagePrime);
  }
  if (out.empty() || out.back() == 0) return std::nullopt;
  return out;
}

size_t mod_gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  auto trim = [](std::vector<std::uint64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = pow_mod(b.back(), kImagePrime - 2);
    while (a.size() >= b.size()) {
      const std::uint64_t f = a.back() * inv % kImagePrime;
      const size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = (a[shift + i] + (kImagePrime - f) * b[i]) % kImagePrime;
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.size() - 1;
}

}  // namespace

UPoly upoly_gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero()) throw InvalidInput("gcd of two zero polynomials");
  // coprime images modulo a prime (leading coefficients kept) prove coprimality
  if (a.degree() > 0 && b.degree() > 0) {
    auto ia = mod_image(a), ib = mod_image(b);
    if (ia && ib && mod_gcd_degree(*ia, *ib) == 0) return UPoly{1};
  }
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

ExtGcd ext_gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero() && b.is_zero()) throw InvalidInput("gcd of two zero polynomials");
  UPoly r0 = a, r1 = b;
  UPoly s0 = UPoly::constant(Rat(1)), s1;
  UPoly t0, t1 = UPoly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s = s0 - q * s1;
    UPoly t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  Rat inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

std::optional<UPoly> inverse_mod(const UPoly& a, const UPoly& m) {
  if (m.degree() < 1) throw InvalidInput("modulus must have positive degree");
  UPoly ar = a % m;
  if (ar.is_zero()) return std::nullopt;
  ExtGcd e = ext_gcd(ar, m);
  if (e.gcd.degree() != 0) return std::nullopt;
  return e.s % m;
}

Rat upoly_resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) throw InvalidInput("resultant of a zero polynomial");
  return resultant_impl(a, b);
}

UPoly upoly_eval_interp(std::span<const std::pair<Rat, Rat>> points) {
  const size_t n = points.size();
  if (n == 0) return {};
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (points[i].first == points[j].first) throw InvalidInput("repeated interpolation abscissa");
    }
  }
  // Newton divided differences, then expansion of the Newton form.
  std::vector<Rat> dd(n);
  for (size_t i = 0; i < n; ++i) dd[i] = points[i].second;
  for (size_t k = 1; k < n; ++k) {
    for (size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - k].first);
    }
  }
  UPoly result = UPoly::constant(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;) {
    result = result * UPoly(std::vector<Rat>{-points[i].first, Rat(1)}) + UPoly::constant(dd[i]);
  }
  return result;
}

UPoly chebyshev(int e) {
  if (e < 0) throw InvalidInput("negative Chebyshev degree");
  UPoly prev = UPoly::constant(Rat(1));
  if (e == 0) return prev;
  UPoly cur = UPoly::identity();
  const UPoly two_u = UPoly::monomial(Rat(2), 1);
  for (int k = 1; k < e; ++k) {
    UPoly next = two_u * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

UPoly compose(const UPoly& f, const UPoly& g) {
  UPoly acc;
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * g + UPoly::constant(f.coeff(static_cast<size_t>(i)));
  }
  return acc;
}

UPoly scale_argument(const UPoly& f, const Rat& c) {
  std::vector<Rat> v(f.coeffs().begin(), f.coeffs().end());
  Rat pw(1);
  for (auto& x : v) {
    x *= pw;
    pw *= c;
  }
  return UPoly(std::move(v));
}

UPoly taylor_shift(const UPoly& f, const Rat& c) {
  std::vector<Rat> a(f.coeffs().begin(), f.coeffs().end());
  const size_t n = a.size();
  Rat tmp;
  for (size_t i = 0; i + 1 < n; ++i) {
    for (size_t j = n - 1; j > i; --j) {
      tmp = c * a[j];
      a[j - 1] += tmp;
    }
  }
  return UPoly(std::move(a));
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return (p / upoly_gcd(p, p.derivative())).monic();
}

bool is_squarefree(const UPoly& p) {
  if (p.is_zero()) return false;
  if (p.degree() <= 1) return true;
  // A unit gcd modulo a prime that keeps the degree certifies a nonzero
  // discriminant; anything else falls back to the exact computation.
  if (auto img = mod_image(p)) {
    std::vector<std::uint64_t> der;
    for (size_t i = 1; i < img->size(); ++i) der.push_back((*img)[i] * i % kImagePrime);
    if (mod_gcd_degree(*img, der) == 0) return true;
  }
  return upoly_gcd(p, p.derivative()).degree() == 0;
}

std::vector<Rat> root_power_sums(const UPoly& monic_p, size_t count) {
  const int d = monic_p.degree();
  if (d < 0 || monic_p.leading() != 1) throw InvalidInput("power sums need a monic polynomial");
  std::vector<Rat> s(count);
  for (size_t k = 0; k < count; ++k) {
    if (k == 0) {
      s[0] = d;
      continue;
    }
    Rat acc(0);
    const size_t lim = std::min(k - 1, static_cast<size_t>(d));
    for (size_t i = 1; i <= lim; ++i) {
      acc += monic_p.coeff(static_cast<size_t>(d) - i) * s[k - i];
    }
    if (k <= static_cast<size_t>(d)) acc += monic_p.coeff(static_cast<size_t>(d) - k) * static_cast<long>(k);
    s[k] = -acc;
  }
  return s;
}

std::string to_string(const UPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rat& c = p.coeff(static_cast<size_t>(i));
    if (sgn(c) == 0) continue;
    Rat a = abs(c);
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    if (i == 0 || a != 1) os << a.get_str() << (i > 0 ? "*" : "");
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace polyopt
