#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <random>
#include <vector>

#include "polyopt/rat.hpp"
#include "polyopt/realalg.hpp"
#include "polyopt/upoly.hpp"

namespace polyopt::testing {

inline Rat random_rat(std::mt19937_64& rng, long lo = -9, long hi = 9, bool fractions = false) {
  std::uniform_int_distribution<long> d(lo, hi);
  if (!fractions) return Rat(d(rng));
  std::uniform_int_distribution<long> den(1, 5);
  return make_rat(d(rng), den(rng));
}

/// Random polynomial of exact degree `deg` (nonzero leading coefficient).
inline UPoly random_poly(std::mt19937_64& rng, int deg, long lo = -9, long hi = 9) {
  std::vector<Rat> c(static_cast<size_t>(deg) + 1);
  for (auto& x : c) x = random_rat(rng, lo, hi);
  while (sgn(c.back()) == 0) c.back() = random_rat(rng, lo, hi);
  return UPoly(std::move(c));
}

inline std::int64_t ipow(std::int64_t b, size_t e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Determinant by plain Gaussian elimination over Q.
inline Rat det(std::vector<std::vector<Rat>> m) {
  const size_t n = m.size();
  Rat d(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      Rat f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return d;
}

/// Resultant as the determinant of the Sylvester matrix.
inline Rat sylvester_resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  const int m = a.degree(), n = b.degree();
  const size_t sz = static_cast<size_t>(m + n);
  if (sz == 0) return Rat(1);
  std::vector<std::vector<Rat>> s(sz, std::vector<Rat>(sz));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[static_cast<size_t>(r)][static_cast<size_t>(r + m - i)] = a.coeff(static_cast<size_t>(i));
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[static_cast<size_t>(n + r)][static_cast<size_t>(r + n - i)] = b.coeff(static_cast<size_t>(i));
  return det(s);
}

}  // namespace polyopt::testing

namespace polyopt::testing {

/// Q[u]/(p) reduced modulo the prime 2^61 - 1: a cheap image for zero tests
/// on large resolutions. A nonzero image proves the rational value nonzero.
class ModPrimeQuotient {
 public:
  using Element = std::vector<std::uint64_t>;
  static constexpr std::uint64_t kQ = (std::uint64_t{1} << 61) - 1;

  explicit ModPrimeQuotient(const UPoly& p) : mod_(reduce_poly(p)) {
    const std::uint64_t inv = inverse(mod_.back());
    for (auto& c : mod_) c = mulq(c, inv);
  }

  static std::uint64_t mulq(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(r & kQ), hi = static_cast<std::uint64_t>(r >> 61);
    std::uint64_t s = lo + hi;
    return s >= kQ ? s - kQ : s;
  }
  static std::uint64_t addq(std::uint64_t a, std::uint64_t b) { return a + b >= kQ ? a + b - kQ : a + b; }
  static std::uint64_t subq(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kQ - b; }
  static std::uint64_t powq(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1U) r = mulq(r, a);
      a = mulq(a, a);
      e >>= 1U;
    }
    return r;
  }
  static std::uint64_t inverse(std::uint64_t a) { return powq(a, kQ - 2); }
  static std::uint64_t reduce_int(const Int& z) {
    Int r = z % Int(std::to_string(kQ));
    if (r < 0) r += Int(std::to_string(kQ));
    return std::stoull(r.get_str());
  }
  static std::uint64_t reduce_rat(const Rat& x) {
    const std::uint64_t den = reduce_int(x.get_den());
    if (den == 0) throw std::domain_error("denominator vanishes modulo the test prime");
    return mulq(reduce_int(x.get_num()), inverse(den));
  }
  static Element reduce_poly(const UPoly& p) {
    Element e;
    for (const Rat& c : p.coeffs()) e.push_back(reduce_rat(c));
    return e;
  }

  Element from_rat(const Rat& c) const { return trim({reduce_rat(c)}); }
  Element add(const Element& a, const Element& b) const {
    Element r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = addq(r[i], b[i]);
    return trim(r);
  }
  Element sub(const Element& a, const Element& b) const {
    Element r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = subq(r[i], b[i]);
    return trim(r);
  }
  Element mul(const Element& a, const Element& b) const {
    if (a.empty() || b.empty()) return {};
    Element r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = addq(r[i + j], mulq(a[i], b[j]));
    return reduce(r);
  }
  Element reduce(Element r) const {
    const size_t dm = mod_.size() - 1;
    for (size_t k = r.size(); k-- > dm;) {
      const std::uint64_t c = r[k];
      if (c == 0) continue;
      for (size_t i = 0; i <= dm; ++i) r[k - dm + i] = subq(r[k - dm + i], mulq(c, mod_[i]));
    }
    return trim(r);
  }

 private:
  static Element trim(Element r) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  Element mod_;
};


/// Sign of q at the root of squarefree p inside [lo, hi] by repeated bisection
/// and naive interval evaluation; zero iff gcd(p, q) changes sign on the interval.
inline int sign_by_bisection(const UPoly& p, Rat lo, Rat hi, const UPoly& q) {
  if (lo == hi) return sgn(q(lo));
  const UPoly g = upoly_gcd(p, q);
  if (g.degree() > 0 && sgn(g(lo)) * sgn(g(hi)) < 0) return 0;
  while (true) {
    Rat elo(0), ehi(0);
    for (int i = q.degree(); i >= 0; --i) {
      std::vector<Rat> c{elo * lo, elo * hi, ehi * lo, ehi * hi};
      elo = *std::min_element(c.begin(), c.end()) + q.coeff(static_cast<size_t>(i));
      ehi = *std::max_element(c.begin(), c.end()) + q.coeff(static_cast<size_t>(i));
    }
    if (sgn(elo) > 0) return 1;
    if (sgn(ehi) < 0) return -1;
    const Rat mid = (lo + hi) / 2;
    const int sm = sgn(p(mid));
    if (sm == 0) return sgn(q(mid));
    if (sm == sgn(p(lo))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

/// Realized sign vectors with counts, from evaluating at each isolated root.
inline std::map<std::vector<int>, int> signs_by_evaluation(const UPoly& p, const std::vector<UPoly>& qs) {
  const UPoly ps = squarefree_part(p);
  std::map<std::vector<int>, int> out;
  for (const auto& iv : isolate_roots(ps)) {
    std::vector<int> v;
    for (const auto& q : qs) v.push_back(sign_by_bisection(ps, iv.lo, iv.hi, q));
    ++out[v];
  }
  return out;
}

/// Squarefree polynomial of degree <= max_deg with coefficients in [lo, hi].
inline UPoly random_squarefree(std::mt19937_64& rng, int max_deg, long lo = -20, long hi = 20) {
  std::uniform_int_distribution<int> dd(1, max_deg);
  while (true) {
    UPoly p = squarefree_part(random_poly(rng, dd(rng), lo, hi));
    if (p.degree() >= 1) return p;
  }
}

}  // namespace polyopt::testing
