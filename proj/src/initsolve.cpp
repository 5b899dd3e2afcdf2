#include "polyopt/initsolve.hpp"

#include <algorithm>

#include "polyopt/errors.hpp"
#include "polyopt/ring.hpp"

namespace polyopt {

namespace {

std::vector<Rat> gauss_solve(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
  const size_t n = m.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) throw InvariantViolation("singular block matrix");
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      Rat f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (size_t c = 0; c < n; ++c) rhs[c] /= m[c][c];
  return rhs;
}

// Element of Q[z]/h for monic h: trace via root power sums.
Rat trace_mod(const UPoly& a, const std::vector<Rat>& power_sums) {
  Rat tr(0);
  for (int k = 0; k <= a.degree(); ++k) tr += a.coeff(static_cast<size_t>(k)) * power_sums[static_cast<size_t>(k)];
  return tr;
}

// P(c - alpha z) mod h by Horner in Q[z]/h.
UPoly shifted_mod(const UPoly& pp, const Rat& c, const Rat& alpha, const UPoly& h) {
  const UPoly lin{c, -alpha};
  UPoly acc;
  for (int i = pp.degree(); i >= 0; --i) acc = (acc * lin + UPoly::constant(pp.coeff(static_cast<size_t>(i)))) % h;
  return acc;
}

UPoly compose_mod(const UPoly& f, const UPoly& g, const UPoly& m) {
  UPoly acc;
  for (int i = f.degree(); i >= 0; --i) acc = (acc * g + UPoly::constant(f.coeff(static_cast<size_t>(i)))) % m;
  return acc;
}

}  // namespace

GeomRes GeomRes::empty_like(const std::vector<Rat>& alpha, size_t coords) {
  GeomRes r;
  r.alpha = alpha;
  r.x_count = alpha.size();
  r.v.assign(coords, UPoly{});
  return r;
}

bool resolution_is_valid(const GeomRes& r) {
  if (r.p.degree() < 0 || r.p.leading() != 1) return false;
  if (r.alpha.size() != r.x_count || r.x_count > r.v.size()) return false;
  if (r.p.degree() == 0) return true;
  if (!is_squarefree(r.p)) return false;
  UPoly sum;
  for (size_t j = 0; j < r.v.size(); ++j) {
    if (r.v[j].degree() >= r.p.degree()) return false;
    if (j < r.x_count) sum = sum + r.alpha[j] * r.v[j];
  }
  return (sum - UPoly{0, 1}) % r.p == UPoly{};
}

std::vector<Rat> solve_block_linear(const std::vector<std::vector<Rat>>& a_b, const std::vector<Rat>& rhs) {
  if (a_b.size() != rhs.size()) throw InvalidInput("block system dimensions disagree");
  std::vector<Rat> y = gauss_solve(a_b, rhs);
  for (Rat& c : y) {
    c -= 1;
    if (c == 1 || c == -1) throw InvariantViolation("Chebyshev target value is a critical value");
  }
  return y;
}

std::vector<Rat> lambda_for_block(const std::vector<std::vector<Rat>>& a, const std::vector<size_t>& b,
                                  const std::vector<size_t>& s) {
  const size_t n = a.at(0).size() - 1;
  if (b.size() + s.size() != n) throw InvalidInput("block size must be n - s");
  std::vector<std::vector<Rat>> m;
  std::vector<Rat> rhs;
  for (size_t j = 0; j < n; ++j) {
    if (std::find(b.begin(), b.end(), j) != b.end()) continue;
    std::vector<Rat> row;
    for (size_t i : s) row.push_back(a.at(i + 1).at(j + 1));
    m.push_back(std::move(row));
    rhs.push_back(a[0][j + 1]);
  }
  return gauss_solve(std::move(m), std::move(rhs));
}

GeomRes separated_product(const std::vector<UPoly>& h_in, const std::vector<Rat>& alpha) {
  const size_t k = h_in.size();
  if (alpha.size() != k || k == 0) throw InvalidInput("separated_product needs one alpha per factor");
  std::vector<UPoly> h;
  for (const auto& hj : h_in) {
    if (hj.degree() <= 0) return GeomRes::empty_like(alpha, k);
    h.push_back(hj.monic());
  }
  for (const Rat& a : alpha)
    if (sgn(a) == 0) throw SeparationFailure("separating form has a zero coefficient");

  GeomRes r;
  r.alpha = alpha;
  r.x_count = k;
  // first coordinate: u = alpha_1 x_1
  r.p = scale_argument(h[0], 1 / alpha[0]).monic();
  r.v.push_back(UPoly{Rat(0), 1 / alpha[0]} % r.p);

  for (size_t j = 1; j < k; ++j) {
    const UPoly& hj = h[j];
    const UPoly& prev = r.p;
    const int target = prev.degree() * hj.degree();
    const auto psums = root_power_sums(hj, static_cast<size_t>(hj.degree()));
    const UPoly dprev = prev.derivative();
    std::vector<std::pair<Rat, Rat>> rv, dv;
    for (long ci = 0; static_cast<int>(rv.size()) <= target; ++ci) {
      const Rat c(ci % 2 ? (ci + 1) / 2 : -ci / 2);
      UPoly q0 = shifted_mod(prev, c, alpha[j], hj);
      if (q0.degree() < 0) continue;
      auto inv = inverse_mod(q0, hj);
      if (!inv) continue;  // c is a root of the product polynomial
      const Rat rc = upoly_resultant(hj, q0);
      UPoly q1 = (UPoly{0, -1} * shifted_mod(dprev, c, alpha[j], hj)) % hj;
      const Rat dw = rc * trace_mod((q1 * *inv) % hj, psums);
      rv.emplace_back(c, rc);
      dv.emplace_back(c, dw);
    }
    UPoly pk = upoly_eval_interp(rv);
    UPoly dwr = upoly_eval_interp(dv);
    if (pk.degree() != target || pk.leading() != 1) throw InvariantViolation("product polynomial has the wrong shape");
    auto dinv = inverse_mod(pk.derivative(), pk);
    if (!dinv) throw SeparationFailure("separating form is not injective on the block");
    UPoly vk = (-dwr * *dinv) % pk;
    // old coordinates were in terms of w = u - alpha_j x_j
    UPoly w = (UPoly{0, 1} - alpha[j] * vk) % pk;
    for (auto& vi : r.v) vi = compose_mod(vi, w, pk);
    r.v.push_back(vk);
    r.p = pk;
  }
  return r;
}

GeomRes geomres_block(int d, size_t n, const std::vector<size_t>& b, const std::vector<int>& e,
                      const std::vector<Rat>& c, const std::vector<Rat>& lambda, const std::vector<Rat>& alpha) {
  if (b.size() != e.size() || b.size() + c.size() != n || alpha.size() != n)
    throw InvalidInput("block data has inconsistent sizes");
  const UPoly td = chebyshev(d);
  const UPoly tdp = td.derivative();
  std::vector<UPoly> h;
  size_t bi = 0, ci = 0;
  for (size_t j = 0; j < n; ++j) {
    if (bi < b.size() && b[bi] == j) {
      h.push_back(upoly_gcd(tdp, td - UPoly::constant(Rat(e[bi]))));
      ++bi;
    } else {
      h.push_back(td - UPoly::constant(c[ci++]));
    }
  }
  GeomRes r = separated_product(h, alpha);
  for (const Rat& l : lambda) r.v.push_back(r.empty() ? UPoly{} : UPoly::constant(l) % r.p);
  return r;
}

GeomRes geomres_union(const GeomRes& r1, const GeomRes& r2) {
  if (r1.alpha != r2.alpha || r1.v.size() != r2.v.size() || r1.x_count != r2.x_count)
    throw InvalidInput("resolutions use different coordinates or forms");
  if (r1.empty()) return r2;
  if (r2.empty()) return r1;
  const UPoly g = upoly_gcd(r1.p, r2.p);
  if (g.degree() > 0) {
    for (size_t j = 0; j < r1.v.size(); ++j)
      if ((r1.v[j] - r2.v[j]) % g != UPoly{}) throw SeparationFailure("resolutions disagree on a shared factor");
  }
  const UPoly rest = exact_div(r2.p, g);
  if (rest.degree() == 0) return r1;
  auto inv = inverse_mod(r1.p % rest, rest);
  if (!inv) throw SeparationFailure("overlapping factors are not squarefree");
  GeomRes r;
  r.alpha = r1.alpha;
  r.x_count = r1.x_count;
  r.p = r1.p * rest;
  for (size_t j = 0; j < r1.v.size(); ++j) {
    UPoly corr = (((r2.v[j] % rest) - (r1.v[j] % rest)) * *inv) % rest;
    r.v.push_back(r1.v[j] + r1.p * corr);
  }
  return r;
}

GeomRes initial_geomres(const Problem& p, const DeformationData& dd, const Candidate& c,
                        const std::vector<Rat>& alpha) {
  const size_t n = p.n, s = c.s();
  if (alpha.size() != n) throw InvalidInput("separating form must have n coefficients");
  std::vector<GeomRes> parts;
  // blocks B of size n - s in lexicographic order
  std::vector<size_t> b(n - s);
  for (size_t k = 0; k < b.size(); ++k) b[k] = k;
  while (true) {
    std::vector<size_t> outside;
    for (size_t j = 0; j < n; ++j)
      if (std::find(b.begin(), b.end(), j) == b.end()) outside.push_back(j);
    std::vector<Rat> lam = lambda_for_block(dd.a, b, c.active);
    for (size_t k = 0; k < s; ++k)
      if (c.sigma[k] < 0) lam[k] = -lam[k];
    std::vector<std::vector<Rat>> a_b(s, std::vector<Rat>(s));
    for (size_t r = 0; r < s; ++r)
      for (size_t col = 0; col < s; ++col) a_b[r][col] = dd.a[c.active[r] + 1][outside[col] + 1];
    for (size_t mask = 0; mask < (size_t{1} << b.size()); ++mask) {
      std::vector<int> e(b.size());
      for (size_t k = 0; k < b.size(); ++k) e[k] = (mask >> (b.size() - 1 - k)) & 1U ? -1 : 1;
      std::vector<Rat> rhs(s);
      for (size_t r = 0; r < s; ++r) {
        const auto& row = dd.a[c.active[r] + 1];
        rhs[r] = -row[0];
        for (size_t k = 0; k < b.size(); ++k) rhs[r] -= row[b[k] + 1] * (e[k] + 1);
      }
      std::vector<Rat> targets = solve_block_linear(a_b, rhs);
      parts.push_back(geomres_block(p.d, n, b, e, targets, lam, alpha));
    }
    size_t k = b.size();
    while (k > 0 && b[k - 1] == n - b.size() + k - 1) --k;
    if (k == 0) break;
    ++b[k - 1];
    for (size_t r = k; r < b.size(); ++r) b[r] = b[r - 1] + 1;
  }
  GeomRes acc = GeomRes::empty_like(alpha, n + s);
  for (const auto& part : parts) acc = geomres_union(acc, part);
  if (acc.degree() != c.bezout || !resolution_is_valid(acc))
    throw SeparationFailure("initial resolution has degree " + std::to_string(acc.degree()) + ", expected " +
                            std::to_string(c.bezout));
  return acc;
}

}  // namespace polyopt
