#include "polyopt/realalg.hpp"

#include <algorithm>
#include <map>

#include "polyopt/errors.hpp"

namespace polyopt {

namespace {

// Sign changes of the leading coefficients of a sequence, at +inf or -inf.
int variations_at_infinity(const std::vector<UPoly>& seq, bool minus) {
  int count = 0, last = 0;
  for (const auto& s : seq) {
    int sg = sgn(s.leading());
    if (minus && s.degree() % 2) sg = -sg;
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

std::vector<UPoly> signed_remainders(const UPoly& a, const UPoly& b) {
  std::vector<UPoly> seq{a};
  if (b.is_zero()) return seq;
  seq.push_back(b);
  while (true) {
    UPoly r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    // positive rescaling keeps coefficients small without changing signs
    r = r * (1 / abs(r.leading()));
    seq.push_back(std::move(r));
  }
  return seq;
}

// Solves m c = b for square m over Q.
std::vector<Rat> solve(std::vector<std::vector<Rat>> m, std::vector<Rat> b) {
  const size_t n = m.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) throw InvariantViolation("sign determination matrix is singular");
    std::swap(m[piv], m[c]);
    std::swap(b[piv], b[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      Rat f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  for (size_t c = 0; c < n; ++c) b[c] /= m[c][c];
  return b;
}

// Entry of the basic 3x3 block: rows are exponents 0, 1, 2; columns signs.
int block_entry(int exponent, int sign) {
  if (exponent == 0) return 1;
  if (exponent == 1) return sign;
  return sign == 0 ? 0 : 1;
}

int sign_power(int sign, int exponent) {
  if (exponent == 0) return 1;
  if (exponent == 1) return sign;
  return sign * sign;
}

std::vector<Rat> descartes_coeffs(const UPoly& p, const Rat& a, const Rat& b) {
  // (x+1)^n p((a + b x) / (1 + x)) : positive roots correspond to roots in (a, b)
  UPoly q = compose(p, UPoly{a, b - a});  // p(a + (b - a) y), y in (0, 1)
  std::vector<Rat> rev(q.coeffs().rbegin(), q.coeffs().rend());
  UPoly r = taylor_shift(UPoly(std::move(rev)), Rat(1));
  return std::vector<Rat>(r.coeffs().begin(), r.coeffs().end());
}

int coefficient_variations(const std::vector<Rat>& c) {
  int count = 0, last = 0;
  for (const Rat& x : c) {
    const int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

Rat root_bound(const UPoly& p) {
  Rat m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rat(abs(p.coeff(static_cast<size_t>(i)) / p.leading())));
  Rat b(1);
  while (b <= m + 1) b *= 2;
  return b;
}

// Same roots, integer coefficients with unit content.
UPoly primitive_integer(const UPoly& p) {
  Int den(1), num(0);
  for (const Rat& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Rat> out;
  for (const Rat& c : p.coeffs()) {
    out.push_back(c * den);
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), out.back().get_num_mpz_t());
  }
  for (Rat& c : out) c /= num;
  return UPoly(std::move(out));
}

void isolate_in(const UPoly& p, const Rat& a, const Rat& b, std::vector<RootInterval>& out) {
  const int v = coefficient_variations(descartes_coeffs(p, a, b));
  if (v == 0) return;
  // endpoints that are roots themselves would break sign-based refinement
  if (v == 1 && sgn(p(a)) != 0 && sgn(p(b)) != 0) {
    out.push_back({a, b});
    return;
  }
  const Rat mid = (a + b) / 2;
  isolate_in(p, a, mid, out);
  if (sgn(p(mid)) == 0) out.push_back({mid, mid});
  isolate_in(p, mid, b, out);
}

}  // namespace

int tarski_query(const UPoly& p, const UPoly& q) {
  if (p.is_zero()) throw InvalidInput("tarski_query of the zero polynomial");
  if (p.degree() == 0) return 0;
  const UPoly ps = squarefree_part(p);
  const UPoly qr = q % ps;
  const auto seq = signed_remainders(ps, (ps.derivative() * qr) % ps);
  return variations_at_infinity(seq, true) - variations_at_infinity(seq, false);
}

SignConditionTable sign_determination(const UPoly& p, const std::vector<UPoly>& qs) {
  if (p.is_zero()) throw InvalidInput("sign_determination of the zero polynomial");
  const UPoly ps = squarefree_part(p);
  const int roots = tarski_query(ps, UPoly{1});
  if (roots == 0) return {};
  std::vector<UPoly> qr;
  for (const auto& q : qs) qr.push_back(q % ps);

  std::vector<std::vector<int>> conds{{}};
  std::vector<std::vector<int>> ada{{}};  // adapted exponent vectors
  std::vector<Rat> counts{Rat(roots)};

  for (size_t i = 0; i < qr.size(); ++i) {
    std::vector<std::vector<int>> c2, a2;
    for (const auto& c : conds)
      for (int s : {0, 1, -1}) {
        auto x = c;
        x.push_back(s);
        c2.push_back(std::move(x));
      }
    for (const auto& a : ada)
      for (int e : {0, 1, 2}) {
        auto x = a;
        x.push_back(e);
        a2.push_back(std::move(x));
      }
    // Tarski queries of the products
    std::vector<Rat> taq;
    for (const auto& a : a2) {
      UPoly prod{1};
      for (size_t k = 0; k <= i; ++k)
        for (int e = 0; e < a[k]; ++e) prod = (prod * qr[k]) % ps;
      taq.emplace_back(tarski_query(ps, prod));
    }
    std::vector<std::vector<Rat>> m(a2.size(), std::vector<Rat>(c2.size()));
    for (size_t r = 0; r < a2.size(); ++r)
      for (size_t c = 0; c < c2.size(); ++c) {
        int v = 1;
        for (size_t k = 0; k <= i; ++k) v *= sign_power(c2[c][k], a2[r][k]);
        m[r][c] = v;
      }
    std::vector<Rat> sol = solve(m, taq);
    std::vector<size_t> keep;
    for (size_t c = 0; c < c2.size(); ++c) {
      if (sgn(sol[c]) < 0 || sol[c].get_den() != 1) throw InvariantViolation("non-integral sign condition count");
      if (sgn(sol[c]) > 0) keep.push_back(c);
    }
    // Greedy choice of independent rows restricted to the surviving columns.
    std::vector<std::vector<Rat>> basis;
    std::vector<size_t> pivots;
    std::vector<std::vector<int>> ada_next;
    for (size_t r = 0; r < a2.size() && ada_next.size() < keep.size(); ++r) {
      std::vector<Rat> row;
      for (size_t c : keep) row.push_back(m[r][c]);
      for (size_t b = 0; b < basis.size(); ++b) {
        if (sgn(row[pivots[b]]) == 0) continue;
        Rat f = row[pivots[b]] / basis[b][pivots[b]];
        for (size_t k = 0; k < row.size(); ++k) row[k] -= f * basis[b][k];
      }
      size_t piv = 0;
      while (piv < row.size() && sgn(row[piv]) == 0) ++piv;
      if (piv == row.size()) continue;
      basis.push_back(std::move(row));
      pivots.push_back(piv);
      ada_next.push_back(a2[r]);
    }
    conds.clear();
    counts.clear();
    for (size_t c : keep) {
      conds.push_back(c2[c]);
      counts.push_back(sol[c]);
    }
    ada = std::move(ada_next);
  }
  SignConditionTable out;
  for (size_t c = 0; c < conds.size(); ++c) out.push_back({conds[c], static_cast<int>(counts[c].get_num().get_si())});
  std::sort(out.begin(), out.end(), [](const SignCondition& a, const SignCondition& b) { return a.signs < b.signs; });
  return out;
}

std::vector<UPoly> thom_derivatives(const UPoly& p) {
  std::vector<UPoly> d;
  UPoly cur = p;
  for (int k = 1; k < p.degree(); ++k) {
    cur = cur.derivative();
    d.push_back(cur);
  }
  return d;
}

int thom_compare(const ThomEncoding& a, const ThomEncoding& b, int lc_sign) {
  if (a.signs.size() != b.signs.size()) throw InvalidInput("Thom encodings of different lengths");
  const size_t len = a.signs.size();
  for (size_t k = len; k-- > 0;) {
    if (a.signs[k] == b.signs[k]) continue;
    const int next = k + 1 < len ? a.signs[k + 1] : lc_sign;
    const int lt = a.signs[k] < b.signs[k] ? -1 : 1;
    return next > 0 ? lt : -lt;
  }
  return 0;
}

std::vector<ThomEncoding> thom_encodings(const UPoly& p) {
  if (p.degree() < 1) return {};
  if (!is_squarefree(p)) throw InvalidInput("Thom encodings need a squarefree polynomial");
  std::vector<ThomEncoding> out;
  for (const auto& row : sign_determination(p, thom_derivatives(p))) {
    if (row.count != 1) throw InvariantViolation("Thom encoding realized by several roots");
    out.push_back({row.signs});
  }
  const int lc = sgn(p.leading());
  std::sort(out.begin(), out.end(),
            [lc](const ThomEncoding& a, const ThomEncoding& b) { return thom_compare(a, b, lc) < 0; });
  return out;
}

std::vector<RootInterval> isolate_roots(const UPoly& p) {
  std::vector<RootInterval> out;
  if (p.degree() < 1) return out;
  const UPoly z = primitive_integer(p);
  const Rat b = root_bound(z);
  isolate_in(z, -b, b, out);
  return out;
}

RootInterval refine_root(const UPoly& p, RootInterval iv, const Rat& max_width) {
  if (iv.exact()) return iv;
  int slo = sgn(p(iv.lo));
  while (iv.width() > max_width) {
    const Rat mid = (iv.lo + iv.hi) / 2;
    const int sm = sgn(p(mid));
    if (sm == 0) return {mid, mid};
    if (sm == slo) {
      iv.lo = mid;
    } else {
      iv.hi = mid;
    }
  }
  (void)slo;
  return iv;
}

RootInterval interval_eval(const UPoly& q, const RootInterval& x) {
  RootInterval acc{Rat(0), Rat(0)};
  for (int i = q.degree(); i >= 0; --i) {
    const Rat c[4] = {acc.lo * x.lo, acc.lo * x.hi, acc.hi * x.lo, acc.hi * x.hi};
    const Rat lo = *std::min_element(c, c + 4), hi = *std::max_element(c, c + 4);
    acc = {lo + q.coeff(static_cast<size_t>(i)), hi + q.coeff(static_cast<size_t>(i))};
  }
  return acc;
}

int sign_at_root(const UPoly& p, const RootInterval& iv, const UPoly& q) {
  if (iv.exact()) return sgn(q(iv.lo));
  if (q.is_zero()) return 0;
  const UPoly g = upoly_gcd(p, q);
  if (g.degree() > 0) {
    const int a = sgn(g(iv.lo)), b = sgn(g(iv.hi));
    if (a * b < 0) return 0;
  }
  RootInterval cur = iv;
  while (true) {
    const RootInterval e = interval_eval(q, cur);
    if (sgn(e.lo) > 0) return 1;
    if (sgn(e.hi) < 0) return -1;
    cur = refine_root(p, cur, cur.width() / 4);
    if (cur.exact()) return sgn(q(cur.lo));
  }
}

RootInterval enclose_at_root(const UPoly& p, RootInterval& iv, const UPoly& q, const Rat& max_width) {
  while (true) {
    const RootInterval e = interval_eval(q, iv);
    if (e.width() <= max_width) return e;
    iv = refine_root(p, iv, iv.width() / 16);
  }
}

}  // namespace polyopt
