#pragma once

#include <vector>

#include "polyopt/upoly.hpp"

namespace polyopt {

/// Signs of p', ..., p^(deg p - 1) at a real root of p (leading sign implied).
struct ThomEncoding {
  std::vector<int> signs;
  friend bool operator==(const ThomEncoding&, const ThomEncoding&) = default;
};

struct SignCondition {
  std::vector<int> signs;
  int count = 0;
  friend bool operator==(const SignCondition&, const SignCondition&) = default;
};
using SignConditionTable = std::vector<SignCondition>;

/// Sum over the real roots xi of p of sign(q(xi)).
int tarski_query(const UPoly& p, const UPoly& q);

/// Realizable sign vectors of qs over the real roots of p, with counts.
/// Rows are sorted lexicographically by sign vector.
SignConditionTable sign_determination(const UPoly& p, const std::vector<UPoly>& qs);

/// p', p'', ..., p^(deg p - 1).
std::vector<UPoly> thom_derivatives(const UPoly& p);

/// One encoding per real root of a squarefree p, in increasing root order.
std::vector<ThomEncoding> thom_encodings(const UPoly& p);

/// -1, 0, +1 as the root encoded by a is below, equal to, above the one
/// encoded by b. lc_sign is the sign of the leading coefficient of p.
int thom_compare(const ThomEncoding& a, const ThomEncoding& b, int lc_sign = 1);

/// Closed interval [lo, hi]; lo == hi means an exact rational root.
struct RootInterval {
  Rat lo, hi;
  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
};

/// Disjoint isolating intervals for the real roots of a squarefree p, in
/// increasing order. Inexact intervals have p(lo) p(hi) < 0.
std::vector<RootInterval> isolate_roots(const UPoly& p);

/// Bisects until width <= max_width (or the root is hit exactly).
RootInterval refine_root(const UPoly& p, RootInterval iv, const Rat& max_width);

/// Interval enclosure of q over [lo, hi] by Horner interval arithmetic.
RootInterval interval_eval(const UPoly& q, const RootInterval& x);

/// Sign of q at the root of p isolated by iv (p squarefree). Exact: zero is
/// decided through gcd(p, q).
int sign_at_root(const UPoly& p, const RootInterval& iv, const UPoly& q);

/// Enclosure of q(xi) of width <= max_width; the root interval is refined in place.
RootInterval enclose_at_root(const UPoly& p, RootInterval& iv, const UPoly& q, const Rat& max_width);

}  // namespace polyopt
