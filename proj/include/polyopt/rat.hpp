#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polyopt {

using Int = mpz_class;

/// Exact rational scalar. GMP keeps every arithmetic result canonical
/// (reduced, positive denominator); constructors below canonicalize too.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
Rat make_rat(const Int& num, const Int& den);

/// -1, 0 or +1.
int sign(const Rat& x);

bool is_canonical(const Rat& x);

/// "p/q" or "p"; round-trips through parse_rat.
std::string to_string(const Rat& x);
Rat parse_rat(std::string_view text);

/// Decimal expansion rounded to `digits` fractional digits.
std::string to_decimal(const Rat& x, int digits);

Rat abs(const Rat& x);

}  // namespace polyopt
