#include "polyopt/rat.hpp"

#include "polyopt/errors.hpp"

namespace polyopt {

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::kInitialResolution: return "initial-resolution";
    case Stage::kLifting: return "lifting";
    case Stage::kReconstruction: return "reconstruction";
    case Stage::kSpecialization: return "specialization";
    case Stage::kVerification: return "verification";
    case Stage::kComparison: return "comparison";
  }
  return "unknown";
}

Rat make_rat(long num, long den) {
  if (den == 0) throw InvalidInput("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw InvalidInput("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

int sign(const Rat& x) { return sgn(x); }

bool is_canonical(const Rat& x) {
  if (x.get_den() <= 0) return false;
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return g == 1;
}

std::string to_string(const Rat& x) { return x.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s(text);
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0) {
    throw InvalidInput("not a rational literal: '" + s + "'");
  }
  r.canonicalize();
  return r;
}

std::string to_decimal(const Rat& x, int digits) {
  if (digits < 0) digits = 0;
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero
  Rat scaled = abs(x) * scale;
  Int q = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<size_t>(digits)) {
      body.insert(0, static_cast<size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<size_t>(digits), ".");
  }
  if (sgn(x) < 0 && q != 0) body.insert(0, "-");
  return body;
}

Rat abs(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }

}  // namespace polyopt
