#include "polyopt/problem_parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace polyopt {

namespace {

struct Line {
  std::string_view text;
  int number;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, int line, int col0, const std::vector<std::string>& vars)
      : s_(text), line_(line), col0_(col0), vars_(vars) {}

  SparsePoly parse() {
    skip();
    if (pos_ >= s_.size()) fail("expected an expression");
    SparsePoly p = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col0_ + static_cast<int>(pos_), msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  SparsePoly constant(const Rat& c) const { return SparsePoly::constant(vars_.size(), c); }

  SparsePoly expr() {
    SparsePoly acc = term();
    while (true) {
      if (eat('+')) {
        acc += term();
      } else if (eat('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  SparsePoly term() {
    SparsePoly acc = unary();
    while (true) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        const size_t at = pos_;
        SparsePoly d = unary();
        auto c = d.as_constant();
        if (!c) {
          pos_ = at;
          fail("division by a non-constant expression");
        }
        if (sgn(*c) == 0) {
          pos_ = at;
          fail("division by zero");
        }
        acc = acc * (1 / *c);
      } else {
        return acc;
      }
    }
  }

  SparsePoly unary() {
    if (eat('-')) return constant(Rat(0)) - unary();
    if (eat('+')) return unary();
    return power();
  }

  SparsePoly power() {
    SparsePoly base = primary();
    if (!eat('^')) return base;
    skip();
    const size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    if (pos_ - start > 4) fail("exponent too large");
    return base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
  }

  SparsePoly primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SparsePoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return SparsePoly::variable(vars_.size(), static_cast<size_t>(it - vars_.begin()));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  SparsePoly number() {
    const size_t start = pos_;
    std::string digits;
    int frac = -1;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
      if (s_[pos_] == '.') {
        if (frac >= 0) fail("malformed number");
        frac = 0;
      } else {
        digits += s_[pos_];
        if (frac >= 0) ++frac;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    Int num(digits, 10), den(1);
    if (frac > 0) mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
    return constant(make_rat(num, den));
  }

  std::string_view s_;
  size_t pos_ = 0;
  int line_, col0_;
  const std::vector<std::string>& vars_;
};

bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

ProblemSource parse_source(std::string_view text) {
  ProblemSource src;
  bool have_vars = false, have_objective = false;
  int number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++number;
    start = end + 1;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    if (lead == line.size()) continue;
    const size_t colon = line.find(':', lead);
    if (colon == std::string_view::npos) throw ParseError(number, static_cast<int>(lead) + 1, "expected 'keyword:'");
    std::string_view key = line.substr(lead, colon - lead);
    while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.remove_suffix(1);
    const std::string_view body = line.substr(colon + 1);
    const int body_col = static_cast<int>(colon) + 2;
    const int key_col = static_cast<int>(lead) + 1;

    if (key == "vars") {
      if (have_vars) throw ParseError(number, key_col, "duplicate 'vars:' line");
      std::string names(body);
      std::replace(names.begin(), names.end(), ',', ' ');
      std::istringstream is(names);
      std::string name;
      while (is >> name) {
        const int col = body_col + static_cast<int>(names.find(name));
        if (!valid_name(name)) throw ParseError(number, col, "invalid variable name '" + name + "'");
        if (std::find(src.vars.begin(), src.vars.end(), name) != src.vars.end())
          throw ParseError(number, col, "duplicate variable '" + name + "'");
        src.vars.push_back(name);
      }
      if (src.vars.size() < 2) throw ParseError(number, key_col, "at least two variables are required");
      have_vars = true;
      continue;
    }
    if (!have_vars) throw ParseError(number, key_col, "'vars:' must come first");
    if (key == "minimize") {
      if (have_objective) throw ParseError(number, key_col, "duplicate 'minimize:' line");
      src.objective = ExprParser(body, number, body_col, src.vars).parse();
      have_objective = true;
    } else if (key == "eq" || key == "ge") {
      if (!have_objective) throw ParseError(number, key_col, "constraints must follow 'minimize:'");
      SparsePoly p = ExprParser(body, number, body_col, src.vars).parse();
      if (p.total_degree() <= 0) throw ParseError(number, body_col, "constraint is constant");
      src.constraints.push_back({key == "eq" ? ConstraintKind::kEq : ConstraintKind::kGe, std::move(p), number});
    } else if (key == "degree") {
      if (src.degree) throw ParseError(number, key_col, "duplicate 'degree:' line");
      std::string v(body);
      v.erase(0, v.find_first_not_of(" \t"));
      v.erase(v.find_last_not_of(" \t") + 1);
      if (v.empty() || v.size() > 4 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(number, body_col, "degree must be a positive integer");
      src.degree = std::stoi(v);
    } else {
      throw ParseError(number, key_col, "unknown keyword '" + std::string(key) + "'");
    }
  }
  if (!have_vars) throw ParseError(std::max(1, number), 1, "missing 'vars:' line");
  if (!have_objective) throw ParseError(number, 1, "missing 'minimize:' line");
  return src;
}

Problem to_problem(const ProblemSource& src) {
  std::vector<SparsePoly> f;
  size_t l = 0;
  for (const auto& c : src.constraints)
    if (c.kind == ConstraintKind::kEq) {
      f.push_back(c.poly);
      ++l;
    }
  for (const auto& c : src.constraints)
    if (c.kind == ConstraintKind::kGe) f.push_back(c.poly);
  return problem_from_polys(f, src.objective, l, src.degree.value_or(-1));
}

Problem parse_problem(std::string_view text) { return to_problem(parse_source(text)); }

std::string pretty_print(const ProblemSource& src) {
  std::ostringstream os;
  os << "vars:";
  for (const auto& v : src.vars) os << " " << v;
  os << "\nminimize: " << src.objective.to_string(src.vars) << "\n";
  for (const auto& c : src.constraints)
    os << (c.kind == ConstraintKind::kEq ? "eq: " : "ge: ") << c.poly.to_string(src.vars) << "\n";
  if (src.degree) os << "degree: " << *src.degree << "\n";
  return os.str();
}

}  // namespace polyopt
