#include "polyopt/slp.hpp"

#include <algorithm>
#include <sstream>

namespace polyopt {

Slp::Slp(size_t inputs, std::vector<SlpInstr> instrs, std::vector<Rat> constants,
         std::vector<std::uint32_t> outputs)
    : inputs_(inputs),
      instrs_(std::move(instrs)),
      constants_(std::move(constants)),
      outputs_(std::move(outputs)) {
  for (size_t i = 0; i < instrs_.size(); ++i) {
    const SlpInstr& in = instrs_[i];
    switch (in.op) {
      case SlpOp::kInput:
        if (in.a >= inputs_) throw InvalidInput("slp input index out of range");
        break;
      case SlpOp::kConst:
        if (in.a >= constants_.size()) throw InvalidInput("slp constant index out of range");
        break;
      default:
        if (in.a >= i || in.b >= i) throw InvalidInput("slp operand does not refer to an earlier instruction");
    }
  }
  for (auto o : outputs_) {
    if (o >= instrs_.size()) throw InvalidInput("slp output reference out of range");
  }
}

SlpBuilder::SlpBuilder(size_t inputs) : inputs_(inputs), input_nodes_(inputs) {}

SlpBuilder::Node SlpBuilder::push(SlpInstr instr) {
  instrs_.push_back(instr);
  return Node(this, static_cast<std::uint32_t>(instrs_.size() - 1));
}

SlpBuilder::Node SlpBuilder::input(size_t index) {
  if (index >= inputs_) throw InvalidInput("slp input index out of range");
  if (!input_nodes_[index]) {
    input_nodes_[index] = push({SlpOp::kInput, static_cast<std::uint32_t>(index), 0}).id();
  }
  return Node(this, *input_nodes_[index]);
}

SlpBuilder::Node SlpBuilder::constant(const Rat& c) {
  auto it = const_nodes_.find(c);
  if (it != const_nodes_.end()) return Node(this, it->second);
  constants_.push_back(c);
  Node n = push({SlpOp::kConst, static_cast<std::uint32_t>(constants_.size() - 1), 0});
  const_nodes_.emplace(c, n.id());
  return n;
}

std::optional<Rat> SlpBuilder::constant_value(Node n) const {
  const SlpInstr& in = instrs_.at(n.id());
  if (in.op != SlpOp::kConst) return std::nullopt;
  return constants_[in.a];
}

SlpBuilder::Node SlpBuilder::add(Node a, Node b) {
  auto ca = constant_value(a), cb = constant_value(b);
  if (ca && cb) return constant(*ca + *cb);
  if (ca && sgn(*ca) == 0) return b;
  if (cb && sgn(*cb) == 0) return a;
  return push({SlpOp::kAdd, a.id(), b.id()});
}

SlpBuilder::Node SlpBuilder::sub(Node a, Node b) {
  auto ca = constant_value(a), cb = constant_value(b);
  if (ca && cb) return constant(*ca - *cb);
  if (cb && sgn(*cb) == 0) return a;
  return push({SlpOp::kSub, a.id(), b.id()});
}

SlpBuilder::Node SlpBuilder::mul(Node a, Node b) {
  auto ca = constant_value(a), cb = constant_value(b);
  if (ca && cb) return constant(*ca * *cb);
  if ((ca && sgn(*ca) == 0) || (cb && sgn(*cb) == 0)) return constant(Rat(0));
  if (ca && *ca == 1) return b;
  if (cb && *cb == 1) return a;
  return push({SlpOp::kMul, a.id(), b.id()});
}

SlpBuilder::Node SlpBuilder::pow(Node a, unsigned e) {
  Node result = constant(Rat(1));
  Node base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

std::vector<SlpBuilder::Node> SlpBuilder::inline_slp(const Slp& f, std::span<const Node> args) {
  if (args.size() != f.inputs()) throw InvalidInput("inline_slp arity mismatch");
  std::vector<Node> map;
  map.reserve(f.length());
  for (const SlpInstr& in : f.instructions()) {
    switch (in.op) {
      case SlpOp::kInput: map.push_back(args[in.a]); break;
      case SlpOp::kConst: map.push_back(constant(f.constants()[in.a])); break;
      case SlpOp::kAdd: map.push_back(add(map[in.a], map[in.b])); break;
      case SlpOp::kSub: map.push_back(sub(map[in.a], map[in.b])); break;
      case SlpOp::kMul: map.push_back(mul(map[in.a], map[in.b])); break;
    }
  }
  std::vector<Node> out;
  for (auto o : f.outputs()) out.push_back(map[o]);
  return out;
}

Slp SlpBuilder::build(std::span<const Node> outputs) const {
  std::vector<std::uint32_t> outs;
  for (Node n : outputs) {
    if (n.owner_ != this) throw InvalidInput("slp output node from a different builder");
    outs.push_back(n.id());
  }
  return Slp(inputs_, instrs_, constants_, std::move(outs));
}

Slp slp_gradient(const Slp& f) {
  if (f.output_count() != 1) throw InvalidInput("slp_gradient needs a single-output slp");
  SlpBuilder b(f.inputs());
  std::vector<SlpBuilder::Node> args;
  for (size_t i = 0; i < f.inputs(); ++i) args.push_back(b.input(i));

  // Forward sweep, keeping every intermediate node.
  std::vector<SlpBuilder::Node> fwd;
  fwd.reserve(f.length());
  for (const SlpInstr& in : f.instructions()) {
    switch (in.op) {
      case SlpOp::kInput: fwd.push_back(args[in.a]); break;
      case SlpOp::kConst: fwd.push_back(b.constant(f.constants()[in.a])); break;
      case SlpOp::kAdd: fwd.push_back(b.add(fwd[in.a], fwd[in.b])); break;
      case SlpOp::kSub: fwd.push_back(b.sub(fwd[in.a], fwd[in.b])); break;
      case SlpOp::kMul: fwd.push_back(b.mul(fwd[in.a], fwd[in.b])); break;
    }
  }

  // Reverse sweep: adjoints of instructions, absent means zero.
  std::vector<std::optional<SlpBuilder::Node>> adj(f.length());
  std::vector<std::optional<SlpBuilder::Node>> grad(f.inputs());
  auto accumulate = [&b](std::optional<SlpBuilder::Node>& slot, SlpBuilder::Node v, bool negate) {
    if (slot) {
      slot = negate ? b.sub(*slot, v) : b.add(*slot, v);
    } else {
      slot = negate ? b.sub(b.constant(Rat(0)), v) : v;
    }
  };
  const auto out = f.outputs()[0];
  adj[out] = b.constant(Rat(1));
  const auto instrs = f.instructions();
  for (size_t i = out + 1; i-- > 0;) {
    if (!adj[i]) continue;
    const SlpInstr& in = instrs[i];
    const SlpBuilder::Node a = *adj[i];
    switch (in.op) {
      case SlpOp::kInput: accumulate(grad[in.a], a, false); break;
      case SlpOp::kConst: break;
      case SlpOp::kAdd:
        accumulate(adj[in.a], a, false);
        accumulate(adj[in.b], a, false);
        break;
      case SlpOp::kSub:
        accumulate(adj[in.a], a, false);
        accumulate(adj[in.b], a, true);
        break;
      case SlpOp::kMul:
        accumulate(adj[in.a], b.mul(a, fwd[in.b]), false);
        accumulate(adj[in.b], b.mul(a, fwd[in.a]), false);
        break;
    }
  }
  std::vector<SlpBuilder::Node> outputs{fwd[out]};
  for (auto& g : grad) outputs.push_back(g ? *g : b.constant(Rat(0)));
  return b.build(outputs);
}

std::vector<UPoly> slp_compose_univariate_all(const Slp& f, std::span<const UPoly> v, const UPoly& p) {
  if (v.size() != f.inputs()) throw InvalidInput("slp_compose_univariate arity mismatch");
  if (p.degree() < 1) return std::vector<UPoly>(f.output_count());
  QuotientRing ring(p);
  std::vector<UPoly> point;
  point.reserve(v.size());
  for (const auto& x : v) point.push_back(ring.reduce(x));
  return f.eval(ring, std::span<const UPoly>(point));
}

UPoly slp_compose_univariate(const Slp& f, std::span<const UPoly> v, const UPoly& p) {
  auto all = slp_compose_univariate_all(f, v, p);
  if (all.empty()) throw InvalidInput("slp has no outputs");
  return all.front();
}

// ---------------------------------------------------------------------------

SparsePoly SparsePoly::constant(size_t vars, const Rat& c) {
  SparsePoly p(vars);
  p.add_term(Exponents(vars, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(size_t vars, size_t index) {
  SparsePoly p(vars);
  Exponents e(vars, 0);
  e.at(index) = 1;
  p.add_term(e, Rat(1));
  return p;
}

void SparsePoly::add_term(const Exponents& e, const Rat& c) {
  if (e.size() != vars_) throw InvalidInput("exponent vector has wrong length");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int SparsePoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += static_cast<int>(x);
    d = std::max(d, s);
  }
  return d;
}

std::optional<Rat> SparsePoly::as_constant() const {
  if (terms_.empty()) return Rat(0);
  if (total_degree() == 0) return terms_.begin()->second;
  return std::nullopt;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, Rat(-c));
  return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
  if (a.vars_ != b.vars_) throw InvalidInput("variable count mismatch");
  SparsePoly r(a.vars_);
  SparsePoly::Exponents e(a.vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

SparsePoly operator*(SparsePoly a, const Rat& c) {
  if (sgn(c) == 0) return SparsePoly(a.vars_);
  for (auto& [e, x] : a.terms_) x *= c;
  return a;
}

SparsePoly SparsePoly::pow(unsigned e) const {
  SparsePoly r = constant(vars_, Rat(1));
  SparsePoly base = *this;
  while (e > 0) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return r;
}

Rat SparsePoly::eval(std::span<const Rat> x) const {
  if (x.size() != vars_) throw InvalidInput("evaluation point has wrong length");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < vars_; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= x[i];
    }
    acc += t;
  }
  return acc;
}

std::string SparsePoly::to_string(std::span<const std::string> names) const {
  if (names.size() != vars_) throw InvalidInput("name count mismatch");
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, then reverse lexicographic exponents.
  std::vector<std::pair<Exponents, Rat>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    int dx = 0, dy = 0;
    for (auto v : x.first) dx += static_cast<int>(v);
    for (auto v : y.first) dy += static_cast<int>(v);
    if (dx != dy) return dx > dy;
    return x.first > y.first;
  });
  for (const auto& [e, c] : ordered) {
    const Rat a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    std::ostringstream mon;
    for (size_t i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      if (has_var) mon << "*";
      mon << names[i];
      if (e[i] > 1) mon << "^" << e[i];
      has_var = true;
    }
    if (!has_var) {
      os << a.get_str();
    } else if (a == 1) {
      os << mon.str();
    } else {
      os << a.get_str() << "*" << mon.str();
    }
  }
  return os.str();
}

namespace {

// Horner in variable `var` over the terms restricted to `terms`.
SlpBuilder::Node horner(SlpBuilder& b, const std::vector<std::pair<SparsePoly::Exponents, Rat>>& terms,
                        size_t var) {
  if (terms.empty()) return b.constant(Rat(0));
  if (var == b.inputs()) {
    Rat sum(0);
    for (const auto& t : terms) sum += t.second;
    return b.constant(sum);
  }
  std::map<std::uint32_t, std::vector<std::pair<SparsePoly::Exponents, Rat>>> by_power;
  for (const auto& t : terms) by_power[t.first[var]].push_back(t);
  const SlpBuilder::Node x = b.input(var);
  std::optional<SlpBuilder::Node> acc;
  std::uint32_t prev = 0;
  for (auto it = by_power.rbegin(); it != by_power.rend(); ++it) {
    SlpBuilder::Node c = horner(b, it->second, var + 1);
    if (!acc) {
      acc = c;
    } else {
      acc = b.add(b.mul(*acc, b.pow(x, prev - it->first)), c);
    }
    prev = it->first;
  }
  return prev > 0 ? b.mul(*acc, b.pow(x, prev)) : *acc;
}

}  // namespace

Slp slp_from_sparse(std::span<const SparsePoly> polys) {
  if (polys.empty()) throw InvalidInput("no polynomials to encode");
  const size_t vars = polys[0].vars();
  SlpBuilder b(vars);
  std::vector<SlpBuilder::Node> outs;
  for (const auto& p : polys) {
    if (p.vars() != vars) throw InvalidInput("variable count mismatch");
    std::vector<std::pair<SparsePoly::Exponents, Rat>> terms(p.terms().begin(), p.terms().end());
    outs.push_back(horner(b, terms, 0));
  }
  return b.build(outs);
}

}  // namespace polyopt
