#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polyopt/errors.hpp"
#include "polyopt/rat.hpp"
#include "polyopt/ring.hpp"
#include "polyopt/upoly.hpp"

namespace polyopt {

enum class SlpOp : std::uint8_t { kInput, kConst, kAdd, kSub, kMul };

/// kInput: a = input index. kConst: a = constant pool index.
/// Arithmetic: a, b = earlier instruction indices.
struct SlpInstr {
  SlpOp op;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  friend bool operator==(const SlpInstr&, const SlpInstr&) = default;
};

/// Division-free straight-line program encoding a list of polynomials in
/// `inputs()` variables. Immutable once built.
class Slp {
 public:
  Slp() = default;
  /// Validates that every operand and output refers to an earlier instruction.
  Slp(size_t inputs, std::vector<SlpInstr> instrs, std::vector<Rat> constants,
      std::vector<std::uint32_t> outputs);

  size_t inputs() const { return inputs_; }
  /// Instruction count.
  size_t length() const { return instrs_.size(); }
  size_t output_count() const { return outputs_.size(); }
  std::span<const SlpInstr> instructions() const { return instrs_; }
  std::span<const Rat> constants() const { return constants_; }
  std::span<const std::uint32_t> outputs() const { return outputs_; }

  template <CommutativeRing R>
  std::vector<typename R::Element> eval(const R& ring,
                                        std::span<const typename R::Element> point) const;

 private:
  size_t inputs_ = 0;
  std::vector<SlpInstr> instrs_;
  std::vector<Rat> constants_;
  std::vector<std::uint32_t> outputs_;
};

/// slp_eval: value of every output at the point.
template <CommutativeRing R>
std::vector<typename R::Element> slp_eval(const Slp& f, const R& ring,
                                          std::span<const typename R::Element> point) {
  return f.eval(ring, point);
}

/// Incremental construction with light constant folding.
class SlpBuilder {
 public:
  class Node {
   public:
    Node() = default;
    std::uint32_t id() const { return id_; }
    SlpBuilder& builder() const { return *owner_; }

    friend Node operator+(Node a, Node b) { return a.owner_->add(a, b); }
    friend Node operator-(Node a, Node b) { return a.owner_->sub(a, b); }
    friend Node operator*(Node a, Node b) { return a.owner_->mul(a, b); }
    friend Node operator-(Node a) { return a.owner_->sub(a.owner_->constant(Rat(0)), a); }
    friend Node operator+(Node a, const Rat& c) { return a + a.owner_->constant(c); }
    friend Node operator-(Node a, const Rat& c) { return a - a.owner_->constant(c); }
    friend Node operator*(const Rat& c, Node a) { return a.owner_->constant(c) * a; }
    friend Node operator-(const Rat& c, Node a) { return a.owner_->constant(c) - a; }

   private:
    friend class SlpBuilder;
    Node(SlpBuilder* owner, std::uint32_t id) : owner_(owner), id_(id) {}
    SlpBuilder* owner_ = nullptr;
    std::uint32_t id_ = 0;
  };

  explicit SlpBuilder(size_t inputs);
  SlpBuilder(const SlpBuilder&) = delete;
  SlpBuilder& operator=(const SlpBuilder&) = delete;

  size_t inputs() const { return inputs_; }
  Node input(size_t index);
  Node constant(const Rat& c);
  Node add(Node a, Node b);
  Node sub(Node a, Node b);
  Node mul(Node a, Node b);
  Node pow(Node a, unsigned e);

  /// The constant value of a node, when it is one.
  std::optional<Rat> constant_value(Node n) const;

  /// Appends the instructions of `f` with its inputs bound to `args`;
  /// returns the nodes of its outputs.
  std::vector<Node> inline_slp(const Slp& f, std::span<const Node> args);

  Slp build(std::span<const Node> outputs) const;

 private:
  Node push(SlpInstr instr);

  size_t inputs_;
  std::vector<SlpInstr> instrs_;
  std::vector<Rat> constants_;
  std::vector<std::optional<std::uint32_t>> input_nodes_;
  std::map<Rat, std::uint32_t> const_nodes_;
};

/// Outputs (f, df/dx_1, ..., df/dx_n) by reverse-mode differentiation;
/// the result has length O(length of f). `f` must have one output.
Slp slp_gradient(const Slp& f);

/// Dense form of f(v_1(u), ..., v_n(u)) mod p(u) (first output of f).
UPoly slp_compose_univariate(const Slp& f, std::span<const UPoly> v, const UPoly& p);
/// Same, for every output.
std::vector<UPoly> slp_compose_univariate_all(const Slp& f, std::span<const UPoly> v, const UPoly& p);

/// Sparse multivariate polynomial: exponent vector -> coefficient.
class SparsePoly {
 public:
  using Exponents = std::vector<std::uint32_t>;

  explicit SparsePoly(size_t vars = 0) : vars_(vars) {}
  static SparsePoly constant(size_t vars, const Rat& c);
  static SparsePoly variable(size_t vars, size_t index);

  size_t vars() const { return vars_; }
  const std::map<Exponents, Rat>& terms() const { return terms_; }
  void add_term(const Exponents& e, const Rat& c);

  bool is_zero() const { return terms_.empty(); }
  /// -1 for zero.
  int total_degree() const;
  std::optional<Rat> as_constant() const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  friend SparsePoly operator*(SparsePoly a, const Rat& c);
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) = default;
  SparsePoly pow(unsigned e) const;

  Rat eval(std::span<const Rat> x) const;

  /// Human-readable form with the given variable names; parseable back.
  std::string to_string(std::span<const std::string> names) const;

 private:
  size_t vars_;
  std::map<Exponents, Rat> terms_;
};

/// Horner-style encoding, recursive in x_1, x_2, ...
Slp slp_from_sparse(std::span<const SparsePoly> polys);

// ---------------------------------------------------------------------------

template <CommutativeRing R>
std::vector<typename R::Element> Slp::eval(const R& ring,
                                           std::span<const typename R::Element> point) const {
  if (point.size() != inputs_) {
    throw InvalidInput("slp arity mismatch: expected " + std::to_string(inputs_) + " inputs, got " +
                       std::to_string(point.size()));
  }
  std::vector<typename R::Element> val;
  val.reserve(instrs_.size());
  for (const SlpInstr& in : instrs_) {
    switch (in.op) {
      case SlpOp::kInput: val.push_back(point[in.a]); break;
      case SlpOp::kConst: val.push_back(ring.from_rat(constants_[in.a])); break;
      case SlpOp::kAdd: val.push_back(ring.add(val[in.a], val[in.b])); break;
      case SlpOp::kSub: val.push_back(ring.sub(val[in.a], val[in.b])); break;
      case SlpOp::kMul: val.push_back(ring.mul(val[in.a], val[in.b])); break;
    }
  }
  std::vector<typename R::Element> out;
  out.reserve(outputs_.size());
  for (auto o : outputs_) out.push_back(val[o]);
  return out;
}

}  // namespace polyopt
