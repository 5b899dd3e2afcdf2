#pragma once

#include <concepts>
#include <vector>

#include "polyopt/errors.hpp"
#include "polyopt/rat.hpp"
#include "polyopt/series.hpp"
#include "polyopt/upoly.hpp"

namespace polyopt {

/// A commutative Q-algebra a straight-line program can be evaluated in.
/// The ring object carries the context (modulus, precision, ...); elements
/// are plain values.
template <class R>
concept CommutativeRing = requires(const R& ring, const typename R::Element& a, const Rat& c) {
  { ring.from_rat(c) } -> std::convertible_to<typename R::Element>;
  { ring.add(a, a) } -> std::convertible_to<typename R::Element>;
  { ring.sub(a, a) } -> std::convertible_to<typename R::Element>;
  { ring.mul(a, a) } -> std::convertible_to<typename R::Element>;
};

struct RatRing {
  using Element = Rat;
  Rat from_rat(const Rat& c) const { return c; }
  Rat add(const Rat& a, const Rat& b) const { return a + b; }
  Rat sub(const Rat& a, const Rat& b) const { return a - b; }
  Rat mul(const Rat& a, const Rat& b) const { return a * b; }
};

struct DoubleRing {
  using Element = double;
  double from_rat(const Rat& c) const { return c.get_d(); }
  double add(double a, double b) const { return a + b; }
  double sub(double a, double b) const { return a - b; }
  double mul(double a, double b) const { return a * b; }
};

/// Q[u]/(p) with elements kept reduced (degree < deg p).
class QuotientRing {
 public:
  using Element = UPoly;
  explicit QuotientRing(UPoly modulus) : modulus_(std::move(modulus)) {
    if (modulus_.degree() < 1) throw InvalidInput("quotient ring modulus must have positive degree");
  }
  const UPoly& modulus() const { return modulus_; }
  UPoly reduce(const UPoly& a) const { return a.degree() < modulus_.degree() ? a : a % modulus_; }
  UPoly from_rat(const Rat& c) const { return UPoly::constant(c); }
  UPoly add(const UPoly& a, const UPoly& b) const { return a + b; }
  UPoly sub(const UPoly& a, const UPoly& b) const { return a - b; }
  UPoly mul(const UPoly& a, const UPoly& b) const { return reduce(a * b); }

 private:
  UPoly modulus_;
};

class SeriesRing {
 public:
  using Element = TruncSeries;
  explicit SeriesRing(size_t kappa) : kappa_(kappa) {
    if (kappa == 0) throw InvalidInput("series precision must be positive");
  }
  size_t kappa() const { return kappa_; }
  TruncSeries from_rat(const Rat& c) const { return TruncSeries::constant(c, kappa_); }
  TruncSeries add(const TruncSeries& a, const TruncSeries& b) const { return a + b; }
  TruncSeries sub(const TruncSeries& a, const TruncSeries& b) const { return a - b; }
  TruncSeries mul(const TruncSeries& a, const TruncSeries& b) const { return a * b; }

 private:
  size_t kappa_;
};

/// Base[e_1..e_k]/(e_i e_j): first-order expansion in k infinitesimals.
template <CommutativeRing Base>
class DualRing {
 public:
  struct Element {
    typename Base::Element value;
    std::vector<typename Base::Element> eps;
  };

  DualRing(Base base, size_t k) : base_(std::move(base)), k_(k) {}
  const Base& base() const { return base_; }
  size_t infinitesimals() const { return k_; }

  Element lift(typename Base::Element v) const {
    return Element{std::move(v), std::vector<typename Base::Element>(k_, base_.from_rat(Rat(0)))};
  }
  /// v + e_index.
  Element variable(typename Base::Element v, size_t index) const {
    Element e = lift(std::move(v));
    e.eps.at(index) = base_.from_rat(Rat(1));
    return e;
  }

  Element from_rat(const Rat& c) const { return lift(base_.from_rat(c)); }
  Element add(const Element& a, const Element& b) const {
    Element r{base_.add(a.value, b.value), {}};
    r.eps.reserve(k_);
    for (size_t i = 0; i < k_; ++i) r.eps.push_back(base_.add(a.eps[i], b.eps[i]));
    return r;
  }
  Element sub(const Element& a, const Element& b) const {
    Element r{base_.sub(a.value, b.value), {}};
    r.eps.reserve(k_);
    for (size_t i = 0; i < k_; ++i) r.eps.push_back(base_.sub(a.eps[i], b.eps[i]));
    return r;
  }
  Element mul(const Element& a, const Element& b) const {
    Element r{base_.mul(a.value, b.value), {}};
    r.eps.reserve(k_);
    for (size_t i = 0; i < k_; ++i) {
      r.eps.push_back(base_.add(base_.mul(a.value, b.eps[i]), base_.mul(b.value, a.eps[i])));
    }
    return r;
  }

 private:
  Base base_;
  size_t k_;
};

}  // namespace polyopt
