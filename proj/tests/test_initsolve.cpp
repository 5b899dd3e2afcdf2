#include "doctest.h"
#include "polyopt/errors.hpp"
#include "polyopt/initsolve.hpp"
#include "polyopt/ring.hpp"
#include "test_util.hpp"

using namespace polyopt;

namespace {

SparsePoly var(size_t n, size_t j) { return SparsePoly::variable(n, j); }

// Objective sum x_j^2 + x_1, constraints x_1 + ... + x_n - 1 and x_1 x_2 - 1/2,
// padded so that the requested degree is reached.
Problem test_problem(size_t n, int d, size_t m) {
  SparsePoly g = var(n, 0);
  for (size_t j = 0; j < n; ++j) g += var(n, j) * var(n, j);
  if (d == 4) g += var(n, 0).pow(4);
  std::vector<SparsePoly> f;
  SparsePoly lin = SparsePoly::constant(n, Rat(-1));
  for (size_t j = 0; j < n; ++j) lin += var(n, j);
  f.push_back(lin);
  if (m > 1) f.push_back(var(n, 0) * var(n, 1) - SparsePoly::constant(n, make_rat(1, 2)));
  return problem_from_polys(f, g, 1, d);
}

Candidate candidate_of_size(const Problem& p, size_t s) {
  for (const auto& c : enumerate_candidates(p))
    if (c.s() == s) return c;
  throw std::runtime_error("no candidate of that size");
}

std::vector<Rat> some_alpha(size_t n) {
  std::vector<Rat> a;
  for (size_t j = 0; j < n; ++j) a.push_back(make_rat(static_cast<long>(3 + 4 * j), static_cast<long>(7 + j)));
  return a;
}

// Determinant by cofactor expansion, independent of the lifting code.
UPoly cofactor_det(const std::vector<std::vector<UPoly>>& m, const UPoly& mod) {
  const size_t n = m.size();
  if (n == 1) return m[0][0] % mod;
  UPoly acc;
  for (size_t c = 0; c < n; ++c) {
    std::vector<std::vector<UPoly>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<UPoly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    UPoly term = (m[0][c] * cofactor_det(minor, mod)) % mod;
    acc = c % 2 ? acc - term : acc + term;
  }
  return acc % mod;
}

}  // namespace

TEST_CASE("solve_block_linear") {
  std::vector<std::vector<Rat>> a{{make_rat(1, 4)}};
  auto c = solve_block_linear(a, {make_rat(1, 20)});
  CHECK(c == std::vector<Rat>{make_rat(-4, 5)});
  // The n=2, m=1, d=2 instance with B={2}, e=-1: rhs = -a_10 - a_12 * 0 = -1/5.
  CHECK(solve_block_linear(a, {make_rat(-1, 5)}) == std::vector<Rat>{make_rat(-9, 5)});
  CHECK(solve_block_linear({}, {}).empty());
  CHECK_THROWS_AS(solve_block_linear({{Rat(1)}}, {Rat(2)}), InvariantViolation);
  CHECK_THROWS_AS(solve_block_linear({{Rat(1)}}, {Rat(0)}), InvariantViolation);
  CHECK_THROWS_AS(solve_block_linear({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}, {Rat(1), Rat(1)}), InvariantViolation);
}

TEST_CASE("lambda_for_block") {
  Problem p = test_problem(2, 2, 1);
  DeformationData dd = build_deformation(p);
  CHECK(lambda_for_block(dd.a, {0, 1}, {}).empty());
  CHECK(lambda_for_block(dd.a, {1}, {0}) == std::vector<Rat>{Rat(2)});
  CHECK(lambda_for_block(dd.a, {0}, {0}) == std::vector<Rat>{Rat(3)});
}

TEST_CASE("geomres_block examples") {
  std::vector<Rat> alpha{make_rat(2, 3), make_rat(5, 7)};
  GeomRes empty = geomres_block(2, 2, {1}, {+1}, {make_rat(-9, 5)}, {Rat(2)}, alpha);
  CHECK(empty.empty());
  GeomRes two = geomres_block(2, 2, {1}, {-1}, {make_rat(-9, 5)}, {Rat(2)}, alpha);
  // Points: x1^2 = -2/5, x2 = 0, so u = alpha_1 x1 satisfies u^2 = -(2/5) alpha_1^2.
  CHECK(two.p == UPoly{make_rat(2, 5) * alpha[0] * alpha[0], Rat(0), Rat(1)});
  CHECK(two.v[0] == UPoly{Rat(0), 1 / alpha[0]});
  CHECK(two.v[1] == UPoly{});
  CHECK(two.v[2] == UPoly{Rat(2)});
  CHECK(resolution_is_valid(two));

  // T_4(x) = c with c != +-1 has four distinct roots: discriminant check.
  const Rat c = make_rat(1, 3);
  UPoly h = chebyshev(4) - UPoly::constant(c);
  CHECK(sgn(upoly_resultant(h, h.derivative())) != 0);
  GeomRes four = separated_product({h}, {make_rat(3, 2)});
  CHECK(four.degree() == 4);
  CHECK(resolution_is_valid(four));
}

TEST_CASE("separated_product parametrizes every pair of roots") {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 15; ++it) {
    // Roots chosen as rationals so the oracle is direct substitution.
    std::vector<std::vector<Rat>> roots(3);
    std::vector<UPoly> h;
    for (size_t j = 0; j < 3; ++j) {
      UPoly hj{1};
      const int k = 1 + (it + static_cast<int>(j)) % 3;
      for (int r = 0; r < k; ++r) {
        Rat z = Rat(r * 3 - 2 + static_cast<int>(j)) + make_rat(it, 11);
        roots[j].push_back(z);
        hj = hj * UPoly{-z, 1};
      }
      h.push_back(hj);
    }
    std::vector<Rat> alpha{testing::random_rat(rng, 1, 9, true), testing::random_rat(rng, 1, 9, true) + make_rat(1, 97),
                           testing::random_rat(rng, -9, -1, true) - make_rat(1, 89)};
    GeomRes r = separated_product(h, alpha);
    REQUIRE(r.degree() == static_cast<int>(roots[0].size() * roots[1].size() * roots[2].size()));
    CHECK(resolution_is_valid(r));
    for (const Rat& a : roots[0])
      for (const Rat& b : roots[1])
        for (const Rat& c : roots[2]) {
          Rat u = alpha[0] * a + alpha[1] * b + alpha[2] * c;
          CHECK(sgn(r.p(u)) == 0);
          CHECK(r.v[0](u) == a);
          CHECK(r.v[1](u) == b);
          CHECK(r.v[2](u) == c);
        }
  }
}

TEST_CASE("geomres_union") {
  std::vector<Rat> alpha{Rat(1), Rat(1)};
  GeomRes a;
  a.p = UPoly{-1, 1};
  a.v = {UPoly{1}, UPoly{}};
  a.alpha = alpha;
  a.x_count = 2;
  GeomRes b = a;
  b.p = UPoly{-2, 1};
  b.v = {UPoly{2}, UPoly{}};
  GeomRes u = geomres_union(a, b);
  CHECK(u.p == UPoly{-1, 1} * UPoly{-2, 1});
  CHECK(u.v[0] == UPoly{0, 1});
  CHECK(u.v[1] == UPoly{});
  GeomRes e = GeomRes::empty_like(alpha, 2);
  CHECK(geomres_union(a, e).p == a.p);
  CHECK(geomres_union(e, a).v == a.v);
  GeomRes same = geomres_union(a, a);
  CHECK(same.p == a.p);
  CHECK(same.v == a.v);
  GeomRes clash = a;
  clash.v = {UPoly{1}, UPoly{5}};
  CHECK_THROWS_AS(geomres_union(a, clash), SeparationFailure);
}

TEST_CASE("initial_geomres examples") {
  Problem p = test_problem(2, 2, 1);
  DeformationData dd = build_deformation(p);
  GeomRes r0 = initial_geomres(p, dd, candidate_of_size(p, 0), some_alpha(2));
  CHECK(r0.degree() == 1);
  CHECK(r0.v[0] % r0.p == UPoly{});
  CHECK(r0.v[1] % r0.p == UPoly{});
  CHECK(initial_geomres(p, dd, candidate_of_size(p, 1), some_alpha(2)).degree() == 4);
  Problem p4 = test_problem(2, 4, 1);
  CHECK(initial_geomres(p4, build_deformation(p4), candidate_of_size(p4, 1), some_alpha(2)).degree() == 24);
}

TEST_CASE("initial resolutions solve the start system with invertible Jacobian") {
  for (size_t n : {2, 3})
    for (int d : {2, 4}) {
      Problem p = test_problem(n, d, 2);
      DeformationData dd = build_deformation(p);
      for (const auto& c : enumerate_candidates(p)) {
        GeomRes r = initial_geomres(p, dd, c, some_alpha(n));
        CHECK(r.degree() == bezout_bound(static_cast<int>(n), d, static_cast<int>(c.s())));
        CHECK(resolution_is_valid(r));
        DeformedSystem sys = build_deformed_system(p, dd, c);
        std::vector<UPoly> in{UPoly{}};
        in.insert(in.end(), r.v.begin(), r.v.end());
        if (r.degree() <= 60) {
          for (const UPoly& res : slp_compose_univariate_all(sys.system, in, r.p)) CHECK(res == UPoly{});
        } else {
          testing::ModPrimeQuotient q(r.p);
          std::vector<testing::ModPrimeQuotient::Element> img;
          for (const UPoly& v : in) img.push_back(q.reduce(testing::ModPrimeQuotient::reduce_poly(v)));
          for (const auto& res : sys.system.eval(q, std::span<const testing::ModPrimeQuotient::Element>(img)))
            CHECK(res.empty());
        }

        if (r.degree() > 60) continue;
        QuotientRing q(r.p);
        const size_t k = n + c.s();
        DualRing<QuotientRing> dual(q, k);
        std::vector<DualRing<QuotientRing>::Element> pt{dual.lift(UPoly{})};
        for (size_t j = 0; j < k; ++j) pt.push_back(dual.variable(r.v[j], j));
        auto out = sys.system.eval(dual, std::span<const DualRing<QuotientRing>::Element>(pt));
        std::vector<std::vector<UPoly>> jac;
        for (const auto& row : out) jac.push_back(row.eps);
        UPoly det = cofactor_det(jac, r.p);
        CHECK(upoly_gcd(det, r.p) == UPoly{1});
      }
    }
}
