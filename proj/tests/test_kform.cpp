#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nkmm/errors.hpp"
#include "nkmm/kform.hpp"

using namespace nkmm;

namespace {

ExactForm random_form(std::mt19937_64& rng, int dim, int degree, int terms) {
  std::uniform_int_distribution<int> idx(0, dim - 1), c(-3, 3), r(0, 1);
  ExactForm f(dim, degree);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> ix;
    for (int k = 0; k < degree; ++k) ix.push_back(idx(rng));
    f.add_term(ix, QuadScalar(c(rng), r(rng) ? c(rng) : 0, 0, r(rng) ? c(rng) : 0));
  }
  return f;
}

std::vector<QuadScalar> random_vec(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> c(-4, 4);
  std::vector<QuadScalar> v;
  for (int k = 0; k < dim; ++k) v.emplace_back(c(rng), c(rng));
  return v;
}

ExactForm e(int dim, std::vector<int> idx) {
  for (int& i : idx) --i;
  return ExactForm::basis(dim, idx);
}

}  // namespace

TEST_CASE("wedge examples") {
  CHECK(wedge(e(4, {1}), e(4, {2})) == e(4, {1, 2}));
  CHECK(wedge(e(4, {1, 2}), e(4, {1, 2})).is_zero());
  CHECK(wedge(e(4, {2}), e(4, {1})) == -e(4, {1, 2}));
  // (e12 + e34 + e56)^2 expanded by hand: each cross term twice
  ExactForm s = e(6, {1, 2}) + e(6, {3, 4}) + e(6, {5, 6});
  ExactForm want = QuadScalar(2) * (e(6, {1, 2, 3, 4}) + e(6, {1, 2, 5, 6}) + e(6, {3, 4, 5, 6}));
  CHECK(wedge(s, s) == want);
  CHECK_THROWS_AS(wedge(e(4, {1}), e(5, {1})), ArgumentError);
}

TEST_CASE("graded anticommutativity") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    int p = 1 + t % 3, q = 1 + (t / 3) % 3;
    ExactForm a = random_form(rng, 8, p, 4), b = random_form(rng, 8, q, 4);
    ExactForm ab = wedge(a, b), ba = wedge(b, a);
    CHECK(ab == ((p * q) % 2 ? -ba : ba));
  }
}

TEST_CASE("contraction") {
  std::vector<QuadScalar> E1(4, QuadScalar(0)), E2(4, QuadScalar(0));
  E1[0] = 1;
  E2[1] = 1;
  CHECK(contract(E1, e(4, {1, 2})) == e(4, {2}));
  CHECK(contract(E2, e(4, {1, 2})) == -e(4, {1}));
  CHECK_THROWS_AS(contract(E1, ExactForm::constant(4, QuadScalar(1))), ArgumentError);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    int p = 1 + t % 3, q = 1 + (t / 3) % 2;
    ExactForm a = random_form(rng, 7, p, 4), b = random_form(rng, 7, q, 4);
    auto x = random_vec(rng, 7);
    CHECK(contract(x, contract(x, wedge(a, b))).is_zero());
    ExactForm lhs = contract(x, wedge(a, b));
    ExactForm rhs = wedge(contract(x, a), b) + (p % 2 ? -wedge(a, contract(x, b)) : wedge(a, contract(x, b)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("contracting U then V into e^024 with general coefficients") {
  // U = sum u_k E_k, V = sum v_k E_k on a ten-dimensional algebra; coefficient of e^0 of
  // V -| U -| e^{024} is u2 v4 - u4 v2
  std::mt19937_64 rng(9);
  auto u = random_vec(rng, 10), v = random_vec(rng, 10);
  ExactForm w = ExactForm::basis(10, {0, 2, 4});
  ExactForm r = contract(v, contract(u, w));
  CHECK(r.coefficient({0}) == u[2] * v[4] - u[4] * v[2]);
}

TEST_CASE("hodge star on R7") {
  CHECK(hodge7(ExactForm::constant(7, QuadScalar(1))) == ExactForm::basis(7, {0, 1, 2, 3, 4, 5, 6}));
  CHECK(hodge7(hodge7(e(7, {1, 2, 3}))) == e(7, {1, 2, 3}));
  CHECK_THROWS_AS(hodge7(e(6, {1})), ArgumentError);
  // involution and isometry on the full basis of every degree
  for (Mask m = 0; m < (1u << 7); ++m) {
    ExactForm b(7, std::popcount(m));
    b.accumulate(m, QuadScalar(1));
    ExactForm h = hodge7(b);
    CHECK(hodge7(h) == b);
    CHECK(h.terms().size() == 1);
    CHECK((h.terms().begin()->second == QuadScalar(1) || h.terms().begin()->second == QuadScalar(-1)));
    // b ^ *b = |b|^2 vol
    CHECK(wedge(b, h) == ExactForm::basis(7, {0, 1, 2, 3, 4, 5, 6}));
  }
}

TEST_CASE("evaluation") {
  std::vector<QuadScalar> E1(7, QuadScalar(0)), E2 = E1, E4 = E1, E5 = E1;
  E1[0] = E2[1] = E4[3] = E5[4] = 1;
  ExactForm w = e(7, {1, 2});
  CHECK(eval_form(w, {E1, E2}) == QuadScalar(1));
  CHECK(eval_form(w, {E2, E1}) == QuadScalar(-1));
  ExactForm phi = parse_terms("e123 + e145 + e167 + e246 - e257 - e347 - e356", 7, 1);
  CHECK(eval_form(phi, {E1, E4, E5}) == QuadScalar(1));
  CHECK_THROWS_AS(eval_form(w, {E1}), ArgumentError);
}

TEST_CASE("parsing and dump round trip") {
  ExactForm f = parse_terms("e46 - e35 + 2e27 - 1/2 e28", 8, 1);
  CHECK(f.coefficient({3, 5}) == QuadScalar(1));
  CHECK(f.coefficient({4, 2}) == QuadScalar(1));  // -e35 = e53
  CHECK(f.coefficient({1, 7}) == QuadScalar::rational(-1, 2));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    ExactForm g = random_form(rng, 8, 1 + t % 4, 6);
    CHECK(parse_dump(dump(g), 8, g.degree()) == g);
  }
  CHECK(dump(e(3, {1, 2})) == "1+0\xE2\x88\x9A" "2+0\xE2\x88\x9A" "3+0\xE2\x88\x9A" "6 (1,2)\n");
}

TEST_CASE("no stored zeros, constant forms") {
  ExactForm a = e(5, {1, 3});
  CHECK((a - a).is_zero());
  CHECK((a - a).terms().empty());
  ExactForm c = ExactForm::constant(5, QuadScalar(3));
  CHECK(c.degree() == 0);
  CHECK(wedge(c, a) == QuadScalar(3) * a);
  CHECK(to_real(QuadScalar::sqrt2() * a).coefficient({0, 2}) == std::sqrt(2.0));
}
