#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "nkmm/errors.hpp"
#include "nkmm/quad_scalar.hpp"

using nkmm::QuadScalar;

TEST_CASE("radical products") {
  const auto s2 = QuadScalar::sqrt2(), s3 = QuadScalar::sqrt3(), s6 = QuadScalar::sqrt6();
  CHECK(s2 * s2 == QuadScalar(2));
  CHECK(s3 * s3 == QuadScalar(3));
  CHECK(s6 * s6 == QuadScalar(6));
  CHECK(s2 * s3 == s6);
  CHECK(s2 * s6 == QuadScalar(2) * s3);
  CHECK(s3 * s6 == QuadScalar(3) * s2);
}

TEST_CASE("coefficients appearing in the structure forms") {
  // 2/(3 sqrt3) = 2 sqrt3 / 9
  auto a = QuadScalar(2) / (QuadScalar(3) * QuadScalar::sqrt3());
  CHECK(a == QuadScalar(0, 0, mpq_class(2, 9), 0));
  auto b = QuadScalar(4) / (QuadScalar(9) * QuadScalar::sqrt3());
  CHECK(b == QuadScalar(0, 0, mpq_class(4, 27), 0));
  auto r = QuadScalar(1) / QuadScalar::sqrt2();
  CHECK(r * r == QuadScalar::rational(1, 2));
  CHECK(r.to_double() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-16));
}

TEST_CASE("inverse of a general element") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int k = 0; k < 200; ++k) {
    QuadScalar x(mpq_class(d(rng), 1 + (k % 5)), d(rng), mpq_class(d(rng), 7), d(rng));
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == QuadScalar(1));
    QuadScalar y(d(rng), d(rng), d(rng), d(rng));
    CHECK((y / x) * x == y);
    CHECK((x + y) - y == x);
  }
  CHECK_THROWS_AS(QuadScalar(0).inverse(), nkmm::ArgumentError);
}

TEST_CASE("conversion to double") {
  QuadScalar x(mpq_class(1, 3), mpq_class(-2, 5), mpq_class(7, 11), mpq_class(1, 2));
  double want = 1.0 / 3 - 0.4 * std::sqrt(2.0) + 7.0 / 11 * std::sqrt(3.0) + 0.5 * std::sqrt(6.0);
  CHECK(std::abs(x.to_double() - want) <= 2 * std::numeric_limits<double>::epsilon() * std::abs(want));
  CHECK(QuadScalar(5).to_double() == 5.0);
  CHECK(QuadScalar::sqrt2().to_double() == std::sqrt(2.0));
}

TEST_CASE("text round trip") {
  QuadScalar x(mpq_class(-3, 4), 2, mpq_class(-1, 9), 0);
  CHECK(QuadScalar::parse(x.str()) == x);
  CHECK(QuadScalar::parse("5/6") == QuadScalar::rational(5, 6));
  CHECK_THROWS_AS(QuadScalar::parse("1/0"), nkmm::ArgumentError);
  CHECK_THROWS_AS(QuadScalar::parse("x"), nkmm::ArgumentError);
}

TEST_CASE("rational and conjugates") {
  QuadScalar x(1, 2, 3, 4);
  CHECK_FALSE(x.is_rational());
  CHECK((x * x.conj2()).q_sqrt2() == 0);
  CHECK((x * x.conj3()).q_sqrt3() == 0);
  CHECK(QuadScalar::rational(6, 4) == QuadScalar(mpq_class(3, 2)));
}
