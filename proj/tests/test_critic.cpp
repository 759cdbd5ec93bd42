#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nkmm/critic.hpp"
#include "nkmm/errors.hpp"
#include "oracles.hpp"

using namespace nkmm;

namespace {

const double kC = 2 / (3 * std::sqrt(3.0));

S6Point s6_max() {
  // z1 = z2 = z3 = 1/sqrt3
  Vec7 m = Vec7::Zero();
  m[0] = m[4] = m[3] = 1 / std::sqrt(3.0);
  return {m};
}

S6Point pole() {
  Vec7 m = Vec7::Zero();
  m[6] = 1;
  return {m};
}

bool has_value(const SearchResult& r, double v, double tol) {
  for (const auto& rec : r.records)
    if (std::abs(rec.value - v) <= tol) return true;
  return false;
}

SearchConfig small(int starts, std::uint64_t seed = 1) {
  SearchConfig c;
  c.n_starts = starts;
  c.seed = seed;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("gradient against finite differences") {
  std::mt19937_64 rng(21);
  for (const auto& spec : oracle::t2_specs()) {
    INFO(spec.describe());
    for (int n = 0; n < 25; ++n) {
      ModelPoint p = random_point(spec.space, rng);
      LocalFrame f = local_frame(spec, p);
      Vec6 g = riemannian_grad(spec, p);
      Vec6 fd = oracle::fd_dnu(spec, p);
      CHECK((f.metric * g - fd).norm() <= 1e-6 * (1 + fd.norm()));
      CHECK((fd_differential(spec, p) - fd).norm() <= 1e-7 * (1 + fd.norm()));
      CHECK((f.dnu - fd).norm() <= 1e-6 * (1 + fd.norm()));
      CHECK(std::abs(grad_norm(spec, p) - std::sqrt(g.dot(f.metric * g))) < 1e-12);
    }
  }
  auto s6 = TorusSpec::standard(Space::s6);
  CHECK(riemannian_grad(s6, pole()).norm() == 0);
  for (int n = 0; n < 20; ++n) {
    auto p = std::get<S6Point>(random_point(Space::s6, rng));
    CHECK(std::abs(grad_norm(s6, p) - 3 * sphere_crit_residual(p.x).norm()) < 1e-12);
  }
  CHECK(riemannian_grad(TorusSpec::standard(Space::flag), FlagPoint{Eigen::Matrix3cd::Identity()}).norm() < 1e-15);
}

TEST_CASE("criticality gap and the normal-form identity") {
  auto s6 = TorusSpec::standard(Space::s6);
  GapResult g0 = criticality_gap(s6, pole());
  CHECK(g0.gap == 0);
  CHECK(g0.identity_residual == 0);
  GapResult gm = criticality_gap(s6, s6_max());
  CHECK(std::abs(gm.gap) < 1e-10);
  CHECK(std::abs(nu(s6, s6_max())) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
  std::mt19937_64 rng(22);
  for (const auto& spec : oracle::t2_specs())
    for (int n = 0; n < 100; ++n) {
      ModelPoint p = random_point(spec.space, rng);
      GapResult g = criticality_gap(spec, p);
      GramData gd = gram(spec, p);
      double v = nu(spec, p);
      CHECK(g.gap == doctest::Approx(gd.h2 - v * v).epsilon(1e-12));
      CHECK(g.gap >= -1e-10);
      CHECK(g.identity_residual <= 1e-8);
      double gn = grad_norm(spec, p);
      CHECK(std::abs(gn * gn - 9 * g.gap) <= 1e-8 * (1 + 9 * std::abs(g.gap)));
    }
}

TEST_CASE("dependence type") {
  auto s6 = TorusSpec::standard(Space::s6);
  Vec7 x = Vec7::Zero();
  x[0] = 0.6, x[6] = 0.8;  // z2 = z3 = 0
  CHECK(dependence_type(s6, S6Point{x}, 1e-8) == Dependence::real);
  CHECK(dependence_type(s6, s6_max(), 1e-8) == Dependence::complex);
  std::mt19937_64 rng(23);
  for (const auto& spec : oracle::t2_specs())
    for (int n = 0; n < 20; ++n) CHECK(dependence_type(spec, random_point(spec.space, rng), 1e-8) == Dependence::independent);
  CHECK(to_string(Dependence::complex) == "complex");
}

TEST_CASE("second-order classification") {
  auto s6 = TorusSpec::standard(Space::s6);
  CHECK(second_order_classify(s6, s6_max()) == SecondOrder::max);
  Vec7 m = -s6_max().x;
  CHECK(second_order_classify(s6, S6Point{m}) == SecondOrder::min);
  S3S3Point o{Quaternion::one(), Quaternion::one()};
  auto b12 = TorusSpec::s3s3({2, 3, 0}, {0, 0, 4});
  REQUIRE(b12.b() == IVec3{12, -8, 0});
  CHECK(grad_norm(b12, o) < 1e-12);
  CHECK(second_order_classify(b12, o) == SecondOrder::saddle);
  auto b001 = TorusSpec::s3s3({1, 0, 0}, {0, 1, 0});
  CHECK(second_order_classify(b001, o) == SecondOrder::max);
  CHECK(nu(b001, o) == doctest::Approx(kC).epsilon(1e-15));
  CHECK(second_order_classify(b001, S3S3Point{Quaternion::one(), Quaternion::j()}) == SecondOrder::min);
  // nu is cubic near the pole
  CHECK(second_order_classify(s6, pole()) == SecondOrder::degenerate);
  CHECK(to_string(SecondOrder::saddle) == "saddle");
}

TEST_CASE("search configuration") {
  SearchConfig c;
  CHECK_NOTHROW(c.validate());
  c.n_starts = 0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = SearchConfig{};
  c.shrink = 1;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = SearchConfig{};
  c.grad_tol = 0;
  CHECK_THROWS_AS(find_extrema(TorusSpec::standard(Space::s6), c), ArgumentError);
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(thread_count(3) == 3);
}

TEST_CASE("extrema on S6 and CP3") {
  auto s6 = TorusSpec::standard(Space::s6);
  SearchResult r = find_extrema(s6, small(16));
  CHECK(r.runs > 0);
  REQUIRE(!r.records.empty());
  CHECK(r.records.front().value == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-8));
  CHECK(r.records.back().value == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-8));
  for (const auto& rec : r.records) {
    CHECK(rec.grad_norm <= 1e-9);
    GramData g = gram(s6, rec.point);
    CHECK(std::abs(rec.gap) <= 1e-8 * (1 + g.h2));
  }
  // maximizer: |z1|^2 = |z2|^2 = |z3|^2 = 1/3
  const Vec7& x = std::get<S6Point>(r.records.back().point).x;
  CHECK(std::abs(x[0] * x[0] + x[5] * x[5] - 1.0 / 3) < 1e-6);
  CHECK(std::abs(x[4] * x[4] + x[1] * x[1] - 1.0 / 3) < 1e-6);
  CHECK(std::abs(x[3] * x[3] + x[2] * x[2] - 1.0 / 3) < 1e-6);
  CHECK(r.records.back().second_order == SecondOrder::max);
  CHECK(r.records.back().dependence == Dependence::complex);

  SearchResult c = find_extrema(TorusSpec::standard(Space::cp3), small(16));
  REQUIRE(!c.records.empty());
  CHECK(c.records.front().value == doctest::Approx(-0.75).epsilon(1e-8));
  CHECK(c.records.back().value == doctest::Approx(0.75).epsilon(1e-8));
}

TEST_CASE("saddle values for b = (12,-8,0)") {
  SearchResult r = find_extrema(TorusSpec::s3s3({2, 3, 0}, {0, 0, 4}), small(24));
  for (double v : {-20.0, -4.0, 4.0, 20.0}) CHECK(has_value(r, v * kC, 1e-6));
  for (const auto& rec : r.records)
    if (std::abs(std::abs(rec.value) - 4 * kC) < 1e-6) CHECK(rec.second_order == SecondOrder::saddle);
}

TEST_CASE("determinism across seeds and thread counts") {
  auto spec = TorusSpec::standard(Space::flag);
  SearchConfig a = small(8, 5), b = small(8, 5);
  b.threads = 3;
  SearchResult ra = find_extrema(spec, a), rb = find_extrema(spec, b);
  REQUIRE(ra.records.size() == rb.records.size());
  CHECK(ra.runs == rb.runs);
  CHECK(ra.dropped == rb.dropped);
  for (std::size_t k = 0; k < ra.records.size(); ++k) {
    CHECK(ra.records[k].value == rb.records[k].value);
    CHECK(to_flat(ra.records[k].point) == to_flat(rb.records[k].point));
    CHECK(ra.records[k].multiplicity == rb.records[k].multiplicity);
  }
  SearchResult rc = find_extrema(TorusSpec::standard(Space::s6), small(8, 2));
  SearchResult rd = find_extrema(TorusSpec::standard(Space::s6), small(8, 1));
  REQUIRE(!rc.records.empty());
  CHECK(std::abs(rc.records.back().value - rd.records.back().value) < 1e-8);
  CHECK(std::abs(rc.records.front().value - rd.records.front().value) < 1e-8);
}

TEST_CASE("zero-level samples in normal form") {
  for (const auto& spec : oracle::t2_specs()) {
    INFO(spec.describe());
    auto pts = zero_level_sample(spec, 10, 3);
    REQUIRE(pts.size() == 10);
    for (const auto& p : pts) {
      CHECK(std::abs(nu(spec, p)) <= 2e-9);
      CHECK(membership_residual(p) <= 1e-10);
      if (const auto* s = std::get_if<S6Point>(&p)) {
        // two of z1, z2, z3 real and non-negative, the remaining one purely imaginary
        const double re[3] = {s->x[0], s->x[4], s->x[3]}, im[3] = {s->x[5], s->x[1], s->x[2]};
        int real = 0, imag = 0;
        for (int k = 0; k < 3; ++k) {
          if (std::abs(im[k]) < 1e-12 && re[k] >= 0)
            ++real;
          else if (std::abs(re[k]) < 1e-6)
            ++imag;
        }
        CHECK(real >= 2);
        CHECK(real + imag == 3);
      } else if (const auto* f = std::get_if<FlagPoint>(&p)) {
        CHECK(f->m.bottomRows<2>().imag().norm() < 1e-6);
      } else if (const auto* c = std::get_if<CP3Point>(&p)) {
        // [p11^1 : p21^1 : p11^2 : p21^2] real
        CHECK(std::abs(c->m[0].c1().imag()) < 1e-6);
        CHECK(std::abs(c->m[2].c1().imag()) < 1e-6);
        CHECK(std::abs(c->m[0].c2().imag()) < 1e-6);
        CHECK(std::abs(c->m[2].c2().imag()) < 1e-6);
      }
    }
    auto again = zero_level_sample(spec, 10, 3);
    for (std::size_t k = 0; k < pts.size(); ++k) CHECK(to_flat(pts[k]) == to_flat(again[k]));
  }
}
