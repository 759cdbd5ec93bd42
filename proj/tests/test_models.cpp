#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "nkmm/errors.hpp"
#include "nkmm/models.hpp"
#include "oracles.hpp"

using namespace nkmm;
using oracle::fd_frame;

namespace {

const double kC = 2 / (3 * std::sqrt(3.0));

ModelPoint rnd(Space s, std::mt19937_64& rng) { return random_point(s, rng); }

double dist(const ModelPoint& a, const ModelPoint& b) {
  auto x = to_flat(a), y = to_flat(b);
  double m = 0;
  for (std::size_t k = 0; k < x.size(); ++k) m = std::max(m, std::abs(x[k] - y[k]));
  return m;
}

FlagPoint flag_id() { return {Eigen::Matrix3cd::Identity()}; }
CP3Point cp3_id() { return {QMat2{Quaternion::one(), Quaternion{}, Quaternion{}, Quaternion::one()}}; }

S3S3Point s3pt(const Quaternion& p, const Quaternion& q) { return {p, q}; }

}  // namespace

TEST_CASE("quaternion algebra") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  auto rq = [&] { return Quaternion{g(rng), g(rng), g(rng), g(rng)}; };
  CHECK(Quaternion::i() * Quaternion::j() == Quaternion::k());
  CHECK(Quaternion::j() * Quaternion::k() == Quaternion::i());
  CHECK(Quaternion::k() * Quaternion::i() == Quaternion::j());
  CHECK(Quaternion::i() * Quaternion::i() == -Quaternion::one());
  for (int n = 0; n < 100; ++n) {
    Quaternion a = rq(), b = rq(), c = rq();
    Quaternion l = (a * b) * c, r = a * (b * c), d = l - r;
    CHECK(d.norm() < 1e-12 * (1 + l.norm()));
    Quaternion e = (a * b).conj() - b.conj() * a.conj();
    CHECK(e.norm() < 1e-12 * (1 + a.norm() * b.norm()));
    CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) < 1e-12 * (1 + a.norm() * b.norm()));
    Quaternion back = from_complex2(to_complex2(a)) - a;
    CHECK(back.norm() < 1e-15);
  }
}

TEST_CASE("validation and flat round trip") {
  std::mt19937_64 rng(2);
  for (Space s : oracle::all_spaces()) {
    ModelPoint p = rnd(s, rng);
    CHECK(membership_residual(p) < 1e-12);
    auto f = to_flat(p);
    CHECK(f.size() == flat_size(s));
    CHECK(dist(from_flat(s, f), p) == 0);
    f[0] += 1e-3;
    CHECK_THROWS_AS(from_flat(s, f), ArgumentError);
    f.pop_back();
    CHECK_THROWS_AS(from_flat(s, f), ArgumentError);
  }
  CHECK(parse_space("cp3") == Space::cp3);
  CHECK_THROWS_AS(parse_space("s7"), ArgumentError);
  CHECK_THROWS_AS(TorusSpec::s3s3({1, 2, 3}, {2, 4, 6}), ArgumentError);
}

TEST_CASE("act: identity, group law, isometry") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  for (const auto& spec : oracle::t2_specs()) {
    INFO(spec.describe());
    for (int n = 0; n < 20; ++n) {
      ModelPoint p = rnd(spec.space, rng);
      CHECK(dist(act(spec, {0, 0}, p), p) == 0);
      TorusElement s{ang(rng), ang(rng)}, t{ang(rng), ang(rng)};
      ModelPoint a = act(spec, s, act(spec, t, p)), b = act(spec, {s.theta + t.theta, s.phi + t.phi}, p);
      CHECK(dist(a, b) < 1e-12);
      CHECK(membership_residual(a) <= 1e-10);
      CHECK(std::abs(nu(spec, act(spec, s, p)) - nu(spec, p)) <= 1e-10);
    }
  }
  // type (r, s, 1) acts as (rp, sq)
  auto spec = TorusSpec::s3s3({1, 0, 0}, {0, 1, 0});
  std::mt19937_64 r2(4);
  auto p = std::get<S3S3Point>(rnd(Space::s3s3, r2));
  auto q = std::get<S3S3Point>(act(spec, {0.7, -0.2}, p));
  Quaternion want_p = qexp({0.7, 0, 0}) * p.p, want_q = qexp({-0.2, 0, 0}) * p.q;
  CHECK((q.p - want_p).norm() < 1e-14);
  CHECK((q.q - want_q).norm() < 1e-14);
}

TEST_CASE("generators match finite differences of the action") {
  std::mt19937_64 rng(5);
  for (const auto& spec : oracle::t2_specs()) {
    INFO(spec.describe());
    Eigen::MatrixXd w = spec.space == Space::flag ? generator_weights(spec) : Eigen::MatrixXd::Identity(2, 2);
    for (int n = 0; n < 10; ++n) {
      ModelPoint p = rnd(spec.space, rng);
      auto [u, v] = generators(spec, p);
      for (int row = 0; row < 2; ++row) {
        Vec6 fd = fd_frame(p, [&](double h) { return act(spec, {w(row, 0) * h, w(row, 1) * h}, p); });
        CHECK((fd - (row == 0 ? u : v)).norm() < 1e-5);
      }
      auto [ue, ve] = effective_generators(spec, p);
      Vec6 fe = fd_frame(p, [&](double h) { return act_effective(spec, {h, 0}, p); });
      CHECK((fe - ue).norm() < 1e-5);
      fe = fd_frame(p, [&](double h) { return act_effective(spec, {0, h}, p); });
      CHECK((fe - ve).norm() < 1e-5);
    }
  }
  // fixed points of the full torus
  auto [fu, fv] = generators(TorusSpec::standard(Space::flag), flag_id());
  CHECK(fu.norm() < 1e-15);
  CHECK(fv.norm() < 1e-15);
  auto [cu, cv] = generators(TorusSpec::standard(Space::cp3), cp3_id());
  CHECK(cu.norm() < 1e-15);
  CHECK(cv.norm() < 1e-15);
  // S3xS3 at (1,1): U = (i p, 0)
  auto spec = TorusSpec::s3s3({1, 0, 0}, {0, 1, 0});
  ModelPoint o = s3pt(Quaternion::one(), Quaternion::one());
  Vec6 want = frame_coordinates(o, std::vector<double>{0, 1, 0, 0, 0, 0, 0, 0});
  CHECK((generators(spec, o).first - want).norm() < 1e-15);
  CHECK(want.norm() > 0.1);
}

TEST_CASE("J squares to -1 and is compatible with the metric") {
  std::mt19937_64 rng(6);
  for (const auto& spec : oracle::t2_specs())
    for (int n = 0; n < 100; ++n) {
      ModelPoint p = rnd(spec.space, rng);
      LocalFrame f = local_frame(spec, p);
      CHECK((f.J * f.J + Mat6::Identity()).norm() < 1e-12);
      CHECK((f.J.transpose() * f.metric * f.J - f.metric).norm() < 1e-12);
      CHECK(std::abs(f.nu - nu(spec, p)) < 1e-12);
      CHECK(std::abs(f.nu - (f.J * f.u).dot(f.metric * f.v)) < 1e-12);
    }
}

TEST_CASE("flag z, w and nu") {
  auto spec = TorusSpec::standard(Space::flag);
  FlagZW z = flag_zw(flag_id());
  for (cplx c : {z.z1, z.z2, z.z3, z.w1, z.w2, z.w3}) CHECK(std::abs(c) == 0);
  CHECK(flag_nu(flag_id()) == 0);
  FlagPoint e = flag_extremal_matrix();
  const cplx w = std::polar(1.0, 2 * M_PI / 3);
  FlagZW ze = flag_zw(e);
  CHECK(std::abs(ze.z3 - 1.0) < 1e-14);
  CHECK(std::abs(ze.w3 - w) < 1e-14);
  CHECK(flag_nu(e) == doctest::Approx(-3 * std::sqrt(3.0) / 2).epsilon(1e-14));
  FlagPoint ec{e.m.conjugate()};
  CHECK(flag_nu(ec) == doctest::Approx(3 * std::sqrt(3.0) / 2).epsilon(1e-14));
  for (cplx c : flag_crit_residual(e)) CHECK(std::abs(c) < 1e-12);
  for (cplx c : flag_crit_residual(flag_id())) CHECK(std::abs(c) == 0);

  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    auto p = std::get<FlagPoint>(rnd(Space::flag, rng));
    CHECK(std::abs(flag_nu(p) - flag_nu_zw(p)) < 1e-12);
    CHECK(std::abs(flag_nu(FlagPoint{p.m.conjugate()}) + flag_nu(p)) < 1e-12);
    auto q = std::get<FlagPoint>(act(spec, {0.4, 1.3}, p));
    FlagZW a = flag_zw(p), b = flag_zw(q);
    CHECK(std::abs(a.z1 - b.z1) + std::abs(a.z2 - b.z2) + std::abs(a.z3 - b.z3) < 1e-12);
    CHECK(std::abs(a.w1 - b.w1) + std::abs(a.w2 - b.w2) + std::abs(a.w3 - b.w3) < 1e-12);
    // psi_+(U,V,.) from z, w equals d nu / 3
    Vec6 fd = oracle::fd_dnu(spec, p);
    CHECK((3 * flag_psi_plus_uv(p) - fd).norm() < 1e-6 * (1 + fd.norm()));
    double res = 0;
    for (cplx c : flag_crit_residual(p)) res += std::norm(c);
    CHECK(std::sqrt(res) > 1e-6);
  }
}

TEST_CASE("CP3 components and nu") {
  auto spec = TorusSpec::standard(Space::cp3);
  CP3Components c = cp3_components(cp3_id());
  CHECK(c.alpha.norm() + c.beta.norm() + std::abs(c.gamma) + std::abs(c.delta) == 0);
  CHECK(cp3_nu(cp3_id()) == 0);
  for (double r : cp3_crit_residual(cp3_id())) CHECK(r == 0);
  auto crit = cp3_critical_matrices();
  for (const auto& m : crit) {
    CHECK(membership_residual(m) < 1e-14);
    for (double r : cp3_crit_residual(m)) CHECK(std::abs(r) < 1e-12);
    CHECK(oracle::fd_dnu(spec, m).norm() < 1e-8);
  }
  CP3Components c0 = cp3_components(crit[0]);
  CHECK(std::abs(c0.gamma - cplx(0, 0.5)) < 1e-14);
  CHECK(std::abs(c0.delta - cplx(-0.5, 0)) < 1e-14);
  CHECK(cp3_nu(crit[0]) == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK(cp3_nu(crit[1]) == doctest::Approx(0.75).epsilon(1e-14));

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  for (int n = 0; n < 100; ++n) {
    auto p = std::get<CP3Point>(rnd(Space::cp3, rng));
    CHECK(std::abs(cp3_nu(p) - cp3_nu_gd(p)) < 1e-12);
    auto [u, v] = generators(spec, p);
    auto [u2, v2] = cp3_generators_from_components(cp3_components(p));
    CHECK((u - u2).norm() < 1e-12);
    CHECK((v - v2).norm() < 1e-12);
    // right Sp(1)U(1) and left torus
    Quaternion q = qexp({ang(rng), ang(rng), ang(rng)});
    QMat2 k{qexp({ang(rng), 0, 0}), Quaternion{}, Quaternion{}, q};
    CP3Point pr{qmul(p.m, k)};
    CHECK(std::abs(cp3_nu(pr) - cp3_nu(p)) < 1e-12);
    CHECK(std::abs(nu(spec, act(spec, {ang(rng), ang(rng)}, p)) - cp3_nu(p)) < 1e-12);
    double res = 0;
    for (double r : cp3_crit_residual(p)) res += r * r;
    CHECK(std::sqrt(res) > 1e-6);
  }
}

TEST_CASE("S3xS3 x, y and nu") {
  auto spec = TorusSpec::s3s3({1, 0, 0}, {0, 1, 0});  // b = (0,0,1)
  auto [x, y] = s3s3_xy(s3pt(Quaternion::one(), Quaternion::one()));
  CHECK((x - Eigen::Vector3d(1, 0, 0)).norm() == 0);
  CHECK((y - Eigen::Vector3d(1, 0, 0)).norm() == 0);
  CHECK((s3s3_xy(s3pt(Quaternion::j(), Quaternion::one())).first - Eigen::Vector3d(-1, 0, 0)).norm() < 1e-15);
  CHECK(s3s3_nu(spec, s3pt(Quaternion::one(), Quaternion::one())) == doctest::Approx(kC).epsilon(1e-15));
  CHECK(s3s3_nu(spec, s3pt(Quaternion::one(), Quaternion::j())) == doctest::Approx(-kC).epsilon(1e-15));
  CHECK(std::abs(s3s3_nu(TorusSpec::s3s3({1, 2, 0}, {0, 1, 5}),
                         s3s3_lift({0, 1, 0}, {0, 0, 1}))) < 1e-15);

  std::mt19937_64 rng(9);
  for (int n = 0; n < 50; ++n) {
    auto p = std::get<S3S3Point>(rnd(Space::s3s3, rng));
    auto [a, b] = s3s3_xy(p);
    CHECK(std::abs(a.norm() - 1) < 1e-12);
    CHECK(std::abs(b.norm() - 1) < 1e-12);
    // conjugation by e^{it}: x turns about the i axis
    Quaternion r = qexp({0.9, 0, 0});
    auto [a2, b2] = s3s3_xy(s3pt(r * p.p * r.conj(), p.q));
    CHECK(std::abs(a2[0] - a[0]) < 1e-14);
    CHECK(std::abs(a2.tail<2>().norm() - a.tail<2>().norm()) < 1e-14);
    auto [lx, ly] = s3s3_xy(s3s3_lift(a, b));
    CHECK((lx - a).norm() < 1e-12);
    CHECK((ly - b).norm() < 1e-12);
  }
}

TEST_CASE("S3xS3 criticality system") {
  Eigen::Vector3d b001(0, 0, 1), b12(12, -8, 0);
  std::mt19937_64 rng(10);
  for (int n = 0; n < 20; ++n) {
    auto p = std::get<S3S3Point>(rnd(Space::s3s3, rng));
    auto [x, y] = s3s3_xy(p);
    for (double r : s3s3_crit_residual_xy(b001, x, x)) CHECK(std::abs(r) < 1e-14);
    for (double r : s3s3_crit_residual_xy(b001, x, -x)) CHECK(std::abs(r) < 1e-14);
    double s = 0;
    for (double r : s3s3_crit_residual_xy(Eigen::Vector3d(1, 2, 3), x, y)) s += r * r;
    CHECK(s > 1e-12);
  }
  for (double sx : {-1.0, 1.0})
    for (double sy : {-1.0, 1.0})
      for (double r : s3s3_crit_residual_xy(b12, {sx, 0, 0}, {sy, 0, 0})) CHECK(r == 0);
  // the residual vanishes exactly where the FD gradient does
  for (const auto& spec : {TorusSpec::s3s3({2, 3, 0}, {0, 0, 4}), TorusSpec::s3s3({1, -1, 0}, {1, 1, -1})}) {
    for (int n = 0; n < 30; ++n) {
      ModelPoint p = rnd(Space::s3s3, rng);
      bool crit = crit_residual_norm(spec, p) < 1e-6;
      bool flat = oracle::fd_dnu(spec, p).norm() < 1e-6;
      CHECK(crit == flat);
    }
    ModelPoint o = s3pt(Quaternion::one(), Quaternion::one());
    CHECK(crit_residual_norm(spec, o) < 1e-12);
    CHECK(oracle::fd_dnu(spec, o).norm() < 1e-8);
  }
  CHECK_THROWS_AS(s3s3_classify_critical(Eigen::Vector3d::Zero()), ArgumentError);
}

namespace {

// values of nu_xy over a dense grid of S2 x S2; min and max are within O(step^2) of the extrema
std::pair<double, double> grid_range(const Eigen::Vector3d& b, int n) {
  std::vector<Eigen::Vector3d> pts;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      double th = M_PI * i / n, ph = M_PI * j / n;
      pts.emplace_back(std::cos(th), std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph));
    }
  IVec3 bi{int(b[0]), int(b[1]), int(b[2])};
  double lo = 1e300, hi = -1e300;
  for (const auto& x : pts)
    for (const auto& y : pts) {
      double v = s3s3_nu_xy(bi, x, y);
      lo = std::min(lo, v), hi = std::max(hi, v);
    }
  return {lo, hi};
}

// a point of S2 x S2 with prescribed x1, y1 and <x,y>
bool realise(const CriticalDatum& d, Eigen::Vector3d& x, Eigen::Vector3d& y) {
  if (std::isnan(d.x1) || std::isnan(d.y1) || std::isnan(d.inner)) return false;
  double sx = std::sqrt(std::max(0.0, 1 - d.x1 * d.x1));
  x = {d.x1, sx, 0};
  double a = sx < 1e-12 ? 0 : (d.inner - d.x1 * d.y1) / sx;
  double c2 = 1 - d.y1 * d.y1 - a * a;
  if (c2 < -1e-12) return false;
  // near the boundary take y_perp parallel to x_perp instead of amplifying rounding
  if (c2 < 1e-12) a = std::copysign(std::sqrt(1 - d.y1 * d.y1), a), c2 = 0;
  y = {d.y1, a, std::sqrt(c2)};
  return true;
}

}  // namespace

TEST_CASE("closed-form classification") {
  auto values = [](const Eigen::Vector3d& b) {
    std::vector<double> v;
    for (const auto& d : s3s3_classify_critical(b)) v.push_back(d.value / kC);
    return v;
  };
  auto has = [](const std::vector<double>& v, double t) {
    for (double x : v)
      if (std::abs(x - t) < 1e-12) return true;
    return false;
  };
  auto v12 = values({12, -8, 0});
  for (double t : {-20.0, -4.0, 4.0, 20.0}) CHECK(has(v12, t));
  CHECK(std::set<double>(v12.begin(), v12.end()).size() == 4);
  auto v001 = values({0, 0, 1});
  CHECK(has(v001, 1));
  CHECK(has(v001, -1));
  auto v112 = values({1, 1, 2});
  // minimum -3/(2 sqrt3) = c * (-9/4)
  CHECK(has(v112, -2.25));
  CHECK(has(v112, 4));

  for (Eigen::Vector3d b : {Eigen::Vector3d(12, -8, 0), Eigen::Vector3d(1, 1, 2), Eigen::Vector3d(0, 0, 1),
                            Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(-1, -1, 2), Eigen::Vector3d(0, 1, 1)}) {
    INFO("b = " << b.transpose());
    auto data = s3s3_classify_critical(b);
    REQUIRE(!data.empty());
    for (std::size_t k = 1; k < data.size(); ++k) CHECK(data[k - 1].value <= data[k].value);
    auto [lo, hi] = grid_range(b, 90);
    double scale = b.lpNorm<1>() * kC;
    CHECK(data.front().value <= lo + 1e-12);
    CHECK(data.back().value >= hi - 1e-12);
    CHECK(data.front().value >= lo - 2e-3 * scale);
    CHECK(data.back().value <= hi + 2e-3 * scale);
    IVec3 bi{int(b[0]), int(b[1]), int(b[2])};
    for (const auto& d : data) {
      Eigen::Vector3d x, y;
      if (!realise(d, x, y)) continue;
      INFO(d.relation);
      double r = 0;
      for (double c : s3s3_crit_residual_xy(b, x, y)) r += c * c;
      CHECK(std::sqrt(r) < 1e-9);
      CHECK(std::abs(s3s3_nu_xy(bi, x, y) - d.value) < 1e-9);
    }
  }
}

TEST_CASE("gram data and the pointwise bound") {
  std::mt19937_64 rng(11);
  Vec7 pole = Vec7::Zero();
  pole[6] = 1;
  GramData g0 = gram(TorusSpec::standard(Space::s6), S6Point{pole});
  CHECK(g0.g_uu + g0.g_uv + g0.g_vv + g0.h2 == 0);
  GramData gi = gram(TorusSpec::standard(Space::flag), flag_id());
  CHECK(std::abs(gi.g_uu) + std::abs(gi.h2) < 1e-15);
  for (const auto& spec : oracle::t2_specs())
    for (int n = 0; n < 100; ++n) {
      ModelPoint p = rnd(spec.space, rng);
      GramData g = gram(spec, p);
      double v = nu(spec, p);
      CHECK(g.g_uu >= 0);
      CHECK(g.g_vv >= 0);
      CHECK(g.h2 - v * v >= -1e-10);
    }
}

TEST_CASE("retraction") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (Space s : oracle::all_spaces()) {
    ModelPoint p = rnd(s, rng);
    auto f = to_flat(p);
    CHECK(dist(retract(s, f), p) < 1e-14);
    for (double& x : f) x += 1e-3 * g(rng);
    ModelPoint r = retract(s, f);
    CHECK(membership_residual(r) <= 1e-12);
    CHECK(dist(retract(s, to_flat(r)), r) < 1e-14);
  }
  std::vector<double> big(7, 0.0);
  big[2] = 1.1;
  auto r = std::get<S6Point>(retract(Space::s6, big));
  CHECK(r.x[2] == 1.0);
  std::vector<double> zero(flat_size(Space::flag), 0.0);
  CHECK_THROWS_AS(retract(Space::flag, zero), DegeneracyError);
  CHECK_THROWS_AS(retract(Space::s6, std::vector<double>(7, 0.0)), DegeneracyError);
}

TEST_CASE("zero-level normal form") {
  auto s6 = TorusSpec::standard(Space::s6);
  Vec7 pole = Vec7::Zero();
  pole[6] = 1;
  CHECK(dist(normal_form_zero(s6, S6Point{pole}, 1e-9), S6Point{pole}) == 0);
  auto fl = TorusSpec::standard(Space::flag);
  CHECK(dist(normal_form_zero(fl, flag_id(), 1e-9), flag_id()) < 1e-15);
  // z1 = e^{i 0.8}/sqrt2, z2 = i/sqrt2, z3 = 0
  Vec7 x = Vec7::Zero();
  x[0] = std::cos(0.8) / std::sqrt(2.0), x[5] = std::sin(0.8) / std::sqrt(2.0);
  x[1] = 1 / std::sqrt(2.0);
  REQUIRE(std::abs(sphere_nu(x)) < 1e-15);
  auto n = std::get<S6Point>(normal_form_zero(s6, S6Point{x}, 1e-9));
  CHECK(std::abs(n.x[5]) < 1e-15);  // Im z1
  CHECK(std::abs(n.x[1]) < 1e-15);  // Im z2
  CHECK(std::abs(n.x[2]) < 1e-15);  // Im z3
  CHECK(std::abs(sphere_nu(n.x)) < 2e-9);
  CHECK(orbit_invariants(s6, n).isApprox(orbit_invariants(s6, S6Point{x}), 1e-12));
  CHECK_THROWS_AS(normal_form_zero(s6, S6Point{[] {
                                     Vec7 m = Vec7::Zero();
                                     m[0] = m[4] = m[3] = 1 / std::sqrt(3.0);
                                     return m;
                                   }()},
                                   1e-9),
                  ArgumentError);
}
