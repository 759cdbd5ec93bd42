#include <algorithm>
#include <cmath>
#include <limits>

#include "spaces.hpp"

namespace nkmm {
namespace detail::s3s3 {

namespace {
const std::vector<Triple>& phi_t() {
  static const auto t = triples_of(s3s3_structure().phi0);
  return t;
}

Quaternion unit(Quaternion q, const char* what) {
  double n = q.norm();
  if (!(n >= 1e-6)) throw DegeneracyError(std::string(what) + ": quaternion norm below 1e-6");
  return q * (1.0 / n);
}

// E_1..E_3 at p correspond to p i, p j, -p k
Eigen::Vector3d frame3(const Quaternion& p, const Quaternion& x) {
  Quaternion xi = p.conj() * x;
  return {xi.x, xi.y, -xi.z};
}
Quaternion unframe3(const Eigen::Vector3d& d) { return {0, d[0], d[1], -d[2]}; }
}  // namespace

const Mat6& J() {
  static const Mat6 j = [] {
    Mat6 m = Mat6::Zero();
    const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
    m.block<3, 3>(0, 0) = id;
    m.block<3, 3>(0, 3) = -2 * id;
    m.block<3, 3>(3, 0) = 2 * id;
    m.block<3, 3>(3, 3) = -id;
    return Mat6(m / std::sqrt(3.0));
  }();
  return j;
}

const Mat6& metric() {
  static const Mat6 g = (Mat6::Identity() + J().transpose() * J()) / 6.0;
  return g;
}

std::vector<double> flat(const S3S3Point& p) { return {p.p.w, p.p.x, p.p.y, p.p.z, p.q.w, p.q.x, p.q.y, p.q.z}; }

double residual(const S3S3Point& p) { return std::max(std::abs(p.p.norm() - 1.0), std::abs(p.q.norm() - 1.0)); }

S3S3Point retract(std::span<const double> v) {
  check_size(v, 8, "S3xS3 point");
  return {unit({v[0], v[1], v[2], v[3]}, "S3xS3 retraction"), unit({v[4], v[5], v[6], v[7]}, "S3xS3 retraction")};
}

S3S3Point random(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(8);
  for (auto& c : v) c = g(rng);
  return retract(v);
}

S3S3Point move(const S3S3Point& p, const Vec6& d, double t) {
  Eigen::Vector3d a(d[0], d[1], -d[2]), b(d[3], d[4], -d[5]);
  return {unit(p.p * qexp(t * a), "S3xS3 move"), unit(p.q * qexp(t * b), "S3xS3 move")};
}

Vec6 coords(const S3S3Point& p, std::span<const double> amb) {
  check_size(amb, 8, "S3xS3 tangent");
  Vec6 r;
  r.head<3>() = frame3(p.p, {amb[0], amb[1], amb[2], amb[3]});
  r.tail<3>() = frame3(p.q, {amb[4], amb[5], amb[6], amb[7]});
  return r;
}

std::vector<double> ambient(const S3S3Point& p, const Vec6& d) {
  Quaternion a = p.p * unframe3(d.head<3>()), b = p.q * unframe3(d.tail<3>());
  return {a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z};
}

S3S3Point act_axes(const S3S3Point& p, const Eigen::Vector3d& t) {
  auto e = [](double s) { return Quaternion{std::cos(s), std::sin(s), 0, 0}; };
  return {e(t[0]) * p.p * e(-t[2]), e(t[1]) * p.q * e(-t[2])};
}

std::vector<Vec6> axis_gens(const S3S3Point& pt) {
  auto [x, y] = s3s3_xy(pt);
  Vec6 u1 = Vec6::Zero(), u2 = Vec6::Zero(), u3 = Vec6::Zero();
  u1 << x[0], x[1], -x[2], 0, 0, 0;
  u2 << 0, 0, 0, y[0], y[1], -y[2];
  u3 << -1, 0, 0, -1, 0, 0;
  return {u1, u2, u3};
}

LocalFrame local(const S3S3Point&, const Vec6& u, const Vec6& v) {
  LocalFrame lf;
  lf.metric = metric();
  lf.J = J();
  lf.u = u;
  lf.v = v;
  lf.nu = (J() * u).dot(metric() * v);
  lf.dnu = 3.0 * contract_uv(phi_t(), u, v);
  return lf;
}

Eigen::VectorXd invariants(const S3S3Point& p) {
  auto [x, y] = s3s3_xy(p);
  Eigen::VectorXd r(4);
  r << x[0], y[0], x.dot(y), x[1] * y[2] - x[2] * y[1];
  return r;
}

// phases of (c1, c2, d1, d2), p = c1 + c2 j, q = d1 + d2 j, shift by
// (t1 - t3, t1 + t3, t2 - t3, t2 + t3) with t = weights^T theta
S3S3Point normal_form(const S3S3Point& pt, const Eigen::MatrixXd& weights) {
  std::array<cplx, 4> comp{pt.p.c1(), pt.p.c2(), pt.q.c1(), pt.q.c2()};
  Eigen::Matrix<double, 4, 3> rows;
  rows << 1, 0, -1, 1, 0, 1, 0, 1, -1, 0, 1, 1;
  Eigen::MatrixXd a = rows * weights.transpose();  // 4 x ntheta
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return std::abs(comp[x]) > std::abs(comp[y]); });
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(a.cols());
  bool solved = false;
  for (int i = 0; i < 4 && !solved; ++i)
    for (int j = i + 1; j < 4 && !solved; ++j) {
      int r0 = order[i], r1 = order[j];
      if (std::abs(comp[r0]) < 1e-12 || std::abs(comp[r1]) < 1e-12) continue;
      Eigen::MatrixXd sub(2, a.cols());
      sub.row(0) = a.row(r0);
      sub.row(1) = a.row(r1);
      Eigen::Vector2d rhs(-std::arg(comp[r0]), -std::arg(comp[r1]));
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
      if (cod.rank() < 2) continue;
      theta = cod.solve(rhs);
      solved = true;
    }
  if (!solved && std::abs(comp[order[0]]) >= 1e-12) {
    Eigen::MatrixXd sub = a.row(order[0]);
    Eigen::VectorXd rhs(1);
    rhs[0] = -std::arg(comp[order[0]]);
    theta = sub.completeOrthogonalDecomposition().solve(rhs);
  }
  Eigen::Vector3d t = weights.transpose() * theta;
  return act_axes(pt, t);
}

}  // namespace detail::s3s3

std::pair<Eigen::Vector3d, Eigen::Vector3d> s3s3_xy(const S3S3Point& pt) {
  Quaternion a = pt.p.conj() * Quaternion::i() * pt.p, b = pt.q.conj() * Quaternion::i() * pt.q;
  return {a.vec(), b.vec()};
}

double s3s3_prefactor() { return 2.0 / (3.0 * std::sqrt(3.0)); }

double s3s3_nu_xy(const IVec3& b, const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  return s3s3_prefactor() * (b[0] * y[0] + b[1] * x[0] + b[2] * x.dot(y));
}

double s3s3_nu(const TorusSpec& spec, const S3S3Point& pt) {
  if (spec.space != Space::s3s3 || spec.t3) throw ArgumentError("s3s3_nu: needs an S3xS3 two-torus");
  IVec3 b = spec.b();
  if (b[0] == 0 && b[1] == 0 && b[2] == 0) throw ArgumentError("s3s3_nu: degenerate torus, b = 0");
  auto [x, y] = s3s3_xy(pt);
  return s3s3_nu_xy(b, x, y);
}

std::array<double, 5> s3s3_crit_residual_xy(const Eigen::Vector3d& b, const Eigen::Vector3d& x,
                                            const Eigen::Vector3d& y) {
  return {b[2] * (x[2] * y[1] - x[1] * y[2]), b[2] * (x[0] * y[1] - x[1] * y[0]) - b[1] * x[1],
          b[2] * (x[0] * y[2] - x[2] * y[0]) - b[1] * x[2], b[2] * (x[1] * y[0] - x[0] * y[1]) - b[0] * y[1],
          b[2] * (x[2] * y[0] - x[0] * y[2]) - b[0] * y[2]};
}

std::array<double, 5> s3s3_crit_residual(const TorusSpec& spec, const S3S3Point& pt) {
  if (spec.space != Space::s3s3 || spec.t3) throw ArgumentError("s3s3_crit_residual: needs an S3xS3 two-torus");
  IVec3 b = spec.b();
  auto [x, y] = s3s3_xy(pt);
  return s3s3_crit_residual_xy(Eigen::Vector3d(b[0], b[1], b[2]), x, y);
}

S3S3Point s3s3_lift(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  // r with r i conj(r) = v; then p = conj(r) gives conj(p) i p = v
  auto rot = [](Eigen::Vector3d v) {
    double n = v.norm();
    if (!(n >= 1e-6)) throw ArgumentError("s3s3_lift: vector norm below 1e-6");
    v /= n;
    Eigen::Vector3d a(1, 0, 0);
    double c = a.dot(v);
    if (c < -1.0 + 1e-12) return Quaternion::j();
    Eigen::Vector3d w = a.cross(v);
    Quaternion r{1.0 + c, w[0], w[1], w[2]};
    return r * (1.0 / r.norm());
  };
  return {rot(x).conj(), rot(y).conj()};
}

std::vector<CriticalDatum> s3s3_classify_critical(const Eigen::Vector3d& b) {
  const double b1 = b[0], b2 = b[1], b3 = b[2];
  if (b1 == 0 && b2 == 0 && b3 == 0) throw ArgumentError("s3s3_classify_critical: b = 0");
  const double nan = std::numeric_limits<double>::quiet_NaN(), c = s3s3_prefactor();
  std::vector<CriticalDatum> out;
  auto sgn = [](int e) { return e > 0 ? std::string("+") : std::string("-"); };
  // points with x, y both at +-i always solve the system
  for (int e1 : {1, -1})
    for (int e2 : {1, -1})
      out.push_back({double(e1), double(e2), double(e1 * e2), "x=" + sgn(e1) + "i, y=" + sgn(e2) + "i",
                     c * (b2 * e1 + b1 * e2 + b3 * e1 * e2)});
  if (b3 == 0) {
    if (b2 == 0)
      for (int e : {1, -1}) out.push_back({nan, double(e), nan, "y=" + sgn(e) + "i, x free", c * b1 * e});
    if (b1 == 0)
      for (int e : {1, -1}) out.push_back({double(e), nan, nan, "x=" + sgn(e) + "i, y free", c * b2 * e});
  } else if (b1 == 0 && b2 == 0) {
    for (int e : {1, -1}) out.push_back({nan, nan, double(e), "y=" + sgn(e) + "x", c * b3 * e});
  } else if (b1 != 0 && b2 != 0) {
    double x1 = (b1 * b1 * b3 * b3 - b1 * b1 * b2 * b2 - b2 * b2 * b3 * b3) / (2 * b1 * b2 * b2 * b3);
    double y1 = (b2 * b2 * b3 * b3 - b1 * b1 * b2 * b2 - b1 * b1 * b3 * b3) / (2 * b1 * b1 * b2 * b3);
    if (std::abs(x1) < 1 && std::abs(y1) < 1) {
      double r = -b1 / b2;
      double inner = x1 * y1 + r * (1 - y1 * y1);
      out.push_back({x1, y1, inner, "x1, y1 on line and hyperbola, x_perp = -(b1/b2) y_perp",
                     c * (b1 * y1 + b2 * x1 + b3 * inner)});
    }
  }
  // the points with x, y at +-i are special cases of the families above; drop the duplicates
  std::vector<CriticalDatum> kept;
  for (const auto& d : out) {
    bool covered = false;
    if (d.relation.rfind("x=", 0) == 0 && d.relation.find("free") == std::string::npos &&
        d.relation.find("y=") != std::string::npos)
      for (const auto& f : out) {
        if (&f == &d || f.relation.find("free") == std::string::npos) continue;
        if ((std::isnan(f.x1) || f.x1 == d.x1) && (std::isnan(f.y1) || f.y1 == d.y1)) covered = true;
      }
    if (!covered) kept.push_back(d);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const CriticalDatum& a, const CriticalDatum& b) {
    return a.value < b.value;
  });
  return kept;
}

}  // namespace nkmm
