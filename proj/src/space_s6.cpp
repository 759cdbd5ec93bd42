#include <cmath>

#include "spaces.hpp"

namespace nkmm::detail::s6 {

std::vector<double> flat(const S6Point& p) { return std::vector<double>(p.x.data(), p.x.data() + 7); }

double residual(const S6Point& p) { return std::abs(p.x.norm() - 1.0); }

S6Point retract(std::span<const double> v) {
  check_size(v, 7, "S6 point");
  Vec7 x;
  for (int k = 0; k < 7; ++k) x[k] = v[k];
  double n = x.norm();
  if (!(n >= 1e-6)) throw DegeneracyError("S6 retraction: vector norm below 1e-6");
  return {x / n};
}

S6Point random(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(7);
  for (auto& c : v) c = g(rng);
  return retract(v);
}

// orthonormal basis of the tangent space from the Householder reflection taking e7 to -+p
Eigen::Matrix<double, 7, 6> frame(const S6Point& p) {
  Vec7 v = p.x;
  v[6] += p.x[6] >= 0 ? 1.0 : -1.0;
  Eigen::Matrix<double, 7, 7> h = Eigen::Matrix<double, 7, 7>::Identity() - 2.0 * v * v.transpose() / v.squaredNorm();
  return h.leftCols<6>();
}

S6Point move(const S6Point& p, const Vec6& d, double t) {
  Vec7 x = frame(p) * d;
  double n = x.norm();
  if (n * std::abs(t) == 0.0) return p;
  Vec7 y = std::cos(t * n) * p.x + std::sin(t * n) * (x / n);
  return retract(std::span<const double>(y.data(), 7));
}

Vec6 coords(const S6Point& p, std::span<const double> amb) {
  check_size(amb, 7, "S6 tangent");
  Vec7 a;
  for (int k = 0; k < 7; ++k) a[k] = amb[k];
  return frame(p).transpose() * a;
}

std::vector<double> ambient(const S6Point& p, const Vec6& d) {
  Vec7 a = frame(p) * d;
  return std::vector<double>(a.data(), a.data() + 7);
}

namespace {
void rotate(double& re, double& im, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  double r = c * re - s * im, i = s * re + c * im;
  re = r;
  im = i;
}
}  // namespace

S6Point act_axes(const S6Point& p, double th, double ph) {
  Vec7 x = p.x;
  rotate(x[0], x[5], th);         // z1 = x1 + i x6
  rotate(x[4], x[1], ph);         // z2 = x5 + i x2
  rotate(x[3], x[2], -(th + ph));  // z3 = x4 + i x3
  return {x};
}

std::vector<Vec6> axis_gens(const S6Point& p) {
  auto [u, v] = sphere_generators(p.x);
  auto f = frame(p);
  return {f.transpose() * u, f.transpose() * v};
}

LocalFrame local(const S6Point& p, const Vec6& u, const Vec6& v) {
  auto f = frame(p);
  LocalFrame lf;
  lf.metric = Mat6::Identity();
  for (int b = 0; b < 6; ++b) {
    Vec7 jb = cross(p.x, f.col(b));
    lf.J.col(b) = f.transpose() * jb;
  }
  lf.u = u;
  lf.v = v;
  lf.nu = (lf.J * u).dot(v);
  Vec7 w = cross(f * u, f * v);
  lf.dnu = 3.0 * (f.transpose() * w);
  return lf;
}

double crit_norm(const S6Point& p) { return sphere_crit_residual(p.x).norm(); }

Eigen::VectorXd invariants(const S6Point& p) {
  const Vec7& x = p.x;
  Eigen::VectorXd r(4);
  r << std::hypot(x[0], x[5]), std::hypot(x[4], x[1]), std::hypot(x[3], x[2]), x[6];
  return r;
}

S6Point normal_form(const S6Point& p) {
  const Vec7& x = p.x;
  double a1 = std::atan2(x[5], x[0]), a2 = std::atan2(x[1], x[4]), a3 = std::atan2(x[2], x[3]);
  Eigen::VectorXd m = invariants(p);
  int rest = 2;
  if (m[0] < m[rest]) rest = 0;
  if (m[1] < m[rest]) rest = 1;
  double th = 0, ph = 0;
  if (rest == 2) {
    th = -a1;
    ph = -a2;
  } else if (rest == 0) {
    ph = -a2;
    th = a3 + a2;
  } else {
    th = -a1;
    ph = a3 + a1;
  }
  Vec7 y = act_axes(p, th, ph).x;
  // the two rotated coordinates are real and non-negative up to rounding
  if (rest != 0) y[5] = 0.0, y[0] = std::abs(y[0]);
  if (rest != 1) y[1] = 0.0, y[4] = std::abs(y[4]);
  if (rest != 2) y[2] = 0.0, y[3] = std::abs(y[3]);
  return retract(std::span<const double>(y.data(), 7));
}

}  // namespace nkmm::detail::s6
