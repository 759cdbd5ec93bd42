#include "nkmm/quaternion.hpp"

#include <cmath>

namespace nkmm {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion qexp(const Eigen::Vector3d& v) {
  double t = v.norm();
  if (t == 0.0) return Quaternion::one();
  double s = std::sin(t) / t;
  return {std::cos(t), s * v[0], s * v[1], s * v[2]};
}

Eigen::Matrix2cd to_complex2(const Quaternion& q) {
  Eigen::Matrix2cd m;
  m << q.c1(), q.c2(), -std::conj(q.c2()), std::conj(q.c1());
  return m;
}

Quaternion from_complex2(const Eigen::Matrix2cd& m) {
  // average the redundant entries
  cplx c1 = 0.5 * (m(0, 0) + std::conj(m(1, 1)));
  cplx c2 = 0.5 * (m(0, 1) - std::conj(m(1, 0)));
  return Quaternion::from_complex(c1, c2);
}

QMat2 qmul(const QMat2& a, const QMat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

QMat2 qadjoint(const QMat2& a) { return {a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()}; }

Eigen::Matrix4cd to_complex4(const QMat2& a) {
  Eigen::Matrix4cd m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.block<2, 2>(2 * r, 2 * c) = to_complex2(a[2 * r + c]);
  return m;
}

QMat2 from_complex4(const Eigen::Matrix4cd& m) {
  QMat2 a;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) a[2 * r + c] = from_complex2(m.block<2, 2>(2 * r, 2 * c));
  return a;
}

}  // namespace nkmm
