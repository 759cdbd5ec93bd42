#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace nkmm {

using cplx = std::complex<double>;

// w + x i + y j + z k; also read as c1 + c2 j with c1 = w + x i, c2 = y + z i
struct Quaternion {
  double w = 0, x = 0, y = 0, z = 0;

  static Quaternion one() { return {1, 0, 0, 0}; }
  static Quaternion i() { return {0, 1, 0, 0}; }
  static Quaternion j() { return {0, 0, 1, 0}; }
  static Quaternion k() { return {0, 0, 0, 1}; }
  static Quaternion from_complex(cplx c1, cplx c2) { return {c1.real(), c1.imag(), c2.real(), c2.imag()}; }
  static Quaternion pure(const Eigen::Vector3d& v) { return {0, v[0], v[1], v[2]}; }

  cplx c1() const { return {w, x}; }
  cplx c2() const { return {y, z}; }
  Eigen::Vector3d vec() const { return {x, y, z}; }

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;

  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion& operator+=(const Quaternion& o) {
    w += o.w, x += o.x, y += o.y, z += o.z;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    w -= o.w, x -= o.x, y -= o.y, z -= o.z;
    return *this;
  }
  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Quaternion operator*(double s, const Quaternion& a) { return {s * a.w, s * a.x, s * a.y, s * a.z}; }
  friend Quaternion operator*(const Quaternion& a, double s) { return s * a; }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

inline double qdot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

// exp of a pure quaternion v
Quaternion qexp(const Eigen::Vector3d& v);

// [[c1, c2], [-conj c2, conj c1]]
Eigen::Matrix2cd to_complex2(const Quaternion& q);
Quaternion from_complex2(const Eigen::Matrix2cd& m);

// 2x2 quaternionic matrix, row-major: (p11, p12, p21, p22)
using QMat2 = std::array<Quaternion, 4>;

QMat2 qmul(const QMat2& a, const QMat2& b);
QMat2 qadjoint(const QMat2& a);  // conjugate transpose
Eigen::Matrix4cd to_complex4(const QMat2& a);
QMat2 from_complex4(const Eigen::Matrix4cd& m);

}  // namespace nkmm
