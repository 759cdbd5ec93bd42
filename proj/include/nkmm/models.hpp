#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nkmm/g2.hpp"
#include "nkmm/quaternion.hpp"

namespace nkmm {

enum class Space { s6, flag, cp3, s3s3 };

std::string_view space_name(Space s);
Space parse_space(std::string_view name);

struct S6Point {
  Vec7 x;
};
struct FlagPoint {
  Eigen::Matrix3cd m;
};
// Sp(2) matrix representing a point of Sp(2)/Sp(1)U(1)
struct CP3Point {
  QMat2 m;
};
struct S3S3Point {
  Quaternion p, q;
};

using ModelPoint = std::variant<S6Point, FlagPoint, CP3Point, S3S3Point>;

Space space_of(const ModelPoint& p);

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using IVec3 = std::array<int, 3>;

struct TorusSpec {
  Space space = Space::s6;
  IVec3 a1{0, 0, 0};
  IVec3 a2{0, 0, 0};
  bool t3 = false;  // full maximal torus of SU(2)^3 acting on S3xS3

  static TorusSpec standard(Space s);
  static TorusSpec s3s3(const IVec3& a1, const IVec3& a2);
  static TorusSpec s3s3_t3();

  IVec3 b() const;
  std::string describe() const;
};

struct TorusElement {
  double theta = 0;
  double phi = 0;
};

struct GramData {
  double g_uu = 0, g_uv = 0, g_vv = 0, h2 = 0;
};

// Everything at a point expressed in the space's tangent frame E_1..E_6.
struct LocalFrame {
  Mat6 metric;  // g(E_a, E_b)
  Mat6 J;       // J E_b = sum_a J(a,b) E_a
  Vec6 u, v;    // generator coordinates
  double nu = 0;  // sigma(u, v) = g(Ju, v)
  Vec6 dnu;     // d nu(E_k) = 3 psi_+(u, v, E_k)
};

// --- points ---------------------------------------------------------------

constexpr double kGroupTol = 1e-10;

std::size_t flat_size(Space s);
std::vector<double> to_flat(const ModelPoint& p);
ModelPoint from_flat(Space s, std::span<const double> v);  // validates
void validate(const ModelPoint& p);                          // throws ArgumentError
double membership_residual(const ModelPoint& p);

// restore the model-set invariants; DegeneracyError for column norms below 1e-6
ModelPoint retract(Space s, std::span<const double> ambient);

// uniform random point (Gaussian normalisation / Haar QR / quaternionic Gram-Schmidt)
ModelPoint random_point(Space s, std::mt19937_64& rng);

// exponential curve t -> p exp(t X) with X = sum d_k E_k, followed by retraction
ModelPoint move(const ModelPoint& p, const Vec6& d, double t);

// frame coordinates of an ambient tangent vector (flat layout) at p
Vec6 frame_coordinates(const ModelPoint& p, std::span<const double> ambient);
// ambient (flat layout) tangent vector of frame coordinates d at p
std::vector<double> ambient_tangent(const ModelPoint& p, const Vec6& d);

// --- torus ----------------------------------------------------------------

ModelPoint act(const TorusSpec& spec, const TorusElement& t, const ModelPoint& p);
// action in the parameters that make the torus act effectively
ModelPoint act_effective(const TorusSpec& spec, const TorusElement& s, const ModelPoint& p);
// S3xS3 only: (t1, t2, t3) acting by (e^{i t1} p e^{-i t3}, e^{i t2} q e^{-i t3})
ModelPoint act_t3(const Eigen::Vector3d& t, const ModelPoint& p);

std::pair<Vec6, Vec6> generators(const TorusSpec& spec, const ModelPoint& p);
std::pair<Vec6, Vec6> effective_generators(const TorusSpec& spec, const ModelPoint& p);
// frame coordinates of the fundamental fields of the coordinate circles
std::vector<Vec6> axis_generators(const ModelPoint& p);

// (theta, phi) weights of U and V: U = sum_k W(0,k) G_k, V = sum_k W(1,k) G_k
Eigen::MatrixXd generator_weights(const TorusSpec& spec);
Eigen::MatrixXd effective_weights(const TorusSpec& spec);
Eigen::MatrixXd action_weights(const TorusSpec& spec);

LocalFrame local_frame(const TorusSpec& spec, const ModelPoint& p);
GramData gram(const TorusSpec& spec, const ModelPoint& p);

// closed-form multi-moment map of the space
double nu(const TorusSpec& spec, const ModelPoint& p);
// norm of the printed criticality system at p
double crit_residual_norm(const TorusSpec& spec, const ModelPoint& p);

// torus-invariant quantities used to tell orbits apart
Eigen::VectorXd orbit_invariants(const TorusSpec& spec, const ModelPoint& p);

// representative of the torus orbit in the zero-level normal form
ModelPoint normal_form_zero(const TorusSpec& spec, const ModelPoint& p, double tol);

// --- flag -----------------------------------------------------------------

struct FlagZW {
  cplx z1, z2, z3, w1, w2, w3;
};
FlagZW flag_zw(const FlagPoint& p);
double flag_nu(const FlagPoint& p);     // -27 Im(p22 conj(p23) conj(p32) p33)
double flag_nu_zw(const FlagPoint& p);  // 3 Im(z3 conj(w3))
std::array<cplx, 3> flag_crit_residual(const FlagPoint& p);
// psi_+(U,V,.) in the frame, from the z, w coefficients
Vec6 flag_psi_plus_uv(const FlagPoint& p);
// the extremal matrix (1/sqrt3)[[i w, i, i w^2], [1, 1, 1], [w^2, 1, w]], w = e^{2 pi i/3}
FlagPoint flag_extremal_matrix();
// minimal distance between p and the printed matrix over left and right tori
double flag_torus_alignment(const FlagPoint& p, const FlagPoint& target);

// --- CP3 ------------------------------------------------------------------

struct CP3Components {
  Quaternion alpha, beta;
  cplx gamma, delta;
};
CP3Components cp3_components(const CP3Point& p);
double cp3_nu(const CP3Point& p);     // 12 Im(conj(p11^1) p11^2 p21^1 conj(p21^2))
double cp3_nu_gd(const CP3Point& p);  // 3 Im(gamma conj(delta))
std::array<double, 6> cp3_crit_residual(const CP3Point& p);
// frame coordinates (f, e, sqrt2 a, sqrt2 b, sqrt2 c, sqrt2 d) rebuilt from alpha..delta
std::pair<Vec6, Vec6> cp3_generators_from_components(const CP3Components& c);
std::array<CP3Point, 2> cp3_critical_matrices();

// --- S3xS3 ----------------------------------------------------------------

std::pair<Eigen::Vector3d, Eigen::Vector3d> s3s3_xy(const S3S3Point& pt);
double s3s3_nu(const TorusSpec& spec, const S3S3Point& pt);
double s3s3_nu_xy(const IVec3& b, const Eigen::Vector3d& x, const Eigen::Vector3d& y);
std::array<double, 5> s3s3_crit_residual(const TorusSpec& spec, const S3S3Point& pt);
std::array<double, 5> s3s3_crit_residual_xy(const Eigen::Vector3d& b, const Eigen::Vector3d& x,
                                            const Eigen::Vector3d& y);
// a point of S3xS3 over (x, y) in S2 x S2
S3S3Point s3s3_lift(const Eigen::Vector3d& x, const Eigen::Vector3d& y);

struct CriticalDatum {
  double x1;             // NaN when x1 varies along the family
  double y1;             // NaN when y1 varies along the family
  double inner;          // <x,y>, NaN when it varies
  std::string relation;  // description of the family
  double value;          // value of nu, prefactor 2/(3 sqrt3) included
};

// all critical values of nu for the torus with b = a1 x a2, sorted by value
std::vector<CriticalDatum> s3s3_classify_critical(const Eigen::Vector3d& b);

double s3s3_prefactor();  // 2/(3 sqrt3)

}  // namespace nkmm
