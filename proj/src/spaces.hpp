#pragma once

// per-space implementations behind models.hpp

#include <span>
#include <vector>

#include "nkmm/coframe.hpp"
#include "nkmm/models.hpp"

namespace nkmm::detail {

struct Triple {
  int a, b, c;
  double s;
};

// terms of a constant three-form restricted to the first n generators
std::vector<Triple> triples_of(const ExactForm& phi, int n = 6);
// k -> phi(u, v, E_k)
Vec6 contract_uv(const std::vector<Triple>& phi, const Vec6& u, const Vec6& v);

void check_size(std::span<const double> v, std::size_t n, const char* what);

namespace s6 {
std::vector<double> flat(const S6Point& p);
double residual(const S6Point& p);
S6Point retract(std::span<const double> v);
S6Point random(std::mt19937_64& rng);
Eigen::Matrix<double, 7, 6> frame(const S6Point& p);
S6Point move(const S6Point& p, const Vec6& d, double t);
Vec6 coords(const S6Point& p, std::span<const double> amb);
std::vector<double> ambient(const S6Point& p, const Vec6& d);
S6Point act_axes(const S6Point& p, double th, double ph);
std::vector<Vec6> axis_gens(const S6Point& p);
LocalFrame local(const S6Point& p, const Vec6& u, const Vec6& v);
double crit_norm(const S6Point& p);
Eigen::VectorXd invariants(const S6Point& p);
S6Point normal_form(const S6Point& p);
}  // namespace s6

namespace flag {
std::vector<double> flat(const FlagPoint& p);
double residual(const FlagPoint& p);
FlagPoint retract(std::span<const double> v);
FlagPoint random(std::mt19937_64& rng);
FlagPoint move(const FlagPoint& p, const Vec6& d, double t);
Vec6 coords(const FlagPoint& p, std::span<const double> amb);
std::vector<double> ambient(const FlagPoint& p, const Vec6& d);
FlagPoint act_axes(const FlagPoint& p, double th, double ph);
std::vector<Vec6> axis_gens(const FlagPoint& p);
LocalFrame local(const FlagPoint& p, const Vec6& u, const Vec6& v);
double crit_norm(const FlagPoint& p);
Eigen::VectorXd invariants(const FlagPoint& p);
FlagPoint normal_form(const FlagPoint& p);
// frame coordinates of a skew-Hermitian matrix on E_1..E_6
Vec6 su3_coords(const Eigen::Matrix3cd& x);
Eigen::Matrix3cd su3_basis(int k);  // E_1..E_8 for k = 0..7
}  // namespace flag

namespace cp3 {
std::vector<double> flat(const CP3Point& p);
double residual(const CP3Point& p);
CP3Point retract(std::span<const double> v);
CP3Point random(std::mt19937_64& rng);
CP3Point move(const CP3Point& p, const Vec6& d, double t);
Vec6 coords(const CP3Point& p, std::span<const double> amb);
std::vector<double> ambient(const CP3Point& p, const Vec6& d);
CP3Point act_axes(const CP3Point& p, double th, double ph);
std::vector<Vec6> axis_gens(const CP3Point& p);
LocalFrame local(const CP3Point& p, const Vec6& u, const Vec6& v);
double crit_norm(const CP3Point& p);
Eigen::VectorXd invariants(const CP3Point& p);
CP3Point normal_form(const CP3Point& p);
Vec6 sp2_coords(const QMat2& x);
QMat2 sp2_basis(int k);  // E_0..E_9
}  // namespace cp3

namespace s3s3 {
std::vector<double> flat(const S3S3Point& p);
double residual(const S3S3Point& p);
S3S3Point retract(std::span<const double> v);
S3S3Point random(std::mt19937_64& rng);
S3S3Point move(const S3S3Point& p, const Vec6& d, double t);
Vec6 coords(const S3S3Point& p, std::span<const double> amb);
std::vector<double> ambient(const S3S3Point& p, const Vec6& d);
S3S3Point act_axes(const S3S3Point& p, const Eigen::Vector3d& t);
std::vector<Vec6> axis_gens(const S3S3Point& p);
LocalFrame local(const S3S3Point& p, const Vec6& u, const Vec6& v);
Eigen::VectorXd invariants(const S3S3Point& p);
S3S3Point normal_form(const S3S3Point& p, const Eigen::MatrixXd& weights);
const Mat6& metric();
const Mat6& J();
}  // namespace s3s3

}  // namespace nkmm::detail
