#include <algorithm>
#include <cmath>
#include <numeric>

#include "spaces.hpp"

namespace nkmm {
namespace detail::flag {

namespace {
using M3 = Eigen::Matrix3cd;
const cplx I1(0, 1);

const std::vector<Triple>& phi_t() {
  static const auto t = triples_of(flag_structure().phi0);
  return t;
}

M3 unflat(std::span<const double> v) {
  M3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = cplx(v[2 * (3 * r + c)], v[2 * (3 * r + c) + 1]);
  return m;
}

std::vector<double> toflat(const M3& m) {
  std::vector<double> out(18);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      out[2 * (3 * r + c)] = m(r, c).real();
      out[2 * (3 * r + c) + 1] = m(r, c).imag();
    }
  return out;
}

FlagPoint orthonormalize(M3 m) {
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < c; ++k) m.col(c) -= m.col(k).dot(m.col(c)) * m.col(k);
    double n = m.col(c).norm();
    if (!(n >= 1e-6)) throw DegeneracyError("flag retraction: column norm below 1e-6");
    m.col(c) /= n;
  }
  cplx d = m.determinant();
  m.col(2) *= std::conj(d) / std::abs(d);
  return {m};
}

// exp of a skew-Hermitian matrix
M3 expm_skew(const M3& x) {
  Eigen::SelfAdjointEigenSolver<M3> es(-I1 * x);
  Eigen::Vector3cd ph;
  for (int k = 0; k < 3; ++k) ph[k] = std::exp(I1 * es.eigenvalues()[k]);
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

M3 skew_of(const Vec6& d) {
  M3 x = M3::Zero();
  for (int k = 0; k < 6; ++k) x += d[k] * su3_basis(k);
  return x;
}
}  // namespace

Eigen::Matrix3cd su3_basis(int k) {
  M3 e = M3::Zero();
  switch (k) {
    case 0: e(0, 1) = I1, e(1, 0) = I1; break;
    case 1: e(0, 1) = 1, e(1, 0) = -1; break;
    case 2: e(0, 2) = 1, e(2, 0) = -1; break;
    case 3: e(0, 2) = I1, e(2, 0) = I1; break;
    case 4: e(1, 2) = I1, e(2, 1) = I1; break;
    case 5: e(1, 2) = 1, e(2, 1) = -1; break;
    case 6: e(0, 0) = I1, e(2, 2) = -I1; break;
    case 7: e(1, 1) = I1, e(2, 2) = -I1; break;
    default: throw ArgumentError("su3_basis: index out of range");
  }
  return e;
}

Vec6 su3_coords(const Eigen::Matrix3cd& x) {
  Vec6 r;
  for (int k = 0; k < 6; ++k) r[k] = 0.5 * (su3_basis(k).adjoint() * x).trace().real();
  return r;
}

std::vector<double> flat(const FlagPoint& p) { return toflat(p.m); }

double residual(const FlagPoint& p) {
  double u = (p.m.adjoint() * p.m - M3::Identity()).cwiseAbs().maxCoeff();
  return std::max(u, std::abs(p.m.determinant() - 1.0));
}

FlagPoint retract(std::span<const double> v) {
  check_size(v, 18, "flag point");
  return orthonormalize(unflat(v));
}

FlagPoint random(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(18);
  for (auto& c : v) c = g(rng);
  return retract(v);
}

FlagPoint move(const FlagPoint& p, const Vec6& d, double t) {
  if (t == 0.0 || d.isZero(0.0)) return p;
  M3 y = p.m * expm_skew(t * skew_of(d));
  return orthonormalize(y);
}

Vec6 coords(const FlagPoint& p, std::span<const double> amb) {
  check_size(amb, 18, "flag tangent");
  return su3_coords(p.m.adjoint() * unflat(amb));
}

std::vector<double> ambient(const FlagPoint& p, const Vec6& d) { return toflat(p.m * skew_of(d)); }

FlagPoint act_axes(const FlagPoint& p, double th, double ph) {
  Eigen::Vector3cd l(std::exp(I1 * th), std::exp(I1 * ph), std::exp(-I1 * (th + ph)));
  return {l.asDiagonal() * p.m};
}

std::vector<Vec6> axis_gens(const FlagPoint& p) {
  M3 a = M3::Zero(), b = M3::Zero();
  a(0, 0) = I1, a(2, 2) = -I1;
  b(1, 1) = I1, b(2, 2) = -I1;
  return {su3_coords(p.m.adjoint() * a * p.m), su3_coords(p.m.adjoint() * b * p.m)};
}

LocalFrame local(const FlagPoint&, const Vec6& u, const Vec6& v) {
  LocalFrame lf;
  lf.metric = Mat6::Identity();
  lf.J = Mat6::Zero();
  for (int k = 0; k < 3; ++k) {
    lf.J(2 * k + 1, 2 * k) = 1;
    lf.J(2 * k, 2 * k + 1) = -1;
  }
  lf.u = u;
  lf.v = v;
  lf.nu = (lf.J * u).dot(v);
  lf.dnu = 3.0 * contract_uv(phi_t(), u, v);
  return lf;
}

double crit_norm(const FlagPoint& p) {
  auto c = flag_crit_residual(p);
  return std::sqrt(std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]));
}

Eigen::VectorXd invariants(const FlagPoint& p) {
  auto z = flag_zw(p);
  Eigen::VectorXd r(10);
  cplx c3 = z.z3 * std::conj(z.w3);
  r << std::abs(z.z1), std::abs(z.z2), std::abs(z.z3), std::abs(z.w1), std::abs(z.w2), std::abs(z.w3), c3.real(),
      c3.imag(), (z.z1 * std::conj(z.w1)).real(), (z.z2 * std::conj(z.w2)).real();
  return r;
}

// left and right diagonal phases making rows 2 and 3 real; row 1 then follows
FlagPoint normal_form(const FlagPoint& p) {
  const M3& m = p.m;
  // nodes: 0,1 = rows 2,3; 2,3,4 = columns 1..3
  struct Edge {
    int r, c;
    double mod;
  };
  std::vector<Edge> edges;
  for (int r = 1; r < 3; ++r)
    for (int c = 0; c < 3; ++c) edges.push_back({r, c, std::abs(m(r, c))});
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.mod > b.mod; });
  std::array<int, 5> parent;
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Edge> tree;
  for (const auto& e : edges) {
    if (e.mod < 1e-12) continue;
    int a = find(e.r - 1), b = find(2 + e.c);
    if (a == b) continue;
    parent[a] = b;
    tree.push_back(e);
  }
  // propagate l_r + r_c = -arg m(r,c) along the tree
  std::array<double, 5> ang{};
  std::array<bool, 5> known{};
  for (int root = 0; root < 5; ++root) {
    if (known[root]) continue;
    known[root] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& e : tree) {
        int a = e.r - 1, b = 2 + e.c;
        double target = -std::arg(m(e.r, e.c));
        if (known[a] && !known[b]) {
          ang[b] = target - ang[a], known[b] = true, grew = true;
        } else if (known[b] && !known[a]) {
          ang[a] = target - ang[b], known[a] = true, grew = true;
        }
      }
    }
  }
  Eigen::Vector3cd lph(1.0, std::exp(I1 * ang[0]), std::exp(I1 * ang[1]));
  Eigen::Vector3cd rph(std::exp(I1 * ang[2]), std::exp(I1 * ang[3]), std::exp(I1 * ang[4]));
  M3 y = lph.asDiagonal() * m * rph.asDiagonal();
  int big = 0;
  for (int c = 1; c < 3; ++c)
    if (std::abs(y(0, c)) > std::abs(y(0, big))) big = c;
  y.row(0) *= std::conj(y(0, big)) / std::abs(y(0, big));
  Eigen::Matrix3d re = y.real();
  if (re.determinant() < 0) re.row(0) *= -1.0;
  return orthonormalize(re.cast<cplx>());
}

}  // namespace detail::flag

FlagZW flag_zw(const FlagPoint& p) {
  const auto& m = p.m;
  return {3.0 * std::conj(m(1, 0)) * m(1, 1), 3.0 * std::conj(m(1, 0)) * m(1, 2), 3.0 * std::conj(m(1, 1)) * m(1, 2),
          3.0 * std::conj(m(2, 0)) * m(2, 1), 3.0 * std::conj(m(2, 0)) * m(2, 2), 3.0 * std::conj(m(2, 1)) * m(2, 2)};
}

double flag_nu(const FlagPoint& p) {
  const auto& m = p.m;
  return -27.0 * (m(1, 1) * std::conj(m(1, 2)) * std::conj(m(2, 1)) * m(2, 2)).imag();
}

double flag_nu_zw(const FlagPoint& p) {
  auto z = flag_zw(p);
  return 3.0 * (z.z3 * std::conj(z.w3)).imag();
}

std::array<cplx, 3> flag_crit_residual(const FlagPoint& p) {
  const auto& m = p.m;
  auto c = [](cplx x) { return std::conj(x); };
  cplx p21 = m(1, 0), p22 = m(1, 1), p23 = m(1, 2), p31 = m(2, 0), p32 = m(2, 1), p33 = m(2, 2);
  return {p22 * c(p23) * c(p31) * p33 - c(p21) * p23 * p32 * c(p33),
          c(p22) * p23 * c(p31) * p32 - c(p21) * p22 * c(p32) * p33,
          c(p21) * p23 * p31 * c(p32) - p21 * c(p22) * c(p31) * p33};
}

Vec6 flag_psi_plus_uv(const FlagPoint& p) {
  auto z = flag_zw(p);
  auto c = [](cplx x) { return std::conj(x); };
  Vec6 r;
  r[0] = (z.z3 * c(z.w2) - z.z2 * c(z.w3)).real();
  r[1] = (z.z3 * c(z.w2) + z.z2 * c(z.w3)).imag();
  r[2] = (z.z3 * z.w1 - z.z1 * z.w3).imag();
  r[3] = (z.z1 * z.w3 - z.z3 * z.w1).real();
  r[4] = (c(z.z2) * z.w1 - c(z.z1) * z.w2).real();
  r[5] = (c(z.z2) * z.w1 + c(z.z1) * z.w2).imag();
  return r;
}

FlagPoint flag_extremal_matrix() {
  const cplx w = std::polar(1.0, 2.0 * M_PI / 3.0), i(0, 1);
  Eigen::Matrix3cd m;
  m << i * w, i, i * w * w, 1.0, 1.0, 1.0, w * w, 1.0, w;
  return {m / std::sqrt(3.0)};
}

double flag_torus_alignment(const FlagPoint& p, const FlagPoint& target) {
  const auto& a = p.m;
  const auto& t = target.m;
  const cplx i(0, 1);
  // phases l_r + r_c with sum zero (both tori lie in SU(3), up to a central factor)
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(6, 5);
  basis.topRows<5>().setIdentity();
  basis.row(5).setConstant(-1.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
  auto apply = [&](const Eigen::VectorXd& th) {
    Eigen::Matrix3cd y;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) y(r, c) = std::exp(i * (th[r] + th[3 + c])) * a(r, c);
    return y;
  };
  double best = (a - t).norm();
  // a handful of starts; the Gauss-Newton refinement does the rest
  for (int start = 0; start < 4; ++start) {
    x.setZero();
    if (start > 0) {
      // seed from the largest entries of row start-1
      int r = start - 1;
      for (int c = 0; c < 3; ++c)
        if (std::abs(a(r, c)) > 1e-8 && std::abs(t(r, c)) > 1e-8) x[3 + c] = std::arg(t(r, c)) - std::arg(a(r, c));
      x[5] = -x.head<5>().sum();
    }
    for (int it = 0; it < 50; ++it) {
      Eigen::Matrix3cd y = apply(x);
      Eigen::VectorXd res(18);
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(18, 6);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          int k = 3 * r + c;
          cplx d = y(r, c) - t(r, c), dy = i * y(r, c);
          res[2 * k] = d.real();
          res[2 * k + 1] = d.imag();
          jac(2 * k, r) = jac(2 * k, 3 + c) = dy.real();
          jac(2 * k + 1, r) = jac(2 * k + 1, 3 + c) = dy.imag();
        }
      Eigen::VectorXd step = basis * (jac * basis).completeOrthogonalDecomposition().solve(-res);
      x += step;
      if (step.norm() < 1e-15) break;
    }
    best = std::min(best, (apply(x) - t).norm());
  }
  return best;
}

}  // namespace nkmm
