#include <algorithm>
#include <cmath>

#include "spaces.hpp"

namespace nkmm {
namespace detail::cp3 {

namespace {
const cplx I1(0, 1);

const std::vector<Triple>& phi_t() {
  static const auto t = triples_of(cp3_structure().phi0);
  return t;
}

QMat2 unflat(std::span<const double> v) {
  QMat2 m;
  for (int e = 0; e < 4; ++e) m[e] = {v[4 * e], v[4 * e + 1], v[4 * e + 2], v[4 * e + 3]};
  return m;
}

// <x, y> = conj(x1) y1 + conj(x2) y2 on H^2
Quaternion hdot(const Quaternion& x1, const Quaternion& x2, const Quaternion& y1, const Quaternion& y2) {
  return x1.conj() * y1 + x2.conj() * y2;
}

CP3Point orthonormalize(QMat2 m) {
  // columns (m0, m2) and (m1, m3), scalars acting on the right
  double n0 = std::sqrt(m[0].norm2() + m[2].norm2());
  if (!(n0 >= 1e-6)) throw DegeneracyError("CP3 retraction: column norm below 1e-6");
  m[0] = m[0] * (1.0 / n0);
  m[2] = m[2] * (1.0 / n0);
  Quaternion h = hdot(m[0], m[2], m[1], m[3]);
  m[1] -= m[0] * h;
  m[3] -= m[2] * h;
  double n1 = std::sqrt(m[1].norm2() + m[3].norm2());
  if (!(n1 >= 1e-6)) throw DegeneracyError("CP3 retraction: column norm below 1e-6");
  m[1] = m[1] * (1.0 / n1);
  m[3] = m[3] * (1.0 / n1);
  return {m};
}

QMat2 lie_of(const Vec6& d) {
  QMat2 x{};
  for (int k = 0; k < 6; ++k) {
    QMat2 e = sp2_basis(k);
    for (int i = 0; i < 4; ++i) x[i] += d[k] * e[i];
  }
  return x;
}

QMat2 expm(const QMat2& x) {
  Eigen::Matrix4cd c = to_complex4(x);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(-I1 * c);
  Eigen::Vector4cd ph;
  for (int k = 0; k < 4; ++k) ph[k] = std::exp(I1 * es.eigenvalues()[k]);
  return from_complex4(es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint());
}

Quaternion cq(cplx c) { return {c.real(), c.imag(), 0, 0}; }
}  // namespace

QMat2 sp2_basis(int k) {
  const double r = 1.0 / std::sqrt(2.0);
  const Quaternion o = Quaternion::one(), i = Quaternion::i(), j = Quaternion::j(), kk = Quaternion::k();
  QMat2 e{};
  switch (k) {
    case 0: e[0] = kk; break;
    case 1: e[0] = j; break;
    case 2: e[1] = r * o, e[2] = -r * o; break;
    case 3: e[1] = r * i, e[2] = r * i; break;
    case 4: e[1] = r * j, e[2] = r * j; break;
    case 5: e[1] = r * kk, e[2] = r * kk; break;
    case 6: e[0] = i; break;
    case 7: e[3] = i; break;
    case 8: e[3] = j; break;
    case 9: e[3] = kk; break;
    default: throw ArgumentError("sp2_basis: index out of range");
  }
  return e;
}

Vec6 sp2_coords(const QMat2& x) {
  Vec6 r;
  for (int k = 0; k < 6; ++k) {
    QMat2 e = sp2_basis(k);
    double s = 0;
    for (int i = 0; i < 4; ++i) s += qdot(e[i], x[i]);
    r[k] = s;
  }
  return r;
}

std::vector<double> flat(const CP3Point& p) {
  std::vector<double> out;
  for (const auto& q : p.m) out.insert(out.end(), {q.w, q.x, q.y, q.z});
  return out;
}

double residual(const CP3Point& p) {
  QMat2 g = qmul(qadjoint(p.m), p.m);
  g[0] -= Quaternion::one();
  g[3] -= Quaternion::one();
  double r = 0;
  for (const auto& q : g) r = std::max(r, q.norm());
  return r;
}

CP3Point retract(std::span<const double> v) {
  check_size(v, 16, "CP3 point");
  return orthonormalize(unflat(v));
}

CP3Point random(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(16);
  for (auto& c : v) c = g(rng);
  return retract(v);
}

CP3Point move(const CP3Point& p, const Vec6& d, double t) {
  if (t == 0.0 || d.isZero(0.0)) return p;
  QMat2 x = lie_of(d);
  for (auto& q : x) q = t * q;
  return orthonormalize(qmul(p.m, expm(x)));
}

Vec6 coords(const CP3Point& p, std::span<const double> amb) {
  check_size(amb, 16, "CP3 tangent");
  return sp2_coords(qmul(qadjoint(p.m), unflat(amb)));
}

std::vector<double> ambient(const CP3Point& p, const Vec6& d) { return flat({qmul(p.m, lie_of(d))}); }

CP3Point act_axes(const CP3Point& p, double th, double ph) {
  Quaternion a = cq(std::exp(I1 * th)), b = cq(std::exp(I1 * ph));
  return {{a * p.m[0], a * p.m[1], b * p.m[2], b * p.m[3]}};
}

std::vector<Vec6> axis_gens(const CP3Point& p) {
  QMat2 u{}, v{};
  u[0] = Quaternion::i();
  v[3] = Quaternion::i();
  QMat2 pa = qadjoint(p.m);
  return {sp2_coords(qmul(pa, qmul(u, p.m))), sp2_coords(qmul(pa, qmul(v, p.m)))};
}

LocalFrame local(const CP3Point&, const Vec6& u, const Vec6& v) {
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

double crit_norm(const CP3Point& p) {
  double s = 0;
  for (double r : cp3_crit_residual(p)) s += r * r;
  return std::sqrt(s);
}

Eigen::VectorXd invariants(const CP3Point& p) {
  auto c = cp3_components(p);
  cplx gd = c.gamma * std::conj(c.delta);
  Eigen::VectorXd r(6);
  r << std::abs(c.gamma), std::abs(c.delta), gd.real(), gd.imag(), c.alpha.norm(), c.beta.norm();
  return r;
}

// phases of (p11^1, p11^2, p21^1, p21^2) shift by (th + t, th - t, ph + t, ph - t)
CP3Point normal_form(const CP3Point& p) {
  const QMat2& m = p.m;
  std::array<cplx, 4> comp{m[0].c1(), m[0].c2(), m[2].c1(), m[2].c2()};
  const double rows[4][3] = {{1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}};
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(comp[a]) > std::abs(comp[b]); });
  std::vector<int> use;
  for (int k : order)
    if (std::abs(comp[k]) > 1e-12 && use.size() < 3) use.push_back(k);
  Eigen::MatrixXd a(use.size(), 3);
  Eigen::VectorXd rhs(use.size());
  for (std::size_t r = 0; r < use.size(); ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = rows[use[r]][c];
    rhs[r] = -std::arg(comp[use[r]]);
  }
  Eigen::Vector3d ang = use.empty() ? Eigen::Vector3d::Zero() : Eigen::Vector3d(a.completeOrthogonalDecomposition().solve(rhs));
  std::array<double, 4> col{};
  for (int k = 0; k < 4; ++k) {
    double s = rows[k][0] * ang[0] + rows[k][1] * ang[1] + rows[k][2] * ang[2];
    col[k] = (comp[k] * std::exp(I1 * s)).real();
  }
  QMat2 out{};
  out[0] = {col[0], 0, col[1], 0};
  out[2] = {col[2], 0, col[3], 0};
  // second column from the standard vector least aligned with the first
  double a0 = out[0].norm2(), a1 = out[2].norm2();
  if (a0 <= a1) out[1] = Quaternion::one();
  else out[3] = Quaternion::one();
  return orthonormalize(out);
}

}  // namespace detail::cp3

CP3Components cp3_components(const CP3Point& pt) {
  const QMat2& m = pt.m;
  auto row = [](const Quaternion& a, const Quaternion& b, Quaternion& q, cplx& g) {
    cplx a1 = a.c1(), a2 = a.c2(), b1 = b.c1(), b2 = b.c2();
    const cplx i(0, 1);
    cplx c1 = i * (std::conj(a1) * b1 - a2 * std::conj(b2));
    cplx c2 = i * (std::conj(a1) * b2 + a2 * std::conj(b1));
    q = Quaternion::from_complex(c1, c2);
    g = 2.0 * i * std::conj(a1) * a2;
  };
  CP3Components c;
  row(m[0], m[1], c.alpha, c.gamma);
  row(m[2], m[3], c.beta, c.delta);
  return c;
}

double cp3_nu(const CP3Point& p) {
  const QMat2& m = p.m;
  return 12.0 * (std::conj(m[0].c1()) * m[0].c2() * m[2].c1() * std::conj(m[2].c2())).imag();
}

double cp3_nu_gd(const CP3Point& p) {
  auto c = cp3_components(p);
  return 3.0 * (c.gamma * std::conj(c.delta)).imag();
}

std::array<double, 6> cp3_crit_residual(const CP3Point& p) {
  auto k = cp3_components(p);
  // alpha = a + b i + c j + d k, gamma = e + f i; primes for U, seconds for V
  const double a1 = k.alpha.w, b1 = k.alpha.x, c1 = k.alpha.y, d1 = k.alpha.z, e1 = k.gamma.real(), f1 = k.gamma.imag();
  const double a2 = k.beta.w, b2 = k.beta.x, c2 = k.beta.y, d2 = k.beta.z, e2 = k.delta.real(), f2 = k.delta.imag();
  return {(a1 * c2 - a2 * c1) + (b2 * d1 - b1 * d2), (e1 * c2 - c1 * e2) + (f1 * d2 - d1 * f2),
          (b2 * c1 - b1 * c2) + (a2 * d1 - a1 * d2), (f1 * a2 - a1 * f2) + (b1 * e2 - b2 * e1),
          (c1 * f2 - f1 * c2) + (e1 * d2 - d1 * e2), (b1 * f2 - f1 * b2) + (a1 * e2 - e1 * a2)};
}

std::pair<Vec6, Vec6> cp3_generators_from_components(const CP3Components& c) {
  const double r = std::sqrt(2.0);
  auto build = [&](const Quaternion& a, cplx g) {
    Vec6 v;
    v << g.imag(), g.real(), r * a.w, r * a.x, r * a.y, r * a.z;
    return v;
  };
  return {build(c.alpha, c.gamma), build(c.beta, c.delta)};
}

std::array<CP3Point, 2> cp3_critical_matrices() {
  const double h = 0.5, s = 1.0 / (2.0 * std::sqrt(2.0)), r2 = 1.0 / std::sqrt(2.0);
  const cplx i(0, 1);
  CP3Point a, b;
  a.m = {Quaternion{h, 0, h, 0}, Quaternion{r2, 0, 0, 0}, Quaternion{h, 0, 0, h},
         Quaternion::from_complex(-s * (1.0 + i), s * (1.0 - i))};
  b.m = {Quaternion{h, 0, h, 0}, Quaternion{r2, 0, 0, 0}, Quaternion{h, 0, 0, -h},
         Quaternion::from_complex(-s * (1.0 - i), s * (1.0 + i))};
  return {a, b};
}

}  // namespace nkmm
