#include "nkmm/models.hpp"

#include <cmath>
#include <sstream>

#include "spaces.hpp"

namespace nkmm {

namespace detail {

std::vector<Triple> triples_of(const ExactForm& phi, int n) {
  std::vector<Triple> out;
  for (const auto& [m, c] : phi.terms()) {
    auto idx = mask_indices(m);
    if (idx.size() != 3) throw ArgumentError("triples_of: expected a three-form");
    if (idx[2] >= n) continue;
    out.push_back({idx[0], idx[1], idx[2], c.to_double()});
  }
  return out;
}

Vec6 contract_uv(const std::vector<Triple>& phi, const Vec6& u, const Vec6& v) {
  Vec6 r = Vec6::Zero();
  for (const auto& t : phi) {
    r[t.c] += t.s * (u[t.a] * v[t.b] - u[t.b] * v[t.a]);
    r[t.a] += t.s * (u[t.b] * v[t.c] - u[t.c] * v[t.b]);
    r[t.b] += t.s * (u[t.c] * v[t.a] - u[t.a] * v[t.c]);
  }
  return r;
}

void check_size(std::span<const double> v, std::size_t n, const char* what) {
  if (v.size() != n)
    throw ArgumentError(std::string(what) + ": expected " + std::to_string(n) + " values, got " +
                        std::to_string(v.size()));
  for (double x : v)
    if (!std::isfinite(x)) throw ArgumentError(std::string(what) + ": non-finite value");
}

}  // namespace detail

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

void require_space(const TorusSpec& spec, const ModelPoint& p) {
  if (spec.space != space_of(p)) throw ArgumentError("torus and point belong to different spaces");
}

Vec6 combine(const Eigen::RowVectorXd& w, const std::vector<Vec6>& g) {
  Vec6 r = Vec6::Zero();
  for (std::size_t k = 0; k < g.size(); ++k) r += w[k] * g[k];
  return r;
}

}  // namespace

std::string_view space_name(Space s) {
  switch (s) {
    case Space::s6: return "s6";
    case Space::flag: return "flag";
    case Space::cp3: return "cp3";
    case Space::s3s3: return "s3s3";
  }
  return "?";
}

Space parse_space(std::string_view name) {
  for (Space s : {Space::s6, Space::flag, Space::cp3, Space::s3s3})
    if (space_name(s) == name) return s;
  throw ArgumentError("unknown space '" + std::string(name) + "' (expected s6, flag, cp3 or s3s3)");
}

Space space_of(const ModelPoint& p) { return static_cast<Space>(p.index()); }

// --- torus spec --------------------------------------------------------------

TorusSpec TorusSpec::standard(Space s) {
  if (s == Space::s3s3) return s3s3({1, 0, 0}, {0, 1, 0});
  TorusSpec t;
  t.space = s;
  return t;
}

TorusSpec TorusSpec::s3s3(const IVec3& a1, const IVec3& a2) {
  TorusSpec t;
  t.space = Space::s3s3;
  t.a1 = a1;
  t.a2 = a2;
  IVec3 b = t.b();
  if (b[0] == 0 && b[1] == 0 && b[2] == 0) throw ArgumentError("torus weights a1, a2 are linearly dependent (b = 0)");
  return t;
}

TorusSpec TorusSpec::s3s3_t3() {
  TorusSpec t;
  t.space = Space::s3s3;
  t.t3 = true;
  return t;
}

IVec3 TorusSpec::b() const {
  return {a1[1] * a2[2] - a1[2] * a2[1], a1[2] * a2[0] - a1[0] * a2[2], a1[0] * a2[1] - a1[1] * a2[0]};
}

std::string TorusSpec::describe() const {
  std::ostringstream os;
  os << space_name(space);
  if (space != Space::s3s3) {
    os << " standard torus";
  } else if (t3) {
    os << " maximal three-torus";
  } else {
    auto v = [&](const IVec3& a) {
      std::ostringstream s;
      s << "(" << a[0] << "," << a[1] << "," << a[2] << ")";
      return s.str();
    };
    os << " a1=" << v(a1) << " a2=" << v(a2) << " b=" << v(b());
  }
  return os.str();
}

// --- points ------------------------------------------------------------------

std::size_t flat_size(Space s) {
  switch (s) {
    case Space::s6: return 7;
    case Space::flag: return 18;
    case Space::cp3: return 16;
    case Space::s3s3: return 8;
  }
  return 0;
}

std::vector<double> to_flat(const ModelPoint& p) {
  return std::visit(overloaded{[](const S6Point& x) { return detail::s6::flat(x); },
                               [](const FlagPoint& x) { return detail::flag::flat(x); },
                               [](const CP3Point& x) { return detail::cp3::flat(x); },
                               [](const S3S3Point& x) { return detail::s3s3::flat(x); }},
                    p);
}

double membership_residual(const ModelPoint& p) {
  return std::visit(overloaded{[](const S6Point& x) { return detail::s6::residual(x); },
                               [](const FlagPoint& x) { return detail::flag::residual(x); },
                               [](const CP3Point& x) { return detail::cp3::residual(x); },
                               [](const S3S3Point& x) { return detail::s3s3::residual(x); }},
                    p);
}

void validate(const ModelPoint& p) {
  for (double x : to_flat(p))
    if (!std::isfinite(x)) throw ArgumentError("point has non-finite entries");
  double r = membership_residual(p);
  if (!(r <= kGroupTol)) {
    std::ostringstream os;
    os << space_name(space_of(p)) << " point violates the group constraints (residual " << r << ")";
    throw ArgumentError(os.str());
  }
}

ModelPoint from_flat(Space s, std::span<const double> v) {
  detail::check_size(v, flat_size(s), "point");
  ModelPoint p;
  switch (s) {
    case Space::s6: {
      Vec7 x;
      for (int k = 0; k < 7; ++k) x[k] = v[k];
      p = S6Point{x};
      break;
    }
    case Space::flag: {
      Eigen::Matrix3cd m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = cplx(v[2 * (3 * r + c)], v[2 * (3 * r + c) + 1]);
      p = FlagPoint{m};
      break;
    }
    case Space::cp3: {
      QMat2 m;
      for (int e = 0; e < 4; ++e) m[e] = {v[4 * e], v[4 * e + 1], v[4 * e + 2], v[4 * e + 3]};
      p = CP3Point{m};
      break;
    }
    case Space::s3s3:
      p = S3S3Point{{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
      break;
  }
  validate(p);
  return p;
}

ModelPoint retract(Space s, std::span<const double> a) {
  switch (s) {
    case Space::s6: return detail::s6::retract(a);
    case Space::flag: return detail::flag::retract(a);
    case Space::cp3: return detail::cp3::retract(a);
    case Space::s3s3: return detail::s3s3::retract(a);
  }
  throw ArgumentError("retract: unknown space");
}

ModelPoint random_point(Space s, std::mt19937_64& rng) {
  switch (s) {
    case Space::s6: return detail::s6::random(rng);
    case Space::flag: return detail::flag::random(rng);
    case Space::cp3: return detail::cp3::random(rng);
    case Space::s3s3: return detail::s3s3::random(rng);
  }
  throw ArgumentError("random_point: unknown space");
}

ModelPoint move(const ModelPoint& p, const Vec6& d, double t) {
  return std::visit(overloaded{[&](const S6Point& x) -> ModelPoint { return detail::s6::move(x, d, t); },
                               [&](const FlagPoint& x) -> ModelPoint { return detail::flag::move(x, d, t); },
                               [&](const CP3Point& x) -> ModelPoint { return detail::cp3::move(x, d, t); },
                               [&](const S3S3Point& x) -> ModelPoint { return detail::s3s3::move(x, d, t); }},
                    p);
}

Vec6 frame_coordinates(const ModelPoint& p, std::span<const double> a) {
  return std::visit(overloaded{[&](const S6Point& x) { return detail::s6::coords(x, a); },
                               [&](const FlagPoint& x) { return detail::flag::coords(x, a); },
                               [&](const CP3Point& x) { return detail::cp3::coords(x, a); },
                               [&](const S3S3Point& x) { return detail::s3s3::coords(x, a); }},
                    p);
}

std::vector<double> ambient_tangent(const ModelPoint& p, const Vec6& d) {
  return std::visit(overloaded{[&](const S6Point& x) { return detail::s6::ambient(x, d); },
                               [&](const FlagPoint& x) { return detail::flag::ambient(x, d); },
                               [&](const CP3Point& x) { return detail::cp3::ambient(x, d); },
                               [&](const S3S3Point& x) { return detail::s3s3::ambient(x, d); }},
                    p);
}

// --- torus -------------------------------------------------------------------

Eigen::MatrixXd action_weights(const TorusSpec& spec) {
  if (spec.space != Space::s3s3) return Eigen::MatrixXd::Identity(2, 2);
  if (spec.t3) return Eigen::MatrixXd::Identity(3, 3);
  Eigen::MatrixXd w(2, 3);
  w << spec.a1[0], spec.a1[1], spec.a1[2], spec.a2[0], spec.a2[1], spec.a2[2];
  return w;
}

Eigen::MatrixXd generator_weights(const TorusSpec& spec) {
  if (spec.space == Space::flag) {
    Eigen::MatrixXd w(2, 2);
    w << -1, 2, -1, -1;
    return w;
  }
  return action_weights(spec);
}

Eigen::MatrixXd effective_weights(const TorusSpec& spec) {
  Eigen::MatrixXd w(2, 2);
  if (spec.space == Space::flag) {
    w << 1.0 / 3, 1.0 / 3, 0, -1;
    return w;
  }
  if (spec.space == Space::cp3) {
    w << 0.5, 0.5, 0, 1;
    return w;
  }
  return action_weights(spec);
}

ModelPoint act_t3(const Eigen::Vector3d& t, const ModelPoint& p) {
  validate(p);
  const auto* x = std::get_if<S3S3Point>(&p);
  if (!x) throw ArgumentError("act_t3: needs an S3xS3 point");
  return detail::s3s3::act_axes(*x, t);
}

ModelPoint act(const TorusSpec& spec, const TorusElement& t, const ModelPoint& p) {
  require_space(spec, p);
  validate(p);
  return std::visit(
      overloaded{[&](const S6Point& x) -> ModelPoint { return detail::s6::act_axes(x, t.theta, t.phi); },
                 [&](const FlagPoint& x) -> ModelPoint { return detail::flag::act_axes(x, t.theta, t.phi); },
                 [&](const CP3Point& x) -> ModelPoint { return detail::cp3::act_axes(x, t.theta, t.phi); },
                 [&](const S3S3Point& x) -> ModelPoint {
                   if (spec.t3) throw ArgumentError("act: the three-torus takes three angles (act_t3)");
                   Eigen::Vector2d th(t.theta, t.phi);
                   return detail::s3s3::act_axes(x, action_weights(spec).transpose() * th);
                 }},
      p);
}

ModelPoint act_effective(const TorusSpec& spec, const TorusElement& s, const ModelPoint& p) {
  if (spec.space == Space::flag) return act(spec, {s.theta / 3, s.theta / 3 - s.phi}, p);
  if (spec.space == Space::cp3) return act(spec, {s.theta / 2, s.phi + s.theta / 2}, p);
  return act(spec, s, p);
}

std::vector<Vec6> axis_generators(const ModelPoint& p) {
  return std::visit(overloaded{[](const S6Point& x) { return detail::s6::axis_gens(x); },
                               [](const FlagPoint& x) { return detail::flag::axis_gens(x); },
                               [](const CP3Point& x) { return detail::cp3::axis_gens(x); },
                               [](const S3S3Point& x) { return detail::s3s3::axis_gens(x); }},
                    p);
}

std::pair<Vec6, Vec6> generators(const TorusSpec& spec, const ModelPoint& p) {
  require_space(spec, p);
  if (spec.t3) throw ArgumentError("generators: the three-torus has three generators");
  auto g = axis_generators(p);
  Eigen::MatrixXd w = generator_weights(spec);
  return {combine(w.row(0), g), combine(w.row(1), g)};
}

std::pair<Vec6, Vec6> effective_generators(const TorusSpec& spec, const ModelPoint& p) {
  require_space(spec, p);
  if (spec.t3) throw ArgumentError("effective_generators: the three-torus has three generators");
  auto g = axis_generators(p);
  Eigen::MatrixXd w = effective_weights(spec);
  return {combine(w.row(0), g), combine(w.row(1), g)};
}

LocalFrame local_frame(const TorusSpec& spec, const ModelPoint& p) {
  auto [u, v] = generators(spec, p);
  return std::visit(overloaded{[&](const S6Point& x) { return detail::s6::local(x, u, v); },
                               [&](const FlagPoint& x) { return detail::flag::local(x, u, v); },
                               [&](const CP3Point& x) { return detail::cp3::local(x, u, v); },
                               [&](const S3S3Point& x) { return detail::s3s3::local(x, u, v); }},
                    p);
}

GramData gram(const TorusSpec& spec, const ModelPoint& p) {
  LocalFrame lf = local_frame(spec, p);
  GramData g;
  g.g_uu = lf.u.dot(lf.metric * lf.u);
  g.g_uv = lf.u.dot(lf.metric * lf.v);
  g.g_vv = lf.v.dot(lf.metric * lf.v);
  g.h2 = g.g_uu * g.g_vv - g.g_uv * g.g_uv;
  return g;
}

double nu(const TorusSpec& spec, const ModelPoint& p) {
  require_space(spec, p);
  return std::visit(overloaded{[](const S6Point& x) { return sphere_nu(x.x); },
                               [](const FlagPoint& x) { return flag_nu(x); },
                               [](const CP3Point& x) { return cp3_nu(x); },
                               [&](const S3S3Point& x) { return s3s3_nu(spec, x); }},
                    p);
}

double crit_residual_norm(const TorusSpec& spec, const ModelPoint& p) {
  require_space(spec, p);
  return std::visit(overloaded{[](const S6Point& x) { return detail::s6::crit_norm(x); },
                               [](const FlagPoint& x) { return detail::flag::crit_norm(x); },
                               [](const CP3Point& x) { return detail::cp3::crit_norm(x); },
                               [&](const S3S3Point& x) {
                                 double s = 0;
                                 for (double r : s3s3_crit_residual(spec, x)) s += r * r;
                                 return std::sqrt(s);
                               }},
                    p);
}

Eigen::VectorXd orbit_invariants(const TorusSpec& spec, const ModelPoint& p) {
  require_space(spec, p);
  return std::visit(overloaded{[](const S6Point& x) { return detail::s6::invariants(x); },
                               [](const FlagPoint& x) { return detail::flag::invariants(x); },
                               [](const CP3Point& x) { return detail::cp3::invariants(x); },
                               [](const S3S3Point& x) { return detail::s3s3::invariants(x); }},
                    p);
}

ModelPoint normal_form_zero(const TorusSpec& spec, const ModelPoint& p, double tol) {
  require_space(spec, p);
  validate(p);
  double v = nu(spec, p);
  if (std::abs(v) > tol) {
    std::ostringstream os;
    os << "normal_form_zero: |nu| = " << std::abs(v) << " exceeds tolerance " << tol;
    throw ArgumentError(os.str());
  }
  return std::visit(
      overloaded{[](const S6Point& x) -> ModelPoint { return detail::s6::normal_form(x); },
                 [](const FlagPoint& x) -> ModelPoint { return detail::flag::normal_form(x); },
                 [](const CP3Point& x) -> ModelPoint { return detail::cp3::normal_form(x); },
                 [&](const S3S3Point& x) -> ModelPoint {
                   return detail::s3s3::normal_form(x, action_weights(spec));
                 }},
      p);
}

}  // namespace nkmm
