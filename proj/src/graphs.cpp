#include "nkmm/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nkmm/critic.hpp"
#include "nkmm/errors.hpp"

namespace nkmm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long kGrid = 27720;  // lcm(1..12)

Mat6 metric_of(const ModelPoint& p) { return local_frame(TorusSpec::standard(space_of(p)), p).metric; }

// first clearly nonzero entry positive
void sign_normalize(Eigen::VectorXd& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (std::abs(v[k]) > 1e-6) {
      if (v[k] < 0) v = -v;
      return;
    }
}

ModelPoint act_any(const TorusSpec& spec, const Eigen::VectorXd& s, const ModelPoint& p) {
  if (spec.t3) return act_t3(Eigen::Vector3d(s[0], s[1], s[2]), p);
  return act_effective(spec, {s[0], s[1]}, p);
}

// number of distinct torus elements of order <= max_order fixing p
int count_fixing(const TorusSpec& spec, const ModelPoint& p, int max_order) {
  std::set<std::pair<long, long>> seen;
  int n = 0;
  for (int k = 1; k <= max_order; ++k)
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        std::pair<long, long> key{a * (kGrid / k), b * (kGrid / k)};
        if (!seen.insert(key).second) continue;
        Eigen::VectorXd s(2);
        s << 2 * kPi * a / k, 2 * kPi * b / k;
        if (same_point(act_any(spec, s, p), p, 1e-8)) ++n;
      }
  return n;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// ---- catalogs -----------------------------------------------------------

struct Family {
  std::string label, family;
  std::function<ModelPoint(double)> at;
  double lo, hi;
  bool closed = false;  // circle: samples cover [lo, hi)
  Eigen::VectorXd direction;
};

ModelPoint s6_point(int axis, double s) {
  Vec7 x = Vec7::Zero();
  x[axis] = std::sin(s);
  x[6] = std::cos(s);
  return S6Point{x};
}

Eigen::Vector3cd unit(int i) {
  Eigen::Vector3cd e = Eigen::Vector3cd::Zero();
  e[i] = 1;
  return e;
}

ModelPoint flag_from_columns(const Eigen::Vector3cd& c1, const Eigen::Vector3cd& c2, const Eigen::Vector3cd& c3) {
  Eigen::Matrix3cd m;
  m.col(0) = c1;
  m.col(1) = c2;
  m.col(2) = c3;
  cplx d = m.determinant();
  m.col(2) *= std::conj(d) / std::abs(d);
  return FlagPoint{m};
}

// z = cos t F_i + sin t F_j and its orthogonal partner in span{F_i, F_j}
std::pair<Eigen::Vector3cd, Eigen::Vector3cd> flag_z(int i, int j, double t) {
  return {std::cos(t) * unit(i) + std::sin(t) * unit(j), -std::sin(t) * unit(i) + std::cos(t) * unit(j)};
}

ModelPoint cp3_point(Quaternion a, Quaternion b, Quaternion c, Quaternion d) { return CP3Point{QMat2{a, b, c, d}}; }

std::vector<GraphVertex> catalog_vertices(const TorusSpec& spec) {
  std::vector<GraphVertex> v;
  switch (spec.space) {
    case Space::s6: {
      Vec7 n = Vec7::Zero();
      n[6] = 1;
      v.push_back({"N", S6Point{n}, {}});
      v.push_back({"S", S6Point{-n}, {}});
      break;
    }
    case Space::flag: {
      // A_{a,bc}: line F_a inside the plane F_b + F_c
      const int tab[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
      const char* names[6] = {"A1,12", "A1,13", "A2,12", "A2,23", "A3,13", "A3,23"};
      for (int k = 0; k < 6; ++k)
        v.push_back({names[k], flag_from_columns(unit(tab[k][0]), unit(tab[k][1]), unit(tab[k][2])), {}});
      break;
    }
    case Space::cp3: {
      Quaternion o = Quaternion::one(), z{0, 0, 0, 0}, j = Quaternion::j();
      v.push_back({"[1:0:0:0]", cp3_point(o, z, z, o), {}});
      v.push_back({"[0:1:0:0]", cp3_point(z, o, o, z), {}});
      v.push_back({"[0:0:1:0]", cp3_point(j, z, z, o), {}});
      v.push_back({"[0:0:0:1]", cp3_point(z, o, j, z), {}});
      break;
    }
    case Space::s3s3: {
      if (!spec.t3) break;
      Quaternion o = Quaternion::one(), j = Quaternion::j();
      v.push_back({"(1,1)", S3S3Point{o, o}, {}});
      v.push_back({"(1,j)", S3S3Point{o, j}, {}});
      v.push_back({"(j,j)", S3S3Point{j, j}, {}});
      v.push_back({"(j,1)", S3S3Point{j, o}, {}});
      break;
    }
  }
  return v;
}

std::vector<Family> catalog_families(const TorusSpec& spec) {
  std::vector<Family> f;
  switch (spec.space) {
    case Space::s6: {
      const int axes[3] = {0, 4, 3};
      const char* z[3] = {"z1", "z2", "z3"};
      for (int k = 0; k < 3; ++k) {
        int ax = axes[k];
        f.push_back({"sphere" + std::to_string(k + 1), std::string("t^2 + |") + z[k] + "|^2 = 1",
                     [ax](double s) { return s6_point(ax, s); }, 0, kPi});
      }
      break;
    }
    case Space::flag: {
      // columns of each edge as functions of (z, zperp)
      struct Row {
        const char* label;
        int i, j, fixed;  // z in span{F_i, F_j}, F_fixed the remaining vector
        int order;        // 0: z zp F, 1: z F zp, 2: F z zp
      };
      const Row rows[9] = {{"a1", 0, 1, 2, 0}, {"a2", 0, 1, 2, 1}, {"a3", 0, 1, 2, 2},
                           {"a4", 0, 2, 1, 0}, {"a5", 0, 2, 1, 2}, {"a6", 0, 2, 1, 1},
                           {"a7", 1, 2, 0, 2}, {"a8", 1, 2, 0, 0}, {"a9", 1, 2, 0, 1}};
      const char* desc[3] = {"(C z, C z + C z')", "(C z, C F + C z)", "(C F, C z + C F)"};
      for (const Row& r : rows) {
        f.push_back({r.label,
                     std::string(desc[r.order]) + ", z in span{F" + std::to_string(r.i + 1) + ",F" +
                         std::to_string(r.j + 1) + "}",
                     [r](double t) {
                       auto [z, zp] = flag_z(r.i, r.j, t);
                       Eigen::Vector3cd F = unit(r.fixed);
                       if (r.order == 0) return flag_from_columns(z, zp, F);
                       if (r.order == 1) return flag_from_columns(z, F, zp);
                       return flag_from_columns(F, z, zp);
                     },
                     0, kPi / 2});
      }
      break;
    }
    case Space::cp3: {
      auto q = [](double w, double y) { return Quaternion{w, 0, y, 0}; };
      Quaternion o = Quaternion::one(), z{0, 0, 0, 0};
      f.push_back({"e12", "[z1:z2:0:0]",
                   [=](double t) { return cp3_point(q(std::cos(t), 0), q(-std::sin(t), 0), q(std::sin(t), 0), q(std::cos(t), 0)); },
                   0, kPi / 2});
      f.push_back({"e13", "[z1:0:z3:0]",
                   [=](double t) { return cp3_point(q(std::cos(t), std::sin(t)), z, z, o); }, 0, kPi / 2});
      f.push_back({"e14", "[z1:0:0:z4]",
                   [=](double t) { return cp3_point(q(std::cos(t), 0), q(0, std::sin(t)), q(0, std::sin(t)), q(std::cos(t), 0)); },
                   0, kPi / 2});
      f.push_back({"e23", "[0:z2:z3:0]",
                   [=](double t) { return cp3_point(q(0, std::sin(t)), q(std::cos(t), 0), q(std::cos(t), 0), q(0, std::sin(t))); },
                   0, kPi / 2});
      f.push_back({"e24", "[0:z2:0:z4]",
                   [=](double t) { return cp3_point(z, o, q(std::cos(t), std::sin(t)), z); }, 0, kPi / 2});
      f.push_back({"e34", "[0:0:z3:z4]",
                   [=](double t) { return cp3_point(q(0, std::cos(t)), q(-std::sin(t), 0), q(0, std::sin(t)), q(std::cos(t), 0)); },
                   0, kPi / 2});
      break;
    }
    case Space::s3s3: {
      if (spec.t3) break;
      Quaternion o = Quaternion::one(), j = Quaternion::j();
      struct C {
        const char* label;
        Eigen::Vector3d c;
        Quaternion p, q;
      };
      const C circles[4] = {{"c(r,r,r)", {1, 1, 1}, o, o},
                            {"c(r,1/r,r)", {1, -1, 1}, o, j},
                            {"c(r,r,1/r)", {1, 1, -1}, j, j},
                            {"c(r,1/r,1/r)", {1, -1, -1}, j, o}};
      Eigen::MatrixXd w = action_weights(spec);  // 2x3
      IVec3 b = spec.b();
      for (const C& c : circles) {
        if (b[0] * c.c[0] + b[1] * c.c[1] + b[2] * c.c[2] != 0) continue;
        // effective parameters s with w^T s = c
        Eigen::VectorXd s = (w * w.transpose()).ldlt().solve(w * c.c);
        s.normalize();
        sign_normalize(s);
        Quaternion bp = c.p, bq = c.q;
        Family fam{c.label, "(e^{i t} p0, q0), isotropy " + std::string(c.label + 1),
                   [bp, bq](double t) {
                     return ModelPoint(S3S3Point{Quaternion{std::cos(t), std::sin(t), 0, 0} * bp, bq});
                   },
                   0, 2 * kPi, true, s};
        f.push_back(fam);
      }
      break;
    }
  }
  return f;
}

std::string match_vertex(const std::vector<GraphVertex>& vs, const ModelPoint& p) {
  for (const auto& v : vs)
    if (same_point(v.point, p, 1e-9)) return v.label;
  throw std::logic_error("catalog edge limit matches no vertex");
}

}  // namespace

std::vector<Vec6> effective_generator_list(const TorusSpec& spec, const ModelPoint& p) {
  if (spec.t3) {
    if (space_of(p) != Space::s3s3) throw ArgumentError("three-torus needs an S3xS3 point");
    return axis_generators(p);
  }
  auto [u, v] = effective_generators(spec, p);
  return {u, v};
}

bool same_point(const ModelPoint& p, const ModelPoint& q, double tol) {
  if (p.index() != q.index()) return false;
  if (auto a = std::get_if<S6Point>(&p)) return (a->x - std::get<S6Point>(q).x).norm() <= tol;
  if (auto a = std::get_if<S3S3Point>(&p)) {
    const auto& b = std::get<S3S3Point>(q);
    return (a->p - b.p).norm() + (a->q - b.q).norm() <= tol;
  }
  if (auto a = std::get_if<FlagPoint>(&p)) {
    Eigen::Matrix3cd r = a->m.adjoint() * std::get<FlagPoint>(q).m;
    double off = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) off += std::norm(r(i, j));
    return std::sqrt(off) <= tol;
  }
  const auto& a = std::get<CP3Point>(p);
  QMat2 r = qmul(qadjoint(a.m), std::get<CP3Point>(q).m);
  double off = r[1].norm() + r[2].norm() + std::hypot(r[0].y, r[0].z);
  return off <= tol;
}

double orbit_distance(const TorusSpec& spec, const ModelPoint& p, const ModelPoint& q) {
  if (p.index() != q.index()) throw ArgumentError("orbit_distance: points on different spaces");
  if (auto a = std::get_if<FlagPoint>(&p)) return (a->m.cwiseAbs() - std::get<FlagPoint>(q).m.cwiseAbs()).norm();
  if (auto a = std::get_if<CP3Point>(&p)) {
    // moduli of the homogeneous coordinates
    auto h = [](const CP3Point& x) {
      Eigen::Vector4d r(std::abs(x.m[0].c1()), std::abs(x.m[2].c1()), std::abs(x.m[0].c2()), std::abs(x.m[2].c2()));
      return r;
    };
    return (h(*a) - h(std::get<CP3Point>(q))).norm();
  }
  if (spec.t3 || space_of(p) == Space::s3s3) {
    TorusSpec s = TorusSpec::standard(Space::s3s3);
    return (orbit_invariants(s, p) - orbit_invariants(s, q)).norm();
  }
  return (orbit_invariants(spec, p) - orbit_invariants(spec, q)).norm();
}

StabilizerRecord stabilizer(const TorusSpec& spec, const ModelPoint& p, double tol, int max_order) {
  if (!(tol > 0)) throw ArgumentError("stabilizer: tol must be positive");
  validate(p);
  auto gens = effective_generator_list(spec, p);
  Mat6 g = metric_of(p);
  Eigen::LLT<Mat6> llt(g);
  Eigen::MatrixXd m(6, gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) m.col(k) = llt.matrixU() * gens[k];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  StabilizerRecord r;
  r.singular_values = svd.singularValues();
  for (Eigen::Index k = 0; k < r.singular_values.size(); ++k) {
    double s = r.singular_values[k];
    if (s >= tol / 10 && s <= tol * 10) {
      std::ostringstream os;
      os << "stabilizer: singular value " << s << " within a factor 10 of tol " << tol;
      throw IndeterminateError(os.str());
    }
    if (s <= tol) ++r.dim;
  }
  int n = static_cast<int>(gens.size());
  if (r.dim == 1) {
    r.direction = svd.matrixV().col(n - 1);
    sign_normalize(r.direction);
  }
  // discrete part only for free orbits of a two-torus
  if (r.dim == 0 && !spec.t3 && max_order >= 2) {
    static thread_local std::map<std::string, int> kernel;
    std::string key = spec.describe() + "|" + std::to_string(max_order);
    auto it = kernel.find(key);
    if (it == kernel.end()) {
      std::mt19937_64 rng(0x6e6e);
      it = kernel.emplace(key, count_fixing(spec, random_point(spec.space, rng), max_order)).first;
    }
    r.finite_order = std::max(1, count_fixing(spec, p, max_order) / it->second);
  }
  return r;
}

OrbitGraph build_graph(const TorusSpec& spec, int samples_per_edge) {
  if (samples_per_edge < 1) throw ArgumentError("build_graph: samples_per_edge must be positive");
  if (spec.space == Space::s3s3 && !spec.t3) {
    IVec3 b = spec.b();
    if (b[0] == 0 && b[1] == 0 && b[2] == 0) throw ArgumentError("build_graph: degenerate torus");
  }
  OrbitGraph g;
  g.spec = spec;
  g.vertices = catalog_vertices(spec);
  for (auto& v : g.vertices) v.stab = stabilizer(spec, v.point, 1e-8);
  for (const Family& f : catalog_families(spec)) {
    GraphEdge e;
    e.label = f.label;
    e.family = f.family;
    e.direction = f.direction;
    for (int k = 0; k < samples_per_edge; ++k) {
      double t = f.closed ? f.lo + (f.hi - f.lo) * k / samples_per_edge
                          : f.lo + (f.hi - f.lo) * (k + 0.5) / samples_per_edge;
      e.samples.push_back(f.at(t));
    }
    if (f.closed) {
      g.circles.push_back(std::move(e));
    } else {
      e.from = match_vertex(g.vertices, f.at(f.lo));
      e.to = match_vertex(g.vertices, f.at(f.hi));
      g.edges.push_back(std::move(e));
    }
  }
  auto by_label = [](const auto& a, const auto& b) { return a.label < b.label; };
  std::sort(g.vertices.begin(), g.vertices.end(), by_label);
  std::sort(g.edges.begin(), g.edges.end(), by_label);
  std::sort(g.circles.begin(), g.circles.end(), by_label);
  return g;
}

std::vector<std::pair<std::string, int>> vertex_degrees(const OrbitGraph& g) {
  std::map<std::string, int> d;
  for (const auto& v : g.vertices) d[v.label] = 0;
  for (const auto& e : g.edges) {
    ++d[e.from];
    ++d[e.to];
  }
  return {d.begin(), d.end()};
}

std::string GraphReport::text() const {
  std::ostringstream os;
  for (const auto& l : lines) os << (l.pass ? "PASS " : "FAIL ") << l.name << ": " << l.detail << "\n";
  long bad = std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return !l.pass; });
  if (ok) os << "result: pass (" << lines.size() << " checks)\n";
  else os << "result: FAIL (" << bad << " of " << lines.size() << " checks)\n";
  return os.str();
}

GraphReport verify_graph(const TorusSpec& spec, const OrbitGraph& g, double tol) {
  GraphReport rep;
  auto add = [&](std::string name, bool pass, std::string detail) {
    rep.lines.push_back({std::move(name), pass, std::move(detail)});
    rep.ok = rep.ok && pass;
  };
  const int vdim = spec.t3 ? 1 : 2;
  for (const auto& v : g.vertices) {
    int dim = -1;
    try {
      dim = stabilizer(spec, v.point, tol, 1).dim;
    } catch (const IndeterminateError&) {
    }
    double gen = 0;
    if (!spec.t3) {
      auto [u, w] = effective_generators(spec, v.point);
      gen = u.norm() + w.norm();
    }
    bool pass = dim == vdim && gen <= std::max(tol, 1e-10);
    add("vertex " + v.label, pass, "stabilizer dim " + std::to_string(dim) + ", |U|+|V| = " + fmt(gen));
  }
  auto check_family = [&](const GraphEdge& e, const char* kind) {
    int n = static_cast<int>(e.samples.size());
    int bad_dim = 0, bad_dep = 0;
    double worst_nu = 0, worst_res = 0, worst_dir = 0;
    Eigen::VectorXd first;
    for (const auto& p : e.samples) {
      StabilizerRecord s;
      try {
        s = stabilizer(spec, p, tol, 1);
      } catch (const IndeterminateError&) {
        s.dim = -1;
      }
      if (s.dim != 1) {
        ++bad_dim;
        continue;
      }
      if (first.size() == 0) first = e.direction.size() ? e.direction : s.direction;
      worst_dir = std::max(worst_dir, (s.direction - first).norm());
      if (!spec.t3) {
        worst_nu = std::max(worst_nu, std::abs(nu(spec, p)));
        worst_res = std::max(worst_res, crit_residual_norm(spec, p));
        if (dependence_type(spec, p, tol) != Dependence::real) ++bad_dep;
      }
    }
    bool pass = n >= kMinSamples && bad_dim == 0 && bad_dep == 0 && worst_nu <= tol && worst_res <= tol && worst_dir <= 1e-6;
    std::ostringstream os;
    os << n << " samples (min " << kMinSamples << "), dim-1 failures " << bad_dim << ", max |nu| " << fmt(worst_nu) << ", max residual "
       << fmt(worst_res) << ", non-real " << bad_dep << ", direction drift " << fmt(worst_dir);
    add(std::string(kind) + " " + e.label, pass, os.str());
  };
  for (const auto& e : g.edges) check_family(e, "edge");
  for (const auto& c : g.circles) check_family(c, "circle");

  std::set<std::string> labels;
  for (const auto& v : g.vertices) labels.insert(v.label);
  for (const auto& e : g.edges) {
    bool ok = labels.count(e.from) && labels.count(e.to);
    add("ends " + e.label, ok, e.from + " -- " + e.to);
  }

  std::size_t want_v = 0, want_e = 0, want_c = 0;
  bool trivalent = false;
  switch (spec.space) {
    case Space::s6: want_v = 2, want_e = 3, trivalent = true; break;
    case Space::flag: want_v = 6, want_e = 9, trivalent = true; break;
    case Space::cp3: want_v = 4, want_e = 6, trivalent = true; break;
    case Space::s3s3:
      if (spec.t3) {
        want_v = 4;
      } else {
        IVec3 b = spec.b();
        const int cs[4][3] = {{1, 1, 1}, {1, -1, 1}, {1, 1, -1}, {1, -1, -1}};
        for (const auto& c : cs) want_c += (b[0] * c[0] + b[1] * c[1] + b[2] * c[2] == 0);
      }
      break;
  }
  std::ostringstream cnt;
  cnt << g.vertices.size() << " vertices, " << g.edges.size() << " edges, " << g.circles.size()
      << " circles (expected " << want_v << ", " << want_e << ", " << want_c << ")";
  add("counts", g.vertices.size() == want_v && g.edges.size() == want_e && g.circles.size() == want_c, cnt.str());
  if (trivalent) {
    for (const auto& [label, d] : vertex_degrees(g)) add("degree " + label, d == 3, std::to_string(d));
  }

  std::vector<const GraphEdge*> all;
  for (const auto& e : g.edges) all.push_back(&e);
  for (const auto& c : g.circles) all.push_back(&c);
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      double m = std::numeric_limits<double>::infinity();
      for (const auto& p : all[a]->samples)
        for (const auto& q : all[b]->samples) m = std::min(m, orbit_distance(spec, p, q));
      add("disjoint " + all[a]->label + " " + all[b]->label, m > 10 * tol, "min distance " + fmt(m));
    }
  return rep;
}

GraphFormat parse_graph_format(std::string_view s) {
  if (s == "dot") return GraphFormat::dot;
  if (s == "json") return GraphFormat::json;
  throw ArgumentError("unknown graph format '" + std::string(s) + "' (dot, json)");
}

std::string export_graph(const OrbitGraph& g, GraphFormat format) {
  if (format == GraphFormat::json) {
    nlohmann::ordered_json j;
    j["space"] = std::string(space_name(g.spec.space));
    j["torus"] = g.spec.describe();
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : g.vertices) {
      nlohmann::ordered_json o;
      o["label"] = v.label;
      o["stabilizer_dim"] = v.stab.dim;
      o["point"] = to_flat(v.point);
      vs.push_back(o);
    }
    j["vertices"] = vs;
    auto es = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) {
      nlohmann::ordered_json o;
      o["label"] = e.label;
      o["from"] = e.from;
      o["to"] = e.to;
      o["family"] = e.family;
      o["samples"] = e.samples.size();
      es.push_back(o);
    }
    j["edges"] = es;
    auto cs = nlohmann::ordered_json::array();
    for (const auto& c : g.circles) {
      nlohmann::ordered_json o;
      o["label"] = c.label;
      o["family"] = c.family;
      o["samples"] = c.samples.size();
      o["direction"] = std::vector<double>(c.direction.data(), c.direction.data() + c.direction.size());
      cs.push_back(o);
    }
    j["circles"] = cs;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "graph \"" << space_name(g.spec.space) << "\" {\n";
  os << "  label=\"" << g.spec.describe() << "\";\n";
  for (const auto& v : g.vertices) os << "  \"" << v.label << "\";\n";
  for (const auto& c : g.circles) os << "  \"" << c.label << "\" [shape=circle];\n";
  for (const auto& e : g.edges) os << "  \"" << e.from << "\" -- \"" << e.to << "\" [label=\"" << e.label << "\"];\n";
  for (const auto& c : g.circles) os << "  \"" << c.label << "\" -- \"" << c.label << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace nkmm
