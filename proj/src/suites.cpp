#include "nkmm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "nkmm/coframe.hpp"
#include "nkmm/errors.hpp"

namespace nkmm {

namespace {

std::string sci(double x, int prec = 3) {
  std::ostringstream os;
  os << std::setprecision(prec) << x;
  return os.str();
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

double max_coeff(const RealForm& f) {
  double m = 0;
  for (const auto& [k, c] : f.terms()) m = std::max(m, std::abs(c));
  return m;
}

void add(Report& r, std::string name, bool pass, std::string detail) {
  r.lines.push_back({std::move(name), pass, std::move(detail)});
  r.ok = r.ok && pass;
}

void exact_line(Report& r, const std::string& name, const ExactForm& residual) {
  add(r, name, residual.is_zero(),
      residual.is_zero() ? "exact residual 0" : std::to_string(residual.terms().size()) + " nonzero terms");
}

void structure_lines(Report& r, const CoframeAlgebra& alg, const StructureForms& f, bool exact) {
  add(r, "d^2 = 0 on " + alg.name(), true, "checked on all " + std::to_string(alg.dim()) + " generators");
  if (exact) {
    exact_line(r, "d sigma0 = 3 phi0", coframe_d(f.sigma0, alg) - QuadScalar(3) * f.phi0);
    exact_line(r, "d psi0 = -2 sigma0^sigma0", coframe_d(f.psi0, alg) + QuadScalar(2) * wedge(f.sigma0, f.sigma0));
    exact_line(r, "d phi0 = 0", coframe_d(f.phi0, alg));
    return;
  }
  const double tol = default_tolerances().float_forms;
  RealForm s = to_real(f.sigma0), ph = to_real(f.phi0), ps = to_real(f.psi0);
  double r1 = max_coeff(coframe_d(s, alg) - 3.0 * ph);
  double r2 = max_coeff(coframe_d(ps, alg) + 2.0 * wedge(s, s));
  double r3 = max_coeff(coframe_d(ph, alg));
  add(r, "d sigma0 = 3 phi0", r1 <= tol, "float residual " + sci(r1));
  add(r, "d psi0 = -2 sigma0^sigma0", r2 <= tol, "float residual " + sci(r2));
  add(r, "d phi0 = 0", r3 <= tol, "float residual " + sci(r3));
}

}  // namespace

const Tolerances& default_tolerances() {
  static const Tolerances t;
  return t;
}

std::string defaults_table(const SearchConfig& cfg) {
  const Tolerances& t = default_tolerances();
  std::ostringstream os;
  os << std::setprecision(6);
  os << "starts = " << cfg.n_starts << "\n"
     << "max_iter = " << cfg.max_iter << "\n"
     << "step0 = " << cfg.step0 << "\n"
     << "shrink = " << cfg.shrink << "\n"
     << "armijo = " << cfg.armijo << "\n"
     << "grad_tol = " << cfg.grad_tol << "\n"
     << "cluster_tol = " << cfg.cluster_tol << "\n"
     << "seed = " << cfg.seed << "\n"
     << "fd_step = " << t.fd_step << "\n"
     << "second_order_step = " << t.second_order_step << "\n"
     << "fd_rel_tol = " << t.fd_rel << "\n"
     << "invariance_tol = " << t.invariance << "\n"
     << "gap_floor = " << t.gap_floor << "\n"
     << "identity_tol = " << t.identity << "\n"
     << "zero_interior = " << t.zero_interior << "\n"
     << "float_forms_tol = " << t.float_forms << "\n"
     << "cross_law_tol = " << t.cross_law << "\n"
     << "graph_tol = " << t.graph << "\n"
     << "samples = 1000\n"
     << "samples_per_edge = 24\n";
  return os.str();
}

Report verify_suite(Space space, bool exact) {
  Report r;
  switch (space) {
    case Space::s6: {
      const G2Forms& g = g2_constants();
      exact_line(r, "*phi = hodge(phi)", g.star_phi - hodge7(g.phi));
      const LinearForm& sig = printed_sphere_sigma();
      LinearForm nphi = position_contract(g.phi);
      add(r, "<J.,.> = N -| phi", sig == nphi, sig == nphi ? "exact, all 7 coefficient forms" : "coefficient forms differ");
      exact_line(r, "d<J.,.> = 3 phi", linear_d(sig) - QuadScalar(3) * g.phi);
      exact_line(r, "d(N -| *phi) = 4 *phi", linear_d(position_contract(g.star_phi)) - QuadScalar(4) * g.star_phi);
      // Lagrange identity for the cross product
      std::mt19937_64 rng(7);
      std::normal_distribution<double> gauss;
      double worst = 0;
      const int pairs = 10000;
      for (int k = 0; k < pairs; ++k) {
        Vec7 x, y;
        for (int i = 0; i < 7; ++i) x[i] = gauss(rng), y[i] = gauss(rng);
        double lhs = cross(x, y).squaredNorm();
        double rhs = x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2);
        worst = std::max(worst, std::abs(lhs - rhs) / (x.squaredNorm() * y.squaredNorm()));
      }
      add(r, "|P(X,Y)|^2 = |X|^2|Y|^2 - <X,Y>^2", worst < default_tolerances().cross_law,
          std::to_string(pairs) + " pairs, worst relative " + sci(worst));
      break;
    }
    case Space::flag: structure_lines(r, CoframeAlgebra::flag(), flag_structure(), exact); break;
    case Space::cp3: structure_lines(r, CoframeAlgebra::sp2(), cp3_structure(), exact); break;
    case Space::s3s3: structure_lines(r, CoframeAlgebra::su2_squared(), s3s3_structure(), exact); break;
  }
  return r;
}

Report invariants_suite(const TorusSpec& spec, const InvariantConfig& cfg) {
  if (spec.t3) throw ArgumentError("invariants: needs a two-torus");
  if (cfg.samples < 1 || cfg.fd_samples < 0) throw ArgumentError("invariants: sample counts must be positive");
  const Tolerances& tol = default_tolerances();
  std::mt19937_64 rng(splitmix64(cfg.seed));
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  double w_inv = 0, w_gap = std::numeric_limits<double>::infinity(), w_id = 0, w_fd = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  int n_fd = 0;
  for (int k = 0; k < cfg.samples; ++k) {
    ModelPoint p = random_point(spec.space, rng);
    double v = nu(spec, p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ModelPoint q = act(spec, {angle(rng), angle(rng)}, p);
    w_inv = std::max(w_inv, std::abs(nu(spec, q) - v));
    GapResult g = criticality_gap(spec, p);
    w_gap = std::min(w_gap, g.gap);
    w_id = std::max(w_id, g.identity_residual);
    if (n_fd < cfg.fd_samples) {
      ++n_fd;
      Vec6 a = riemannian_grad(spec, p);
      Mat6 m = local_frame(spec, p).metric;
      Vec6 b = m.ldlt().solve(fd_differential(spec, p, tol.fd_step));
      w_fd = std::max(w_fd, (a - b).norm() / std::max(a.norm(), 1e-8));
    }
  }
  Report r;
  std::string n = std::to_string(cfg.samples);
  add(r, "torus invariance", w_inv < tol.invariance, n + " samples, worst " + sci(w_inv));
  add(r, "h^2 - nu^2 >= 0", w_gap >= tol.gap_floor, n + " samples, smallest " + sci(w_gap));
  add(r, "|grad nu|^2 = 9 (h^2 - nu^2)", w_id <= tol.identity, n + " samples, worst " + sci(w_id));
  add(r, "gradient vs finite differences", w_fd < tol.fd_rel,
      std::to_string(n_fd) + " samples, worst relative " + sci(w_fd));
  add(r, "zero interior to the image", lo < -tol.zero_interior && hi > tol.zero_interior,
      "sampled range [" + num(lo) + ", " + num(hi) + "]");
  return r;
}

FlagAudit flag_audit(const SearchResult& r) {
  FlagPoint target = flag_extremal_matrix();
  FlagAudit a;
  a.formula = flag_nu(target);
  a.ratio_claimed = std::abs(a.formula) / (std::sqrt(3.0) / 2);
  const CriticalRecord* best = nullptr;
  for (const auto& rec : r.records) {
    if (!std::holds_alternative<FlagPoint>(rec.point)) continue;
    if (std::abs(rec.value - a.formula) > 1e-6) continue;
    if (!best || std::abs(rec.value - a.formula) < std::abs(best->value - a.formula)) best = &rec;
  }
  if (!best) throw ArgumentError("flag audit: no record at the value of the printed matrix");
  a.found = best->value;
  a.alignment = flag_torus_alignment(std::get<FlagPoint>(best->point), target);
  return a;
}

std::string extrema_report(const TorusSpec& spec, const SearchResult& r) {
  std::ostringstream os;
  std::string b;
  if (spec.space == Space::s3s3) {
    IVec3 bb = spec.b();
    b = " b=(" + std::to_string(bb[0]) + "," + std::to_string(bb[1]) + "," + std::to_string(bb[2]) + ")";
  }
  os << "# " << spec.describe() << ", runs " << r.runs << ", dropped " << r.dropped << ", records "
     << r.records.size() << "\n";
  for (const auto& c : r.records) {
    os << "record space=" << space_name(spec.space) << b << " value=" << num(c.value)
       << " grad_norm=" << sci(c.grad_norm) << " gap=" << sci(c.gap) << " class=" << to_string(c.second_order)
       << " dependence=" << to_string(c.dependence) << " stabilizer=" << c.stabilizer_dim
       << " multiplicity=" << c.multiplicity << " point=";
    auto f = to_flat(c.point);
    for (std::size_t k = 0; k < f.size(); ++k) os << (k ? "," : "") << num(f[k]);
    os << "\n";
  }
  if (spec.space == Space::s3s3 && !spec.t3) {
    IVec3 bb = spec.b();
    auto crit = s3s3_classify_critical(Eigen::Vector3d(bb[0], bb[1], bb[2]));
    std::vector<double> values;
    for (const auto& d : crit)
      if (values.empty() || std::abs(d.value - values.back()) > 1e-9) values.push_back(d.value);
    for (const auto& d : crit) os << "closed-form value=" << num(d.value) << " family=" << d.relation << "\n";
    for (double v : values) {
      bool hit = std::any_of(r.records.begin(), r.records.end(),
                             [&](const CriticalRecord& c) { return std::abs(c.value - v) <= 1e-6; });
      os << (hit ? "match " : "missing ") << num(v) << "\n";
    }
    for (const auto& c : r.records) {
      bool hit = std::any_of(values.begin(), values.end(), [&](double v) { return std::abs(c.value - v) <= 1e-6; });
      if (!hit) os << "unexpected " << num(c.value) << "\n";
    }
  }
  if (spec.space == Space::flag) {
    try {
      FlagAudit a = flag_audit(r);
      os << "audit printed-matrix nu=" << num(a.formula) << " found=" << num(a.found)
         << " alignment=" << sci(a.alignment) << " ratio-to-claimed-sqrt3/2=" << num(a.ratio_claimed) << "\n";
    } catch (const ArgumentError& e) {
      os << "audit " << e.what() << "\n";
    }
  }
  return os.str();
}

}  // namespace nkmm
