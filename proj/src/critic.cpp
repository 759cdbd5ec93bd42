#include "nkmm/critic.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <thread>

#include "nkmm/errors.hpp"
#include "nkmm/graphs.hpp"

namespace nkmm {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double metric_norm(const Mat6& g, const Vec6& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

Mat6 metric_at(const TorusSpec& spec, const ModelPoint& p) { return local_frame(spec, p).metric; }

// squared metric norm of grad nu, i.e. 9 (h^2 - nu^2) up to rounding
double grad_sq(const TorusSpec& spec, const ModelPoint& p) {
  LocalFrame lf = local_frame(spec, p);
  Vec6 g = lf.metric.ldlt().solve(lf.dnu);
  return g.dot(lf.metric * g);
}

enum class Phase { ascent, descent, gap };

struct Candidate {
  CriticalRecord rec;
  int start = 0;
  int phase = 0;
};

// one steepest-descent run; nullopt when it does not reach grad_tol
std::optional<ModelPoint> run_phase(const TorusSpec& spec, const SearchConfig& cfg, ModelPoint p, Phase ph) {
  auto objective = [&](const ModelPoint& x) {
    switch (ph) {
      case Phase::ascent: return -nu(spec, x);
      case Phase::descent: return nu(spec, x);
      case Phase::gap: return grad_sq(spec, x);
    }
    return 0.0;
  };
  // differential of the objective in the frame
  auto differential = [&](const ModelPoint& x) -> Vec6 {
    if (ph == Phase::ascent) return -local_frame(spec, x).dnu;
    if (ph == Phase::descent) return local_frame(spec, x).dnu;
    const double h = 1e-5;
    Vec6 d;
    for (int k = 0; k < 6; ++k) {
      Vec6 e = Vec6::Zero();
      e[k] = 1;
      d[k] = (grad_sq(spec, move(x, e, h)) - grad_sq(spec, move(x, e, -h))) / (2 * h);
    }
    return d;
  };
  double t = cfg.step0;
  double f = objective(p);
  for (int it = 0; it < cfg.max_iter; ++it) {
    double gn = grad_norm(spec, p);
    if (gn <= cfg.grad_tol) return p;
    Mat6 g = metric_at(spec, p);
    Vec6 c = differential(p);
    Vec6 d = -g.ldlt().solve(c);
    double slope = c.dot(d);  // negative
    if (!(slope < 0)) return std::nullopt;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      ModelPoint q = move(p, d, t);
      double fq = objective(q);
      double delta = f - fq;  // decrease
      // below the rounding floor of the objective only a smaller gradient counts as progress
      double floor = 16 * kEps * (1 + std::abs(f));
      bool armijo = delta > floor && delta >= -cfg.armijo * t * slope;
      bool noise = std::abs(delta) <= floor && grad_norm(spec, q) < gn;
      if (armijo || noise) {
        p = q;
        f = fq;
        accepted = true;
        t = std::min(t / cfg.shrink, 1e3);
        break;
      }
      t *= cfg.shrink;
    }
    if (!accepted) return grad_norm(spec, p) <= cfg.grad_tol ? std::optional<ModelPoint>(p) : std::nullopt;
  }
  return grad_norm(spec, p) <= cfg.grad_tol ? std::optional<ModelPoint>(p) : std::nullopt;
}

CriticalRecord make_record(const TorusSpec& spec, const ModelPoint& p, std::uint64_t seed) {
  CriticalRecord r;
  r.point = p;
  r.value = nu(spec, p);
  r.grad_norm = grad_norm(spec, p);
  r.gap = criticality_gap(spec, p).gap;
  r.second_order = second_order_classify(spec, p, 1e-3, 16, seed);
  r.dependence = dependence_type(spec, p, 1e-6);
  try {
    r.stabilizer_dim = stabilizer(spec, p, 1e-6, 1).dim;
  } catch (const IndeterminateError&) {
    r.stabilizer_dim = -1;
  }
  return r;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int thread_count(int requested) {
  if (requested > 0) return std::min(requested, 256);
  if (const char* env = std::getenv("NKM_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min(n, 256L));
  }
  return 1;
}

void SearchConfig::validate() const {
  if (n_starts < 1) throw ArgumentError("n_starts must be at least 1");
  if (max_iter < 1) throw ArgumentError("max_iter must be at least 1");
  if (!(shrink > 0 && shrink < 1)) throw ArgumentError("shrink must lie in (0,1)");
  if (!(step0 > 0) || !(grad_tol > 0) || !(cluster_tol > 0) || !(armijo > 0 && armijo < 1))
    throw ArgumentError("step and tolerances must be positive");
}

std::string_view to_string(SecondOrder s) {
  switch (s) {
    case SecondOrder::max: return "max";
    case SecondOrder::min: return "min";
    case SecondOrder::saddle: return "saddle";
    case SecondOrder::degenerate: return "degenerate";
  }
  return "?";
}

std::string_view to_string(Dependence d) {
  switch (d) {
    case Dependence::real: return "real";
    case Dependence::complex: return "complex";
    case Dependence::independent: return "independent";
  }
  return "?";
}

Vec6 riemannian_grad(const TorusSpec& spec, const ModelPoint& p) {
  LocalFrame lf = local_frame(spec, p);
  return lf.metric.ldlt().solve(lf.dnu);
}

double grad_norm(const TorusSpec& spec, const ModelPoint& p) {
  LocalFrame lf = local_frame(spec, p);
  return metric_norm(lf.metric, lf.metric.ldlt().solve(lf.dnu));
}

Vec6 fd_differential(const TorusSpec& spec, const ModelPoint& p, double h) {
  Vec6 d;
  for (int k = 0; k < 6; ++k) {
    Vec6 e = Vec6::Zero();
    e[k] = 1;
    d[k] = (nu(spec, move(p, e, h)) - nu(spec, move(p, e, -h))) / (2 * h);
  }
  return d;
}

GapResult criticality_gap(const TorusSpec& spec, const ModelPoint& p) {
  GramData g = gram(spec, p);
  double v = nu(spec, p);
  GapResult r;
  r.gap = g.h2 - v * v;
  double gn = grad_norm(spec, p);
  r.identity_residual = std::abs(gn * gn - 9 * r.gap) / (1 + 9 * std::abs(r.gap));
  return r;
}

Dependence dependence_type(const TorusSpec& spec, const ModelPoint& p, double tol) {
  LocalFrame lf = local_frame(spec, p);
  GramData g = gram(spec, p);
  Eigen::Matrix2d m;
  m << g.g_uu, g.g_uv, g.g_uv, g.g_vv;
  double smin = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m).eigenvalues()[0];
  if (smin <= tol) return Dependence::real;
  // distance from V to span{U, JU}
  Vec6 ju = lf.J * lf.u;
  double a = lf.v.dot(lf.metric * lf.u), b = lf.v.dot(lf.metric * ju);
  double res2 = g.g_vv - (a * a + b * b) / g.g_uu;
  return std::sqrt(std::max(0.0, res2)) <= tol ? Dependence::complex : Dependence::independent;
}

SecondOrder second_order_classify(const TorusSpec& spec, const ModelPoint& p, double h, int directions,
                                  std::uint64_t seed) {
  if (directions < 12) throw ArgumentError("second_order_classify: at least 12 directions");
  if (!(h > 0)) throw ArgumentError("second_order_classify: step must be positive");
  std::mt19937_64 rng(splitmix64(seed));
  std::normal_distribution<double> gauss;
  Mat6 g = metric_at(spec, p);
  double v0 = nu(spec, p);
  double floor = 10 * 4 * kEps * (1 + std::abs(v0)) / (h * h);
  int pos = 0, neg = 0, flat = 0;
  for (int k = 0; k < directions; ++k) {
    Vec6 d;
    for (int i = 0; i < 6; ++i) d[i] = gauss(rng);
    d /= metric_norm(g, d);
    double second = (nu(spec, move(p, d, h)) - 2 * v0 + nu(spec, move(p, d, -h))) / (h * h);
    if (std::abs(second) < floor) ++flat;
    else if (second > 0) ++pos;
    else ++neg;
  }
  if (pos > 0 && neg > 0) return SecondOrder::saddle;
  if (flat > 0) return SecondOrder::degenerate;
  return neg > 0 ? SecondOrder::max : SecondOrder::min;
}

SearchResult find_extrema(const TorusSpec& spec, const SearchConfig& cfg) {
  cfg.validate();
  if (spec.t3) throw ArgumentError("find_extrema: needs a two-torus");
  const int phases = cfg.saddles ? 3 : 2;
  const int tasks = cfg.n_starts;
  std::vector<std::vector<Candidate>> slots(tasks);
  std::vector<int> drops(tasks, 0);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < tasks; i = next++) {
      std::uint64_t s = splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(i)));
      std::mt19937_64 rng(s);
      ModelPoint p0 = random_point(spec.space, rng);
      for (int ph = 0; ph < phases; ++ph) {
        std::optional<ModelPoint> p;
        try {
          p = run_phase(spec, cfg, p0, static_cast<Phase>(ph));
        } catch (const DegeneracyError&) {
          p.reset();
        }
        if (!p) {
          ++drops[i];
          continue;
        }
        slots[i].push_back({make_record(spec, *p, s + ph), i, ph});
      }
    }
  };
  int nt = std::min(thread_count(cfg.threads), tasks);
  std::vector<std::thread> pool;
  for (int k = 1; k < nt; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<Candidate> all;
  for (auto& s : slots)
    for (auto& c : s) all.push_back(std::move(c));
  std::stable_sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    if (a.rec.value != b.rec.value) return a.rec.value < b.rec.value;
    if (a.start != b.start) return a.start < b.start;
    return a.phase < b.phase;
  });
  SearchResult out;
  out.runs = tasks * phases;
  for (int d : drops) out.dropped += d;
  std::vector<double> anchor;  // value of the first member of each cluster
  for (auto& c : all) {
    bool merged = false;
    for (std::size_t k = out.records.size(); k-- > 0;) {
      if (std::abs(c.rec.value - anchor[k]) > cfg.cluster_tol) {
        if (c.rec.value - anchor[k] > cfg.cluster_tol) break;
        continue;
      }
      auto& r = out.records[k];
      if (r.second_order != c.rec.second_order || r.stabilizer_dim != c.rec.stabilizer_dim) continue;
      int m = r.multiplicity + 1;
      if (c.rec.grad_norm < r.grad_norm) r = c.rec;
      r.multiplicity = m;
      merged = true;
      break;
    }
    if (!merged) {
      out.records.push_back(c.rec);
      anchor.push_back(c.rec.value);
    }
  }
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const CriticalRecord& a, const CriticalRecord& b) { return a.value < b.value; });
  return out;
}

std::vector<ModelPoint> zero_level_sample(const TorusSpec& spec, int n, std::uint64_t seed) {
  if (n < 0) throw ArgumentError("zero_level_sample: negative count");
  if (spec.t3) throw ArgumentError("zero_level_sample: needs a two-torus");
  std::vector<ModelPoint> out;
  const int grid = 65;
  for (int i = 0; i < n; ++i) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(0x2e70ULL + static_cast<std::uint64_t>(i))));
    std::normal_distribution<double> gauss;
    bool done = false;
    for (int attempt = 0; attempt < 100 && !done; ++attempt) {
      ModelPoint a = random_point(spec.space, rng);
      Vec6 x;
      for (int k = 0; k < 6; ++k) x[k] = gauss(rng);
      x /= metric_norm(metric_at(spec, a), x);
      auto f = [&](double s) { return nu(spec, move(a, x, s)); };
      double s0 = 0, f0 = f(0);
      for (int k = 1; k < grid && !done; ++k) {
        double s1 = 2 * M_PI * k / (grid - 1), f1 = f(s1);
        if (f0 == 0 || f0 * f1 < 0) {
          double root = s0;
          if (f0 != 0) {
            boost::uintmax_t iters = 200;
            auto r = boost::math::tools::toms748_solve(f, s0, s1, f0, f1,
                                                       boost::math::tools::eps_tolerance<double>(50), iters);
            // pick the end with the smaller residual
            root = std::abs(f(r.first)) <= std::abs(f(r.second)) ? r.first : r.second;
          }
          ModelPoint p = move(a, x, root);
          if (std::abs(nu(spec, p)) <= 1e-9) {
            try {
              ModelPoint q = normal_form_zero(spec, p, 1e-9);
              if (std::abs(nu(spec, q)) <= 2e-9) {
                out.push_back(q);
                done = true;
              }
            } catch (const DegeneracyError&) {
            }
          }
          break;  // only the first sign change on the arc
        }
        s0 = s1;
        f0 = f1;
      }
    }
    if (!done) throw ConvergenceError("zero_level_sample: no zero found after 100 arcs");
  }
  return out;
}

}  // namespace nkmm
