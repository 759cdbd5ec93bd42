#include "nkmm/nkmm.h"

#include <cstring>
#include <memory>
#include <string>

#include "nkmm/critic.hpp"
#include "nkmm/errors.hpp"
#include "nkmm/graphs.hpp"
#include "nkmm/suites.hpp"

struct nk_torus {
  nkmm::TorusSpec spec;
};
struct nk_point {
  nkmm::ModelPoint p;
};
struct nk_records {
  nkmm::SearchResult r;
};
struct nk_graph {
  nkmm::OrbitGraph g;
};
struct nk_text {
  std::string s;
};

namespace {

thread_local std::string g_error;

template <class F>
nk_status guarded(F&& f) {
  try {
    g_error.clear();
    return f();
  } catch (const nkmm::ArgumentError& e) {
    g_error = e.what();
    return NK_ERR_ARGUMENT;
  } catch (const nkmm::DegeneracyError& e) {
    g_error = e.what();
    return NK_ERR_DEGENERATE;
  } catch (const nkmm::IndeterminateError& e) {
    g_error = e.what();
    return NK_ERR_INDETERMINATE;
  } catch (const nkmm::ConvergenceError& e) {
    g_error = e.what();
    return NK_ERR_CONVERGENCE;
  } catch (const std::exception& e) {
    g_error = e.what();
    return NK_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown error";
    return NK_ERR_INTERNAL;
  }
}

nk_status fail(nk_status s, const char* msg) {
  g_error = msg;
  return s;
}

#define NK_REQUIRE(cond, msg) \
  if (!(cond)) return fail(NK_ERR_ARGUMENT, msg)

nk_status emit(std::string s, nk_text** out) {
  *out = new nk_text{std::move(s)};
  return NK_OK;
}

void require_same(const nkmm::TorusSpec& t, const nkmm::ModelPoint& p) {
  if (nkmm::space_of(p) != t.space) throw nkmm::ArgumentError("point and torus live on different spaces");
}

}  // namespace

extern "C" {

const char* nk_last_error(void) { return g_error.c_str(); }

const char* nk_status_name(nk_status s) {
  switch (s) {
    case NK_OK: return "ok";
    case NK_ERR_ARGUMENT: return "argument";
    case NK_ERR_DEGENERATE: return "degenerate";
    case NK_ERR_INDETERMINATE: return "indeterminate";
    case NK_ERR_CONVERGENCE: return "convergence";
    case NK_ERR_VERIFICATION: return "verification";
    case NK_ERR_EMPTY: return "empty";
    case NK_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* nk_text_data(const nk_text* t) { return t ? t->s.c_str() : ""; }
size_t nk_text_size(const nk_text* t) { return t ? t->s.size() : 0; }
void nk_text_free(nk_text* t) { delete t; }

nk_status nk_torus_standard(const char* space, nk_torus** out) {
  NK_REQUIRE(space && out, "null argument");
  return guarded([&] {
    *out = new nk_torus{nkmm::TorusSpec::standard(nkmm::parse_space(space))};
    return NK_OK;
  });
}

nk_status nk_torus_s3s3(const int a1[3], const int a2[3], nk_torus** out) {
  NK_REQUIRE(a1 && a2 && out, "null argument");
  return guarded([&] {
    *out = new nk_torus{nkmm::TorusSpec::s3s3({a1[0], a1[1], a1[2]}, {a2[0], a2[1], a2[2]})};
    return NK_OK;
  });
}

nk_status nk_torus_t3(nk_torus** out) {
  NK_REQUIRE(out, "null argument");
  *out = new nk_torus{nkmm::TorusSpec::s3s3_t3()};
  return NK_OK;
}

nk_status nk_torus_describe(const nk_torus* t, nk_text** out) {
  NK_REQUIRE(t && out, "null argument");
  return guarded([&] { return emit(t->spec.describe(), out); });
}

void nk_torus_free(nk_torus* t) { delete t; }

nk_status nk_point_from_flat(const char* space, const double* v, size_t n, nk_point** out) {
  NK_REQUIRE(space && out && (v || n == 0), "null argument");
  return guarded([&] {
    *out = new nk_point{nkmm::from_flat(nkmm::parse_space(space), std::span<const double>(v, n))};
    return NK_OK;
  });
}

nk_status nk_point_random(const char* space, uint64_t seed, nk_point** out) {
  NK_REQUIRE(space && out, "null argument");
  return guarded([&] {
    std::mt19937_64 rng(nkmm::splitmix64(seed));
    *out = new nk_point{nkmm::random_point(nkmm::parse_space(space), rng)};
    return NK_OK;
  });
}

nk_status nk_point_flat(const nk_point* p, double* out, size_t cap, size_t* n) {
  NK_REQUIRE(p && n, "null argument");
  return guarded([&] {
    auto f = nkmm::to_flat(p->p);
    *n = f.size();
    if (!out) return NK_OK;
    if (cap < f.size()) return fail(NK_ERR_ARGUMENT, "output buffer too small");
    std::memcpy(out, f.data(), f.size() * sizeof(double));
    return NK_OK;
  });
}

void nk_point_free(nk_point* p) { delete p; }

nk_status nk_nu(const nk_torus* t, const nk_point* p, double* out) {
  NK_REQUIRE(t && p && out, "null argument");
  return guarded([&] {
    require_same(t->spec, p->p);
    *out = nkmm::nu(t->spec, p->p);
    return NK_OK;
  });
}

nk_status nk_grad(const nk_torus* t, const nk_point* p, double out[6]) {
  NK_REQUIRE(t && p && out, "null argument");
  return guarded([&] {
    require_same(t->spec, p->p);
    nkmm::Vec6 g = nkmm::riemannian_grad(t->spec, p->p);
    for (int k = 0; k < 6; ++k) out[k] = g[k];
    return NK_OK;
  });
}

nk_status nk_gap(const nk_torus* t, const nk_point* p, double* gap, double* identity_residual) {
  NK_REQUIRE(t && p && gap && identity_residual, "null argument");
  return guarded([&] {
    require_same(t->spec, p->p);
    auto r = nkmm::criticality_gap(t->spec, p->p);
    *gap = r.gap;
    *identity_residual = r.identity_residual;
    return NK_OK;
  });
}

nk_status nk_stabilizer(const nk_torus* t, const nk_point* p, double tol, int* dim, int* finite_order) {
  NK_REQUIRE(t && p && dim && finite_order, "null argument");
  return guarded([&] {
    require_same(t->spec, p->p);
    auto r = nkmm::stabilizer(t->spec, p->p, tol);
    *dim = r.dim;
    *finite_order = r.finite_order;
    return NK_OK;
  });
}

nk_status nk_second_order(const nk_torus* t, const nk_point* p, double h, int* cls) {
  NK_REQUIRE(t && p && cls, "null argument");
  return guarded([&] {
    require_same(t->spec, p->p);
    *cls = static_cast<int>(nkmm::second_order_classify(t->spec, p->p, h));
    return NK_OK;
  });
}

nk_status nk_dependence(const nk_torus* t, const nk_point* p, double tol, int* dep) {
  NK_REQUIRE(t && p && dep, "null argument");
  return guarded([&] {
    require_same(t->spec, p->p);
    *dep = static_cast<int>(nkmm::dependence_type(t->spec, p->p, tol));
    return NK_OK;
  });
}

void nk_search_config_default(nk_search_config* cfg) {
  if (!cfg) return;
  nkmm::SearchConfig d;
  *cfg = {d.n_starts, d.max_iter, d.step0, d.shrink, d.armijo, d.grad_tol, d.cluster_tol, d.seed, d.threads,
          d.saddles ? 1 : 0};
}

static nkmm::SearchConfig to_cpp(const nk_search_config* c) {
  nkmm::SearchConfig s;
  if (!c) return s;
  s.n_starts = c->n_starts;
  s.max_iter = c->max_iter;
  s.step0 = c->step0;
  s.shrink = c->shrink;
  s.armijo = c->armijo;
  s.grad_tol = c->grad_tol;
  s.cluster_tol = c->cluster_tol;
  s.seed = c->seed;
  s.threads = c->threads;
  s.saddles = c->saddles != 0;
  return s;
}

nk_status nk_find_extrema(const nk_torus* t, const nk_search_config* cfg, nk_records** out) {
  NK_REQUIRE(t && out, "null argument");
  return guarded([&] {
    auto r = std::make_unique<nk_records>();
    r->r = nkmm::find_extrema(t->spec, to_cpp(cfg));
    bool empty = r->r.records.empty();
    *out = r.release();
    if (empty) return fail(NK_ERR_EMPTY, "no run converged");
    return NK_OK;
  });
}

size_t nk_records_count(const nk_records* r) { return r ? r->r.records.size() : 0; }

nk_status nk_records_stats(const nk_records* r, int* runs, int* dropped) {
  NK_REQUIRE(r && runs && dropped, "null argument");
  *runs = r->r.runs;
  *dropped = r->r.dropped;
  return NK_OK;
}

nk_status nk_records_get(const nk_records* r, size_t i, nk_record_info* out) {
  NK_REQUIRE(r && out, "null argument");
  NK_REQUIRE(i < r->r.records.size(), "record index out of range");
  const auto& c = r->r.records[i];
  *out = {c.value, c.grad_norm, c.gap, static_cast<int>(c.second_order), static_cast<int>(c.dependence),
          c.stabilizer_dim, c.multiplicity};
  return NK_OK;
}

nk_status nk_records_point(const nk_records* r, size_t i, nk_point** out) {
  NK_REQUIRE(r && out, "null argument");
  NK_REQUIRE(i < r->r.records.size(), "record index out of range");
  *out = new nk_point{r->r.records[i].point};
  return NK_OK;
}

nk_status nk_records_report(const nk_torus* t, const nk_records* r, nk_text** out) {
  NK_REQUIRE(t && r && out, "null argument");
  return guarded([&] { return emit(nkmm::extrema_report(t->spec, r->r), out); });
}

void nk_records_free(nk_records* r) { delete r; }

nk_status nk_graph_build(const nk_torus* t, int samples_per_edge, nk_graph** out) {
  NK_REQUIRE(t && out, "null argument");
  return guarded([&] {
    *out = new nk_graph{nkmm::build_graph(t->spec, samples_per_edge)};
    return NK_OK;
  });
}

nk_status nk_graph_counts(const nk_graph* g, size_t* vertices, size_t* edges, size_t* circles) {
  NK_REQUIRE(g && vertices && edges && circles, "null argument");
  *vertices = g->g.vertices.size();
  *edges = g->g.edges.size();
  *circles = g->g.circles.size();
  return NK_OK;
}

nk_status nk_graph_verify(const nk_torus* t, const nk_graph* g, double tol, int* ok, nk_text** report) {
  NK_REQUIRE(t && g && ok && report, "null argument");
  return guarded([&] {
    auto r = nkmm::verify_graph(t->spec, g->g, tol);
    *ok = r.ok ? 1 : 0;
    return emit(r.text(), report);
  });
}

nk_status nk_graph_export(const nk_graph* g, const char* format, nk_text** out) {
  NK_REQUIRE(g && format && out, "null argument");
  return guarded([&] { return emit(nkmm::export_graph(g->g, nkmm::parse_graph_format(format)), out); });
}

void nk_graph_free(nk_graph* g) { delete g; }

nk_status nk_verify(const char* space, int exact, int* ok, nk_text** report) {
  NK_REQUIRE(space && ok && report, "null argument");
  return guarded([&] {
    auto r = nkmm::verify_suite(nkmm::parse_space(space), exact != 0);
    *ok = r.ok ? 1 : 0;
    return emit(r.text(), report);
  });
}

nk_status nk_invariants(const nk_torus* t, int samples, uint64_t seed, int* ok, nk_text** report) {
  NK_REQUIRE(t && ok && report, "null argument");
  return guarded([&] {
    nkmm::InvariantConfig c;
    c.samples = samples;
    c.fd_samples = std::min(samples, 100);
    c.seed = seed;
    auto r = nkmm::invariants_suite(t->spec, c);
    *ok = r.ok ? 1 : 0;
    return emit(r.text(), report);
  });
}

nk_status nk_defaults(const nk_search_config* cfg, nk_text** out) {
  NK_REQUIRE(out, "null argument");
  return guarded([&] { return emit(nkmm::defaults_table(to_cpp(cfg)), out); });
}

}  // extern "C"
