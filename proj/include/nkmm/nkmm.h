#ifndef NKMM_NKMM_H
#define NKMM_NKMM_H

#include <stddef.h>
#include <stdint.h>

#if defined(NKMM_BUILDING)
#define NKMM_API __attribute__((visibility("default")))
#else
#define NKMM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nk_status {
  NK_OK = 0,
  NK_ERR_ARGUMENT = 1,
  NK_ERR_DEGENERATE = 2,
  NK_ERR_INDETERMINATE = 3,
  NK_ERR_CONVERGENCE = 4,
  NK_ERR_VERIFICATION = 5,
  NK_ERR_EMPTY = 6,
  NK_ERR_INTERNAL = 7
} nk_status;

typedef struct nk_torus nk_torus;
typedef struct nk_point nk_point;
typedef struct nk_records nk_records;
typedef struct nk_graph nk_graph;
typedef struct nk_text nk_text;

/* message of the last failing call on this thread, "" if none */
NKMM_API const char* nk_last_error(void);
NKMM_API const char* nk_status_name(nk_status s);

/* text results */
NKMM_API const char* nk_text_data(const nk_text* t);
NKMM_API size_t nk_text_size(const nk_text* t);
NKMM_API void nk_text_free(nk_text* t);

/* torus: space is "s6", "flag", "cp3" or "s3s3" */
NKMM_API nk_status nk_torus_standard(const char* space, nk_torus** out);
NKMM_API nk_status nk_torus_s3s3(const int a1[3], const int a2[3], nk_torus** out);
NKMM_API nk_status nk_torus_t3(nk_torus** out);
NKMM_API nk_status nk_torus_describe(const nk_torus* t, nk_text** out);
NKMM_API void nk_torus_free(nk_torus* t);

/* points; flat layouts: s6 7 values, flag 18 (row-major re,im), cp3 16 (p11,p12,p21,p22 as w,x,y,z), s3s3 8 (p then q) */
NKMM_API nk_status nk_point_from_flat(const char* space, const double* v, size_t n, nk_point** out);
NKMM_API nk_status nk_point_random(const char* space, uint64_t seed, nk_point** out);
NKMM_API nk_status nk_point_flat(const nk_point* p, double* out, size_t cap, size_t* n);
NKMM_API void nk_point_free(nk_point* p);

/* local quantities */
NKMM_API nk_status nk_nu(const nk_torus* t, const nk_point* p, double* out);
NKMM_API nk_status nk_grad(const nk_torus* t, const nk_point* p, double out[6]);
NKMM_API nk_status nk_gap(const nk_torus* t, const nk_point* p, double* gap, double* identity_residual);
NKMM_API nk_status nk_stabilizer(const nk_torus* t, const nk_point* p, double tol, int* dim, int* finite_order);
/* 0 max, 1 min, 2 saddle, 3 degenerate */
NKMM_API nk_status nk_second_order(const nk_torus* t, const nk_point* p, double h, int* cls);
/* 0 real, 1 complex, 2 independent */
NKMM_API nk_status nk_dependence(const nk_torus* t, const nk_point* p, double tol, int* dep);

/* multistart search */
typedef struct nk_search_config {
  int n_starts;
  int max_iter;
  double step0;
  double shrink;
  double armijo;
  double grad_tol;
  double cluster_tol;
  uint64_t seed;
  int threads; /* 0: NKM_THREADS or 1 */
  int saddles;
} nk_search_config;

typedef struct nk_record_info {
  double value;
  double grad_norm;
  double gap;
  int second_order;
  int dependence;
  int stabilizer_dim;
  int multiplicity;
} nk_record_info;

NKMM_API void nk_search_config_default(nk_search_config* cfg);
/* NK_ERR_EMPTY when no run converged; *out is still set */
NKMM_API nk_status nk_find_extrema(const nk_torus* t, const nk_search_config* cfg, nk_records** out);
NKMM_API size_t nk_records_count(const nk_records* r);
NKMM_API nk_status nk_records_stats(const nk_records* r, int* runs, int* dropped);
NKMM_API nk_status nk_records_get(const nk_records* r, size_t i, nk_record_info* out);
NKMM_API nk_status nk_records_point(const nk_records* r, size_t i, nk_point** out);
NKMM_API nk_status nk_records_report(const nk_torus* t, const nk_records* r, nk_text** out);
NKMM_API void nk_records_free(nk_records* r);

/* graphs; format is "dot" or "json" */
NKMM_API nk_status nk_graph_build(const nk_torus* t, int samples_per_edge, nk_graph** out);
NKMM_API nk_status nk_graph_counts(const nk_graph* g, size_t* vertices, size_t* edges, size_t* circles);
NKMM_API nk_status nk_graph_verify(const nk_torus* t, const nk_graph* g, double tol, int* ok, nk_text** report);
NKMM_API nk_status nk_graph_export(const nk_graph* g, const char* format, nk_text** out);
NKMM_API void nk_graph_free(nk_graph* g);

/* suites; *ok is 1 when every line passes */
NKMM_API nk_status nk_verify(const char* space, int exact, int* ok, nk_text** report);
NKMM_API nk_status nk_invariants(const nk_torus* t, int samples, uint64_t seed, int* ok, nk_text** report);
NKMM_API nk_status nk_defaults(const nk_search_config* cfg, nk_text** out);

#ifdef __cplusplus
}
#endif

#endif
