#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nkmm/models.hpp"

namespace nkmm {

struct SearchConfig {
  int n_starts = 64;
  int max_iter = 4000;
  double step0 = 0.25;
  double shrink = 0.5;
  double armijo = 1e-4;
  double grad_tol = 1e-9;
  double cluster_tol = 1e-7;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: NKM_THREADS, else 1
  bool saddles = true;  // run the gap-descent phase as well

  void validate() const;  // ArgumentError on bad values
};

enum class SecondOrder { max, min, saddle, degenerate };
enum class Dependence { real, complex, independent };

std::string_view to_string(SecondOrder s);
std::string_view to_string(Dependence d);

struct CriticalRecord {
  ModelPoint point;
  double value = 0;
  double grad_norm = 0;
  double gap = 0;
  SecondOrder second_order = SecondOrder::degenerate;
  Dependence dependence = Dependence::independent;
  int stabilizer_dim = -1;  // -1 when indeterminate
  int multiplicity = 1;     // converged runs merged into this record
};

struct SearchResult {
  std::vector<CriticalRecord> records;  // sorted by value
  int runs = 0;
  int dropped = 0;  // runs that hit max_iter or stalled
};

// metric dual of d nu in the frame
Vec6 riemannian_grad(const TorusSpec& spec, const ModelPoint& p);
double grad_norm(const TorusSpec& spec, const ModelPoint& p);
// central differences of nu along the frame directions, step h
Vec6 fd_differential(const TorusSpec& spec, const ModelPoint& p, double h = 1e-5);

struct GapResult {
  double gap = 0;
  double identity_residual = 0;
};
GapResult criticality_gap(const TorusSpec& spec, const ModelPoint& p);

Dependence dependence_type(const TorusSpec& spec, const ModelPoint& p, double tol);

SecondOrder second_order_classify(const TorusSpec& spec, const ModelPoint& p, double h = 1e-3, int directions = 16,
                                  std::uint64_t seed = 0x5eed);

SearchResult find_extrema(const TorusSpec& spec, const SearchConfig& cfg);

// n points with |nu| <= 1e-9, each in the zero-level normal form
std::vector<ModelPoint> zero_level_sample(const TorusSpec& spec, int n, std::uint64_t seed);

// splitmix64 step, used for per-task seeds
std::uint64_t splitmix64(std::uint64_t x);
int thread_count(int requested);

}  // namespace nkmm
