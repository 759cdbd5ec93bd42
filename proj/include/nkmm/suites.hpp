#pragma once

#include <cstdint>
#include <string>

#include "nkmm/critic.hpp"
#include "nkmm/graphs.hpp"

namespace nkmm {

using Report = GraphReport;

// default tolerances, one table
struct Tolerances {
  double fd_rel = 1e-6;          // riemannian_grad vs central differences
  double invariance = 1e-10;     // |nu(t.p) - nu(p)|
  double gap_floor = -1e-10;     // h^2 - nu^2 lower bound
  double identity = 1e-8;        // | |grad|^2 - 9 gap | / (1 + 9|gap|)
  double zero_interior = 1e-3;   // both signs of nu beyond this
  double float_forms = 1e-12;    // floating structure-equation residual
  double cross_law = 1e-12;      // Lagrange identity for P, relative
  double graph = 1e-8;           // verify_graph
  double fd_step = 1e-5;
  double second_order_step = 1e-3;
};
const Tolerances& default_tolerances();
std::string defaults_table(const SearchConfig& cfg = {});

// structure equations and identities for the space; exact uses Q(sqrt2, sqrt3) arithmetic
Report verify_suite(Space space, bool exact);

struct InvariantConfig {
  int samples = 1000;
  int fd_samples = 100;
  std::uint64_t seed = 1;
};
// sampled invariance, gap, gradient-norm identity, FD gradient and zero-interior checks
Report invariants_suite(const TorusSpec& spec, const InvariantConfig& cfg);

struct FlagAudit {
  double alignment = 0;      // torus distance from the matching record to the printed matrix
  double found = 0;          // value of that record
  double formula = 0;        // nu at the printed matrix
  double ratio_claimed = 0;  // |formula| / (sqrt3/2)
};
// nullopt-like: throws ArgumentError when no record has |value| within 1e-6 of |formula|
FlagAudit flag_audit(const SearchResult& r);

// one line per record, then the S3xS3 closed-form comparison or the flag audit
std::string extrema_report(const TorusSpec& spec, const SearchResult& r);

}  // namespace nkmm
