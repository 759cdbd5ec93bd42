#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nkmm/nkmm.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitEmpty = 2;
constexpr int kExitGraph = 3;
constexpr int kExitUsage = 64;

struct Usage {
  std::string msg;
};

struct Options {
  std::string space;
  std::string a1, a2;
  std::string torus = "t2";
  uint64_t seed = 1;
  int starts = 0;
  int max_iter = 0;
  int samples = 0;
  int threads = 0;
  bool exact = false;
  bool force = false;
  std::string format = "dot";
  std::string output;
};

// owned C handles
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
};
using Torus = Handle<nk_torus, nk_torus_free>;
using Text = Handle<nk_text, nk_text_free>;
using Records = Handle<nk_records, nk_records_free>;
using Graph = Handle<nk_graph, nk_graph_free>;

std::vector<int> parse_weights(const std::string& s, const char* name) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Usage{std::string(name) + ": expected three integers like 2,3,1"};
    }
  }
  if (v.size() != 3) throw Usage{std::string(name) + ": expected three integers like 2,3,1"};
  return v;
}

void check(nk_status s) {
  if (s == NK_ERR_ARGUMENT) throw Usage{nk_last_error()};
  if (s != NK_OK && s != NK_ERR_EMPTY) throw std::runtime_error(std::string(nk_status_name(s)) + ": " + nk_last_error());
}

void make_torus(const Options& o, Torus& t) {
  if (o.space.empty()) throw Usage{"--space is required"};
  if (o.torus != "t2" && o.torus != "t3") throw Usage{"--torus must be t2 or t3"};
  if (o.space != "s3s3") {
    if (!o.a1.empty() || !o.a2.empty() || o.torus == "t3") throw Usage{"--a1, --a2 and --torus apply to s3s3 only"};
    check(nk_torus_standard(o.space.c_str(), t.out()));
    return;
  }
  if (o.torus == "t3") {
    if (!o.a1.empty() || !o.a2.empty()) throw Usage{"--torus t3 takes no weights"};
    check(nk_torus_t3(t.out()));
    return;
  }
  std::vector<int> a1{1, 0, 0}, a2{0, 1, 0};
  if (!o.a1.empty()) a1 = parse_weights(o.a1, "--a1");
  if (!o.a2.empty()) a2 = parse_weights(o.a2, "--a2");
  check(nk_torus_s3s3(a1.data(), a2.data(), t.out()));
}

void write_out(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + o.output);
  f << text;
}

nk_search_config search_config(const Options& o) {
  nk_search_config c;
  nk_search_config_default(&c);
  c.seed = o.seed;
  if (o.starts) c.n_starts = o.starts;
  if (o.max_iter) c.max_iter = o.max_iter;
  c.threads = o.threads;
  return c;
}

int cmd_verify(const Options& o) {
  if (o.space.empty()) throw Usage{"--space is required"};
  int ok = 0;
  Text rep;
  check(nk_verify(o.space.c_str(), o.exact ? 1 : 0, &ok, rep.out()));
  write_out(o, std::string("# verify ") + o.space + (o.exact ? " exact" : " float") + "\n" + nk_text_data(rep.p));
  return ok ? kExitPass : kExitFail;
}

int cmd_extrema(const Options& o) {
  Torus t;
  make_torus(o, t);
  nk_search_config c = search_config(o);
  Records r;
  nk_status s = nk_find_extrema(t.p, &c, r.out());
  check(s);
  Text rep;
  check(nk_records_report(t.p, r.p, rep.out()));
  write_out(o, nk_text_data(rep.p));
  return nk_records_count(r.p) == 0 ? kExitEmpty : kExitPass;
}

int cmd_graph(const Options& o) {
  Torus t;
  make_torus(o, t);
  int samples = o.samples ? o.samples : 24;
  if (o.format != "dot" && o.format != "json") throw Usage{"--format must be dot or json"};
  Graph g;
  check(nk_graph_build(t.p, samples, g.out()));
  int ok = 0;
  Text rep;
  check(nk_graph_verify(t.p, g.p, 1e-8, &ok, rep.out()));
  std::cerr << nk_text_data(rep.p);
  if (!ok && !o.force) {
    std::cerr << "graph not written: verification failed (use --force)\n";
    return kExitGraph;
  }
  Text doc;
  check(nk_graph_export(g.p, o.format.c_str(), doc.out()));
  write_out(o, nk_text_data(doc.p));
  return ok ? kExitPass : kExitGraph;
}

int cmd_invariants(const Options& o) {
  Torus t;
  make_torus(o, t);
  int ok = 0;
  Text rep;
  check(nk_invariants(t.p, o.samples ? o.samples : 1000, o.seed, &ok, rep.out()));
  Text d;
  check(nk_torus_describe(t.p, d.out()));
  write_out(o, std::string("# invariants ") + nk_text_data(d.p) + "\n" + nk_text_data(rep.p));
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-moment maps on the homogeneous nearly Kaehler six-manifolds"};
  app.fallthrough();
  app.set_config("--config", "", "key = value file mirroring the flags");
  Options o;
  bool show_defaults = false;
  app.add_option("--space", o.space, "s6, flag, cp3 or s3s3");
  app.add_option("--a1", o.a1, "first torus weight on S3xS3, e.g. 2,3,1");
  app.add_option("--a2", o.a2, "second torus weight on S3xS3");
  app.add_option("--torus", o.torus, "t2 (default) or t3 for the maximal torus on S3xS3");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--starts", o.starts, "multistart count for extrema")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", o.max_iter, "iteration cap per run")->check(CLI::PositiveNumber);
  app.add_option("--samples", o.samples, "samples for invariants, samples per edge for graph")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "worker threads (default NKM_THREADS or 1)")->check(CLI::NonNegativeNumber);
  app.add_flag("--exact", o.exact, "exact arithmetic for verify");
  app.add_flag("--force", o.force, "write the graph even when verification fails");
  app.add_option("--format", o.format, "dot or json");
  app.add_option("--output,-o", o.output, "output file (default stdout)");
  app.add_flag("--show-defaults", show_defaults, "print the default tolerance table");
  auto* verify = app.add_subcommand("verify", "exact structure equations and identities");
  auto* extrema = app.add_subcommand("extrema", "multistart critical orbit search");
  auto* graph = app.add_subcommand("graph", "build, verify and export the orbit-space graph");
  auto* invariants = app.add_subcommand("invariants", "sampled invariant suite");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    if (show_defaults) {
      nk_search_config c = search_config(o);
      Text d;
      check(nk_defaults(&c, d.out()));
      std::cout << nk_text_data(d.p);
      return kExitPass;
    }
    if (*verify) return cmd_verify(o);
    if (*extrema) return cmd_extrema(o);
    if (*graph) return cmd_graph(o);
    if (*invariants) return cmd_invariants(o);
    std::cerr << app.help();
    return kExitUsage;
  } catch (const Usage& u) {
    std::cerr << "usage error: " << u.msg << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
