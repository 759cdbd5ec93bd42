#pragma once

#include <string>
#include <vector>

#include "nkmm/models.hpp"

namespace nkmm {

struct StabilizerRecord {
  int dim = 0;           // 0, 1, 2 (3 possible only for the three-torus)
  int finite_order = 1;  // order of the discrete part found by the bounded search
  Eigen::VectorXd direction;        // effective torus parameters of the circle when dim = 1
  Eigen::VectorXd singular_values;  // of the effective generators, metric norm
};

// tol: threshold on the singular values; max_order caps the Z_k search
StabilizerRecord stabilizer(const TorusSpec& spec, const ModelPoint& p, double tol, int max_order = 12);

// generators of the torus in effective parameters (three columns for the three-torus)
std::vector<Vec6> effective_generator_list(const TorusSpec& spec, const ModelPoint& p);
// p and q represent the same point of the homogeneous space, within tol
bool same_point(const ModelPoint& p, const ModelPoint& q, double tol);
// distance between torus orbits measured through torus invariants
double orbit_distance(const TorusSpec& spec, const ModelPoint& p, const ModelPoint& q);

struct GraphVertex {
  std::string label;
  ModelPoint point;
  StabilizerRecord stab;
};

struct GraphEdge {
  std::string label;
  std::string from, to;  // empty for circles
  std::string family;
  std::vector<ModelPoint> samples;
  Eigen::VectorXd direction;  // expected circle direction in action parameters, may be empty
};

struct OrbitGraph {
  TorusSpec spec;
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  std::vector<GraphEdge> circles;
};

OrbitGraph build_graph(const TorusSpec& spec, int samples_per_edge = 24);

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct GraphReport {
  bool ok = true;
  std::vector<CheckLine> lines;
  std::string text() const;
};

// edges and circles need at least this many samples
constexpr int kMinSamples = 20;
GraphReport verify_graph(const TorusSpec& spec, const OrbitGraph& g, double tol);

enum class GraphFormat { dot, json };
GraphFormat parse_graph_format(std::string_view s);
std::string export_graph(const OrbitGraph& g, GraphFormat format);

// vertex degrees (edge ends) keyed by label, sorted
std::vector<std::pair<std::string, int>> vertex_degrees(const OrbitGraph& g);

}  // namespace nkmm
