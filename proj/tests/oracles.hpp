#pragma once
// helpers shared by the numerical tests

#include <random>
#include <vector>

#include "nkmm/models.hpp"

namespace oracle {

using namespace nkmm;

inline std::vector<Space> all_spaces() { return {Space::s6, Space::flag, Space::cp3, Space::s3s3}; }

// torus configurations exercised by the tests
inline std::vector<TorusSpec> t2_specs() {
  return {TorusSpec::standard(Space::s6),        TorusSpec::standard(Space::flag),
          TorusSpec::standard(Space::cp3),       TorusSpec::s3s3({1, 0, 0}, {0, 1, 0}),
          TorusSpec::s3s3({2, 3, 0}, {0, 0, 4}), TorusSpec::s3s3({1, -1, 0}, {1, 1, -1}),
          TorusSpec::s3s3({1, 1, 1}, {0, 1, 0})};
}

// central difference of p -> flat(f(s)) at s = 0, as a frame vector at p
template <class F>
Vec6 fd_frame(const ModelPoint& p, F f, double h = 1e-6) {
  auto a = to_flat(f(h)), b = to_flat(f(-h));
  std::vector<double> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = (a[k] - b[k]) / (2 * h);
  return frame_coordinates(p, d);
}

// nu along the exponential curve in frame direction k
inline double fd_dnu(const TorusSpec& spec, const ModelPoint& p, int k, double h = 1e-5) {
  Vec6 e = Vec6::Zero();
  e[k] = 1;
  return (nu(spec, move(p, e, h)) - nu(spec, move(p, e, -h))) / (2 * h);
}

inline Vec6 fd_dnu(const TorusSpec& spec, const ModelPoint& p) {
  Vec6 r;
  for (int k = 0; k < 6; ++k) r[k] = fd_dnu(spec, p, k);
  return r;
}

}  // namespace oracle
