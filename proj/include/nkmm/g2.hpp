#pragma once

#include <Eigen/Dense>
#include <string_view>
#include <utility>
#include <vector>

#include "nkmm/kform.hpp"

namespace nkmm {

using Vec7 = Eigen::Matrix<double, 7, 1>;

struct G2Forms {
  ExactForm phi;
  ExactForm star_phi;
};

// phi = e123 + e145 + e167 + e246 - e257 - e347 - e356 and its Hodge dual
const G2Forms& g2_constants();

// <P(X,Y), Z> = phi(X,Y,Z)
Vec7 cross(const Vec7& x, const Vec7& y);

constexpr double kTangencyTol = 1e-10;

// JX = P(N,X); X must be tangent at p up to kTangencyTol
Vec7 sphere_J(const Vec7& p, const Vec7& x);

// U = theta direction, V = phi direction of A_{theta,phi} on C^3 + R with
// z1 = x1 + i x6, z2 = x5 + i x2, z3 = x4 + i x3, t = x7
std::pair<Vec7, Vec7> sphere_generators(const Vec7& p);

double sphere_nu(const Vec7& p);

// tangential part of P(U,V); d nu = 3 g(residual, .)
Vec7 sphere_crit_residual(const Vec7& p);

// a form on R^7 whose coefficients are linear in the coordinates:
// w = sum_k x^k parts[k]
struct LinearForm {
  int degree = 0;
  std::vector<ExactForm> parts;  // 7 constant forms

  bool operator==(const LinearForm& o) const { return degree == o.degree && parts == o.parts; }
};

// N -| w with N = sum_k x^k d/dx^k
LinearForm position_contract(const ExactForm& w);

// d(sum_k x^k parts[k]) = sum_k dx^k ^ parts[k]
ExactForm linear_d(const LinearForm& w);

// text like "x3 dx12 - x2 dx13 + ..."
LinearForm parse_linear_form(std::string_view text, int degree);

// transcription of the two-form <J.,.> on R^7
const LinearForm& printed_sphere_sigma();

}  // namespace nkmm
