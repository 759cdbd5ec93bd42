#include "nkmm/g2.hpp"

#include <array>
#include <cctype>
#include <cmath>

namespace nkmm {

const G2Forms& g2_constants() {
  static const G2Forms f = [] {
    ExactForm phi = parse_terms("e123 + e145 + e167 + e246 - e257 - e347 - e356", 7, 1);
    return G2Forms{phi, hodge7(phi)};
  }();
  return f;
}

namespace {

struct Triple {
  int a, b, c;
  double s;
};

const std::vector<Triple>& phi_triples() {
  static const std::vector<Triple> t = [] {
    std::vector<Triple> out;
    for (const auto& [m, c] : g2_constants().phi.terms()) {
      auto idx = mask_indices(m);
      out.push_back({idx[0], idx[1], idx[2], c.to_double()});
    }
    return out;
  }();
  return t;
}

}  // namespace

Vec7 cross(const Vec7& x, const Vec7& y) {
  Vec7 r = Vec7::Zero();
  for (const auto& t : phi_triples()) {
    r[t.c] += t.s * (x[t.a] * y[t.b] - x[t.b] * y[t.a]);
    r[t.a] += t.s * (x[t.b] * y[t.c] - x[t.c] * y[t.b]);
    r[t.b] += t.s * (x[t.c] * y[t.a] - x[t.a] * y[t.c]);
  }
  return r;
}

Vec7 sphere_J(const Vec7& p, const Vec7& x) {
  double n = p.dot(x);
  if (std::abs(n) > kTangencyTol) throw ArgumentError("sphere_J: vector not tangent at p");
  return cross(p, x - n * p);
}

std::pair<Vec7, Vec7> sphere_generators(const Vec7& p) {
  Vec7 u = Vec7::Zero(), v = Vec7::Zero();
  u[0] = -p[5];
  u[2] = -p[3];
  u[3] = p[2];
  u[5] = p[0];
  v[1] = p[4];
  v[2] = -p[3];
  v[3] = p[2];
  v[4] = -p[1];
  return {u, v};
}

double sphere_nu(const Vec7& x) {
  return 3.0 * (x[0] * (x[3] * x[4] - x[1] * x[2]) - x[5] * (x[2] * x[4] + x[1] * x[3]));
}

Vec7 sphere_crit_residual(const Vec7& p) {
  auto [u, v] = sphere_generators(p);
  Vec7 w = cross(u, v);
  return w - w.dot(p) * p;
}

LinearForm position_contract(const ExactForm& w) {
  if (w.dim() != 7) throw ArgumentError("position_contract: dimension must be 7");
  LinearForm out;
  out.degree = w.degree() - 1;
  for (int k = 0; k < 7; ++k) {
    std::vector<QuadScalar> e(7, QuadScalar(0));
    e[k] = QuadScalar(1);
    out.parts.push_back(contract(e, w));
  }
  return out;
}

ExactForm linear_d(const LinearForm& w) {
  ExactForm r(7, w.degree + 1);
  for (int k = 0; k < 7; ++k) r = r + wedge(ExactForm::basis(7, {k}), w.parts.at(k));
  return r;
}

LinearForm parse_linear_form(std::string_view s, int degree) {
  LinearForm out;
  out.degree = degree;
  out.parts.assign(7, ExactForm(7, degree));
  std::size_t i = 0;
  auto ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  bool first = true;
  while (true) {
    ws();
    if (i >= s.size()) break;
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      ws();
    } else if (!first) {
      throw ArgumentError("parse_linear_form: expected sign");
    }
    first = false;
    if (i + 1 >= s.size() || s[i] != 'x' || !std::isdigit(static_cast<unsigned char>(s[i + 1])))
      throw ArgumentError("parse_linear_form: expected coordinate");
    int k = s[i + 1] - '1';
    i += 2;
    ws();
    if (s.substr(i, 2) != "dx") throw ArgumentError("parse_linear_form: expected dx");
    i += 2;
    std::vector<int> idx;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) idx.push_back(s[i++] - '1');
    if (k < 0 || k >= 7 || static_cast<int>(idx.size()) != degree)
      throw ArgumentError("parse_linear_form: bad term");
    out.parts[k].add_term(idx, QuadScalar(sign));
  }
  return out;
}

const LinearForm& printed_sphere_sigma() {
  static const LinearForm f = parse_linear_form(
      "x3 dx12 - x2 dx13 + x5 dx14 - x4 dx15 + x7 dx16 - x6 dx17"
      " + x1 dx23 + x6 dx24 - x7 dx25 - x4 dx26 + x5 dx27 - x7 dx34"
      " - x6 dx35 + x5 dx36 + x4 dx37 + x1 dx45 + x2 dx46 - x3 dx47"
      " - x3 dx56 - x2 dx57 + x1 dx67",
      2);
  return f;
}

}  // namespace nkmm
