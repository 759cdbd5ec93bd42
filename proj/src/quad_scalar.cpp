#include "nkmm/quad_scalar.hpp"

#include <cmath>
#include <ostream>

#include "nkmm/errors.hpp"

namespace nkmm {

namespace {

constexpr std::string_view kRoot = "\xe2\x88\x9a";  // U+221A

mpq_class parse_rational(std::string_view s) {
  if (s.empty()) throw ArgumentError("empty rational");
  mpq_class q;
  if (q.set_str(std::string(s), 10) != 0) throw ArgumentError("bad rational: " + std::string(s));
  if (q.get_den() == 0) throw ArgumentError("zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace

QuadScalar::QuadScalar(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                       const mpq_class& d)
    : c_{a, b, c, d} {
  for (auto& x : c_) x.canonicalize();
}

QuadScalar QuadScalar::rational(long p, long q) {
  if (q == 0) throw ArgumentError("zero denominator");
  mpq_class r(p, q);
  r.canonicalize();
  return QuadScalar(r);
}

bool QuadScalar::is_zero() const {
  return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0;
}

bool QuadScalar::is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

QuadScalar QuadScalar::operator-() const { return QuadScalar(-c_[0], -c_[1], -c_[2], -c_[3]); }

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  const mpq_class &a = c_[0], &b = c_[1], &c = c_[2], &d = c_[3];
  const mpq_class &e = o.c_[0], &f = o.c_[1], &g = o.c_[2], &h = o.c_[3];
  mpq_class r0 = a * e + 2 * b * f + 3 * c * g + 6 * d * h;
  mpq_class r1 = a * f + b * e + 3 * c * h + 3 * d * g;
  mpq_class r2 = a * g + c * e + 2 * b * h + 2 * d * f;
  mpq_class r3 = a * h + d * e + b * g + c * f;
  c_ = {r0, r1, r2, r3};
  return *this;
}

QuadScalar QuadScalar::conj2() const { return QuadScalar(c_[0], -c_[1], c_[2], -c_[3]); }
QuadScalar QuadScalar::conj3() const { return QuadScalar(c_[0], c_[1], -c_[2], -c_[3]); }

QuadScalar QuadScalar::inverse() const {
  if (is_zero()) throw ArgumentError("division by zero in QuadScalar");
  // x * conj3(x) lies in Q(sqrt2); times its sqrt2-conjugate it is rational
  QuadScalar y = *this * conj3();
  QuadScalar z = y * y.conj2();
  QuadScalar num = conj3() * y.conj2();
  mpq_class r = z.c_[0];
  return QuadScalar(num.c_[0] / r, num.c_[1] / r, num.c_[2] / r, num.c_[3] / r);
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) { return *this *= o.inverse(); }

double QuadScalar::to_double() const {
  if (is_rational()) return c_[0].get_d();
  constexpr mp_bitcnt_t prec = 256;
  mpf_class s2(2, prec), s3(3, prec), s6(6, prec);
  s2 = sqrt(s2);
  s3 = sqrt(s3);
  s6 = sqrt(s6);
  mpf_class v(c_[0], prec);
  v += mpf_class(c_[1], prec) * s2;
  v += mpf_class(c_[2], prec) * s3;
  v += mpf_class(c_[3], prec) * s6;
  // get_d truncates; pick the nearer neighbour
  double d = v.get_d();
  double up = std::nextafter(d, v > 0 ? HUGE_VAL : -HUGE_VAL);
  mpf_class ed = v - mpf_class(d, prec), eu = mpf_class(up, prec) - v;
  return abs(eu) < abs(ed) ? up : d;
}

std::string QuadScalar::str() const {
  std::string out = c_[0].get_str();
  const char* roots[3] = {"2", "3", "6"};
  for (int i = 1; i < 4; ++i) {
    std::string s = c_[i].get_str();
    if (s[0] != '-') out += '+';
    out += s;
    out += kRoot;
    out += roots[i - 1];
  }
  return out;
}

QuadScalar QuadScalar::parse(std::string_view text) {
  // a(+|-)b√2(+|-)c√3(+|-)d√6
  std::array<mpq_class, 4> c;
  std::size_t pos = 0;
  auto next_sign = [&](std::size_t from) {
    for (std::size_t k = from; k < text.size(); ++k)
      if (text[k] == '+' || text[k] == '-') return k;
    return std::string_view::npos;
  };
  std::size_t cut = next_sign(text.size() > 0 && text[0] == '-' ? 1 : 0);
  if (cut == std::string_view::npos) {
    // plain rational
    return QuadScalar(parse_rational(text));
  }
  c[0] = parse_rational(text.substr(0, cut));
  pos = cut;
  const char* roots[3] = {"2", "3", "6"};
  for (int i = 1; i < 4; ++i) {
    std::size_t r = text.find(kRoot, pos);
    if (r == std::string_view::npos) throw ArgumentError("bad QuadScalar: " + std::string(text));
    std::string_view num = text.substr(pos, r - pos);
    if (!num.empty() && num[0] == '+') num.remove_prefix(1);
    c[i] = parse_rational(num);
    pos = r + kRoot.size();
    if (pos >= text.size() || text[pos] != roots[i - 1][0])
      throw ArgumentError("bad QuadScalar radical: " + std::string(text));
    ++pos;
  }
  if (pos != text.size()) throw ArgumentError("trailing text in QuadScalar: " + std::string(text));
  return QuadScalar(c[0], c[1], c[2], c[3]);
}

std::ostream& operator<<(std::ostream& os, const QuadScalar& s) { return os << s.str(); }

}  // namespace nkmm
