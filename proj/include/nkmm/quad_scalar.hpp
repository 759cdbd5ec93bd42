#pragma once

#include <array>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nkmm {

// a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational a, b, c, d
class QuadScalar {
 public:
  QuadScalar() : c_{mpq_class(0), mpq_class(0), mpq_class(0), mpq_class(0)} {}
  QuadScalar(long v) : c_{mpq_class(v), mpq_class(0), mpq_class(0), mpq_class(0)} {}
  QuadScalar(const mpq_class& a, const mpq_class& b = 0, const mpq_class& c = 0,
             const mpq_class& d = 0);

  static QuadScalar rational(long p, long q = 1);
  static QuadScalar sqrt2() { return QuadScalar(0, 1, 0, 0); }
  static QuadScalar sqrt3() { return QuadScalar(0, 0, 1, 0); }
  static QuadScalar sqrt6() { return QuadScalar(0, 0, 0, 1); }

  const mpq_class& q1() const { return c_[0]; }
  const mpq_class& q_sqrt2() const { return c_[1]; }
  const mpq_class& q_sqrt3() const { return c_[2]; }
  const mpq_class& q_sqrt6() const { return c_[3]; }

  bool is_zero() const;
  bool is_rational() const;

  QuadScalar operator-() const;
  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);

  friend QuadScalar operator+(QuadScalar a, const QuadScalar& b) { return a += b; }
  friend QuadScalar operator-(QuadScalar a, const QuadScalar& b) { return a -= b; }
  friend QuadScalar operator*(QuadScalar a, const QuadScalar& b) { return a *= b; }
  friend QuadScalar operator/(QuadScalar a, const QuadScalar& b) { return a /= b; }
  friend bool operator==(const QuadScalar& a, const QuadScalar& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QuadScalar& a, const QuadScalar& b) { return !(a == b); }

  // galois conjugates sqrt2 -> -sqrt2 and sqrt3 -> -sqrt3
  QuadScalar conj2() const;
  QuadScalar conj3() const;
  QuadScalar inverse() const;

  double to_double() const;

  // a+b√2+c√3+d√6, rationals as p/q
  std::string str() const;
  static QuadScalar parse(std::string_view text);

 private:
  std::array<mpq_class, 4> c_;
};

std::ostream& operator<<(std::ostream& os, const QuadScalar& s);

}  // namespace nkmm
