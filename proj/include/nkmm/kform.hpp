#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nkmm/errors.hpp"
#include "nkmm/quad_scalar.hpp"

namespace nkmm {

using Mask = std::uint32_t;

inline bool scalar_is_zero(const QuadScalar& s) { return s.is_zero(); }
inline bool scalar_is_zero(double s) { return s == 0.0; }

// index tuple of a mask, increasing, 0-based
std::vector<int> mask_indices(Mask m);
Mask indices_mask(const std::vector<int>& idx);

// sign of the permutation sorting (A, B) for disjoint masks
inline int merge_sign(Mask a, Mask b) {
  int swaps = 0;
  for (Mask r = b; r; r &= r - 1) {
    int j = std::countr_zero(r);
    Mask above = j + 1 >= 32 ? 0 : (a >> (j + 1));
    swaps += std::popcount(above);
  }
  return (swaps & 1) ? -1 : 1;
}

// Sparse alternating k-form on R^dim. Coefficients are keyed by the bit mask
// of the increasing index tuple; zero coefficients are never stored.
template <class S>
class BasicForm {
 public:
  static constexpr int kMaxDim = 16;

  BasicForm() : dim_(0), degree_(0) {}
  BasicForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDim) throw ArgumentError("form dimension out of range");
    if (degree < 0) throw ArgumentError("form degree out of range");
  }

  static BasicForm constant(int dim, const S& c) {
    BasicForm f(dim, 0);
    f.accumulate(0, c);
    return f;
  }

  // c * e^{i_1} ^ ... ^ e^{i_k}, 0-based indices in any order
  static BasicForm basis(int dim, const std::vector<int>& idx, const S& c = S(1)) {
    BasicForm f(dim, static_cast<int>(idx.size()));
    f.add_term(idx, c);
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Mask, S>& terms() const { return terms_; }

  S coefficient(const std::vector<int>& idx) const {
    auto [m, sign] = normalize(idx);
    if (sign == 0) return S(0);
    auto it = terms_.find(m);
    if (it == terms_.end()) return S(0);
    return sign > 0 ? it->second : S(-it->second);
  }

  BasicForm operator-() const {
    BasicForm r(dim_, degree_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  BasicForm operator+(const BasicForm& o) const {
    check_same(o);
    BasicForm r = *this;
    for (const auto& [m, c] : o.terms_) r.accumulate(m, c);
    return r;
  }
  BasicForm operator-(const BasicForm& o) const { return *this + (-o); }
  BasicForm scaled(const S& s) const {
    BasicForm r(dim_, degree_);
    if (scalar_is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.accumulate(m, c * s);
    return r;
  }
  friend BasicForm operator*(const S& s, const BasicForm& f) { return f.scaled(s); }

  bool operator==(const BasicForm& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
  }
  bool operator!=(const BasicForm& o) const { return !(*this == o); }

  // accumulate c * e^I for an arbitrary index sequence
  void add_term(const std::vector<int>& idx, const S& c) {
    if (static_cast<int>(idx.size()) != degree_) throw ArgumentError("term degree mismatch");
    for (int i : idx)
      if (i < 0 || i >= dim_) throw ArgumentError("form index out of range");
    auto [m, sign] = normalize(idx);
    if (sign == 0) return;
    accumulate(m, sign > 0 ? c : S(-c));
  }

  void accumulate(Mask m, const S& c) {
    if (scalar_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (scalar_is_zero(it->second)) terms_.erase(it);
  }

  void check_same(const BasicForm& o) const {
    if (dim_ != o.dim_) throw ArgumentError("form dimension mismatch");
    if (degree_ != o.degree_) throw ArgumentError("form degree mismatch");
  }

 private:
  static std::pair<Mask, int> normalize(const std::vector<int>& idx) {
    Mask m = 0;
    int inversions = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (m & (Mask(1) << idx[a])) return {0, 0};
      m |= Mask(1) << idx[a];
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (idx[a] > idx[b]) ++inversions;
    }
    return {m, (inversions & 1) ? -1 : 1};
  }

  int dim_;
  int degree_;
  std::map<Mask, S> terms_;
};

using ExactForm = BasicForm<QuadScalar>;
using RealForm = BasicForm<double>;

RealForm to_real(const ExactForm& f);

template <class S>
BasicForm<S> wedge(const BasicForm<S>& a, const BasicForm<S>& b) {
  if (a.dim() != b.dim()) throw ArgumentError("wedge: dimension mismatch");
  BasicForm<S> r(a.dim(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      S c = ca * cb;
      r.accumulate(ma | mb, merge_sign(ma, mb) > 0 ? c : S(-c));
    }
  return r;
}

// interior product X -| w
template <class S>
BasicForm<S> contract(const std::vector<S>& x, const BasicForm<S>& w) {
  if (w.degree() == 0) throw ArgumentError("contract: degree-0 form");
  if (static_cast<int>(x.size()) != w.dim()) throw ArgumentError("contract: vector length mismatch");
  BasicForm<S> r(w.dim(), w.degree() - 1);
  for (const auto& [m, c] : w.terms()) {
    int pos = 0;
    for (Mask rest = m; rest; rest &= rest - 1, ++pos) {
      int i = std::countr_zero(rest);
      if (scalar_is_zero(x[i])) continue;
      S v = c * x[i];
      r.accumulate(m & ~(Mask(1) << i), (pos & 1) ? S(-v) : v);
    }
  }
  return r;
}

// Hodge star on R^7 with the standard metric and orientation e^{1...7}
template <class S>
BasicForm<S> hodge7(const BasicForm<S>& w) {
  if (w.dim() != 7) throw ArgumentError("hodge7: dimension must be 7");
  const Mask full = (Mask(1) << 7) - 1;
  BasicForm<S> r(7, 7 - w.degree());
  for (const auto& [m, c] : w.terms()) {
    Mask comp = full & ~m;
    r.accumulate(comp, merge_sign(m, comp) > 0 ? c : S(-c));
  }
  return r;
}

namespace detail {
template <class S>
S det_rows(const std::vector<std::vector<S>>& a, std::vector<int>& cols, int row) {
  int n = static_cast<int>(cols.size());
  if (n == 0) return S(1);
  if (n == 1) return a[row][cols[0]];
  S acc(0);
  for (int k = 0; k < n; ++k) {
    const S& v = a[row][cols[k]];
    if (scalar_is_zero(v)) continue;
    int c = cols[k];
    cols.erase(cols.begin() + k);
    S minor = det_rows(a, cols, row + 1);
    cols.insert(cols.begin() + k, c);
    if (k & 1) acc -= v * minor;
    else acc += v * minor;
  }
  return acc;
}
}  // namespace detail

// w(X_1, ..., X_k)
template <class S>
S eval_form(const BasicForm<S>& w, const std::vector<std::vector<S>>& vecs) {
  if (static_cast<int>(vecs.size()) != w.degree()) throw ArgumentError("eval_form: arity mismatch");
  for (const auto& v : vecs)
    if (static_cast<int>(v.size()) != w.dim()) throw ArgumentError("eval_form: vector length mismatch");
  S acc(0);
  for (const auto& [m, c] : w.terms()) {
    std::vector<int> cols = mask_indices(m);
    acc += c * detail::det_rows(vecs, cols, 0);
  }
  return acc;
}

// text like "e46 - e35 + 2e27 - 1/2 e28" with single-digit indices
// relative to base; degree -1 infers it from the first term
ExactForm parse_terms(std::string_view text, int dim, int base, int degree = -1);

// one "coeff (i,j,k)" line per term, sorted by index tuple
std::string dump(const ExactForm& f, int base = 1);
std::string dump(const RealForm& f, int base = 1);
ExactForm parse_dump(std::string_view text, int dim, int degree, int base = 1);

}  // namespace nkmm
