#pragma once

#include <string>
#include <vector>

#include "nkmm/kform.hpp"

namespace nkmm {

// Left-invariant coframe e^0..e^{n-1} of a Lie algebra with de^i given by a table.
// The constructor checks d(de^i) = 0 for every i and throws otherwise.
class CoframeAlgebra {
 public:
  CoframeAlgebra(std::string name, int dim, int base, std::vector<ExactForm> d_table);

  // su(3) with E_1..E_8, sp(2) with E_0..E_9, su(2)+su(2) with E_1..E_6
  static const CoframeAlgebra& flag();
  static const CoframeAlgebra& sp2();
  static const CoframeAlgebra& su2_squared();

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  int base() const { return base_; }
  const ExactForm& d_generator(int i) const { return d_exact_.at(i); }
  const RealForm& d_generator_real(int i) const { return d_real_.at(i); }
  std::string label(int i) const { return "e" + std::to_string(i + base_); }

 private:
  std::string name_;
  int dim_;
  int base_;
  std::vector<ExactForm> d_exact_;
  std::vector<RealForm> d_real_;
};

namespace detail {
inline const ExactForm& d_gen(const CoframeAlgebra& a, int i, const QuadScalar*) { return a.d_generator(i); }
inline const RealForm& d_gen(const CoframeAlgebra& a, int i, const double*) { return a.d_generator_real(i); }
}  // namespace detail

// exterior derivative of a constant-coefficient form, extended by Leibniz
template <class S>
BasicForm<S> coframe_d(const BasicForm<S>& w, const CoframeAlgebra& alg) {
  if (w.dim() != alg.dim()) throw ArgumentError("coframe_d: dimension mismatch");
  BasicForm<S> r(w.dim(), w.degree() + 1);
  for (const auto& [m, c] : w.terms()) {
    std::vector<int> idx = mask_indices(m);
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& dk = detail::d_gen(alg, idx[k], static_cast<const S*>(nullptr));
      if (dk.is_zero()) continue;
      Mask before = 0, after = 0;
      for (std::size_t a = 0; a < k; ++a) before |= Mask(1) << idx[a];
      for (std::size_t a = k + 1; a < idx.size(); ++a) after |= Mask(1) << idx[a];
      BasicForm<S> pre(w.dim(), static_cast<int>(k));
      pre.accumulate(before, (k & 1) ? S(-c) : c);
      BasicForm<S> post(w.dim(), static_cast<int>(idx.size() - k - 1));
      post.accumulate(after, S(1));
      r = r + wedge(wedge(pre, dk), post);
    }
  }
  return r;
}

struct StructureForms {
  ExactForm sigma0;
  ExactForm phi0;
  ExactForm psi0;
};

const StructureForms& flag_structure();
const StructureForms& cp3_structure();
const StructureForms& s3s3_structure();

}  // namespace nkmm
