#include "nkmm/coframe.hpp"

namespace nkmm {

CoframeAlgebra::CoframeAlgebra(std::string name, int dim, int base, std::vector<ExactForm> d_table)
    : name_(std::move(name)), dim_(dim), base_(base), d_exact_(std::move(d_table)) {
  if (static_cast<int>(d_exact_.size()) != dim_) throw ArgumentError("d_table size != dim");
  for (const auto& f : d_exact_)
    if (f.dim() != dim_ || f.degree() != 2) throw ArgumentError("d_table entry must be a 2-form of the algebra's dimension");
  for (const auto& f : d_exact_) d_real_.push_back(to_real(f));
  for (int i = 0; i < dim_; ++i) {
    if (!coframe_d(d_exact_[i], *this).is_zero())
      throw ArgumentError(name_ + ": d(d" + label(i) + ") != 0");
  }
}

namespace {

std::vector<ExactForm> table(int dim, int base, std::initializer_list<const char*> rows) {
  std::vector<ExactForm> out;
  for (const char* r : rows) out.push_back(parse_terms(r, dim, base, 2));
  return out;
}

}  // namespace

const CoframeAlgebra& CoframeAlgebra::flag() {
  static const CoframeAlgebra alg("su3", 8, 1,
                                  table(8, 1,
                                        {
                                            "e46 - e35 + e27 - e28",
                                            "e36 + e45 - e17 + e18",
                                            "e15 - e26 - 2e47 - e48",
                                            "e52 + e61 + 2e37 + e38",
                                            "e24 - e13 + e67 + 2e68",
                                            "e23 + e14 - e57 - 2e58",
                                            // torus directions E_7, E_8
                                            "2e12 - 2e34",
                                            "-2e12 + 2e56",
                                        }));
  return alg;
}

const CoframeAlgebra& CoframeAlgebra::sp2() {
  static const CoframeAlgebra alg("sp2", 10, 0,
                                  table(10, 0,
                                        {
                                            "2e16 - e25 - e34",
                                            "-2e06 - e24 + e35",
                                            "e05 + e14 - e36 + e37 + e48 + e59",
                                            "e04 - e15 + e26 - e27 - e49 + e58",
                                            "-e03 - e12 - e28 + e39 - e56 - e57",
                                            "-e02 + e13 - e38 + e46 + e47 - e29",
                                            // isotropy sp(1)u(1): E_6..E_9
                                            "2e01 - e23 - e45",
                                            "e23 - e45 - 2e89",
                                            "e24 + e35 + 2e79",
                                            "e25 - e34 - 2e78",
                                        }));
  return alg;
}

const CoframeAlgebra& CoframeAlgebra::su2_squared() {
  static const CoframeAlgebra alg("su2xsu2", 6, 1,
                                  table(6, 1, {"2e23", "2e31", "2e12", "2e56", "2e64", "2e45"}));
  return alg;
}

const StructureForms& flag_structure() {
  static const StructureForms f{
      parse_terms("e12 + e34 + e56", 8, 1),
      parse_terms("-e136 + e246 - e235 - e145", 8, 1),
      parse_terms("e135 - e245 - e146 - e236", 8, 1),
  };
  return f;
}

const StructureForms& cp3_structure() {
  static const StructureForms f{
      parse_terms("e01 + e23 + e45", 10, 0),
      parse_terms("e024 - e134 - e035 - e125", 10, 0),
      parse_terms("e025 - e135 + e034 + e124", 10, 0),
  };
  return f;
}

const StructureForms& s3s3_structure() {
  // 2/(3 sqrt3), 4/(9 sqrt3), -4/27
  static const QuadScalar c2 = QuadScalar(2) / (QuadScalar(3) * QuadScalar::sqrt3());
  static const QuadScalar c3 = QuadScalar(4) / (QuadScalar(9) * QuadScalar::sqrt3());
  static const QuadScalar c4 = QuadScalar::rational(-4, 27);
  static const StructureForms f{
      c2 * parse_terms("e14 + e25 + e36", 6, 1),
      c3 * parse_terms("e126 - e135 - e156 + e234 + e246 - e345", 6, 1),
      c4 * parse_terms("2e123 + 2e456 + e135 - e156 - e234 - e126 + e246 - e345", 6, 1),
  };
  return f;
}

}  // namespace nkmm
