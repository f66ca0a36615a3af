#pragma once

#include "wbx/algebra.hpp"

namespace wbx {

// Bimodule over (left_alg, right_alg): commuting unital left and right actions,
// stored as one matrix per algebra basis element.
struct Bimodule {
  AlgebraPtr left_alg;
  AlgebraPtr right_alg;
  int dim = 0;
  std::vector<LinMap> left_act;  // left_act[i] = action of e_i
  std::vector<LinMap> right_act; // right_act[j] = action of (-)*e_j

  LinMap left_act_by(const SRow& x) const;
  LinMap right_act_by(const SRow& x) const;

  static Bimodule regular(const AlgebraPtr& a);
};

Report verify_bimodule(const Bimodule& m);

struct TensorOverResult {
  Bimodule module;    // outer (left_alg of M, right_alg of N) module structure
  Subquotient space;  // subquotient of the flat M (x) N ambient space
};

// M (x)_A N: quotient of M (x) N by m.a (x) n - m (x) a.n. Requires
// M.right_alg == A == N.left_alg.
TensorOverResult tensor_over(const Bimodule& m, const FiniteAlgebra& a, const Bimodule& n);

// M (x)_A L (x)_A N in one flat coordinate system (relations from both gluings).
TensorOverResult tensor_over3(const Bimodule& m, const FiniteAlgebra& a, const Bimodule& l,
                              const Bimodule& n);

} // namespace wbx
