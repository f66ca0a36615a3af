#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wbx/linalg.hpp"
#include "wbx/report.hpp"

namespace wbx {

// Finite-dimensional associative unital algebra by structure constants:
// e_i * e_j = sum_k mult[i][j]_k e_k on a named basis.
struct FiniteAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<SRow>> table; // table[i][j] = coefficients of e_i e_j
  SRow unit;

  SRow mul(const SRow& x, const SRow& y) const;
  LinMap left_mult(int i) const;  // matrix of e_i * (-)
  LinMap right_mult(int i) const; // matrix of (-) * e_i
  LinMap left_mult_by(const SRow& x) const;
  LinMap right_mult_by(const SRow& x) const;

  bool operator==(const FiniteAlgebra& o) const {
    return dim == o.dim && srow_eq(unit, o.unit) && table == o.table;
  }
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

struct MultiMatrixAlgebra {
  std::vector<int> blocks;
  AlgebraPtr algebra;
};

// Matrix units E^{(alpha)}_{ij}; labels "E<alpha>_<i><j>", 1-based.
MultiMatrixAlgebra make_multimatrix(const std::vector<int>& blocks);

// Position of E^{(alpha)}_{ij} (0-based alpha, i, j) in the multimatrix basis.
int multimatrix_index(const std::vector<int>& blocks, int alpha, int i, int j);

// Lists every violated associativity/unit instance; empty iff valid.
Report verify_algebra(const FiniteAlgebra& a);

// Exact basis of { x : x e_i = e_i x for all i }.
std::vector<SRow> center(const FiniteAlgebra& a);

bool check_algebra_map(const LinMap& f, const FiniteAlgebra& a, const FiniteAlgebra& b);

// k^n as an algebra (diagonal idempotents).
AlgebraPtr product_field_algebra(int n);

// Enveloping algebra R (x) R-opposite; basis e_i (x) ebar_j at flat2(i, j, dim R).
AlgebraPtr enveloping_algebra(const FiniteAlgebra& r);

// Direct access to the span of a list of vectors (echelonized, deterministic).
std::vector<SRow> span_basis(int ambient, const std::vector<SRow>& vecs);
bool same_span(int ambient, const std::vector<SRow>& a, const std::vector<SRow>& b);

} // namespace wbx
