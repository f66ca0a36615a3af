#pragma once

#include <string>
#include <vector>

#include "wbx/algebra.hpp"

namespace wbx {

long catalan(int k);

// Temperley-Lieb algebra on the planar-pairing basis. Points 0..k-1 are the
// bottom boundary left to right, k..2k-1 the top boundary right to left, so
// diagrams are noncrossing matchings in this circular order.
struct TLAlgebra {
  int strands = 0;
  int index_n = 0;
  Scalar beta;
  Scalar delta;
  AlgebraPtr algebra;
  std::vector<std::vector<int>> diagrams; // match[i] = partner of point i
  std::vector<SRow> idempotents;          // e_1 .. e_{k-1} = U_i / delta
};

TLAlgebra tl_algebra(int n, int k);

struct BratteliFloor {
  std::vector<std::string> labels;
  std::vector<int> ranks;

  long dim() const {
    long d = 0;
    for (int r : ranks) d += static_cast<long>(r) * r;
    return d;
  }
  bool operator==(const BratteliFloor& o) const { return labels == o.labels && ranks == o.ranks; }
};

// Unital inclusion of multi-matrix algebras at the Bratteli level; rows of the
// matrix index the lower floor.
struct InclusionStep {
  BratteliFloor lower;
  BratteliFloor upper;
  std::vector<std::vector<int>> matrix;

  InclusionStep(BratteliFloor low, BratteliFloor up, std::vector<std::vector<int>> m);
};

InclusionStep basic_construction_step(const InclusionStep& step);
InclusionStep compose_steps(const InclusionStep& s1, const InclusionStep& s2);
InclusionStep bratteli_base_change(const InclusionStep& step, const std::vector<int>& new_lower_ranks);

// All nonnegative integer matrices for the middle story given the bottom story
// and the composite, with rows equal on antipode-swapped component pairs.
// Throws NoSolution when empty; solutions are sorted.
std::vector<InclusionStep> infer_middle_inclusion(const InclusionStep& bottom,
                                                  const InclusionStep& composite,
                                                  const std::vector<std::pair<int, int>>& swap_pairs);

struct Tower {
  int n = 0;
  std::vector<BratteliFloor> floors;  // floors[i] = A_{1,i+1}
  std::vector<InclusionStep> steps;   // steps[i] : floors[i] included in floors[i+1]
};

// A_{1,k} = TL_{k+1} ranks for k <= n (generic floors), then repeated Jones
// basic construction. Defaults to the top floor A_{1,2n-1}.
Tower tower(int n, int up_to = -1);

// The H_t (x) H_s floor and the inclusion H_t -> H_t (x) H_s, t -> t (x) 1.
BratteliFloor tensor_floor(const BratteliFloor& t, const BratteliFloor& s);
InclusionStep tensor_bottom_step(const BratteliFloor& t, const BratteliFloor& s);
// Component pairs of the tensor floor swapped by (a,b) -> (b,a).
std::vector<std::pair<int, int>> tensor_swap_pairs(const BratteliFloor& t);

std::string emit_dot(const Tower& tw);
std::string emit_table(const Tower& tw);

} // namespace wbx
