#pragma once

#include "wbx/morita.hpp"

namespace wbx {

// R-valued skew pairing tau: Lambda (x) L -> R between two weak bialgebras
// with a common base identification.
struct SkewPairing {
  WeakBialgebra lambda_side;
  WeakBialgebra l_side;
  AlgebraPtr base;      // R
  LinMap iota_lambda;   // R -> Lambda, onto (Lambda)_t
  LinMap iota_l;        // R -> L, onto L_t
  LinMap tau;           // flat Lambda (x) L -> R
};

Report verify_skew_pairing(const SkewPairing& p);

struct DualResult {
  WeakBialgebra dual;
  SkewPairing eval;        // evaluation pairing between the dual and the input
  std::string convention;  // which base embedding / tau realization passed
};

// Structure-constant transposes plus the R-valued evaluation pairing; the
// residual convention freedom is resolved by demanding skp.1-3 hold.
DualResult dual_weak_bialgebra(const WeakBialgebra& h);

// tau~ between the base changes of the two sides, on representatives.
SkewPairing induce_pairing(const SkewPairing& p, const BaseChange& bc_lambda,
                           const BaseChange& bc_l);

// The plain dual structure tensors (no pairing attached).
WeakBialgebra plain_dual(const WeakBialgebra& h);

struct DualityIso {
  LinMap f; // base_change(dual(L)) -> dual(base_change(L))
  SkewPairing induced;     // tau~
  WeakBialgebra dual_out;  // plain dual of base_change(L)
  BaseChange bc_lambda;
  Report report;
};

DualityIso dual_base_change_iso(const WeakBialgebra& l, const MoritaContext& ctx,
                                const BaseChange& bc_l);

} // namespace wbx
