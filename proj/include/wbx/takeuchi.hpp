#pragma once

#include "wbx/bimodule.hpp"

namespace wbx {

// (R^e, R^e)-bimodule presented by its four action channels per R-basis
// element: left/right action of e_i (x) 1bar ("unbarred") and of
// 1 (x) ebar_i ("barred").
struct REBimodule {
  AlgebraPtr base; // R
  int dim = 0;
  std::vector<LinMap> lu, lb, ru, rb;

  // Channels of an R^e-ring A with structure map phi: R^e -> A.
  static REBimodule from_ring(const AlgebraPtr& r, const FiniteAlgebra& a, const LinMap& phi);
};

// M x_R N: the centralizing subspace (in s) of the quotient of M (x) N by
// rbar.m (x) n - m (x) r.n. Keeps the flat M (x) N ambient coordinates.
struct TakeuchiSpace {
  Subquotient space;   // subquotient of the flat ambient
  REBimodule channels; // surviving R^e-bimodule structure
  int dim_m = 0;
  int dim_n = 0;
};

TakeuchiSpace takeuchi_product(const REBimodule& m, const REBimodule& n);

// M x_R P x_R N from its two-relation / two-condition description, in the flat
// M (x) P (x) N coordinates.
TakeuchiSpace takeuchi_product3(const REBimodule& m, const REBimodule& p, const REBimodule& n);

struct EndRing {
  AlgebraPtr algebra; // End(R), basis E_ij = (e_j -> e_i)
  LinMap phi;         // R^e -> End(R), r (x) sbar -> (t -> r t s)
};

EndRing end_ring(const AlgebraPtr& r);

struct ThetaMaps {
  TakeuchiSpace me; // M x_R End(R)
  TakeuchiSpace em; // End(R) x_R M
  LinMap theta;     // M x_R End(R) -> M,  m (x) f -> f(1)bar . m
  LinMap theta_p;   // End(R) x_R M -> M,  f (x) m -> f(1) . m
  Report report;    // bimodule-map checks
};

ThetaMaps theta_maps(const REBimodule& m, const EndRing& e);

struct AlphaMaps {
  TakeuchiSpace mp, pn;   // M x P, P x N
  TakeuchiSpace mp_n;     // (M x P) x N
  TakeuchiSpace m_pn;     // M x (P x N)
  TakeuchiSpace triple;   // M x P x N
  LinMap alpha;           // (M x P) x N -> M x P x N ("do nothing" on representatives)
  LinMap alpha_p;         // M x (P x N) -> M x P x N
};

AlphaMaps alpha_maps(const REBimodule& m, const REBimodule& p, const REBimodule& n);

} // namespace wbx
