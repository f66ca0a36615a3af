#pragma once

#include <optional>

#include "wbx/takeuchi.hpp"

namespace wbx {

// Weak bialgebra by structure constants: Delta(e_i) lives in the flat
// H (x) H coordinates, the counit is a coefficient functional.
struct WeakBialgebra {
  AlgebraPtr alg;
  std::vector<SRow> comult; // comult[i] over flat2(j,k,dim)
  std::vector<Scalar> counit;

  int dim() const { return alg->dim; }
  SRow comult_of(const SRow& x) const;
  Scalar eps(const SRow& x) const;
  SRow delta_unit() const { return comult_of(alg->unit); }
};

// Componentwise product on a tensor power of the algebra (legs = 2 or 3).
SRow tensor_power_mul(const FiniteAlgebra& a, const SRow& u, const SRow& v, int legs);

Report verify_weak_bialgebra(const WeakBialgebra& h);

struct CounitalData {
  LinMap eps_t; // h -> eps(1_(1) h) 1_(2)
  LinMap eps_s; // h -> 1_(1) eps(h 1_(2))
  std::vector<SRow> t_basis;
  std::vector<SRow> s_basis;
  AlgebraPtr target_algebra; // H_t on t_basis
  LinMap iota;               // H_t -> H, columns t_basis
  LinMap iota_bar;           // the anti map r -> eps_s(iota(r)), lands in H_s
  Report report;
};

CounitalData counital_subalgebras(const WeakBialgebra& h);

bool is_face_algebra(const WeakBialgebra& h);

// Expresses a closed subspace as an algebra on the given basis; solves each
// product back into coordinates. Throws if the span is not closed or lacks 1.
AlgebraPtr subalgebra_on_basis(const FiniteAlgebra& h, const std::vector<SRow>& basis,
                               const char* what);

struct Groupoid {
  struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> compose; // compose[g][h] = g o h, -1 if undefined
  std::vector<int> inverse;
  std::vector<int> identity_of; // per object

  void validate() const; // throws InvalidGroupoid

  static Groupoid pair_groupoid(int n);
  static Groupoid cyclic_group(int order);
  static Groupoid disjoint_trivial(int n);
};

struct Antipode {
  LinMap s;
};

struct GroupoidAlgebra {
  WeakBialgebra h;
  Antipode antipode;
};

GroupoidAlgebra groupoid_weak_hopf(const Groupoid& g);

Report verify_antipode(const WeakBialgebra& h, const Antipode& s);

// H as a x_R-bialgebra over R = H_t (or a supplied isomorphic copy):
// the R^e-ring structure, H x_R H, Delta into it, and the coassociativity /
// counit laws through alpha and theta. Throws EmbeddingFailure naming the
// first violated condition.
struct TakeuchiEmbedding {
  AlgebraPtr r;
  LinMap iota;     // R -> H onto H_t
  LinMap iota_bar; // R -> H onto H_s, anti-multiplicative
  LinMap phi;      // R^e -> H
  REBimodule channels;
  TakeuchiSpace hh; // H x_R H
  LinMap delta;     // H -> H x_R H coordinates
  LinMap eps_hat;   // H -> End(R) coordinates
  Report report;
};

TakeuchiEmbedding embed_as_takeuchi_bialgebra(const WeakBialgebra& h);
TakeuchiEmbedding embed_as_takeuchi_bialgebra(const WeakBialgebra& h, const AlgebraPtr& r,
                                              const LinMap& iota);

struct HopfBetaResult {
  bool bijective = false;
  int rank = 0;
  int domain_dim = 0;
  int codomain_dim = 0;
};

// beta: L (x)_{Rbar} L -> L nabla L, l (x) m -> l_(1) (x) l_(2) m.
HopfBetaResult hopf_beta_check(const WeakBialgebra& h, const TakeuchiEmbedding& emb);
HopfBetaResult hopf_beta_check(const WeakBialgebra& h);

// The unique counit for a given comultiplication, if one exists.
std::optional<std::vector<Scalar>> solve_counit(const FiniteAlgebra& alg,
                                                const std::vector<SRow>& comult);

// The antipode from its two linear axioms, if one exists.
std::optional<LinMap> solve_antipode(const WeakBialgebra& h);

// Structure-preserving bijection test used for round trips.
bool is_weak_bialgebra_iso(const WeakBialgebra& a, const WeakBialgebra& b, const LinMap& f);

} // namespace wbx
