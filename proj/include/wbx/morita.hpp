#pragma once

#include "wbx/weak_bialgebra.hpp"

namespace wbx {

// Strict Morita context (R, S, P, Q, f, g): P an (S,R)-bimodule, Q an (R,S)-
// bimodule, f: P (x)_R Q -> S and g: Q (x)_S P -> R inverse bimodule pairings,
// with the preimages of the units stored as explicit tensors.
struct MoritaContext {
  AlgebraPtr r;
  AlgebraPtr s;
  Bimodule p;
  Bimodule q;
  LinMap f;   // on the flat P (x) Q space
  LinMap g;   // on the flat Q (x) P space
  SRow f_inv; // f-preimage of 1_S in P (x) Q
  SRow g_inv; // g-preimage of 1_R in Q (x) P

  // For contexts whose P and Q are carried by an idempotent inside R (the
  // canonical one): the embeddings into R and the idempotent, used by the
  // corner realization.
  std::optional<LinMap> p_in_r;
  std::optional<LinMap> q_in_r;
  std::optional<SRow> p_element;
};

Report verify_context(const MoritaContext& ctx);

// S = k^n, P = pR, Q = Rp for p the sum of the E^(a)_11.
MoritaContext canonical_context(const MultiMatrixAlgebra& r);

MoritaContext swap_context(const MoritaContext& ctx);

// Left module over the algebra of a weak bialgebra.
struct LModule {
  int dim = 0;
  std::vector<LinMap> act;

  LinMap act_by(const SRow& x) const;
  static LModule regular(const WeakBialgebra& h);
};

// The base-changed bialgebra L~ = P^e (x)_{R^e} L (x)_{R^e} Q^e over S,
// with the flat carrier space and the transported structure data.
struct BaseChange {
  WeakBialgebra out;
  WeakBialgebra input;
  LinMap iota_s;     // S -> L~, lands in (L~)_t
  LinMap iota_s_bar; // S -> L~, the source-side anti copy
  Subquotient space; // subquotient of the flat P^e (x) L (x) Q^e
  Bimodule pe;       // P (x) Qbar as (S^e, R^e)-bimodule
  Bimodule qe;       // Q (x) Pbar as (R^e, S^e)-bimodule
  TakeuchiEmbedding emb; // embedding of the input over ctx.r
  MoritaContext ctx;
  AlgebraPtr se; // S^e
};

// iota identifies ctx.r with L_t; throws BaseMismatch if it does not.
BaseChange base_change(const WeakBialgebra& l, const MoritaContext& ctx, const LinMap& iota);

// Base change along the swapped context.
BaseChange amplify(const WeakBialgebra& h, const MoritaContext& ctx, const LinMap& iota);

// Corner realization p pbar L p pbar of a canonical-context base change,
// with the isomorphism from the tensor carrier.
struct CornerRealization {
  std::vector<SRow> corner_basis; // vectors in L
  LinMap kappa;                   // L~ coordinates -> L, image = corner
  LinMap iso;                     // L~ coordinates -> corner coordinates
  Report report;
};

CornerRealization corner_realization(const BaseChange& bc);

struct TransportedModule {
  Subquotient space; // subquotient of the flat P^e (x) M
  LModule mod;       // L~-module structure
};

TransportedModule transport_module(const LModule& m, const BaseChange& bc);

// M diamond_R N: the int_r quotient of M (x) N with the diagonal L-action.
struct DiamondModule {
  Subquotient space;
  LModule mod;
};

DiamondModule diamond(const LModule& m, const LModule& n, const WeakBialgebra& l,
                      const TakeuchiEmbedding& emb);

struct XiMaps {
  TransportedModule fm, fn, fmn;
  DiamondModule mn;       // M diamond_R N
  Subquotient fm_fn;      // F(M) diamond_S F(N)
  std::vector<LinMap> fm_fn_act; // L~ action on F(M) diamond_S F(N)
  LinMap xi;
  LinMap xi_inv;
  Report report; // invertibility and equivariance
};

XiMaps monoidal_xi(const LModule& m, const LModule& n, const WeakBialgebra& l,
                   const BaseChange& bc);

struct AzumayaReduction {
  WeakBialgebra h;   // ordinary bialgebra on the centralizer
  LinMap inclusion;  // H -> L
  Report report;
};

// Requires the base of emb to be a single full matrix block.
AzumayaReduction azumaya_reduce(const WeakBialgebra& l, const TakeuchiEmbedding& emb);

// Explicit isomorphism base_change(amplify(H)) -> H by collapsing the dual
// bases; verified to be a weak-bialgebra isomorphism.
LinMap round_trip_iso(const WeakBialgebra& h, const TakeuchiEmbedding& emb_h,
                      const BaseChange& amplified, const BaseChange& returned);

} // namespace wbx
