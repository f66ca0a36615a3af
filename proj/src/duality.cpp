#include "wbx/duality.hpp"

#include "wbx/error.hpp"

namespace wbx {

namespace {

// phi for a weak bialgebra with a supplied base identification.
struct BasePhi {
  LinMap iota;
  LinMap iota_bar;
  std::vector<SRow> phi; // phi[(r,s)] in the algebra, flat2(r, s, n)
  int n = 0;
};

BasePhi base_phi(const WeakBialgebra& h, const AlgebraPtr& r, const LinMap& iota) {
  BasePhi out;
  out.n = r->dim;
  out.iota = iota;
  CounitalData cd = counital_subalgebras(h);
  out.iota_bar = LinMap(out.n, h.dim());
  for (int i = 0; i < out.n; ++i) out.iota_bar.cols[i] = cd.eps_s.apply(iota.cols[i]);
  out.phi.resize(out.n * out.n);
  for (int i = 0; i < out.n; ++i)
    for (int j = 0; j < out.n; ++j)
      out.phi[flat2(i, j, out.n)] = h.alg->mul(iota.cols[i], out.iota_bar.cols[j]);
  return out;
}

SRow eps_hat_at_unit(const Solver& iota_solver, const LinMap& eps_t, int basis) {
  auto coords = iota_solver.solve(eps_t.cols[basis]);
  if (!coords) fail(errc::ill_defined, "eps_t image escaped the base");
  return *coords;
}

} // namespace

Report verify_skew_pairing(const SkewPairing& p) {
  Report rep;
  const WeakBialgebra& lam = p.lambda_side;
  const WeakBialgebra& l = p.l_side;
  int dl = l.dim(), dm = lam.dim(), n = p.base->dim;
  const FiniteAlgebra& r = *p.base;

  BasePhi pl = base_phi(l, p.base, p.iota_l);
  BasePhi pm = base_phi(lam, p.base, p.iota_lambda);

  auto tau_of = [&](const SRow& xi, const SRow& ell) {
    SRow out;
    for (const auto& [i, ci] : xi)
      for (const auto& [j, cj] : ell) srow_axpy(out, ci * cj, p.tau.cols[flat2(i, j, dl)]);
    return out;
  };

  // skp.1
  bool ok = true;
  std::string w;
  for (int rr = 0; rr < n && ok; ++rr)
    for (int s = 0; s < n && ok; ++s)
      for (int xi = 0; xi < dm && ok; ++xi) {
        SRow left1 = lam.alg->mul(pm.phi[flat2(rr, s, n)], srow_unit(xi));
        if (left1.empty()) continue;
        for (int t = 0; t < n && ok; ++t)
          for (int u = 0; u < n && ok; ++u) {
            SRow left2 = lam.alg->mul(left1, pm.phi[flat2(t, u, n)]);
            if (left2.empty()) continue;
            for (int ell = 0; ell < dl && ok; ++ell) {
              SRow tleft = tau_of(left2, srow_unit(ell));
              for (int v = 0; v < n; ++v) {
                SRow lhs = r.mul(tleft, srow_unit(v));
                SRow inner = l.alg->mul(pl.phi[flat2(t, v, n)],
                                        l.alg->mul(srow_unit(ell), pl.phi[flat2(u, s, n)]));
                SRow rhs = r.mul(srow_unit(rr), tau_of(srow_unit(xi), inner));
                if (!srow_eq(lhs, rhs)) {
                  ok = false;
                  w = "skp.1 fails at (r" + std::to_string(rr) + ",s" + std::to_string(s) + ",t" +
                      std::to_string(t) + ",u" + std::to_string(u) + ",v" + std::to_string(v) +
                      ", xi" + std::to_string(xi) + ", l" + std::to_string(ell) + ")";
                  break;
                }
              }
            }
          }
      }
  rep.add("skp.1", ok, w);

  // skp.2: tau(xi | l m) = tau(tau(xi_2|m)bar xi_1 | l); tau(xi|1) = eps(xi)(1)
  ok = true;
  w.clear();
  for (int xi = 0; xi < dm && ok; ++xi)
    for (int ell = 0; ell < dl && ok; ++ell)
      for (int m2 = 0; m2 < dl; ++m2) {
        SRow lhs = tau_of(srow_unit(xi), l.alg->mul(srow_unit(ell), srow_unit(m2)));
        SRow rhs;
        for (const auto& [uv, c] : lam.comult[xi]) {
          int x1 = uv / dm, x2 = uv % dm;
          SRow rvec = tau_of(srow_unit(x2), srow_unit(m2));
          // rbar . xi_1 through the barred embedding of Lambda
          SRow xi1 = srow_unit(x1);
          SRow shifted;
          for (const auto& [ri, rc] : rvec)
            srow_axpy(shifted, rc, lam.alg->mul(pm.iota_bar.cols[ri], xi1));
          srow_axpy(rhs, c, tau_of(shifted, srow_unit(ell)));
        }
        if (!srow_eq(lhs, rhs)) {
          ok = false;
          w = "skp.2 fails at (xi" + std::to_string(xi) + ", l" + std::to_string(ell) + ", m" +
              std::to_string(m2) + ")";
          break;
        }
      }
  if (ok) {
    CounitalData cdm = counital_subalgebras(lam);
    Solver sm(p.iota_lambda);
    for (int xi = 0; xi < dm && ok; ++xi) {
      SRow lhs = tau_of(srow_unit(xi), l.alg->unit);
      SRow rhs = eps_hat_at_unit(sm, cdm.eps_t, xi);
      if (!srow_eq(lhs, rhs)) {
        ok = false;
        w = "tau(xi|1) != eps(xi)(1) at xi" + std::to_string(xi);
      }
    }
  }
  rep.add("skp.2", ok, w);

  // skp.3: tau(xi zeta | l) = tau(xi | tau(zeta|l_1) l_2); tau(1|l) = eps(l)(1)
  ok = true;
  w.clear();
  for (int xi = 0; xi < dm && ok; ++xi)
    for (int z = 0; z < dm && ok; ++z)
      for (int ell = 0; ell < dl; ++ell) {
        SRow lhs = tau_of(lam.alg->mul(srow_unit(xi), srow_unit(z)), srow_unit(ell));
        SRow rhs;
        for (const auto& [uv, c] : l.comult[ell]) {
          int l1 = uv / dl, l2 = uv % dl;
          SRow rvec = tau_of(srow_unit(z), srow_unit(l1));
          SRow shifted;
          for (const auto& [ri, rc] : rvec)
            srow_axpy(shifted, rc, l.alg->mul(pl.iota.cols[ri], srow_unit(l2)));
          srow_axpy(rhs, c, tau_of(srow_unit(xi), shifted));
        }
        if (!srow_eq(lhs, rhs)) {
          ok = false;
          w = "skp.3 fails at (xi" + std::to_string(xi) + ", zeta" + std::to_string(z) + ", l" +
              std::to_string(ell) + ")";
          break;
        }
      }
  if (ok) {
    CounitalData cdl = counital_subalgebras(l);
    Solver sl(p.iota_l);
    SRow one_lambda;
    // unit of Lambda in coordinates
    one_lambda = lam.alg->unit;
    for (int ell = 0; ell < dl && ok; ++ell) {
      SRow lhs = tau_of(one_lambda, srow_unit(ell));
      SRow rhs = eps_hat_at_unit(sl, cdl.eps_t, ell);
      if (!srow_eq(lhs, rhs)) {
        ok = false;
        w = "tau(1|l) != eps(l)(1) at l" + std::to_string(ell);
      }
    }
  }
  rep.add("skp.3", ok, w);
  return rep;
}

WeakBialgebra plain_dual(const WeakBialgebra& h) {
  int d = h.dim();
  WeakBialgebra dual;
  auto a = std::make_shared<FiniteAlgebra>();
  a->dim = d;
  a->table.assign(d, std::vector<SRow>(d));
  for (int i = 0; i < d; ++i)
    a->labels.push_back((i < (int)h.alg->labels.size() ? h.alg->labels[i] : "e" + std::to_string(i)) +
                        "*");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      SRow col;
      for (int k = 0; k < d; ++k) {
        Scalar c = srow_coeff(h.comult[k], flat2(i, j, d));
        if (!c.is_zero()) col.emplace_back(k, c);
      }
      a->table[i][j] = std::move(col);
    }
  for (int i = 0; i < d; ++i)
    if (!h.counit[i].is_zero()) a->unit.emplace_back(i, h.counit[i]);
  dual.alg = a;
  for (int k = 0; k < d; ++k) {
    SRow cm;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Scalar c = srow_coeff(h.alg->table[i][j], k);
        if (!c.is_zero()) cm.emplace_back(flat2(i, j, d), c);
      }
    dual.comult.push_back(srow_normalize(std::move(cm)));
    dual.counit.push_back(srow_coeff(h.alg->unit, k));
  }
  return dual;
}

DualResult dual_weak_bialgebra(const WeakBialgebra& h) {
  int d = h.dim();
  DualResult out;
  out.dual = plain_dual(h);

  // evaluation pairing: base R = H_t of h; resolve the Lambda-side embedding
  // and the R-valued tau by demanding skp.1-3
  CounitalData cd = counital_subalgebras(h);
  AlgebraPtr r = cd.target_algebra;
  int n = r->dim;
  CounitalData cdd = counital_subalgebras(out.dual);

  // tau through the Frobenius structure of (R, eps o iota): with dual bases
  // sum x_i (x) y_i of the form G[a][b] = eps(iota(e_a) iota(e_b)),
  //   tau(xi | l) = sum_i x_i xi(iotabar(y_i) l)     (and its mirrors).
  std::vector<std::pair<std::string, LinMap>> tau_candidates;
  {
    LinMap gram(n, n);
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a) {
        Scalar v = h.eps(h.alg->mul(cd.iota.cols[a], cd.iota.cols[b]));
        if (!v.is_zero()) gram.cols[b].emplace_back(a, v);
      }
    Solver gram_solver(gram);      // solves G x = b, i.e. columns of G^{-1}
    std::vector<SRow> ginv_cols(n); // G^{-1} e_c
    bool invertible = true;
    for (int c = 0; c < n; ++c) {
      auto sol = gram_solver.solve(srow_unit(c));
      if (!sol) {
        invertible = false;
        break;
      }
      ginv_cols[c] = *sol;
    }
    if (!invertible) fail(errc::ill_defined, "the counit form on H_t is degenerate");

    // candidate builders: the variant picks which leg carries the inverse
    // index, which side the evaluation multiplies on, the transpose, and
    // whether the argument is twisted by the antipode (the op/coop twist of
    // the left dual)
    auto antipode = solve_antipode(h);
    int nvariants = antipode ? 16 : 8;
    for (int variant = 0; variant < nvariants; ++variant) {
      LinMap tau(d * d, n);
      for (int xi = 0; xi < d; ++xi)
        for (int ell = 0; ell < d; ++ell) {
          SRow arg = variant < 8 ? srow_unit(ell) : antipode->cols[ell];
          SRow val;
          for (int a = 0; a < n; ++a)
            for (const auto& [b, cab] : ginv_cols[a]) {
              int out_leg = (variant / 4) % 2 == 0 ? a : b;
              int in_leg = (variant / 4) % 2 == 0 ? b : a;
              SRow inner;
              switch (variant % 4) {
                case 0: inner = h.alg->mul(cd.iota_bar.cols[in_leg], arg); break;
                case 1: inner = h.alg->mul(arg, cd.iota.cols[in_leg]); break;
                case 2: inner = h.alg->mul(cd.iota.cols[in_leg], arg); break;
                default: inner = h.alg->mul(arg, cd.iota_bar.cols[in_leg]); break;
              }
              Scalar pairing = srow_coeff(inner, xi);
              if (!pairing.is_zero()) srow_axpy(val, cab * pairing, srow_unit(out_leg));
            }
          tau.cols[flat2(xi, ell, d)] = std::move(val);
        }
      static const char* names[] = {
          "sum x_i xi(iotabar(y_i) l)",    "sum x_i xi(l iota(y_i))",
          "sum x_i xi(iota(y_i) l)",       "sum x_i xi(l iotabar(y_i))",
          "sum y_i xi(iotabar(x_i) l)",    "sum y_i xi(l iota(x_i))",
          "sum y_i xi(iota(x_i) l)",       "sum y_i xi(l iotabar(x_i))",
          "sum x_i xi(iotabar(y_i) S(l))", "sum x_i xi(S(l) iota(y_i))",
          "sum x_i xi(iota(y_i) S(l))",    "sum x_i xi(S(l) iotabar(y_i))",
          "sum y_i xi(iotabar(x_i) S(l))", "sum y_i xi(S(l) iota(x_i))",
          "sum y_i xi(iota(x_i) S(l))",    "sum y_i xi(S(l) iotabar(x_i))"};
      tau_candidates.emplace_back(names[variant], tau);
    }
  }


  // For each tau candidate, the base embedding of the dual side is forced by
  // the four slots of the module identity (r sbar xi t ubar)(l) = r xi(t l u sbar):
  //   A: tau(eta xi | l)            = r tau(xi | l)
  //   B: tau(eps_s(eta) xi | l)     = tau(xi | l iotabar(r))
  //   C: tau(xi eta | l)            = tau(xi | iota(r) l)
  //   D: tau(xi eps_s(eta) | l)     = tau(xi | l iota(r))
  // all linear in eta = iota_dual(r); solve, then verify everything.
  LinMap iota_bar_l(n, d);
  for (int i = 0; i < n; ++i) iota_bar_l.cols[i] = cd.eps_s.apply(cd.iota.cols[i]);
  for (const auto& [tname, tau] : tau_candidates) {
    auto tau_at = [&](const SRow& xi, const SRow& ell) {
      SRow val;
      for (const auto& [i, ci] : xi)
        for (const auto& [j, cj] : ell) srow_axpy(val, ci * cj, tau.cols[flat2(i, j, d)]);
      return val;
    };
    int block = d * d * n;
    LinMap sys(d, 4 * block);
    for (int eta = 0; eta < d; ++eta) {
      SRow col;
      SRow eta_s = cdd.eps_s.cols[eta];
      for (int xi = 0; xi < d; ++xi) {
        SRow prod_a = out.dual.alg->mul(srow_unit(eta), srow_unit(xi));
        SRow prod_b = out.dual.alg->mul(eta_s, srow_unit(xi));
        SRow prod_c = out.dual.alg->mul(srow_unit(xi), srow_unit(eta));
        SRow prod_d = out.dual.alg->mul(srow_unit(xi), eta_s);
        for (int ell = 0; ell < d; ++ell) {
          for (const auto& [ri, c] : tau_at(prod_a, srow_unit(ell)))
            col.push_back({0 * block + flat2(flat2(xi, ell, d), ri, n), c});
          for (const auto& [ri, c] : tau_at(prod_b, srow_unit(ell)))
            col.push_back({1 * block + flat2(flat2(xi, ell, d), ri, n), c});
          for (const auto& [ri, c] : tau_at(prod_c, srow_unit(ell)))
            col.push_back({2 * block + flat2(flat2(xi, ell, d), ri, n), c});
          for (const auto& [ri, c] : tau_at(prod_d, srow_unit(ell)))
            col.push_back({3 * block + flat2(flat2(xi, ell, d), ri, n), c});
        }
      }
      sys.cols[eta] = srow_normalize(std::move(col));
    }
    Solver sys_solver(sys);
    LinMap emb(n, d);
    bool solved = true;
    for (int rr = 0; rr < n; ++rr) {
      SRow rhs;
      for (int xi = 0; xi < d; ++xi)
        for (int ell = 0; ell < d; ++ell) {
          for (const auto& [ri, c] : r->mul(srow_unit(rr), tau.cols[flat2(xi, ell, d)]))
            rhs.push_back({0 * block + flat2(flat2(xi, ell, d), ri, n), c});
          for (const auto& [ri, c] :
               tau_at(srow_unit(xi), h.alg->mul(srow_unit(ell), iota_bar_l.cols[rr])))
            rhs.push_back({1 * block + flat2(flat2(xi, ell, d), ri, n), c});
          for (const auto& [ri, c] :
               tau_at(srow_unit(xi), h.alg->mul(cd.iota.cols[rr], srow_unit(ell))))
            rhs.push_back({2 * block + flat2(flat2(xi, ell, d), ri, n), c});
          for (const auto& [ri, c] :
               tau_at(srow_unit(xi), h.alg->mul(srow_unit(ell), cd.iota.cols[rr])))
            rhs.push_back({3 * block + flat2(flat2(xi, ell, d), ri, n), c});
        }
      auto sol = sys_solver.solve(srow_normalize(std::move(rhs)));
      if (!sol) {
        solved = false;
        break;
      }
      emb.cols[rr] = *sol;
    }
    if (!solved) continue;
    if (!check_algebra_map(emb, *r, *out.dual.alg)) continue;
    if (emb.rank() != n) continue;
    if (!same_span(d, emb.cols, cdd.t_basis)) continue;
    SkewPairing p{out.dual, h, r, emb, cd.iota, tau};
    if (verify_skew_pairing(p).pass()) {
      out.eval = p;
      out.convention = std::string("tau = ") + tname + ", iota_dual solved from skp.1";
      return out;
    }
  }

  fail(errc::ill_defined, "no evaluation pairing convention satisfies skp.1-3");
}

SkewPairing induce_pairing(const SkewPairing& p, const BaseChange& bc_lambda,
                           const BaseChange& bc_l) {
  const MoritaContext& ctx = bc_l.ctx;
  const WeakBialgebra& lam = p.lambda_side;
  const WeakBialgebra& l = p.l_side;
  int dl = l.dim(), dm = lam.dim();
  int dp = ctx.p.dim, dq = ctx.q.dim;
  int dqe = dq * dp;
  int ns = ctx.s->dim;

  BasePhi pl = base_phi(l, p.base, p.iota_l);

  auto tau_of = [&](int xi, const SRow& ell) {
    SRow out;
    for (const auto& [j, cj] : ell) srow_axpy(out, cj, p.tau.cols[flat2(xi, j, dl)]);
    return out;
  };

  // tau~(p1 qbar1 (x) xi (x) q2 pbar2 | p3 qbar3 (x) l (x) q4 pbar4)
  //   = p1 tau(xi | (q2 p3) l (q4 p2)(q1 p4)bar) q3
  auto tau_flat = [&](int ix, int iy) {
    // decompose the Lambda-side flat index
    int y1 = ix % dqe;
    int rest = ix / dqe;
    int xi = rest % dm;
    int a1 = rest / dm;
    int p1 = a1 / dq, q1 = a1 % dq;
    int q2 = y1 / dp, p2 = y1 % dp;
    // and the L-side one
    int y2 = iy % dqe;
    int rest2 = iy / dqe;
    int ell = rest2 % dl;
    int a2 = rest2 / dl;
    int p3 = a2 / dq, q3 = a2 % dq;
    int q4 = y2 / dp, p4 = y2 % dp;

    SRow r1 = ctx.g.apply(srow_kron(srow_unit(q2), srow_unit(p3), dp));
    SRow r2 = ctx.g.apply(srow_kron(srow_unit(q4), srow_unit(p2), dp));
    SRow r3 = ctx.g.apply(srow_kron(srow_unit(q1), srow_unit(p4), dp));
    // inner = iota(r1) l iota(r2) iotabar(r3)
    SRow inner = srow_unit(ell);
    inner = l.alg->mul(pl.iota.apply(r1), inner);
    inner = l.alg->mul(inner, pl.iota.apply(r2));
    inner = l.alg->mul(inner, pl.iota_bar.apply(r3));
    SRow r0 = tau_of(xi, inner);
    if (r0.empty()) return SRow{};
    // p1 r0 q3 in S through f
    SRow p1r0 = ctx.p.right_act_by(r0).cols[p1];
    return ctx.f.apply(srow_kron(p1r0, srow_unit(q3), dq));
  };

  int dtm = bc_lambda.space.dim();
  int dtl = bc_l.space.dim();
  LinMap tau_tilde(dtm * dtl, ns);
  for (int x = 0; x < dtm; ++x) {
    SRow xrep = bc_lambda.space.include_unit(x);
    for (int y = 0; y < dtl; ++y) {
      SRow yrep = bc_l.space.include_unit(y);
      SRow acc;
      for (const auto& [ix, cx] : xrep)
        for (const auto& [iy, cy] : yrep) srow_axpy(acc, cx * cy, tau_flat(ix, iy));
      tau_tilde.cols[flat2(x, y, dtl)] = std::move(acc);
    }
  }

  // representative independence in both slots
  for (const auto& w : bc_lambda.space.relations().rows())
    for (int y = 0; y < dtl; ++y) {
      SRow yrep = bc_l.space.include_unit(y);
      SRow acc;
      for (const auto& [ix, cx] : w)
        for (const auto& [iy, cy] : yrep) srow_axpy(acc, cx * cy, tau_flat(ix, iy));
      if (!acc.empty()) fail(errc::ill_defined, "tau~ not well defined in the Lambda slot");
    }
  for (const auto& w : bc_l.space.relations().rows())
    for (int x = 0; x < dtm; ++x) {
      SRow xrep = bc_lambda.space.include_unit(x);
      SRow acc;
      for (const auto& [ix, cx] : xrep)
        for (const auto& [iy, cy] : w) srow_axpy(acc, cx * cy, tau_flat(ix, iy));
      if (!acc.empty()) fail(errc::ill_defined, "tau~ not well defined in the L slot");
    }

  return SkewPairing{bc_lambda.out, bc_l.out, ctx.s, bc_lambda.iota_s, bc_l.iota_s, tau_tilde};
}

DualityIso dual_base_change_iso(const WeakBialgebra& l, const MoritaContext& ctx,
                                const BaseChange& bc_l) {
  DualityIso out;
  DualResult dl = dual_weak_bialgebra(l);
  out.bc_lambda = base_change(dl.dual, ctx, dl.eval.iota_lambda);
  out.induced = induce_pairing(dl.eval, out.bc_lambda, bc_l);
  out.dual_out = plain_dual(bc_l.out);

  // In the Hom_{Sbar}(L~, S) realization, F(x) is literally evaluation against
  // tau~, and the S-valued evaluation scalarizes through lambda_S = eps o iota.
  // F as a map into the plain dual is lambda_S o tau~(x | -).
  int dt = bc_l.out.dim();
  int ns = ctx.s->dim;
  auto lambda_s = [&](const SRow& svec) {
    return bc_l.out.eps(bc_l.iota_s.apply(svec));
  };
  out.f = LinMap(out.bc_lambda.out.dim(), dt);
  for (int x = 0; x < out.bc_lambda.out.dim(); ++x) {
    SRow col;
    for (int y = 0; y < dt; ++y) {
      Scalar v = lambda_s(out.induced.tau.cols[flat2(x, y, dt)]);
      if (!v.is_zero()) col.emplace_back(y, v);
    }
    out.f.cols[x] = std::move(col);
  }

  out.report.add("F bijective", out.f.rank() == dt && out.bc_lambda.out.dim() == dt);
  {
    const WeakBialgebra& a = out.bc_lambda.out;
    const WeakBialgebra& b = out.dual_out;
    int d = a.dim();
    bool mult = true, anti = true;
    for (int i = 0; i < d && (mult || anti); ++i)
      for (int j = 0; j < d; ++j) {
        SRow img = out.f.apply(a.alg->table[i][j]);
        if (!srow_eq(img, b.alg->mul(out.f.cols[i], out.f.cols[j]))) mult = false;
        if (!srow_eq(img, b.alg->mul(out.f.cols[j], out.f.cols[i]))) anti = false;
        if (!mult && !anti) break;
      }
    bool coalg = srow_eq(out.f.apply(a.alg->unit), b.alg->unit);
    for (int i = 0; i < d && coalg; ++i) {
      SRow lhs;
      for (const auto& [uv, c] : a.comult[i]) {
        int u = uv / d, v = uv % d;
        srow_axpy(lhs, c, srow_kron(out.f.cols[u], out.f.cols[v], d));
      }
      if (!srow_eq(lhs, b.comult_of(out.f.cols[i])) || a.counit[i] != b.eps(out.f.cols[i]))
        coalg = false;
    }
    // the left dual is only defined up to the op twist; report which
    // realization F lands in
    out.report.add("F coalgebra map with matching unit and counit", coalg);
    out.report.add("F multiplicative onto the dual or its opposite", mult || anti,
                   mult ? "plain dual" : (anti ? "opposite multiplication" : ""));
  }

  // eval o (F x id) = tau~: the S-valued evaluation is recovered from the
  // scalarized F through the Frobenius dual bases of (S, lambda_S), i.e.
  // tau~(x|y) = sum_i x_i lambda_S(tau~(x | iotabar_S(y_i) y)).
  {
    // dual bases: sum_{a,b} (G^{-1})[b][a] e_a (x) e_b for G[a][b] = lambda_S(e_a e_b)
    LinMap gram(ns, ns);
    for (int b = 0; b < ns; ++b)
      for (int a = 0; a < ns; ++a) {
        Scalar v = lambda_s(ctx.s->mul(srow_unit(a), srow_unit(b)));
        if (!v.is_zero()) gram.cols[b].emplace_back(a, v);
      }
    Solver gs(gram);
    bool evcheck = true;
    std::vector<SRow> ginv(ns);
    for (int c = 0; c < ns; ++c) {
      auto sol = gs.solve(srow_unit(c));
      if (!sol) {
        evcheck = false;
        break;
      }
      ginv[c] = *sol;
    }
    LinMap iota_bar_s(ns, dt);
    {
      CounitalData cdo = counital_subalgebras(bc_l.out);
      for (int i = 0; i < ns; ++i) iota_bar_s.cols[i] = cdo.eps_s.apply(bc_l.iota_s.cols[i]);
    }
    for (int x = 0; x < out.bc_lambda.out.dim() && evcheck; ++x)
      for (int y = 0; y < dt; ++y) {
        SRow expect = out.induced.tau.cols[flat2(x, y, dt)];
        SRow got;
        for (int a = 0; a < ns; ++a)
          for (const auto& [b, cab] : ginv[a]) {
            // argument iotabar_S(e_b) y inside L~
            SRow arg = bc_l.out.alg->mul(iota_bar_s.cols[b], srow_unit(y));
            Scalar v(0);
            for (const auto& [yy, cy] : arg) v += cy * srow_coeff(out.f.cols[x], yy);
            if (!v.is_zero()) srow_axpy(got, cab * v, srow_unit(a));
          }
        if (!srow_eq(got, expect)) {
          evcheck = false;
          break;
        }
      }
    out.report.add("eval o (F x id) = tau~", evcheck);
  }
  return out;
}

} // namespace wbx
