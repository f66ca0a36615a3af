#include "wbx/takeuchi.hpp"

#include "wbx/error.hpp"

namespace wbx {

REBimodule REBimodule::from_ring(const AlgebraPtr& r, const FiniteAlgebra& a, const LinMap& phi) {
  if (!check_algebra_map(phi, *enveloping_algebra(*r), a))
    fail(errc::embedding_failure, "R^e -> A is not an algebra map");
  REBimodule out;
  out.base = r;
  out.dim = a.dim;
  int n = r->dim;
  for (int i = 0; i < n; ++i) {
    SRow eu = phi.apply(srow_kron(srow_unit(i), r->unit, n)); // phi(e_i (x) 1bar)
    SRow eb = phi.apply(srow_kron(r->unit, srow_unit(i), n)); // phi(1 (x) ebar_i)
    out.lu.push_back(a.left_mult_by(eu));
    out.lb.push_back(a.left_mult_by(eb));
    out.ru.push_back(a.right_mult_by(eu));
    out.rb.push_back(a.right_mult_by(eb));
  }
  return out;
}

namespace {

// Stacks condition maps and restricts the quotient to their common kernel,
// checking first that each condition is well defined on the quotient.
Subquotient equalizer(const Subquotient& quot, const std::vector<LinMap>& ambient_conditions,
                      const char* what) {
  for (const auto& c : ambient_conditions)
    for (const auto& w : quot.relations().rows())
      if (!quot.class_is_zero(c.apply(w)))
        fail(errc::ill_defined, std::string(what) + ": equalizer condition not defined on quotient");
  int q = quot.dim();
  LinMap stacked(q, q * static_cast<int>(ambient_conditions.size()));
  int block = 0;
  for (const auto& c : ambient_conditions) {
    LinMap ind = induced_map(quot, quot, c, what);
    for (int j = 0; j < q; ++j)
      for (const auto& [i, s] : ind.cols[j]) stacked.cols[j].emplace_back(block * q + i, s);
    ++block;
  }
  for (auto& col : stacked.cols) col = srow_normalize(std::move(col));
  auto ker = kernel_image(stacked).kernel;
  return quot.restrict(ker);
}

REBimodule induced_channels(const AlgebraPtr& base, const Subquotient& space,
                            const std::vector<LinMap>& lu_amb, const std::vector<LinMap>& lb_amb,
                            const std::vector<LinMap>& ru_amb, const std::vector<LinMap>& rb_amb,
                            const char* what) {
  REBimodule ch;
  ch.base = base;
  ch.dim = space.dim();
  for (size_t i = 0; i < lu_amb.size(); ++i) {
    ch.lu.push_back(induced_map(space, space, lu_amb[i], what));
    ch.lb.push_back(induced_map(space, space, lb_amb[i], what));
    ch.ru.push_back(induced_map(space, space, ru_amb[i], what));
    ch.rb.push_back(induced_map(space, space, rb_amb[i], what));
  }
  return ch;
}

} // namespace

TakeuchiSpace takeuchi_product(const REBimodule& m, const REBimodule& n) {
  if (!(*m.base == *n.base)) fail(errc::action_mismatch, "takeuchi_product: different base algebras");
  int nr = m.base->dim;
  int dm = m.dim, dn = n.dim;
  int ambient = dm * dn;

  // quotient by rbar.m (x) n - m (x) r.n
  std::vector<SRow> rel;
  for (int r = 0; r < nr; ++r)
    for (int x = 0; x < dm; ++x)
      for (int y = 0; y < dn; ++y) {
        SRow v = srow_kron(m.lb[r].cols[x], srow_unit(y), dn);
        srow_axpy(v, Scalar(-1), srow_kron(srow_unit(x), n.lu[r].cols[y], dn));
        if (!v.empty()) rel.push_back(std::move(v));
      }
  Subquotient quot = Subquotient::quotient(ambient, rel);

  // centralizing condition: x.(sbar (x) 1) = x.(1 (x) s) through the right actions
  std::vector<LinMap> conds;
  for (int s = 0; s < nr; ++s)
    conds.push_back(LinMap::on_leg1(m.rb[s], dn) - LinMap::on_leg2(n.ru[s], dm));
  Subquotient space = equalizer(quot, conds, "takeuchi_product");

  TakeuchiSpace out;
  out.dim_m = dm;
  out.dim_n = dn;
  std::vector<LinMap> lu, lb, ru, rb;
  for (int i = 0; i < nr; ++i) {
    lu.push_back(LinMap::on_leg1(m.lu[i], dn));
    lb.push_back(LinMap::on_leg2(n.lb[i], dm));
    ru.push_back(LinMap::on_leg1(m.ru[i], dn));
    rb.push_back(LinMap::on_leg2(n.rb[i], dm));
  }
  out.channels = induced_channels(m.base, space, lu, lb, ru, rb, "takeuchi_product channels");
  out.space = std::move(space);
  return out;
}

TakeuchiSpace takeuchi_product3(const REBimodule& m, const REBimodule& p, const REBimodule& n) {
  if (!(*m.base == *p.base) || !(*p.base == *n.base))
    fail(errc::action_mismatch, "takeuchi_product3: different base algebras");
  int nr = m.base->dim;
  int dm = m.dim, dp = p.dim, dn = n.dim;
  int ambient = dm * dp * dn;

  Echelon w1(dm * dp);
  Echelon w2(dp * dn);
  for (int r = 0; r < nr; ++r) {
    for (int x = 0; x < dm; ++x)
      for (int y = 0; y < dp; ++y) {
        SRow v = srow_kron(m.lb[r].cols[x], srow_unit(y), dp);
        srow_axpy(v, Scalar(-1), srow_kron(srow_unit(x), p.lu[r].cols[y], dp));
        if (!v.empty()) w1.add(std::move(v));
      }
    for (int y = 0; y < dp; ++y)
      for (int z = 0; z < dn; ++z) {
        SRow v = srow_kron(p.lb[r].cols[y], srow_unit(z), dn);
        srow_axpy(v, Scalar(-1), srow_kron(srow_unit(y), n.lu[r].cols[z], dn));
        if (!v.empty()) w2.add(std::move(v));
      }
  }
  std::vector<SRow> rel;
  rel.reserve(w1.rows().size() * dn + w2.rows().size() * dm);
  for (const auto& row : w1.rows())
    for (int z = 0; z < dn; ++z) rel.push_back(srow_kron(row, srow_unit(z), dn));
  for (const auto& row : w2.rows())
    for (int x = 0; x < dm; ++x) rel.push_back(srow_kron(srow_unit(x), row, dp * dn));
  Subquotient quot = Subquotient::quotient(ambient, rel);

  std::vector<LinMap> conds;
  for (int s = 0; s < nr; ++s) {
    conds.push_back(LinMap::on_leg1(m.rb[s], dp * dn) -
                    LinMap::on_leg2(LinMap::on_leg1(p.ru[s], dn), dm));
    conds.push_back(LinMap::on_leg2(LinMap::on_leg1(p.rb[s], dn), dm) -
                    LinMap::on_leg2(n.ru[s], dm * dp));
  }
  Subquotient space = equalizer(quot, conds, "takeuchi_product3");

  TakeuchiSpace out;
  out.dim_m = dm;
  out.dim_n = dn;
  std::vector<LinMap> lu, lb, ru, rb;
  for (int i = 0; i < nr; ++i) {
    lu.push_back(LinMap::on_leg1(m.lu[i], dp * dn));
    lb.push_back(LinMap::on_leg2(n.lb[i], dm * dp));
    ru.push_back(LinMap::on_leg1(m.ru[i], dp * dn));
    rb.push_back(LinMap::on_leg2(n.rb[i], dm * dp));
  }
  out.channels = induced_channels(m.base, space, lu, lb, ru, rb, "takeuchi_product3 channels");
  out.space = std::move(space);
  return out;
}

EndRing end_ring(const AlgebraPtr& r) {
  int n = r->dim;
  auto e = std::make_shared<FiniteAlgebra>();
  e->dim = n * n;
  e->table.assign(e->dim, std::vector<SRow>(e->dim));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      e->labels.push_back("E[" + std::to_string(i) + "," + std::to_string(j) + "]");
  // E_ij o E_kl = delta_jk E_il  (E_ij sends e_j to e_i)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        e->table[flat2(i, j, n)][flat2(j, l, n)] = srow_unit(flat2(i, l, n));
  for (int i = 0; i < n; ++i) e->unit.emplace_back(flat2(i, i, n), Scalar(1));

  LinMap phi(n * n, n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // e_a (x) ebar_b acts as t -> e_a t e_b
      SRow col;
      for (int j = 0; j < n; ++j) {
        SRow img = r->mul(r->mul(srow_unit(a), srow_unit(j)), srow_unit(b));
        for (const auto& [i, c] : img) col.emplace_back(flat2(i, j, n), c);
      }
      phi.cols[flat2(a, b, n)] = srow_normalize(std::move(col));
    }
  return EndRing{e, phi};
}

namespace {

// f(1) of a basis endomorphism, then the chosen left channel of M.
LinMap theta_ambient(const REBimodule& m, const AlgebraPtr& r, bool m_first) {
  int n = r->dim;
  int de = n * n;
  LinMap out(m.dim * de, m.dim);
  for (int x = 0; x < m.dim; ++x)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar c = srow_coeff(r->unit, j); // E_ij(1) = c * e_i
        if (c.is_zero()) continue;
        const LinMap& act = m_first ? m.lb[i] : m.lu[i];
        int idx = m_first ? flat2(x, flat2(i, j, n), de) : flat2(flat2(i, j, n), x, m.dim);
        srow_axpy(out.cols[idx], c, act.cols[x]);
      }
  return out;
}

} // namespace

ThetaMaps theta_maps(const REBimodule& m, const EndRing& e) {
  ThetaMaps out;
  REBimodule ech = REBimodule::from_ring(m.base, *e.algebra, e.phi);
  out.me = takeuchi_product(m, ech);
  out.em = takeuchi_product(ech, m);

  Subquotient target = Subquotient::full(m.dim);
  out.theta = induced_map(out.me.space, target, theta_ambient(m, m.base, true), "theta");
  out.theta_p = induced_map(out.em.space, target, theta_ambient(m, m.base, false), "theta'");

  int n = m.base->dim;
  bool ok = true;
  std::string w;
  for (int i = 0; i < n && ok; ++i) {
    if (!(out.theta.compose(out.me.channels.lu[i]) == m.lu[i].compose(out.theta)) ||
        !(out.theta.compose(out.me.channels.lb[i]) == m.lb[i].compose(out.theta)) ||
        !(out.theta.compose(out.me.channels.ru[i]) == m.ru[i].compose(out.theta)) ||
        !(out.theta.compose(out.me.channels.rb[i]) == m.rb[i].compose(out.theta))) {
      ok = false;
      w = "theta is not an R^e-bimodule map at r-index " + std::to_string(i);
    }
    if (!(out.theta_p.compose(out.em.channels.lu[i]) == m.lu[i].compose(out.theta_p)) ||
        !(out.theta_p.compose(out.em.channels.lb[i]) == m.lb[i].compose(out.theta_p)) ||
        !(out.theta_p.compose(out.em.channels.ru[i]) == m.ru[i].compose(out.theta_p)) ||
        !(out.theta_p.compose(out.em.channels.rb[i]) == m.rb[i].compose(out.theta_p))) {
      ok = false;
      w = "theta' is not an R^e-bimodule map at r-index " + std::to_string(i);
    }
  }
  out.report.add("theta/theta' bimodule maps", ok, w);
  return out;
}

AlphaMaps alpha_maps(const REBimodule& m, const REBimodule& p, const REBimodule& n) {
  AlphaMaps out;
  out.mp = takeuchi_product(m, p);
  out.pn = takeuchi_product(p, n);
  out.triple = takeuchi_product3(m, p, n);
  out.mp_n = takeuchi_product(out.mp.channels, n);
  out.m_pn = takeuchi_product(m, out.pn.channels);

  // (M x P) x N -> M x P x N: expand the inner representative, project.
  {
    int inner = out.mp.space.dim();
    LinMap bridge(inner * n.dim, m.dim * p.dim * n.dim);
    for (int u = 0; u < inner; ++u)
      for (int z = 0; z < n.dim; ++z)
        bridge.cols[flat2(u, z, n.dim)] =
            srow_kron(out.mp.space.include_unit(u), srow_unit(z), n.dim);
    out.alpha = induced_map(out.mp_n.space, out.triple.space, bridge, "alpha");
  }
  {
    int inner = out.pn.space.dim();
    LinMap bridge(m.dim * inner, m.dim * p.dim * n.dim);
    for (int x = 0; x < m.dim; ++x)
      for (int v = 0; v < inner; ++v)
        bridge.cols[flat2(x, v, inner)] =
            srow_kron(srow_unit(x), out.pn.space.include_unit(v), p.dim * n.dim);
    out.alpha_p = induced_map(out.m_pn.space, out.triple.space, bridge, "alpha'");
  }
  return out;
}

} // namespace wbx
