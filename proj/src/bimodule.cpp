#include "wbx/bimodule.hpp"

#include "wbx/error.hpp"

namespace wbx {

LinMap Bimodule::left_act_by(const SRow& x) const {
  LinMap out(dim, dim);
  for (const auto& [i, c] : x)
    for (int j = 0; j < dim; ++j) srow_axpy(out.cols[j], c, left_act[i].cols[j]);
  return out;
}

LinMap Bimodule::right_act_by(const SRow& x) const {
  LinMap out(dim, dim);
  for (const auto& [i, c] : x)
    for (int j = 0; j < dim; ++j) srow_axpy(out.cols[j], c, right_act[i].cols[j]);
  return out;
}

Bimodule Bimodule::regular(const AlgebraPtr& a) {
  Bimodule m;
  m.left_alg = a;
  m.right_alg = a;
  m.dim = a->dim;
  for (int i = 0; i < a->dim; ++i) {
    m.left_act.push_back(a->left_mult(i));
    m.right_act.push_back(a->right_mult(i));
  }
  return m;
}

Report verify_bimodule(const Bimodule& m) {
  Report rep;
  const FiniteAlgebra& a = *m.left_alg;
  const FiniteAlgebra& b = *m.right_alg;

  bool ok = true;
  std::string w;
  for (int i = 0; i < a.dim && ok; ++i)
    for (int j = 0; j < a.dim && ok; ++j) {
      LinMap lhs = m.left_act[i].compose(m.left_act[j]);
      LinMap rhs = m.left_act_by(a.table[i][j]);
      if (!(lhs == rhs)) {
        ok = false;
        w = "left action not associative at (e" + std::to_string(i) + ", e" + std::to_string(j) + ")";
      }
    }
  if (ok && !(m.left_act_by(a.unit) == LinMap::identity(m.dim))) {
    ok = false;
    w = "left unit does not act as identity";
  }
  rep.add("left action", ok, w);

  ok = true;
  w.clear();
  for (int i = 0; i < b.dim && ok; ++i)
    for (int j = 0; j < b.dim && ok; ++j) {
      // (v . e_i) . e_j = v . (e_i e_j)
      LinMap lhs = m.right_act[j].compose(m.right_act[i]);
      LinMap rhs = m.right_act_by(b.table[i][j]);
      if (!(lhs == rhs)) {
        ok = false;
        w = "right action not associative at (e" + std::to_string(i) + ", e" + std::to_string(j) + ")";
      }
    }
  if (ok && !(m.right_act_by(b.unit) == LinMap::identity(m.dim))) {
    ok = false;
    w = "right unit does not act as identity";
  }
  rep.add("right action", ok, w);

  ok = true;
  w.clear();
  for (int i = 0; i < a.dim && ok; ++i)
    for (int j = 0; j < b.dim && ok; ++j) {
      if (!(m.left_act[i].compose(m.right_act[j]) == m.right_act[j].compose(m.left_act[i]))) {
        ok = false;
        w = "actions fail to commute at (e" + std::to_string(i) + ", e" + std::to_string(j) + ")";
      }
    }
  rep.add("actions commute", ok, w);
  return rep;
}

TensorOverResult tensor_over(const Bimodule& m, const FiniteAlgebra& a, const Bimodule& n) {
  if (!(*m.right_alg == a) || !(*n.left_alg == a))
    fail(errc::action_mismatch, "tensor_over: middle algebra does not match the actions");
  int dm = m.dim, dn = n.dim;
  int ambient = dm * dn;
  std::vector<SRow> rel;
  rel.reserve(a.dim * dm * dn);
  for (int r = 0; r < a.dim; ++r) {
    const LinMap& ra = m.right_act[r];
    const LinMap& la = n.left_act[r];
    for (int x = 0; x < dm; ++x)
      for (int y = 0; y < dn; ++y) {
        SRow v = srow_kron(ra.cols[x], srow_unit(y), dn);
        srow_axpy(v, Scalar(-1), srow_kron(srow_unit(x), la.cols[y], dn));
        if (!v.empty()) rel.push_back(std::move(v));
      }
  }
  TensorOverResult out{Bimodule{}, Subquotient::quotient(ambient, rel)};
  out.module.left_alg = m.left_alg;
  out.module.right_alg = n.right_alg;
  out.module.dim = out.space.dim();
  for (int i = 0; i < m.left_alg->dim; ++i)
    out.module.left_act.push_back(induced_map(out.space, out.space,
                                              LinMap::on_leg1(m.left_act[i], dn),
                                              "tensor_over left action"));
  for (int j = 0; j < n.right_alg->dim; ++j)
    out.module.right_act.push_back(induced_map(out.space, out.space,
                                               LinMap::on_leg2(n.right_act[j], dm),
                                               "tensor_over right action"));
  return out;
}

TensorOverResult tensor_over3(const Bimodule& m, const FiniteAlgebra& a, const Bimodule& l,
                              const Bimodule& n) {
  if (!(*m.right_alg == a) || !(*l.left_alg == a) || !(*l.right_alg == a) || !(*n.left_alg == a))
    fail(errc::action_mismatch, "tensor_over3: middle algebra does not match the actions");
  int dm = m.dim, dl = l.dim, dn = n.dim;
  int ambient = dm * dl * dn;
  // echelonize the two pairwise relation spaces first; tensoring the echelon
  // rows spans the same space with far fewer vectors
  Echelon w1(dm * dl);
  Echelon w2(dl * dn);
  for (int r = 0; r < a.dim; ++r) {
    for (int x = 0; x < dm; ++x)
      for (int y = 0; y < dl; ++y) {
        SRow v = srow_kron(m.right_act[r].cols[x], srow_unit(y), dl);
        srow_axpy(v, Scalar(-1), srow_kron(srow_unit(x), l.left_act[r].cols[y], dl));
        if (!v.empty()) w1.add(std::move(v));
      }
    for (int y = 0; y < dl; ++y)
      for (int z = 0; z < dn; ++z) {
        SRow v = srow_kron(l.right_act[r].cols[y], srow_unit(z), dn);
        srow_axpy(v, Scalar(-1), srow_kron(srow_unit(y), n.left_act[r].cols[z], dn));
        if (!v.empty()) w2.add(std::move(v));
      }
  }
  std::vector<SRow> rel;
  rel.reserve(w1.rows().size() * dn + w2.rows().size() * dm);
  for (const auto& row : w1.rows())
    for (int z = 0; z < dn; ++z) rel.push_back(srow_kron(row, srow_unit(z), dn));
  for (const auto& row : w2.rows())
    for (int x = 0; x < dm; ++x) rel.push_back(srow_kron(srow_unit(x), row, dl * dn));
  TensorOverResult out{Bimodule{}, Subquotient::quotient(ambient, rel)};
  out.module.left_alg = m.left_alg;
  out.module.right_alg = n.right_alg;
  out.module.dim = out.space.dim();
  for (int i = 0; i < m.left_alg->dim; ++i)
    out.module.left_act.push_back(induced_map(out.space, out.space,
                                              LinMap::on_leg1(m.left_act[i], dl * dn),
                                              "tensor_over3 left action"));
  for (int j = 0; j < n.right_alg->dim; ++j)
    out.module.right_act.push_back(induced_map(out.space, out.space,
                                               LinMap::on_leg2(n.right_act[j], dm * dl),
                                               "tensor_over3 right action"));
  return out;
}

} // namespace wbx
