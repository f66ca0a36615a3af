#include "wbx/algebra.hpp"

#include <numeric>

#include "wbx/error.hpp"

namespace wbx {

SRow FiniteAlgebra::mul(const SRow& x, const SRow& y) const {
  SRow out;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y) srow_axpy(out, ci * cj, table[i][j]);
  return out;
}

LinMap FiniteAlgebra::left_mult(int i) const {
  LinMap m(dim, dim);
  for (int j = 0; j < dim; ++j) m.cols[j] = table[i][j];
  return m;
}

LinMap FiniteAlgebra::right_mult(int i) const {
  LinMap m(dim, dim);
  for (int j = 0; j < dim; ++j) m.cols[j] = table[j][i];
  return m;
}

LinMap FiniteAlgebra::left_mult_by(const SRow& x) const {
  LinMap m(dim, dim);
  for (int j = 0; j < dim; ++j) m.cols[j] = mul(x, srow_unit(j));
  return m;
}

LinMap FiniteAlgebra::right_mult_by(const SRow& x) const {
  LinMap m(dim, dim);
  for (int j = 0; j < dim; ++j) m.cols[j] = mul(srow_unit(j), x);
  return m;
}

int multimatrix_index(const std::vector<int>& blocks, int alpha, int i, int j) {
  int off = 0;
  for (int b = 0; b < alpha; ++b) off += blocks[b] * blocks[b];
  return off + i * blocks[alpha] + j;
}

MultiMatrixAlgebra make_multimatrix(const std::vector<int>& blocks) {
  if (blocks.empty()) fail(errc::parse_error, "multimatrix with no blocks");
  for (int d : blocks)
    if (d <= 0) fail(errc::parse_error, "multimatrix block sizes must be positive");
  auto a = std::make_shared<FiniteAlgebra>();
  int dim = 0;
  for (int d : blocks) dim += d * d;
  a->dim = dim;
  a->table.assign(dim, std::vector<SRow>(dim));
  int nb = static_cast<int>(blocks.size());
  for (int alpha = 0; alpha < nb; ++alpha) {
    int d = blocks[alpha];
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        a->labels.push_back("E" + std::to_string(alpha + 1) + "_" + std::to_string(i + 1) +
                            std::to_string(j + 1));
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          a->table[multimatrix_index(blocks, alpha, i, j)]
                  [multimatrix_index(blocks, alpha, j, k)] =
              srow_unit(multimatrix_index(blocks, alpha, i, k));
    for (int i = 0; i < d; ++i)
      a->unit.emplace_back(multimatrix_index(blocks, alpha, i, i), Scalar(1));
  }
  MultiMatrixAlgebra out{blocks, a};
  Report r = verify_algebra(*a);
  if (!r.pass()) fail(errc::ill_defined, "multimatrix failed self-verification");
  return out;
}

static std::string srow_str(const SRow& v, const FiniteAlgebra& a) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, c] : v) {
    if (!s.empty()) s += " + ";
    std::string lbl = i < (int)a.labels.size() ? a.labels[i] : "e" + std::to_string(i);
    s += c.is_one() ? lbl : "(" + c.str() + ")*" + lbl;
  }
  return s;
}

Report verify_algebra(const FiniteAlgebra& a) {
  constexpr int kMaxWitnesses = 20;
  Report rep;
  int violations = 0;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k) {
        SRow lhs, rhs;
        for (const auto& [m, c] : a.table[i][j]) srow_axpy(lhs, c, a.table[m][k]);
        for (const auto& [m, c] : a.table[j][k]) srow_axpy(rhs, c, a.table[i][m]);
        if (!srow_eq(lhs, rhs)) {
          ++violations;
          if (violations <= kMaxWitnesses)
            rep.add("associativity(" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ")",
                    false, srow_str(lhs, a) + "  vs  " + srow_str(rhs, a));
        }
      }
  if (violations > kMaxWitnesses)
    rep.add("associativity (further violations)", false,
            std::to_string(violations - kMaxWitnesses) + " more triples");
  if (violations == 0) rep.add("associativity", true);

  int unit_violations = 0;
  for (int i = 0; i < a.dim; ++i) {
    SRow l = a.mul(a.unit, srow_unit(i));
    SRow r = a.mul(srow_unit(i), a.unit);
    if (!srow_eq(l, srow_unit(i)) || !srow_eq(r, srow_unit(i))) {
      ++unit_violations;
      if (unit_violations <= kMaxWitnesses)
        rep.add("unit law(e" + std::to_string(i) + ")", false,
                "1*e = " + srow_str(l, a) + ", e*1 = " + srow_str(r, a));
    }
  }
  if (unit_violations == 0) rep.add("unit laws", true);
  return rep;
}

std::vector<SRow> center(const FiniteAlgebra& a) {
  // Kernel of x -> (x e_i - e_i x)_i, stacked over all basis elements.
  LinMap stacked(a.dim, a.dim * a.dim);
  for (int j = 0; j < a.dim; ++j) {
    SRow col;
    for (int i = 0; i < a.dim; ++i) {
      SRow diff = a.table[j][i];
      srow_axpy(diff, Scalar(-1), a.table[i][j]);
      for (const auto& [k, c] : diff) col.emplace_back(flat2(i, k, a.dim), c);
    }
    stacked.cols[j] = srow_normalize(std::move(col));
  }
  return kernel_image(stacked).kernel;
}

bool check_algebra_map(const LinMap& f, const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (f.src != a.dim || f.dst != b.dim) return false;
  if (!srow_eq(f.apply(a.unit), b.unit)) return false;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      if (!srow_eq(f.apply(a.table[i][j]), b.mul(f.cols[i], f.cols[j]))) return false;
    }
  return true;
}

AlgebraPtr product_field_algebra(int n) {
  std::vector<int> blocks(n, 1);
  return make_multimatrix(blocks).algebra;
}

AlgebraPtr enveloping_algebra(const FiniteAlgebra& r) {
  auto a = std::make_shared<FiniteAlgebra>();
  int n = r.dim;
  a->dim = n * n;
  a->table.assign(a->dim, std::vector<SRow>(a->dim));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a->labels.push_back((i < (int)r.labels.size() ? r.labels[i] : "e" + std::to_string(i)) +
                          "(x)" +
                          (j < (int)r.labels.size() ? r.labels[j] + "~" : "e" + std::to_string(j) + "~"));
  // (a (x) bbar)(c (x) dbar) = ac (x) (db)bar : opposite multiplication in the second leg.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          SRow prod = srow_kron(r.table[i][k], r.table[l][j], n);
          a->table[flat2(i, j, n)][flat2(k, l, n)] = std::move(prod);
        }
  a->unit = srow_kron(r.unit, r.unit, n);
  return a;
}

std::vector<SRow> span_basis(int ambient, const std::vector<SRow>& vecs) {
  Echelon e(ambient);
  for (const auto& v : vecs) e.add(v);
  return e.rows();
}

bool same_span(int ambient, const std::vector<SRow>& a, const std::vector<SRow>& b) {
  Echelon ea(ambient);
  for (const auto& v : a) ea.add(v);
  Echelon eb(ambient);
  for (const auto& v : b) eb.add(v);
  if (ea.rank() != eb.rank()) return false;
  for (const auto& v : b)
    if (!ea.contains(v)) return false;
  return true;
}

} // namespace wbx
