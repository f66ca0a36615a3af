#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wbx/error.hpp"
#include "wbx/linalg.hpp"

using namespace wbx;

namespace {

std::mt19937_64 rng(987123);

SRow random_row(int n, int nnz) {
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::uniform_int_distribution<long> coef(-4, 4);
  std::vector<std::pair<int, Scalar>> entries;
  for (int i = 0; i < nnz; ++i) entries.emplace_back(idx(rng), Scalar(Rational(coef(rng))));
  return srow_normalize(std::move(entries));
}

// Dense row-reduction oracle used to cross-check the sparse echelon.
int dense_rank(std::vector<std::vector<Scalar>> m) {
  if (m.empty()) return 0;
  size_t cols = m[0].size();
  int rank = 0;
  size_t row = 0;
  for (size_t c = 0; c < cols && row < m.size(); ++c) {
    size_t p = row;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Scalar inv = m[row][c].inverse();
    for (size_t k = 0; k < cols; ++k) m[row][k] *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c].is_zero()) continue;
      Scalar f = m[r][c];
      for (size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    ++row;
    ++rank;
  }
  return rank;
}

std::vector<Scalar> densify(const SRow& v, int n) {
  std::vector<Scalar> out(n, Scalar(0));
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

} // namespace

TEST_CASE("srow arithmetic") {
  SRow a = srow_normalize({{3, Scalar(2)}, {1, Scalar(1)}, {3, Scalar(-2)}});
  CHECK(a.size() == 1);
  CHECK(a[0].first == 1);
  SRow b = srow_unit(1, Scalar(-1));
  CHECK(srow_add(a, b).empty());
  CHECK(srow_coeff(a, 1) == Scalar(1));
  CHECK(srow_coeff(a, 2).is_zero());
  SRow k = srow_kron(srow_unit(1), srow_unit(2), 3);
  CHECK(k == srow_unit(5));
}

TEST_CASE("echelon rank matches dense oracle") {
  for (int it = 0; it < 30; ++it) {
    int n = 8;
    std::vector<SRow> rows;
    for (int r = 0; r < 10; ++r) rows.push_back(random_row(n, 3));
    Echelon e(n);
    for (const auto& r : rows) e.add(r);
    std::vector<std::vector<Scalar>> dense;
    for (const auto& r : rows) dense.push_back(densify(r, n));
    CHECK(e.rank() == dense_rank(dense));
    // everything reduces to zero against its own span
    for (const auto& r : rows) CHECK(e.contains(r));
  }
}

TEST_CASE("kernel and image") {
  // map (x,y,z) -> (x+y, y+z, x+2y+z, 0)
  LinMap a(3, 4);
  a.cols[0] = srow_normalize({{0, Scalar(1)}, {2, Scalar(1)}});
  a.cols[1] = srow_normalize({{0, Scalar(1)}, {1, Scalar(1)}, {2, Scalar(2)}});
  a.cols[2] = srow_normalize({{1, Scalar(1)}, {2, Scalar(1)}});
  auto ki = kernel_image(a);
  CHECK(ki.image.size() == 2);
  CHECK(ki.kernel.size() == 1);
  // kernel vector maps to zero
  for (const auto& k : ki.kernel) CHECK(a.apply(k).empty());
  CHECK(a.rank() == 2);

  Solver s(a);
  auto sol = s.solve(a.apply(srow_unit(1)));
  REQUIRE(sol.has_value());
  CHECK(srow_eq(a.apply(*sol), a.apply(srow_unit(1))));
  CHECK_FALSE(s.solve(srow_unit(3)).has_value());
}

TEST_CASE("random kernel/image dimensions satisfy rank-nullity") {
  for (int it = 0; it < 25; ++it) {
    int n = 7, m = 6;
    LinMap a(n, m);
    for (int j = 0; j < n; ++j) a.cols[j] = random_row(m, 3);
    auto ki = kernel_image(a);
    CHECK((int)ki.kernel.size() + (int)ki.image.size() == n);
    for (const auto& k : ki.kernel) CHECK(a.apply(k).empty());
  }
}

TEST_CASE("quotient subquotient") {
  // quotient k^4 by span{e0 - e1, e2}
  std::vector<SRow> rel{srow_normalize({{0, Scalar(1)}, {1, Scalar(-1)}}), srow_unit(2)};
  Subquotient q = Subquotient::quotient(4, rel);
  CHECK(q.dim() == 2);
  // projection is a retraction of inclusion
  for (int i = 0; i < q.dim(); ++i)
    CHECK(srow_eq(q.project(q.include_unit(i)), srow_unit(i)));
  // e0 and e1 have the same class
  CHECK(srow_eq(q.project(srow_unit(0)), q.project(srow_unit(1))));
  CHECK(q.project(srow_unit(2)).empty());
  CHECK(q.class_is_zero(srow_normalize({{0, Scalar(2)}, {1, Scalar(-2)}})));
}

TEST_CASE("restricted subquotient with membership check") {
  std::vector<SRow> rel{srow_unit(3)};
  Subquotient q = Subquotient::quotient(4, rel);
  REQUIRE(q.dim() == 3);
  // restrict to span{[e0]+[e1]}
  Subquotient s = q.restrict({srow_normalize({{0, Scalar(1)}, {1, Scalar(1)}})});
  CHECK(s.dim() == 1);
  SRow amb = s.include_unit(0);
  CHECK(srow_eq(s.project(amb), srow_unit(0)));
  // class of e0 alone is not in the subspace
  CHECK_FALSE(s.class_is_in_subspace(srow_unit(0)));
  CHECK_THROWS_AS(s.project(srow_unit(0)), Error);
  // adding a relation vector does not change the class
  SRow shifted = srow_add(amb, srow_unit(3));
  CHECK(srow_eq(s.project(shifted), srow_unit(0)));
}

TEST_CASE("induced map between subquotients") {
  // ambient map: swap e0,e1 on k^3 / span{e0-e1}: descends to identity-like map
  std::vector<SRow> rel{srow_normalize({{0, Scalar(1)}, {1, Scalar(-1)}})};
  Subquotient q = Subquotient::quotient(3, rel);
  LinMap swap01(3, 3);
  swap01.cols[0] = srow_unit(1);
  swap01.cols[1] = srow_unit(0);
  swap01.cols[2] = srow_unit(2);
  LinMap ind = induced_map(q, q, swap01, "swap");
  CHECK(ind == LinMap::identity(2));

  // a map that does not descend: e1 -> e1 + e2, e0 -> e0
  LinMap bad = LinMap::identity(3);
  bad.cols[1] = srow_add(srow_unit(1), srow_unit(2));
  CHECK_THROWS_AS(induced_map(q, q, bad, "bad"), Error);
}
