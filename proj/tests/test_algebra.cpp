#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wbx/algebra.hpp"
#include "wbx/error.hpp"

using namespace wbx;

TEST_CASE("multimatrix (2,1)") {
  auto mm = make_multimatrix({2, 1});
  const auto& a = *mm.algebra;
  CHECK(a.dim == 5);
  CHECK(a.unit.size() == 3); // E1_11 + E1_22 + E2_11
  CHECK(verify_algebra(a).pass());
  // E1_12 * E1_21 = E1_11
  int e12 = multimatrix_index({2, 1}, 0, 0, 1);
  int e21 = multimatrix_index({2, 1}, 0, 1, 0);
  int e11 = multimatrix_index({2, 1}, 0, 0, 0);
  CHECK(srow_eq(a.mul(srow_unit(e12), srow_unit(e21)), srow_unit(e11)));
  CHECK(a.mul(srow_unit(e12), srow_unit(e12)).empty());
  CHECK(a.labels[e12] == "E1_12");
}

TEST_CASE("multimatrix (1,1) is commutative k^2") {
  auto mm = make_multimatrix({1, 1});
  const auto& a = *mm.algebra;
  CHECK(a.dim == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(srow_eq(a.mul(srow_unit(i), srow_unit(j)),
                    i == j ? srow_unit(i) : SRow{}));
}

TEST_CASE("multimatrix (5,9,4) has dimension 122") {
  auto mm = make_multimatrix({5, 9, 4});
  CHECK(mm.algebra->dim == 122);
}

TEST_CASE("verify_algebra catches a perturbed product") {
  auto mm = make_multimatrix({2});
  FiniteAlgebra a = *mm.algebra;
  // perturb c[0][0][0] by +1: E11*E11 = 2*E11
  a.table[0][0] = srow_unit(0, Scalar(2));
  Report r = verify_algebra(a);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(r.failures().empty());
  // direct product check: the reported triple really differs
  CHECK(r.failures()[0].name.find("associativity") != std::string::npos);
}

TEST_CASE("center dimensions") {
  CHECK(center(*make_multimatrix({2}).algebra).size() == 1);
  CHECK(center(*make_multimatrix({1, 1, 1, 1}).algebra).size() == 4);
  CHECK(center(*make_multimatrix({2, 3}).algebra).size() == 2);
  // center of M_2 is spanned by the unit
  auto m2 = make_multimatrix({2});
  auto z = center(*m2.algebra);
  REQUIRE(z.size() == 1);
  CHECK(same_span(4, z, {m2.algebra->unit}));
}

TEST_CASE("check_algebra_map") {
  auto a = make_multimatrix({2, 1}).algebra;
  CHECK(check_algebra_map(LinMap::identity(5), *a, *a));
  LinMap zero(5, 5);
  CHECK_FALSE(check_algebra_map(zero, *a, *a)); // kills the unit
  // k^2 -> k^2: swapping idempotents is an algebra map
  auto k2 = product_field_algebra(2);
  LinMap swap(2, 2);
  swap.cols[0] = srow_unit(1);
  swap.cols[1] = srow_unit(0);
  CHECK(check_algebra_map(swap, *k2, *k2));
}

TEST_CASE("enveloping algebra of k^2 is k^4") {
  auto k2 = product_field_algebra(2);
  auto env = enveloping_algebra(*k2);
  CHECK(env->dim == 4);
  CHECK(verify_algebra(*env).pass());
  CHECK(center(*env).size() == 4);
}

TEST_CASE("enveloping algebra of M_2 is simple of dim 16") {
  auto m2 = make_multimatrix({2}).algebra;
  auto env = enveloping_algebra(*m2);
  CHECK(env->dim == 16);
  CHECK(verify_algebra(*env).pass());
  CHECK(center(*env).size() == 1);
}

TEST_CASE("center elements commute with everything") {
  auto a = make_multimatrix({2, 3}).algebra;
  for (const auto& z : center(*a)) {
    for (int i = 0; i < a->dim; ++i)
      CHECK(srow_eq(a->mul(z, srow_unit(i)), a->mul(srow_unit(i), z)));
  }
}
