#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wbx/duality.hpp"
#include "wbx/error.hpp"

using namespace wbx;

namespace {

WeakBialgebra pair2() { return groupoid_weak_hopf(Groupoid::pair_groupoid(2)).h; }
WeakBialgebra kc2() { return groupoid_weak_hopf(Groupoid::cyclic_group(2)).h; }

LinMap face_identification(const WeakBialgebra& h) {
  return counital_subalgebras(h).iota;
}

} // namespace

TEST_CASE("dual of the pair groupoid algebra is the function face algebra") {
  WeakBialgebra h = pair2();
  DualResult d = dual_weak_bialgebra(h);
  CHECK(verify_weak_bialgebra(d.dual).pass());
  CHECK(is_face_algebra(d.dual));
  // functions on arrows: pointwise product, so k^4 with 4 central idempotents
  CHECK(center(*d.dual.alg).size() == 4);
  CHECK(verify_skew_pairing(d.eval).pass());
}

TEST_CASE("dual of kC2 is the function algebra k^C2") {
  WeakBialgebra h = kc2();
  DualResult d = dual_weak_bialgebra(h);
  CHECK(verify_weak_bialgebra(d.dual).pass());
  CHECK(center(*d.dual.alg).size() == 2);
  CHECK(verify_skew_pairing(d.eval).pass());
  // group-like basis on the dual side: the two characters
  auto cd = counital_subalgebras(d.dual);
  CHECK(cd.t_basis.size() == 1);
}

TEST_CASE("double dual is the original") {
  for (const WeakBialgebra& h : {pair2(), kc2()}) {
    DualResult d1 = dual_weak_bialgebra(h);
    DualResult d2 = dual_weak_bialgebra(d1.dual);
    CHECK(d2.dual.alg->table == h.alg->table);
    CHECK(srow_eq(d2.dual.alg->unit, h.alg->unit));
    for (int i = 0; i < h.dim(); ++i) {
      CHECK(srow_eq(d2.dual.comult[i], h.comult[i]));
      CHECK(d2.dual.counit[i] == h.counit[i]);
    }
  }
}

TEST_CASE("zero pairing with nonzero counits is rejected") {
  WeakBialgebra h = pair2();
  DualResult d = dual_weak_bialgebra(h);
  SkewPairing zero = d.eval;
  zero.tau = LinMap(16, 2);
  Report r = verify_skew_pairing(zero);
  CHECK_FALSE(r.pass());
  bool unit_cited = false;
  for (const auto& c : r.failures())
    if (c.witness.find("tau(xi|1)") != std::string::npos ||
        c.name.find("skp.2") != std::string::npos)
      unit_cited = true;
  CHECK(unit_cited);
}

TEST_CASE("induced pairing along the trivial context equals tau") {
  WeakBialgebra h = pair2();
  MoritaContext ctx = canonical_context(make_multimatrix({1, 1}));
  DualResult d = dual_weak_bialgebra(h);
  BaseChange bcl = base_change(h, ctx, face_identification(h));
  BaseChange bcm = base_change(d.dual, ctx, d.eval.iota_lambda);
  SkewPairing ind = induce_pairing(d.eval, bcm, bcl);
  CHECK(verify_skew_pairing(ind).pass());
}

TEST_CASE("induced pairing for the amplified pair groupoid") {
  WeakBialgebra h = pair2();
  MoritaContext up = swap_context(canonical_context(make_multimatrix({2, 1})));
  DualResult d = dual_weak_bialgebra(h);
  BaseChange bcl = base_change(h, up, face_identification(h));
  BaseChange bcm = base_change(d.dual, up, d.eval.iota_lambda);
  CHECK(bcl.out.dim() == 25);
  CHECK(bcm.out.dim() == 25);
  SkewPairing ind = induce_pairing(d.eval, bcm, bcl);
  CHECK(verify_skew_pairing(ind).pass());
}

TEST_CASE("dual base change isomorphism, trivial context") {
  WeakBialgebra h = pair2();
  MoritaContext ctx = canonical_context(make_multimatrix({1, 1}));
  BaseChange bcl = base_change(h, ctx, face_identification(h));
  DualityIso di = dual_base_change_iso(h, ctx, bcl);
  CHECK(di.report.pass());
}

TEST_CASE("dual base change isomorphism for the amplified pair groupoid") {
  WeakBialgebra h = pair2();
  MoritaContext up = swap_context(canonical_context(make_multimatrix({2, 1})));
  BaseChange bcl = base_change(h, up, face_identification(h));
  DualityIso di = dual_base_change_iso(h, up, bcl);
  CHECK(di.report.pass());
  CHECK(di.f.src == 25);
}

TEST_CASE("dual base change isomorphism for amplified kC2 over M_2") {
  WeakBialgebra h = kc2();
  MoritaContext up = swap_context(canonical_context(make_multimatrix({2})));
  BaseChange bcl = base_change(h, up, face_identification(h));
  DualityIso di = dual_base_change_iso(h, up, bcl);
  CHECK(di.report.pass());
  CHECK(di.f.src == 32);
}
