#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "wbx/error.hpp"
#include "wbx/io.hpp"

using namespace wbx;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/wbx_io_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("scalar json round trip") {
  for (const Scalar& s : {Scalar(Rational(3, 7)), Scalar(Rational(-2)),
                          Scalar(Rational(1, 2), Rational(-3, 5), 5), Scalar::sqrt_of(3)}) {
    CHECK(scalar_from_json(scalar_to_json(s)) == s);
  }
  CHECK(scalar_from_json(json("5/10")) == Scalar(Rational(1, 2)));
  CHECK_THROWS_AS(scalar_from_json(json::array()), Error);
  CHECK_THROWS_AS(scalar_from_json(json("1/0")), Error);
  // sqrt part without field tag
  CHECK_THROWS_AS(scalar_from_json(json{{"a", "1"}, {"b", "1"}}), Error);
}

TEST_CASE("algebra file round trip") {
  auto a = make_multimatrix({2, 1}).algebra;
  json j = algebra_to_json(*a);
  CHECK(j["kind"] == "algebra");
  CHECK(j["field"] == "rational");
  auto b = algebra_from_json(j);
  CHECK(*a == *b);
  CHECK(b->labels == a->labels);
}

TEST_CASE("quadratic field algebra round trip") {
  TLAlgebra tl = tl_algebra(2, 3);
  json j = algebra_to_json(*tl.algebra);
  CHECK(j["field"]["d"] == 5);
  auto b = algebra_from_json(j);
  CHECK(*tl.algebra == *b);
}

TEST_CASE("weak bialgebra file round trip") {
  WeakBialgebra h = groupoid_weak_hopf(Groupoid::pair_groupoid(2)).h;
  json j = weak_bialgebra_to_json(h);
  WeakBialgebra h2 = weak_bialgebra_from_json(j);
  CHECK(*h.alg == *h2.alg);
  for (int i = 0; i < 4; ++i) {
    CHECK(srow_eq(h.comult[i], h2.comult[i]));
    CHECK(h.counit[i] == h2.counit[i]);
  }
  CHECK(verify_weak_bialgebra(h2).pass());
}

TEST_CASE("groupoid file round trip validates") {
  Groupoid g = Groupoid::pair_groupoid(3);
  json j = groupoid_to_json(g);
  Groupoid g2 = groupoid_from_json(j);
  CHECK(g2.arrows.size() == 9);
  CHECK(g2.objects == g.objects);
  // corrupt the composition table: drop an entry
  j["compose"].erase(0);
  CHECK_THROWS_AS(groupoid_from_json(j), Error);
}

TEST_CASE("bimodule and context round trips") {
  MoritaContext ctx = canonical_context(make_multimatrix({2, 1}));
  json jb = bimodule_to_json(ctx.p);
  Bimodule p2 = bimodule_from_json(jb);
  CHECK(verify_bimodule(p2).pass());
  CHECK(p2.dim == ctx.p.dim);

  json jc = context_to_json(ctx);
  MoritaContext ctx2 = context_from_json(jc);
  CHECK(verify_context(ctx2).pass());
  CHECK(srow_eq(ctx2.f_inv, ctx.f_inv));

  json shorthand{{"kind", "morita-context"}, {"canonical", {{"blocks", {2, 1}}}}};
  MoritaContext ctx3 = context_from_json(shorthand);
  CHECK(ctx3.p.dim == 3);
}

TEST_CASE("pairing round trip verifies") {
  WeakBialgebra h = groupoid_weak_hopf(Groupoid::pair_groupoid(2)).h;
  DualResult d = dual_weak_bialgebra(h);
  json j = pairing_to_json(d.eval);
  SkewPairing p = pairing_from_json(j);
  CHECK(verify_skew_pairing(p).pass());
}

TEST_CASE("bratteli step round trip") {
  Tower tw = tower(3);
  json j = step_to_json(tw.steps[2]);
  InclusionStep s = step_from_json(j);
  CHECK(s.matrix == tw.steps[2].matrix);
  // rank-equation violations are caught on load
  j["upper"]["ranks"][0] = 7;
  CHECK_THROWS_AS(step_from_json(j), Error);
}

TEST_CASE("file save and load") {
  TempFile f("alg.json");
  auto a = make_multimatrix({2}).algebra;
  save_json_file(f.path, algebra_to_json(*a));
  json j = load_json_file(f.path);
  CHECK(*algebra_from_json(j) == *a);
  CHECK_THROWS_AS(load_json_file("/nonexistent/nope.json"), Error);
  TempFile bad("bad.json");
  std::ofstream(bad.path) << "{not json";
  CHECK_THROWS_AS(load_json_file(bad.path), Error);
}

TEST_CASE("mixed quadratic fields are rejected when combined") {
  json j{{"kind", "algebra"},
         {"dim", 2},
         {"labels", {"a", "b"}},
         {"unit", {"1", "0"}},
         {"mult",
          {{0, 0, 0, "1"}, {0, 1, 1, "1"}, {1, 0, 1, "1"},
           {1, 1, 0, json{{"a", "0"}, {"b", "1"}, {"d", 5}}},
           {1, 1, 1, json{{"a", "0"}, {"b", "1"}, {"d", 3}}}}}};
  auto a = algebra_from_json(j); // parsing itself keeps fields separate
  CHECK_THROWS_AS(verify_algebra(*a), Error); // combining them does not
}

TEST_CASE("report rendering") {
  Report r;
  r.add("first", true);
  r.add("second", false, "witness text");
  std::string text = report_to_text(r);
  CHECK(text.find("[ok]   first") != std::string::npos);
  CHECK(text.find("[FAIL] second: witness text") != std::string::npos);
  CHECK(text.find("status: fail") != std::string::npos);
  json j = report_to_json(r);
  CHECK(j["status"] == "fail");
  CHECK(j["checks"].size() == 2);
}

TEST_CASE("canonical base attachment") {
  WeakBialgebra h = groupoid_weak_hopf(Groupoid::pair_groupoid(2)).h;
  CounitalData cd = counital_subalgebras(h);
  json j = weak_bialgebra_to_json(h);
  CHECK_FALSE(canonical_base_from_json(j).has_value());
  attach_canonical_base(j, CanonicalBase{{1, 1}, cd.iota});
  auto cb = canonical_base_from_json(j);
  REQUIRE(cb.has_value());
  CHECK(cb->blocks == std::vector<int>{1, 1});
  CHECK(cb->iota == cd.iota);
}
