// Writes the JSON fixtures used by the CLI tests and the acceptance suite.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "wbx/io.hpp"

using namespace wbx;

int main(int argc, char** argv) {
  std::string dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  auto path = [&](const std::string& name) { return dir + "/" + name; };

  // pair groupoid: groupoid file, weak bialgebra file, broken variant
  Groupoid g2 = Groupoid::pair_groupoid(2);
  save_json_file(path("pair2_groupoid.json"), groupoid_to_json(g2));
  GroupoidAlgebra ga = groupoid_weak_hopf(g2);
  CounitalData cd = counital_subalgebras(ga.h);
  {
    json j = weak_bialgebra_to_json(ga.h);
    attach_canonical_base(j, CanonicalBase{{1, 1}, cd.iota});
    save_json_file(path("pair2.json"), j);
  }
  {
    WeakBialgebra broken = ga.h;
    broken.counit.assign(4, Scalar(0));
    save_json_file(path("pair2_broken_counit.json"), weak_bialgebra_to_json(broken));
  }

  // amplified pair groupoid over M_2 + k, with the identification of the new base
  {
    MoritaContext ctx = canonical_context(make_multimatrix({2, 1}));
    BaseChange amp = amplify(ga.h, ctx, cd.iota);
    json j = weak_bialgebra_to_json(amp.out);
    attach_canonical_base(j, CanonicalBase{{2, 1}, amp.iota_s});
    save_json_file(path("pair2_amplified.json"), j);
  }

  // kC2 and its amplification over M_2
  {
    GroupoidAlgebra c2 = groupoid_weak_hopf(Groupoid::cyclic_group(2));
    CounitalData cdc = counital_subalgebras(c2.h);
    json j = weak_bialgebra_to_json(c2.h);
    attach_canonical_base(j, CanonicalBase{{1}, cdc.iota});
    save_json_file(path("kc2.json"), j);
    MoritaContext ctx = canonical_context(make_multimatrix({2}));
    BaseChange amp = amplify(c2.h, ctx, cdc.iota);
    json ja = weak_bialgebra_to_json(amp.out);
    attach_canonical_base(ja, CanonicalBase{{2}, amp.iota_s});
    save_json_file(path("kc2_amplified.json"), ja);
  }

  // plain algebra, bimodule and context fixtures
  {
    auto mm = make_multimatrix({2, 1});
    save_json_file(path("mm21.json"), algebra_to_json(*mm.algebra));
    MoritaContext ctx = canonical_context(mm);
    save_json_file(path("ctx21.json"), context_to_json(ctx));
    save_json_file(path("p21_bimodule.json"), bimodule_to_json(ctx.p));
  }

  // TL_4 over Q(sqrt 5) as an algebra file
  save_json_file(path("tl4_n2.json"), algebra_to_json(*tl_algebra(2, 4).algebra));

  // evaluation pairing of the pair groupoid
  {
    DualResult d = dual_weak_bialgebra(ga.h);
    save_json_file(path("pair2_pairing.json"), pairing_to_json(d.eval));
  }

  // Bratteli fixtures: the n=2 middle step (H_t (x) H_s inside H)
  {
    Tower tw = tower(2);
    InclusionStep bottom = tensor_bottom_step(tw.floors[0], tw.floors[0]);
    InclusionStep comp = compose_steps(tw.steps[0], tw.steps[1]);
    auto sols = infer_middle_inclusion(bottom, comp, tensor_swap_pairs(tw.floors[0]));
    save_json_file(path("n2_middle_step.json"), step_to_json(sols.front()));
  }

  // malformed inputs
  {
    std::ofstream(path("empty.json")) << "";
    std::ofstream(path("bad_kind.json")) << "{\"kind\": \"mystery\"}\n";
  }

  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
