#include <CLI11.hpp>

#include <iostream>

#include "wbx/io.hpp"

using namespace wbx;

namespace {

// exit codes: 0 pass, 1 violations / unsupported input, 2 malformed input

int run_verify(const std::string& path, const std::string& format) {
  json j;
  Report rep;
  try {
    j = load_json_file(path);
    std::string kind = j.value("kind", "");
    if (kind == "algebra") {
      auto a = algebra_from_json(j);
      rep = verify_algebra(*a);
    } else if (kind == "weak-bialgebra") {
      WeakBialgebra h = weak_bialgebra_from_json(j);
      rep = verify_weak_bialgebra(h);
      if (rep.pass()) rep.merge(counital_subalgebras(h).report, "counital: ");
    } else if (kind == "groupoid") {
      Groupoid g = groupoid_from_json(j);
      GroupoidAlgebra ga = groupoid_weak_hopf(g); // throws InvalidGroupoid with the axiom
      rep = verify_weak_bialgebra(ga.h);
      rep.merge(verify_antipode(ga.h, ga.antipode), "antipode: ");
    } else if (kind == "bimodule") {
      rep = verify_bimodule(bimodule_from_json(j));
    } else if (kind == "morita-context") {
      rep = verify_context(context_from_json(j));
    } else if (kind == "pairing") {
      rep = verify_skew_pairing(pairing_from_json(j));
    } else if (kind == "bratteli-step") {
      step_from_json(j); // constructor verifies the rank equation
      rep.add("rank equation", true);
    } else {
      fail(errc::parse_error, "unknown or missing \"kind\" field");
    }
  } catch (const Error& e) {
    if (e.code() == errc::parse_error) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    rep.add(errc_name(e.code()), false, e.what());
  }
  std::cout << (format == "json" ? report_to_json(rep).dump(1) + "\n" : report_to_text(rep));
  return rep.pass() ? 0 : 1;
}

int run_base_change(const std::string& path, const std::string& context_arg,
                    const std::string& out_path) {
  json j;
  try {
    j = load_json_file(path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    std::string kind = j.value("kind", "");
    if (kind == "bratteli-step") {
      InclusionStep step = step_from_json(j);
      std::cout << "dim H = " << step.upper.dim() << "\n";
      InclusionStep changed =
          bratteli_base_change(step, std::vector<int>(step.lower.ranks.size(), 1));
      std::cout << "dim H~ = " << changed.upper.dim() << "\n";
      std::cout << "inclusion matrix unchanged: " << (changed.matrix == step.matrix ? "yes" : "no")
                << "\n";
      if (!out_path.empty()) save_json_file(out_path, step_to_json(changed));
      return 0;
    }
    if (kind != "weak-bialgebra") fail(errc::parse_error, "base-change expects a weak bialgebra");
    WeakBialgebra h = weak_bialgebra_from_json(j);
    Report wb = verify_weak_bialgebra(h);
    if (!wb.pass()) {
      std::cout << report_to_text(wb);
      return 1;
    }
    MoritaContext ctx;
    LinMap iota;
    if (context_arg == "canonical") {
      auto cb = canonical_base_from_json(j);
      if (!cb) fail(errc::parse_error, "canonical context needs a \"canonical_base\" block");
      ctx = canonical_context(make_multimatrix(cb->blocks));
      iota = cb->iota;
    } else {
      json cj = load_json_file(context_arg);
      ctx = context_from_json(cj);
      iota = counital_subalgebras(h).iota; // ctx.R must match H_t on its basis
    }
    BaseChange bc = base_change(h, ctx, iota);
    std::cout << "dim H = " << h.dim() << "\n";
    std::cout << "dim H~ = " << bc.out.dim() << "\n";
    std::cout << "dim base: " << ctx.r->dim << " -> " << ctx.s->dim << "\n";
    Report out_rep = verify_weak_bialgebra(bc.out);
    std::cout << "output verifies: " << (out_rep.pass() ? "yes" : "no") << "\n";
    if (!out_path.empty()) save_json_file(out_path, weak_bialgebra_to_json(bc.out));
    return out_rep.pass() ? 0 : 1;
  } catch (const Error& e) {
    if (e.code() == errc::parse_error) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int run_tower(int n, const std::string& emit, bool with_base_change) {
  try {
    Tower tw = tower(n);
    if (emit == "dot") {
      std::cout << emit_dot(tw);
    } else {
      std::cout << emit_table(tw);
    }
    if (with_base_change) {
      const BratteliFloor& ht = tw.floors[n - 2]; // A_{1,n-1}
      InclusionStep bottom = tensor_bottom_step(ht, ht);
      InclusionStep comp = tw.steps[n - 2];
      for (size_t i = n - 1; i < tw.steps.size(); ++i) comp = compose_steps(comp, tw.steps[i]);
      auto sols = infer_middle_inclusion(bottom, comp, tensor_swap_pairs(ht));
      std::cout << "middle inclusion solutions: " << sols.size() << "\n";
      InclusionStep changed =
          bratteli_base_change(sols.front(), std::vector<int>(bottom.upper.ranks.size(), 1));
      std::cout << "base-changed upper ranks: (";
      for (size_t i = 0; i < changed.upper.ranks.size(); ++i)
        std::cout << (i ? ", " : "") << changed.upper.ranks[i];
      std::cout << ")\n";
      std::cout << "dim H~ = " << changed.upper.dim() << "\n";
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computer algebra for weak bialgebras and Morita base change"};
  app.require_subcommand(1);

  std::string path, format = "text", context_arg = "canonical", out_path;
  auto* verify = app.add_subcommand("verify", "verify a structure-constant file");
  verify->add_option("path", path, "input file")->required();
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* bc = app.add_subcommand("base-change", "Morita base change of a weak bialgebra");
  bc->add_option("path", path, "input file")->required();
  bc->add_option("--context", context_arg, "canonical or a context file");
  bc->add_option("--out", out_path, "write the base-changed structure here");

  int n = 3;
  std::string emit = "table";
  bool with_bc = false;
  auto* tower_cmd = app.add_subcommand("tower", "Temperley-Lieb tower at the Bratteli level");
  tower_cmd->add_option("--n", n, "index parameter (2 or 3)")->required();
  tower_cmd->add_option("--emit", emit, "table or dot")->check(CLI::IsMember({"table", "dot"}));
  tower_cmd->add_flag("--base-change", with_bc, "also emit the base-changed diagram");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) return run_verify(path, format);
  if (bc->parsed()) return run_base_change(path, context_arg, out_path);
  return run_tower(n, emit, with_bc);
}
