#include "wbx/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "wbx/error.hpp"

namespace wbx {

json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) return s.rat_part().str();
  return json{{"a", s.rat_part().str()}, {"b", s.sqrt_part().str()}, {"d", s.field_d()}};
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar(Rational::parse(j.get<std::string>()));
  if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
  if (j.is_object()) {
    Rational a = j.contains("a") ? Rational::parse(j["a"].get<std::string>()) : Rational(0);
    Rational b = j.contains("b") ? Rational::parse(j["b"].get<std::string>()) : Rational(0);
    long d = j.value("d", 0L);
    return Scalar(a, b, d);
  }
  fail(errc::parse_error, "scalar must be a string or {a, b, d} object");
}

namespace {

json srow_dense_json(const SRow& v, int dim) {
  json arr = json::array();
  for (int i = 0; i < dim; ++i) arr.push_back(scalar_to_json(srow_coeff(v, i)));
  return arr;
}

SRow srow_from_dense_json(const json& arr) {
  SRow out;
  int i = 0;
  for (const auto& e : arr) {
    Scalar c = scalar_from_json(e);
    if (!c.is_zero()) out.emplace_back(i, c);
    ++i;
  }
  return out;
}

long field_tag(const FiniteAlgebra& a) {
  for (const auto& row : a.table)
    for (const auto& cell : row)
      for (const auto& [i, c] : cell)
        if (c.field_d() != 0) return c.field_d();
  return 0;
}

json linmap_to_json(const LinMap& m) {
  // columns as dense coefficient arrays
  json cols = json::array();
  for (const auto& c : m.cols) cols.push_back(srow_dense_json(c, m.dst));
  return json{{"src", m.src}, {"dst", m.dst}, {"cols", cols}};
}

LinMap linmap_from_json(const json& j) {
  LinMap m(j.at("src").get<int>(), j.at("dst").get<int>());
  int i = 0;
  for (const auto& col : j.at("cols")) {
    if (i >= m.src) fail(errc::parse_error, "too many columns in linear map");
    m.cols[i++] = srow_from_dense_json(col);
  }
  if (i != m.src) fail(errc::parse_error, "missing columns in linear map");
  return m;
}

} // namespace

json algebra_to_json(const FiniteAlgebra& a) {
  json mult = json::array();
  for (int i = 0; i < a.dim; ++i)
    for (int j2 = 0; j2 < a.dim; ++j2)
      for (const auto& [k, c] : a.table[i][j2]) mult.push_back(json::array({i, j2, k, scalar_to_json(c)}));
  long d = field_tag(a);
  json out{{"kind", "algebra"},
           {"dim", a.dim},
           {"labels", a.labels},
           {"unit", srow_dense_json(a.unit, a.dim)},
           {"mult", mult}};
  out["field"] = d == 0 ? json("rational") : json{{"d", d}};
  return out;
}

AlgebraPtr algebra_from_json(const json& j) {
  auto a = std::make_shared<FiniteAlgebra>();
  a->dim = j.at("dim").get<int>();
  if (a->dim <= 0) fail(errc::parse_error, "algebra dim must be positive");
  if (j.contains("labels")) a->labels = j["labels"].get<std::vector<std::string>>();
  a->table.assign(a->dim, std::vector<SRow>(a->dim));
  std::vector<std::vector<std::vector<std::pair<int, Scalar>>>> acc(
      a->dim, std::vector<std::vector<std::pair<int, Scalar>>>(a->dim));
  for (const auto& e : j.at("mult")) {
    if (!e.is_array() || e.size() != 4) fail(errc::parse_error, "mult entries are [i,j,k,c]");
    int i = e[0].get<int>(), j2 = e[1].get<int>(), k = e[2].get<int>();
    if (i < 0 || i >= a->dim || j2 < 0 || j2 >= a->dim || k < 0 || k >= a->dim)
      fail(errc::parse_error, "mult index out of range");
    acc[i][j2].emplace_back(k, scalar_from_json(e[3]));
  }
  for (int i = 0; i < a->dim; ++i)
    for (int j2 = 0; j2 < a->dim; ++j2) a->table[i][j2] = srow_normalize(std::move(acc[i][j2]));
  a->unit = srow_from_dense_json(j.at("unit"));
  return a;
}

json weak_bialgebra_to_json(const WeakBialgebra& h) {
  json out = algebra_to_json(*h.alg);
  out["kind"] = "weak-bialgebra";
  int d = h.dim();
  json comult = json::array();
  for (int i = 0; i < d; ++i)
    for (const auto& [jk, c] : h.comult[i])
      comult.push_back(json::array({i, jk / d, jk % d, scalar_to_json(c)}));
  out["comult"] = comult;
  json counit = json::array();
  for (int i = 0; i < d; ++i) counit.push_back(scalar_to_json(h.counit[i]));
  out["counit"] = counit;
  return out;
}

WeakBialgebra weak_bialgebra_from_json(const json& j) {
  WeakBialgebra h;
  h.alg = algebra_from_json(j);
  int d = h.alg->dim;
  std::vector<std::vector<std::pair<int, Scalar>>> acc(d);
  for (const auto& e : j.at("comult")) {
    if (!e.is_array() || e.size() != 4) fail(errc::parse_error, "comult entries are [i,j,k,c]");
    int i = e[0].get<int>(), j2 = e[1].get<int>(), k = e[2].get<int>();
    if (i < 0 || i >= d || j2 < 0 || j2 >= d || k < 0 || k >= d)
      fail(errc::parse_error, "comult index out of range");
    acc[i].emplace_back(flat2(j2, k, d), scalar_from_json(e[3]));
  }
  for (int i = 0; i < d; ++i) h.comult.push_back(srow_normalize(std::move(acc[i])));
  for (const auto& e : j.at("counit")) h.counit.push_back(scalar_from_json(e));
  if ((int)h.counit.size() != d) fail(errc::parse_error, "counit has wrong length");
  return h;
}

json groupoid_to_json(const Groupoid& g) {
  json arrows = json::array();
  for (const auto& a : g.arrows)
    arrows.push_back(json{{"name", a.name}, {"src", g.objects[a.src]}, {"tgt", g.objects[a.tgt]}});
  json compose = json::array();
  for (size_t i = 0; i < g.arrows.size(); ++i)
    for (size_t j = 0; j < g.arrows.size(); ++j)
      if (g.compose[i][j] >= 0)
        compose.push_back(json::array(
            {g.arrows[i].name, g.arrows[j].name, g.arrows[g.compose[i][j]].name}));
  json inverses = json::array();
  for (size_t i = 0; i < g.arrows.size(); ++i)
    inverses.push_back(json::array({g.arrows[i].name, g.arrows[g.inverse[i]].name}));
  return json{{"kind", "groupoid"},
              {"objects", g.objects},
              {"arrows", arrows},
              {"compose", compose},
              {"inverses", inverses}};
}

Groupoid groupoid_from_json(const json& j) {
  Groupoid g;
  g.objects = j.at("objects").get<std::vector<std::string>>();
  auto obj_index = [&](const std::string& name) {
    for (size_t i = 0; i < g.objects.size(); ++i)
      if (g.objects[i] == name) return static_cast<int>(i);
    fail(errc::parse_error, "unknown object '" + name + "'");
  };
  std::map<std::string, int> arrow_index;
  for (const auto& e : j.at("arrows")) {
    Groupoid::Arrow a;
    a.name = e.at("name").get<std::string>();
    a.src = obj_index(e.at("src").get<std::string>());
    a.tgt = obj_index(e.at("tgt").get<std::string>());
    arrow_index[a.name] = static_cast<int>(g.arrows.size());
    g.arrows.push_back(a);
  }
  auto arr = [&](const json& name) {
    auto it = arrow_index.find(name.get<std::string>());
    if (it == arrow_index.end()) fail(errc::parse_error, "unknown arrow '" + name.get<std::string>() + "'");
    return it->second;
  };
  int na = static_cast<int>(g.arrows.size());
  g.compose.assign(na, std::vector<int>(na, -1));
  for (const auto& e : j.at("compose")) g.compose[arr(e[0])][arr(e[1])] = arr(e[2]);
  g.inverse.assign(na, -1);
  for (const auto& e : j.at("inverses")) g.inverse[arr(e[0])] = arr(e[1]);
  // identities: arrows acting as two-sided units per object
  g.identity_of.assign(g.objects.size(), -1);
  for (int i = 0; i < na; ++i)
    if (g.arrows[i].src == g.arrows[i].tgt && g.compose[i][i] == i) {
      bool ident = true;
      for (int k = 0; k < na; ++k) {
        if (g.arrows[k].tgt == g.arrows[i].src && g.compose[i][k] != k) ident = false;
        if (g.arrows[k].src == g.arrows[i].src && g.compose[k][i] != k) ident = false;
      }
      if (ident) g.identity_of[g.arrows[i].src] = i;
    }
  for (size_t x = 0; x < g.objects.size(); ++x)
    if (g.identity_of[x] < 0) fail(errc::invalid_groupoid, "object " + g.objects[x] + " has no identity");
  g.validate();
  return g;
}

json bimodule_to_json(const Bimodule& m) {
  json la = json::array(), ra = json::array();
  for (size_t i = 0; i < m.left_act.size(); ++i)
    for (int v = 0; v < m.dim; ++v)
      for (const auto& [w, c] : m.left_act[i].cols[v])
        la.push_back(json::array({static_cast<int>(i), v, w, scalar_to_json(c)}));
  for (size_t j = 0; j < m.right_act.size(); ++j)
    for (int v = 0; v < m.dim; ++v)
      for (const auto& [w, c] : m.right_act[j].cols[v])
        ra.push_back(json::array({v, static_cast<int>(j), w, scalar_to_json(c)}));
  return json{{"kind", "bimodule"},
              {"left", algebra_to_json(*m.left_alg)},
              {"right", algebra_to_json(*m.right_alg)},
              {"dim", m.dim},
              {"left_action", la},
              {"right_action", ra}};
}

Bimodule bimodule_from_json(const json& j) {
  Bimodule m;
  m.left_alg = algebra_from_json(j.at("left"));
  m.right_alg = algebra_from_json(j.at("right"));
  m.dim = j.at("dim").get<int>();
  m.left_act.assign(m.left_alg->dim, LinMap(m.dim, m.dim));
  m.right_act.assign(m.right_alg->dim, LinMap(m.dim, m.dim));
  for (const auto& e : j.at("left_action")) {
    int i = e[0].get<int>(), v = e[1].get<int>(), w = e[2].get<int>();
    m.left_act.at(i).cols.at(v).emplace_back(w, scalar_from_json(e[3]));
  }
  for (const auto& e : j.at("right_action")) {
    int v = e[0].get<int>(), i = e[1].get<int>(), w = e[2].get<int>();
    m.right_act.at(i).cols.at(v).emplace_back(w, scalar_from_json(e[3]));
  }
  for (auto& act : m.left_act)
    for (auto& col : act.cols) col = srow_normalize(std::move(col));
  for (auto& act : m.right_act)
    for (auto& col : act.cols) col = srow_normalize(std::move(col));
  return m;
}

json context_to_json(const MoritaContext& ctx) {
  json out{{"kind", "morita-context"},
           {"R", algebra_to_json(*ctx.r)},
           {"S", algebra_to_json(*ctx.s)},
           {"P", bimodule_to_json(ctx.p)},
           {"Q", bimodule_to_json(ctx.q)},
           {"f", linmap_to_json(ctx.f)},
           {"g", linmap_to_json(ctx.g)},
           {"f_inv", srow_dense_json(ctx.f_inv, ctx.p.dim * ctx.q.dim)},
           {"g_inv", srow_dense_json(ctx.g_inv, ctx.q.dim * ctx.p.dim)}};
  return out;
}

MoritaContext context_from_json(const json& j) {
  if (j.contains("canonical")) {
    auto blocks = j.at("canonical").at("blocks").get<std::vector<int>>();
    return canonical_context(make_multimatrix(blocks));
  }
  MoritaContext ctx;
  ctx.r = algebra_from_json(j.at("R"));
  ctx.s = algebra_from_json(j.at("S"));
  ctx.p = bimodule_from_json(j.at("P"));
  ctx.q = bimodule_from_json(j.at("Q"));
  ctx.f = linmap_from_json(j.at("f"));
  ctx.g = linmap_from_json(j.at("g"));
  ctx.f_inv = srow_from_dense_json(j.at("f_inv"));
  ctx.g_inv = srow_from_dense_json(j.at("g_inv"));
  return ctx;
}

json pairing_to_json(const SkewPairing& p) {
  int dl = p.l_side.dim();
  json tau = json::array();
  for (int i = 0; i < p.lambda_side.dim(); ++i)
    for (int j2 = 0; j2 < dl; ++j2) {
      const SRow& col = p.tau.cols[flat2(i, j2, dl)];
      if (col.empty()) continue;
      tau.push_back(json::array({i, j2, srow_dense_json(col, p.base->dim)}));
    }
  return json{{"kind", "pairing"},
              {"lambda", weak_bialgebra_to_json(p.lambda_side)},
              {"l", weak_bialgebra_to_json(p.l_side)},
              {"base", algebra_to_json(*p.base)},
              {"iota_lambda", linmap_to_json(p.iota_lambda)},
              {"iota_l", linmap_to_json(p.iota_l)},
              {"tau", tau}};
}

SkewPairing pairing_from_json(const json& j) {
  SkewPairing p;
  p.lambda_side = weak_bialgebra_from_json(j.at("lambda"));
  p.l_side = weak_bialgebra_from_json(j.at("l"));
  if (j.contains("base")) {
    p.base = algebra_from_json(j.at("base"));
  } else {
    p.base = counital_subalgebras(p.l_side).target_algebra;
  }
  if (j.contains("iota_l")) {
    p.iota_l = linmap_from_json(j.at("iota_l"));
  } else {
    p.iota_l = counital_subalgebras(p.l_side).iota;
  }
  if (!j.contains("iota_lambda"))
    fail(errc::parse_error, "pairing file needs the lambda-side base identification");
  p.iota_lambda = linmap_from_json(j.at("iota_lambda"));
  p.tau = LinMap(p.lambda_side.dim() * p.l_side.dim(), p.base->dim);
  int dl = p.l_side.dim();
  for (const auto& e : j.at("tau")) {
    int i = e[0].get<int>(), j2 = e[1].get<int>();
    p.tau.cols.at(flat2(i, j2, dl)) = srow_from_dense_json(e[2]);
  }
  return p;
}

json step_to_json(const InclusionStep& s) {
  return json{{"kind", "bratteli-step"},
              {"lower", {{"labels", s.lower.labels}, {"ranks", s.lower.ranks}}},
              {"upper", {{"labels", s.upper.labels}, {"ranks", s.upper.ranks}}},
              {"matrix", s.matrix}};
}

InclusionStep step_from_json(const json& j) {
  BratteliFloor low{j.at("lower").at("labels").get<std::vector<std::string>>(),
                    j.at("lower").at("ranks").get<std::vector<int>>()};
  BratteliFloor up{j.at("upper").at("labels").get<std::vector<std::string>>(),
                   j.at("upper").at("ranks").get<std::vector<int>>()};
  return InclusionStep(low, up, j.at("matrix").get<std::vector<std::vector<int>>>());
}

void attach_canonical_base(json& j, const CanonicalBase& cb) {
  j["canonical_base"] = json{{"blocks", cb.blocks}, {"iota", linmap_to_json(cb.iota)}};
}

std::optional<CanonicalBase> canonical_base_from_json(const json& j) {
  if (!j.contains("canonical_base")) return std::nullopt;
  CanonicalBase cb;
  cb.blocks = j.at("canonical_base").at("blocks").get<std::vector<int>>();
  cb.iota = linmap_from_json(j.at("canonical_base").at("iota"));
  return cb;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::parse_error, "cannot open '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, "'" + path + "' is not valid JSON");
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(errc::parse_error, "cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

std::string report_to_text(const Report& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    os << (c.ok ? "[ok]   " : "[FAIL] ") << c.name;
    if (!c.witness.empty()) os << ": " << c.witness;
    os << "\n";
  }
  os << "status: " << (r.pass() ? "pass" : "fail") << "\n";
  return os.str();
}

json report_to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"name", c.name}, {"ok", c.ok}, {"witness", c.witness}});
  return json{{"status", r.pass() ? "pass" : "fail"}, {"checks", checks}};
}

} // namespace wbx
