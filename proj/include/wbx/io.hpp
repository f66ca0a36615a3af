#pragma once

#include <json.hpp>

#include <string>

#include "wbx/duality.hpp"
#include "wbx/towers.hpp"

namespace wbx {

using nlohmann::json;

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json algebra_to_json(const FiniteAlgebra& a);
AlgebraPtr algebra_from_json(const json& j);

json weak_bialgebra_to_json(const WeakBialgebra& h);
WeakBialgebra weak_bialgebra_from_json(const json& j);

json groupoid_to_json(const Groupoid& g);
Groupoid groupoid_from_json(const json& j);

json bimodule_to_json(const Bimodule& m);
Bimodule bimodule_from_json(const json& j);

json context_to_json(const MoritaContext& ctx);
MoritaContext context_from_json(const json& j);

json pairing_to_json(const SkewPairing& p);
SkewPairing pairing_from_json(const json& j);

json step_to_json(const InclusionStep& s);
InclusionStep step_from_json(const json& j);

// Optional canonical-base block attached to weak-bialgebra files: the blocks
// of H_t as a multi-matrix algebra and the identification matrix.
struct CanonicalBase {
  std::vector<int> blocks;
  LinMap iota;
};
void attach_canonical_base(json& j, const CanonicalBase& cb);
std::optional<CanonicalBase> canonical_base_from_json(const json& j);

json load_json_file(const std::string& path); // throws ParseError
void save_json_file(const std::string& path, const json& j);

std::string report_to_text(const Report& r);
json report_to_json(const Report& r);

} // namespace wbx
