#pragma once

#include <string>
#include <utility>
#include <vector>

namespace wbx {

struct Check {
  std::string name;
  bool ok = false;
  std::string witness; // failing instance, empty on success
};

struct Report {
  std::vector<Check> checks;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  void add(std::string name, bool ok, std::string witness = "") {
    checks.push_back({std::move(name), ok, std::move(witness)});
  }
  void merge(const Report& other, const std::string& prefix = "") {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.ok, c.witness});
  }
  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& c : checks)
      if (!c.ok) out.push_back(c);
    return out;
  }
};

} // namespace wbx
