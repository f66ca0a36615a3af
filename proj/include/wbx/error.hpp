#pragma once

#include <stdexcept>
#include <string>

namespace wbx {

enum class errc {
  mismatched_field,
  division_by_zero,
  action_mismatch,
  invalid_groupoid,
  embedding_failure,
  ill_defined,
  base_mismatch,
  not_single_block,
  unsupported_index,
  too_many_strands,
  inconsistent_ranks,
  floor_mismatch,
  no_solution,
  parse_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::mismatched_field: return "MismatchedField";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::action_mismatch: return "ActionMismatch";
    case errc::invalid_groupoid: return "InvalidGroupoid";
    case errc::embedding_failure: return "EmbeddingFailure";
    case errc::ill_defined: return "IllDefined";
    case errc::base_mismatch: return "BaseMismatch";
    case errc::not_single_block: return "NotSingleBlock";
    case errc::unsupported_index: return "UnsupportedIndex";
    case errc::too_many_strands: return "TooManyStrands";
    case errc::inconsistent_ranks: return "InconsistentRanks";
    case errc::floor_mismatch: return "FloorMismatch";
    case errc::no_solution: return "NoSolution";
    case errc::parse_error: return "ParseError";
  }
  return "Error";
}

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace wbx
