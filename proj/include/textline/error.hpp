#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace textline {

// Machine-readable failure categories. The CLI maps each one to its own exit
// status, so the numeric values are part of the command-line contract.
enum class ErrorCode : int {
  io = 2,
  no_blob_lines = 3,
  dimension_mismatch = 4,
  invalid_argument = 5,
  infeasible = 6,
  beta_undefined = 7,
  incomplete_labeling = 8,
  missing_tiles = 9,
  parse = 10,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::io: return "io_error";
    case ErrorCode::no_blob_lines: return "no_blob_lines";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::infeasible: return "infeasible_spec";
    case ErrorCode::beta_undefined: return "beta_undefined";
    case ErrorCode::incomplete_labeling: return "incomplete_labeling";
    case ErrorCode::missing_tiles: return "missing_tiles";
    case ErrorCode::parse: return "parse_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace textline
