#pragma once

#include <stdexcept>
#include <string>

namespace qinv {

// Exit codes shared by the library's error taxonomy and the CLI:
//   0 success
//   2 parse or validation failure
//   3 unsupported algebra / category (missing property or table entry)
//   4 cost cap exceeded
//   5 cross-check refused (homology disagreement between inputs)
enum ExitCode {
  exit_ok = 0,
  exit_input = 2,
  exit_unsupported = 3,
  exit_cost = 4,
  exit_mismatch = 5,
};

class Error : public std::runtime_error {
public:
  Error(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  int code() const { return code_; }

private:
  int code_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error(exit_input, m) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& m) : Error(exit_input, m) {}
};
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& m) : Error(exit_unsupported, m) {}
};
struct CostCapError : Error {
  explicit CostCapError(const std::string& m) : Error(exit_cost, m) {}
};
struct MismatchError : Error {
  explicit MismatchError(const std::string& m) : Error(exit_mismatch, m) {}
};

}  // namespace qinv
