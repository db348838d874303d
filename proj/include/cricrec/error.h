#pragma once

#include <stdexcept>
#include <string>

namespace cricrec {

// Error classes map one-to-one onto CLI exit codes and HTTP statuses.
enum class ErrorClass {
  internal,
  usage,
  malformed_input,
  not_found,
  constraint_violation,
  infeasible,
  snapshot_integrity,
  insufficient_data,
};

const char* error_class_name(ErrorClass c);
int exit_code(ErrorClass c);
int http_status(ErrorClass c);

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string message, std::string rule = {})
      : std::runtime_error(std::move(message)), cls_(cls), rule_(std::move(rule)) {}

  ErrorClass error_class() const noexcept { return cls_; }
  // Name of the violated rule or unfillable slot, empty when not applicable.
  const std::string& rule() const noexcept { return rule_; }

 private:
  ErrorClass cls_;
  std::string rule_;
};

inline Error malformed(std::string msg) { return {ErrorClass::malformed_input, std::move(msg)}; }
inline Error not_found(std::string msg) { return {ErrorClass::not_found, std::move(msg)}; }
inline Error constraint_violation(std::string rule, std::string msg) {
  return {ErrorClass::constraint_violation, std::move(msg), std::move(rule)};
}
inline Error infeasible(std::string slot, std::string msg) {
  return {ErrorClass::infeasible, std::move(msg), std::move(slot)};
}

}  // namespace cricrec
