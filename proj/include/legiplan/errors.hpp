#pragma once

#include <stdexcept>
#include <string>

namespace legiplan {

/// A caller broke an operation's precondition (mismatched lengths, missing
/// prediction, empty input where one is required).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scenario input failed parsing or validation. `path()` is a JSON-style
/// location ("goals[1].x", "planner") and `rule()` names the violated rule.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string path, std::string rule, const std::string& detail = {})
      : std::runtime_error(format(path, rule, detail)), path_(std::move(path)), rule_(std::move(rule)) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  static std::string format(const std::string& path, const std::string& rule, const std::string& detail) {
    std::string msg = path.empty() ? rule : path + ": " + rule;
    if (!detail.empty()) msg += " (" + detail + ")";
    return msg;
  }

  std::string path_;
  std::string rule_;
};

}  // namespace legiplan
