#pragma once

#include <stdexcept>
#include <string>

namespace clausecut {

// Raised for anything caused by bad input: malformed corpus or model files,
// unknown tags, inconsistent training data, invalid arguments from the CLI.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pipeline component failed; the message is prefixed with the stage name.
class StageError : public InputError {
 public:
  StageError(std::string stage, const std::string& what)
      : InputError(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace clausecut
