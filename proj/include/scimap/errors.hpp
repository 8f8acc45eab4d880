#pragma once

#include <stdexcept>
#include <string>

namespace scimap {

// Bad user input: unreadable files, malformed records, invalid parameters.
// Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A pipeline stage failed mid-run. Maps to CLI exit code 2.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& msg)
      : std::runtime_error("stage '" + stage + "': " + msg), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace scimap
