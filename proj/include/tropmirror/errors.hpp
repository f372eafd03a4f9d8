#pragma once

#include <stdexcept>
#include <string>

namespace tropmirror {

/// Domain-level failure with a stable machine-readable code.
/// The CLI maps these to exit code 1 and a single `ERROR <code>: <detail>` line.
class DomainError : public std::runtime_error {
  public:
    DomainError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}

    const std::string& code() const { return code_; }
    const std::string& detail() const { return detail_; }

  private:
    std::string code_;
    std::string detail_;
};

} // namespace tropmirror
