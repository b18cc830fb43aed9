#pragma once

#include <stdexcept>
#include <string>

namespace lienard {

/// Raised when an operation's mathematical preconditions fail (energy outside
/// an annulus, singular placement system, orbit escaping, ...). The CLI maps
/// it to exit code 1.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lienard
