#pragma once

#include <stdexcept>
#include <string>

namespace sphext {

/// Thrown when a field carries non-negligible mean (l = 0) content where
/// zero total circulation is required.
class circulation_error : public std::runtime_error {
 public:
  explicit circulation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an input violates a declared constraint (e.g. enstrophy
/// budget mismatch).
class constraint_error : public std::runtime_error {
 public:
  explicit constraint_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sphext
