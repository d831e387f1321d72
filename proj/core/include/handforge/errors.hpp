#pragma once

#include <stdexcept>
#include <string>

namespace handforge {

/// Argument violates a documented precondition (bad dimensions, unknown
/// site, non-positive length, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Workspace sampling produced a point outside the grid bounds.
class GridTooSmall : public std::runtime_error {
 public:
  explicit GridTooSmall(const std::string& what) : std::runtime_error(what) {}
};

/// Selection found no candidate passing both the Kapandji gate and the
/// balance threshold.
class NoFeasibleCandidate : public std::runtime_error {
 public:
  explicit NoFeasibleCandidate(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace handforge
