#pragma once

#include <stdexcept>
#include <string>

namespace manigraph {

/// Malformed input: bad files, out-of-range parameters, shape mismatches.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The graph violates a structural precondition of the embedding
/// (disconnected, isolated nodes).
class GraphPreconditionError : public std::runtime_error {
public:
  GraphPreconditionError(const std::string& what, std::size_t components = 0)
      : std::runtime_error(what), components_(components) {}

  /// Number of connected components, or 0 when not computed.
  std::size_t components() const noexcept { return components_; }

private:
  std::size_t components_;
};

/// An iterative solver ran out of iterations before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace manigraph
