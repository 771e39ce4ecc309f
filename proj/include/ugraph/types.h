#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ugraph {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using ClusterIndex = std::uint32_t;

// Hop limit for depth-limited connection probabilities; nullopt means unlimited.
using Depth = std::optional<std::uint32_t>;

// Raised for malformed input files and out-of-range parameters.
class ValueError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an exact computation would exceed its configured size limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ugraph
