#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hs2 {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using ClassId = std::uint32_t;

/// Hop count in hyperedges. Unreachable pairs carry kInfinite; sums saturate.
using Distance = std::uint32_t;
inline constexpr Distance kInfinite = std::numeric_limits<Distance>::max();

inline constexpr Distance saturating_add(Distance a, Distance b) {
  if (a == kInfinite || b == kInfinite) return kInfinite;
  const std::uint64_t s = std::uint64_t{a} + b;
  return s >= kInfinite ? kInfinite : static_cast<Distance>(s);
}

/// Raised for invalid inputs, violated preconditions and malformed files.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hs2
