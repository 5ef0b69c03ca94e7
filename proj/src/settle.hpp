#pragma once

#include <cstddef>
#include <cstdint>

namespace eclipse::detail {

/// Brings a rank counter in line with whether the partner it was (or was not) counting
/// really dominates it. Returns 1 when the counter went down.
inline std::size_t settle(std::uint32_t& counter, bool counted, bool dominated) {
  if (counted && !dominated && counter > 0) {
    --counter;
    return 1;
  }
  if (!counted && dominated) ++counter;
  return 0;
}

}  // namespace eclipse::detail
