#pragma once

#include <cstddef>
#include <cstdint>

namespace posynt::detail {

inline std::size_t mix(std::size_t seed, std::uint64_t v) {
  v ^= v >> 33;
  v *= 0xff51afd7ed558ccdULL;
  v ^= v >> 33;
  return seed ^ (static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct Triple {
  std::uint32_t a;
  std::uint32_t b;
  std::uint32_t c;
  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept {
    return mix(mix(mix(0, t.a), t.b), t.c);
  }
};

}  // namespace posynt::detail
