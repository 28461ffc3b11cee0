#pragma once

// Plain reduced ordered BDD over skeleton variables (atoms and x_psi).
// Node 0 is false, node 1 is true. Variables are ordered by allocation.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hash_util.hpp"
#include "posynt/logic.hpp"

namespace posynt {

class SkeletonDd {
 public:
  static constexpr std::uint32_t kFalse = 0;
  static constexpr std::uint32_t kTrue = 1;
  static constexpr std::uint32_t kNoVar = UINT32_MAX;

  struct Node {
    std::uint32_t var;
    std::uint32_t low;
    std::uint32_t high;
  };

  SkeletonDd();

  std::uint32_t var(std::uint32_t v);
  std::uint32_t apply(BinOp op, std::uint32_t a, std::uint32_t b);
  std::uint32_t negate(std::uint32_t a);

  const Node& node(std::uint32_t n) const { return nodes_[n]; }
  bool is_const(std::uint32_t n) const { return n <= kTrue; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::uint32_t make(std::uint32_t v, std::uint32_t low, std::uint32_t high);

  std::vector<Node> nodes_;
  std::unordered_map<detail::Triple, std::uint32_t, detail::TripleHash> unique_;
  std::unordered_map<detail::Triple, std::uint32_t, detail::TripleHash> cache_;
  std::unordered_map<std::uint32_t, std::uint32_t> not_cache_;
};

}  // namespace posynt
