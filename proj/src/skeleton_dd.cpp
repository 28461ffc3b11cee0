#include "skeleton_dd.hpp"

#include <algorithm>

namespace posynt {

SkeletonDd::SkeletonDd() {
  nodes_.push_back({kNoVar, kFalse, kFalse});
  nodes_.push_back({kNoVar, kTrue, kTrue});
}

std::uint32_t SkeletonDd::make(std::uint32_t v, std::uint32_t low, std::uint32_t high) {
  if (low == high) return low;
  detail::Triple key{v, low, high};
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({v, low, high});
  unique_.emplace(key, id);
  return id;
}

std::uint32_t SkeletonDd::var(std::uint32_t v) { return make(v, kFalse, kTrue); }

std::uint32_t SkeletonDd::negate(std::uint32_t a) {
  if (a == kFalse) return kTrue;
  if (a == kTrue) return kFalse;
  if (auto it = not_cache_.find(a); it != not_cache_.end()) return it->second;
  Node n = nodes_[a];
  std::uint32_t r = make(n.var, negate(n.low), negate(n.high));
  not_cache_.emplace(a, r);
  return r;
}

std::uint32_t SkeletonDd::apply(BinOp op, std::uint32_t a, std::uint32_t b) {
  if (is_const(a) && is_const(b))
    return posynt::apply(op, a == kTrue, b == kTrue) ? kTrue : kFalse;
  switch (op) {
    case BinOp::and_:
      if (a == kFalse || b == kFalse) return kFalse;
      if (a == kTrue) return b;
      if (b == kTrue || a == b) return a;
      break;
    case BinOp::or_:
      if (a == kTrue || b == kTrue) return kTrue;
      if (a == kFalse) return b;
      if (b == kFalse || a == b) return a;
      break;
    case BinOp::implies:
      if (a == kFalse || b == kTrue || a == b) return kTrue;
      if (a == kTrue) return b;
      break;
    case BinOp::equiv:
      if (a == b) return kTrue;
      if (a == kTrue) return b;
      if (b == kTrue) return a;
      break;
    case BinOp::xor_:
      if (a == b) return kFalse;
      if (a == kFalse) return b;
      if (b == kFalse) return a;
      break;
  }
  bool commutative = op != BinOp::implies;
  if (commutative && a > b) std::swap(a, b);
  detail::Triple key{static_cast<std::uint32_t>(op), a, b};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  Node na = nodes_[a];
  Node nb = nodes_[b];
  std::uint32_t v = std::min(na.var, nb.var);
  std::uint32_t a0 = na.var == v ? na.low : a, a1 = na.var == v ? na.high : a;
  std::uint32_t b0 = nb.var == v ? nb.low : b, b1 = nb.var == v ? nb.high : b;
  std::uint32_t low = apply(op, a0, b0);
  std::uint32_t high = apply(op, a1, b1);
  std::uint32_t r = make(v, low, high);
  cache_.emplace(key, r);
  return r;
}

}  // namespace posynt
