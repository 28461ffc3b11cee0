#pragma once

// Multi-terminal BDDs whose leaves are (formula, accepting) pairs.
//
// One manager per synthesis context: a single unique table, unbounded
// operation caches, no garbage collection and no reordering.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "posynt/logic.hpp"

namespace posynt {

enum class Semantics : std::uint8_t { mealy, moore };

const char* to_string(Semantics s);

/// Position of every proposition in the decision-diagram order.
/// Mealy: inputs, outputs, unobservables. Moore: outputs, inputs,
/// unobservables. Declaration order inside each block.
class VariableOrder {
 public:
  VariableOrder(const Vocabulary& vocabulary, Semantics semantics);

  std::uint32_t level(std::uint32_t prop) const { return level_of_[prop]; }
  std::uint32_t prop_at(std::uint32_t level) const { return prop_at_[level]; }
  std::size_t size() const { return prop_at_.size(); }
  Role role_at(std::uint32_t level) const { return roles_[level]; }
  /// First level of the unobservable block (== size() when it is empty).
  std::uint32_t unobservable_begin() const { return unobservable_begin_; }
  Semantics semantics() const { return semantics_; }

 private:
  std::vector<std::uint32_t> level_of_;
  std::vector<std::uint32_t> prop_at_;
  std::vector<Role> roles_;
  std::uint32_t unobservable_begin_ = 0;
  Semantics semantics_;
};

/// Cooperative resource guard shared by the construction and the solvers.
struct Limits {
  std::size_t max_states = 1'000'000;
  std::size_t max_nodes = 10'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  void check_deadline() const;  // throws ResourceError
};

struct Mtbdd {
  std::uint32_t id = 0;
  friend bool operator==(Mtbdd, Mtbdd) = default;
};

struct Terminal {
  Formula dest;
  bool accepting = false;
  friend bool operator==(const Terminal&, const Terminal&) = default;
};

class MtbddManager {
 public:
  static constexpr std::uint32_t kTerminalLevel = UINT32_MAX;

  MtbddManager(FormulaStore& store, const VariableOrder& order, const Limits& limits);

  /// Interned leaf for ([dest], accepting).
  Mtbdd terminal(Formula dest, bool accepting);
  /// Reduced internal node; throws UsageError when `prop` is not above both children.
  Mtbdd ite_node(std::uint32_t prop, Mtbdd low, Mtbdd high);

  Mtbdd apply(BinOp op, Mtbdd a, Mtbdd b);
  Mtbdd negate(Mtbdd a);
  /// Replace every node labeled by a variable at level >= `from_level` by
  /// the conjunction of its children. The quantified levels must form the
  /// bottom of the order.
  Mtbdd forall_below(Mtbdd a, std::uint32_t from_level);
  /// Quantify `props`; throws UsageError unless they are exactly the
  /// bottom levels of the order.
  Mtbdd forall(Mtbdd a, const std::vector<std::uint32_t>& props);
  /// Universal quantification of the context's unobservable block.
  Mtbdd forall_unobservable(Mtbdd a) { return forall_below(a, order_.unobservable_begin()); }

  /// Follow `w` to a leaf; throws UsageError on an unassigned variable.
  Terminal evaluate(Mtbdd a, const Assignment& w) const;

  bool is_terminal(Mtbdd a) const { return nodes_[a.id].level == kTerminalLevel; }
  Terminal terminal_of(Mtbdd a) const;
  std::uint32_t level_of(Mtbdd a) const { return nodes_[a.id].level; }
  std::uint32_t prop_of(Mtbdd a) const { return order_.prop_at(nodes_[a.id].level); }
  Mtbdd low(Mtbdd a) const { return Mtbdd{nodes_[a.id].low}; }
  Mtbdd high(Mtbdd a) const { return Mtbdd{nodes_[a.id].high}; }

  /// Distinct leaves reachable from `a`, low branches first.
  std::vector<Terminal> terminals(Mtbdd a) const;
  /// Nodes reachable from `a` (internal and leaves).
  std::size_t size(Mtbdd a) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t cache_hits() const { return cache_hits_; }
  const VariableOrder& order() const { return order_; }
  FormulaStore& store() { return store_; }
  const FormulaStore& store() const { return store_; }

  /// DOT rendering: dashed low edges, solid high edges, accepting leaves
  /// drawn with a double border. Each root gets a labeled entry arrow.
  std::string to_dot(const std::vector<std::pair<std::string, Mtbdd>>& roots) const;

 private:
  struct Node {
    std::uint32_t level;
    std::uint32_t low;   // leaf: destination formula id
    std::uint32_t high;  // leaf: accepting flag
  };

  Mtbdd make(std::uint32_t level, Mtbdd low, Mtbdd high);
  Mtbdd fuse(BinOp op, Mtbdd a, Mtbdd b);
  void tick();

  FormulaStore& store_;
  const VariableOrder& order_;
  const Limits& limits_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> leaves_;
  struct TripleHash {
    std::size_t operator()(const Node& n) const noexcept;
  };
  struct TripleEq {
    bool operator()(const Node& a, const Node& b) const noexcept {
      return a.level == b.level && a.low == b.low && a.high == b.high;
    }
  };
  std::unordered_map<Node, std::uint32_t, TripleHash, TripleEq> unique_;
  std::unordered_map<Node, std::uint32_t, TripleHash, TripleEq> apply_cache_;
  std::unordered_map<std::uint32_t, std::uint32_t> negate_cache_;
  std::unordered_map<std::uint64_t, std::uint32_t> forall_cache_;
  std::size_t cache_hits_ = 0;
  std::size_t ticks_ = 0;
};

}  // namespace posynt
