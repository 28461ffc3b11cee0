#pragma once

// Reachability game on the belief-state MTDFA. Environment variables are
// universal (AND) nodes, controller variables existential (OR) nodes, and
// accepting terminals are the controller's targets.

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "posynt/translate.hpp"

namespace posynt {

enum class Value : std::uint8_t { unknown, win, lose };

const char* to_string(Value v);

struct GameStats {
  std::size_t state_count = 0;  // states discovered
  std::size_t delta_count = 0;  // transition MTBDDs computed
  std::size_t node_count = 0;   // MTBDD nodes in the context
  std::size_t cache_hits = 0;
  double wall_ms = 0.0;

  /// Flat JSON object; `with_time` adds wall_ms (the only nondeterministic field).
  std::string to_json(bool with_time) const;
};

/// Winning choices per WIN state: the state's MTBDD where, at every
/// controller node, the branch not taken is replaced by (ff, false).
struct Strategy {
  std::unordered_map<std::uint32_t, Mtbdd> choice;
};

struct GameResult {
  bool realizable = false;
  std::vector<Value> status;        // per Mtdfa state
  std::vector<std::uint32_t> rank;  // per WIN state; 0 elsewhere
  Strategy strategy;                // filled when realizable
  GameStats stats;
};

using StatusFn = std::function<Value(Formula)>;

/// Three-valued bottom-up evaluation of a transition MTBDD.
class Evaluator {
 public:
  Evaluator(const Context& ctx, StatusFn status);
  Value operator()(Mtbdd node);
  /// Forget memoized values after statuses changed.
  void invalidate() { ++version_; }

 private:
  const MtbddManager& dd_;
  const VariableOrder& order_;
  StatusFn status_;
  std::uint64_t version_ = 0;
  std::unordered_map<std::uint32_t, std::pair<std::uint64_t, Value>> memo_;
};

/// Single evaluation with a fresh memo.
Value eval3(const Context& ctx, Mtbdd node, const StatusFn& status);

/// Least fixpoint on a fully built automaton. Rank = round of first WIN.
GameResult solve_full(Context& ctx, Mtdfa& m);

/// Interleaved exploration and solving from [phi]. `m` must be freshly
/// created by make_mtdfa and is left partially explored.
GameResult solve_otf(Context& ctx, Mtdfa& m);

/// Rank-decreasing positional strategy; throws UsageError when the
/// initial state is not WIN.
Strategy extract_strategy(Context& ctx, const Mtdfa& m, const GameResult& result);

/// Throws UsageError when an environment variable sits below a controller
/// variable (Mealy) or above one (Moore) somewhere in `node`.
void check_block_order(const Context& ctx, Mtbdd node);

}  // namespace posynt
