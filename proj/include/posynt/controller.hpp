#pragma once

// Terminating Mealy/Moore transducers built from a winning strategy.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posynt/game.hpp"

namespace posynt {

struct ControllerTransition {
  static constexpr std::int32_t kTerminate = -1;

  /// Pairwise disjoint input cubes (unassigned inputs are don't-cares).
  std::vector<Assignment> guard;
  /// Complete assignment of the outputs.
  Assignment output;
  std::int32_t target = kTerminate;
};

struct ControllerState {
  Formula belief;            // belief state this controller state stands for
  std::uint32_t mtdfa_state;  // its index in the automaton
  std::vector<ControllerTransition> transitions;
};

struct Controller {
  Semantics semantics = Semantics::mealy;
  std::vector<std::uint32_t> inputs;   // observable inputs, declaration order
  std::vector<std::uint32_t> outputs;  // declaration order
  std::vector<ControllerState> states;  // state 0 is initial
  std::size_t width = 0;                // vocabulary size of the assignments

  /// Transition taken on a complete input letter, or nullptr.
  const ControllerTransition* step(std::uint32_t state, const Assignment& in) const;
};

/// States are numbered breadth-first from the initial state; transitions
/// follow the low-first path order of the restricted MTBDD.
Controller build_controller(Context& ctx, const Mtdfa& m, const GameResult& result);

struct VerifyReport {
  bool ok = true;
  std::string message;
  std::optional<Trace> witness;  // full trace violating the specification
};

struct VerifyOptions {
  std::size_t exhaustive_limit = 5;  // max |P| for the exhaustive semantic check
  std::size_t samples = 2000;        // input words tried otherwise
  std::uint64_t seed = 1;
  bool product = true;  // false runs the semantic check alone
};

/// Product check against the belief automaton, then a semantic check over
/// input words up to the termination horizon and all unobservable completions.
VerifyReport verify_controller(Context& ctx, Mtdfa& m, Formula phi, const Controller& c,
                               const VerifyOptions& options = {});

enum class ControllerFormat { text, dot };

std::string export_controller(const Context& ctx, const Controller& c, ControllerFormat format);

}  // namespace posynt
