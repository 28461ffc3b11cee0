#pragma once

// Symbolic translation of LTLf formulas to transition MTBDDs and the
// belief-state MTDFA built from them.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "posynt/context.hpp"

namespace posynt {

/// Outgoing transitions of formula `f` over all variables, memoized per id.
Mtbdd tr(Context& ctx, Formula f);

/// Forall-unobservable of tr(s): the belief-state transitions of `s`.
Mtbdd belief_delta(Context& ctx, Formula s);

/// Belief-state MTDFA. States are canonical formulas numbered in discovery
/// order; state 0 is the initial state. Transition MTBDDs are attached
/// lazily, so a partially explored automaton is a valid value.
class Mtdfa {
 public:
  explicit Mtdfa(Formula initial);

  Formula initial() const { return states_.front(); }
  std::size_t state_count() const { return states_.size(); }
  Formula state(std::uint32_t index) const { return states_[index]; }
  std::optional<std::uint32_t> find(Formula s) const;

  bool has_delta(std::uint32_t index) const { return deltas_[index].has_value(); }
  Mtbdd delta(std::uint32_t index) const;  // throws UsageError when not computed
  std::size_t delta_count() const { return delta_count_; }

  /// Index of `s`, registering it when new. Throws ResourceError past the budget.
  std::uint32_t add(Formula s, const Limits& limits);
  void set_delta(std::uint32_t index, Mtbdd m);

 private:
  std::vector<Formula> states_;
  std::unordered_map<Formula, std::uint32_t> index_;
  std::vector<std::optional<Mtbdd>> deltas_;
  std::size_t delta_count_ = 0;
};

/// An empty automaton rooted at [phi].
Mtdfa make_mtdfa(Context& ctx, Formula phi);

/// Compute the transitions of state `index` (once) and register the
/// destinations of its terminals; accepting ones only when asked.
Mtbdd expand(Context& ctx, Mtdfa& m, std::uint32_t index, bool register_accepting);

/// Breadth-first closure from [phi] under every terminal destination.
Mtdfa build_full(Context& ctx, Formula phi);

/// Transition-based acceptance of an observable word.
bool accepts(Context& ctx, Mtdfa& m, const Trace& sigma_obs);

/// Explicit transitions: one line per MTBDD path of each expanded state.
std::string export_text(const Context& ctx, const Mtdfa& m);
std::string export_dot(const Context& ctx, const Mtdfa& m);

/// Observable cube in the sequence form used by the exports: one token per
/// listed variable, `v`, `!v`, or `-` when the variable is unconstrained.
std::string format_cube(const Vocabulary& vocab, const std::vector<std::uint32_t>& vars,
                        const Assignment& partial);

}  // namespace posynt
