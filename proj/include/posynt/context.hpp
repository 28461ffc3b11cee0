#pragma once

// A synthesis context owns everything one problem instance needs:
// declared variables, the formula and skeleton tables, the variable order
// and the MTBDD manager. Contexts share nothing; one context must only be
// used from one thread at a time.

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "posynt/logic.hpp"
#include "posynt/mtbdd.hpp"

namespace posynt {

struct Partition {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> unobservable;
};

class Context {
 public:
  /// Throws PartitionError when the blocks overlap or repeat a name.
  Context(const Partition& partition, Semantics semantics, Limits limits = {});
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const Vocabulary& vocabulary() const { return vocab_; }
  FormulaStore& store() { return *store_; }
  const FormulaStore& store() const { return *store_; }
  const VariableOrder& order() const { return *order_; }
  MtbddManager& mtbdd() { return *mtbdd_; }
  const MtbddManager& mtbdd() const { return *mtbdd_; }
  Limits& limits() { return limits_; }
  const Limits& limits() const { return limits_; }
  Semantics semantics() const { return order_->semantics(); }

  const std::vector<std::uint32_t>& inputs() const { return inputs_; }
  const std::vector<std::uint32_t>& outputs() const { return outputs_; }
  const std::vector<std::uint32_t>& unobservable() const { return unobservable_; }
  /// Observable variables in variable-order position.
  const std::vector<std::uint32_t>& observable() const { return observable_; }

  Formula parse(std::string_view text) { return posynt::parse(text, *store_); }
  std::uint32_t prop(std::string_view name) const;  // throws UsageError when unknown

  /// Assignment over the listed variables from a compact literal list
  /// such as "i !o"; unlisted variables stay unassigned.
  Assignment assignment(std::string_view literals) const;

  // Memo tables of the translation, keyed by formula id.
  std::unordered_map<Formula, Mtbdd> tr_memo;
  std::unordered_map<Formula, Mtbdd> delta_memo;

 private:
  Vocabulary vocab_;
  Limits limits_;
  std::unique_ptr<FormulaStore> store_;
  std::unique_ptr<VariableOrder> order_;
  std::unique_ptr<MtbddManager> mtbdd_;
  std::vector<std::uint32_t> inputs_, outputs_, unobservable_, observable_;
};

}  // namespace posynt

template <>
struct std::hash<posynt::Mtbdd> {
  std::size_t operator()(posynt::Mtbdd m) const noexcept { return m.id; }
};
