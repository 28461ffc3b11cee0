#include "posynt/context.hpp"

#include <sstream>

#include "posynt/error.hpp"

namespace posynt {

Context::Context(const Partition& partition, Semantics semantics, Limits limits)
    : limits_(limits) {
  auto declare = [&](const std::vector<std::string>& names, Role role) {
    for (const auto& name : names) {
      if (name.empty()) throw PartitionError("empty variable name");
      if (auto p = vocab_.find(name))
        throw PartitionError("variable '" + name + "' is both " + to_string(vocab_[*p].role) +
                             " and " + to_string(role));
      vocab_.declare(name, role);
    }
  };
  declare(partition.inputs, Role::input);
  declare(partition.outputs, Role::output);
  declare(partition.unobservable, Role::unobservable);
  store_ = std::make_unique<FormulaStore>(vocab_);
  order_ = std::make_unique<VariableOrder>(vocab_, semantics);
  mtbdd_ = std::make_unique<MtbddManager>(*store_, *order_, limits_);
  inputs_ = vocab_.block(Role::input);
  outputs_ = vocab_.block(Role::output);
  unobservable_ = vocab_.block(Role::unobservable);
  for (std::uint32_t l = 0; l < order_->unobservable_begin(); ++l)
    observable_.push_back(order_->prop_at(l));
}

std::uint32_t Context::prop(std::string_view name) const {
  auto p = vocab_.find(name);
  if (!p) throw UsageError("unknown variable '" + std::string(name) + "'");
  return *p;
}

Assignment Context::assignment(std::string_view literals) const {
  Assignment w(vocab_.size());
  std::istringstream is{std::string(literals)};
  std::string lit;
  while (is >> lit) {
    bool value = true;
    if (lit[0] == '!') {
      value = false;
      lit.erase(0, 1);
    }
    w.set(prop(lit), value);
  }
  return w;
}

}  // namespace posynt
