#include "posynt/mtbdd.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "hash_util.hpp"
#include "posynt/error.hpp"

namespace posynt {

const char* to_string(Semantics s) { return s == Semantics::mealy ? "mealy" : "moore"; }

VariableOrder::VariableOrder(const Vocabulary& vocabulary, Semantics semantics)
    : level_of_(vocabulary.size()), semantics_(semantics) {
  auto ins = vocabulary.block(Role::input);
  auto outs = vocabulary.block(Role::output);
  auto unobs = vocabulary.block(Role::unobservable);
  auto push = [&](const std::vector<std::uint32_t>& block, Role role) {
    for (auto p : block) {
      level_of_[p] = static_cast<std::uint32_t>(prop_at_.size());
      prop_at_.push_back(p);
      roles_.push_back(role);
    }
  };
  if (semantics == Semantics::mealy) {
    push(ins, Role::input);
    push(outs, Role::output);
  } else {
    push(outs, Role::output);
    push(ins, Role::input);
  }
  unobservable_begin_ = static_cast<std::uint32_t>(prop_at_.size());
  push(unobs, Role::unobservable);
}

void Limits::check_deadline() const {
  if (deadline && std::chrono::steady_clock::now() > *deadline)
    throw ResourceError("time limit exceeded");
}

std::size_t MtbddManager::TripleHash::operator()(const Node& n) const noexcept {
  return detail::TripleHash{}({n.level, n.low, n.high});
}

MtbddManager::MtbddManager(FormulaStore& store, const VariableOrder& order, const Limits& limits)
    : store_(store), order_(order), limits_(limits) {}

void MtbddManager::tick() {
  if ((++ticks_ & 0xfff) == 0) limits_.check_deadline();
}

Mtbdd MtbddManager::terminal(Formula dest, bool accepting) {
  Formula canon = store_.canonical(dest);
  std::uint64_t key = (std::uint64_t{canon.id} << 1) | (accepting ? 1U : 0U);
  if (auto it = leaves_.find(key); it != leaves_.end()) return Mtbdd{it->second};
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({kTerminalLevel, canon.id, accepting ? 1U : 0U});
  leaves_.emplace(key, id);
  return Mtbdd{id};
}

Terminal MtbddManager::terminal_of(Mtbdd a) const {
  const Node& n = nodes_[a.id];
  if (n.level != kTerminalLevel) throw UsageError("terminal_of: internal node");
  return {Formula{n.low}, n.high != 0};
}

Mtbdd MtbddManager::make(std::uint32_t level, Mtbdd low, Mtbdd high) {
  if (low == high) return low;
  Node n{level, low.id, high.id};
  if (auto it = unique_.find(n); it != unique_.end()) return Mtbdd{it->second};
  if (nodes_.size() >= limits_.max_nodes) throw ResourceError("MTBDD node limit exceeded");
  tick();
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(n);
  unique_.emplace(n, id);
  return Mtbdd{id};
}

Mtbdd MtbddManager::ite_node(std::uint32_t prop, Mtbdd low, Mtbdd high) {
  if (prop >= order_.size()) throw UsageError("ite_node: unknown variable");
  std::uint32_t level = order_.level(prop);
  if (level >= level_of(low) || level >= level_of(high))
    throw UsageError("ite_node: variable order violated");
  return make(level, low, high);
}

Mtbdd MtbddManager::fuse(BinOp op, Mtbdd a, Mtbdd b) {
  Terminal ta = terminal_of(a);
  Terminal tb = terminal_of(b);
  return terminal(store_.fuse(op, ta.dest, tb.dest), posynt::apply(op, ta.accepting, tb.accepting));
}

Mtbdd MtbddManager::apply(BinOp op, Mtbdd a, Mtbdd b) {
  if (is_terminal(a) && is_terminal(b)) return fuse(op, a, b);
  // (tt,T) and (ff,F) are the units and zeros of conjunction and disjunction.
  const Mtbdd top = terminal(store_.tt(), true);
  const Mtbdd bottom = terminal(store_.ff(), false);
  if (op == BinOp::and_) {
    if (a == top || a == bottom) return a == top ? b : a;
    if (b == top || b == bottom) return b == top ? a : b;
    if (a == b) return a;
  } else if (op == BinOp::or_) {
    if (a == top || a == bottom) return a == bottom ? b : a;
    if (b == top || b == bottom) return b == bottom ? a : b;
    if (a == b) return a;
  }
  if (op != BinOp::implies && a.id > b.id) std::swap(a, b);
  Node key{static_cast<std::uint32_t>(op), a.id, b.id};
  if (auto it = apply_cache_.find(key); it != apply_cache_.end()) {
    ++cache_hits_;
    return Mtbdd{it->second};
  }
  std::uint32_t la = level_of(a);
  std::uint32_t lb = level_of(b);
  std::uint32_t level = std::min(la, lb);
  Mtbdd a0 = la == level ? low(a) : a, a1 = la == level ? high(a) : a;
  Mtbdd b0 = lb == level ? low(b) : b, b1 = lb == level ? high(b) : b;
  Mtbdd lo = apply(op, a0, b0);
  Mtbdd hi = apply(op, a1, b1);
  Mtbdd r = make(level, lo, hi);
  apply_cache_.emplace(key, r.id);
  return r;
}

Mtbdd MtbddManager::negate(Mtbdd a) {
  if (auto it = negate_cache_.find(a.id); it != negate_cache_.end()) {
    ++cache_hits_;
    return Mtbdd{it->second};
  }
  Mtbdd r;
  if (is_terminal(a)) {
    Terminal t = terminal_of(a);
    r = terminal(store_.fuse_not(t.dest), !t.accepting);
  } else {
    r = make(level_of(a), negate(low(a)), negate(high(a)));
  }
  negate_cache_.emplace(a.id, r.id);
  return r;
}

Mtbdd MtbddManager::forall_below(Mtbdd a, std::uint32_t from_level) {
  if (is_terminal(a) || from_level >= order_.size()) return a;
  std::uint64_t key = (std::uint64_t{from_level} << 32) | a.id;
  if (auto it = forall_cache_.find(key); it != forall_cache_.end()) {
    ++cache_hits_;
    return Mtbdd{it->second};
  }
  std::uint32_t level = level_of(a);
  Mtbdd lo = forall_below(low(a), from_level);
  Mtbdd hi = forall_below(high(a), from_level);
  Mtbdd r;
  if (level >= from_level) {
    r = apply(BinOp::and_, lo, hi);
  } else {
    r = make(level, lo, hi);
  }
  forall_cache_.emplace(key, r.id);
  return r;
}

Mtbdd MtbddManager::forall(Mtbdd a, const std::vector<std::uint32_t>& props) {
  if (props.empty()) return a;
  std::vector<std::uint32_t> levels;
  for (auto p : props) levels.push_back(order_.level(p));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::uint32_t from = levels.front();
  if (levels.back() != order_.size() - 1 || levels.size() != order_.size() - from)
    throw UsageError("forall: quantified variables must form the bottom of the variable order");
  return forall_below(a, from);
}

Terminal MtbddManager::evaluate(Mtbdd a, const Assignment& w) const {
  while (!is_terminal(a)) {
    std::uint32_t p = prop_of(a);
    if (!w.assigned(p))
      throw UsageError("evaluate: variable '" + store_.vocabulary()[p].name + "' is unassigned");
    a = w.get(p) ? high(a) : low(a);
  }
  return terminal_of(a);
}

std::vector<Terminal> MtbddManager::terminals(Mtbdd a) const {
  std::vector<Terminal> out;
  std::unordered_set<std::uint32_t> seen;
  std::vector<Mtbdd> stack{a};
  while (!stack.empty()) {
    Mtbdd n = stack.back();
    stack.pop_back();
    if (!seen.insert(n.id).second) continue;
    if (is_terminal(n)) {
      out.push_back(terminal_of(n));
    } else {
      stack.push_back(high(n));
      stack.push_back(low(n));
    }
  }
  return out;
}

std::size_t MtbddManager::size(Mtbdd a) const {
  std::unordered_set<std::uint32_t> seen;
  std::vector<Mtbdd> stack{a};
  while (!stack.empty()) {
    Mtbdd n = stack.back();
    stack.pop_back();
    if (!seen.insert(n.id).second || is_terminal(n)) continue;
    stack.push_back(high(n));
    stack.push_back(low(n));
  }
  return seen.size();
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string MtbddManager::to_dot(const std::vector<std::pair<std::string, Mtbdd>>& roots) const {
  std::ostringstream os;
  os << "digraph mtbdd {\n  node [shape=circle];\n";
  std::unordered_set<std::uint32_t> seen;
  std::vector<Mtbdd> stack;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    os << "  r" << k << " [shape=box, style=rounded, label=\"" << escape(roots[k].first)
       << "\"];\n  r" << k << " -> n" << roots[k].second.id << " [style=dotted];\n";
    stack.push_back(roots[k].second);
  }
  std::vector<std::uint32_t> order;
  while (!stack.empty()) {
    Mtbdd n = stack.back();
    stack.pop_back();
    if (!seen.insert(n.id).second) continue;
    order.push_back(n.id);
    if (!is_terminal(n)) {
      stack.push_back(high(n));
      stack.push_back(low(n));
    }
  }
  std::sort(order.begin(), order.end());
  for (auto id : order) {
    Mtbdd n{id};
    if (is_terminal(n)) {
      Terminal t = terminal_of(n);
      os << "  n" << id << " [shape=box, label=\"" << escape(store_.to_string(t.dest)) << "\""
         << (t.accepting ? ", peripheries=2" : "") << "];\n";
    } else {
      os << "  n" << id << " [label=\"" << escape(store_.vocabulary()[prop_of(n)].name)
         << "\"];\n";
      os << "  n" << id << " -> n" << low(n).id << " [style=dashed];\n";
      os << "  n" << id << " -> n" << high(n).id << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace posynt
