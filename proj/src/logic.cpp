#include "posynt/logic.hpp"

#include <unordered_set>

#include "hash_util.hpp"
#include "posynt/error.hpp"
#include "skeleton_dd.hpp"

namespace posynt {

const char* to_string(Role r) {
  switch (r) {
    case Role::input: return "input";
    case Role::output: return "output";
    case Role::unobservable: return "unobservable";
  }
  return "?";
}

std::uint32_t Vocabulary::declare(std::string name, Role role) {
  if (by_name_.count(name)) throw PartitionError("variable '" + name + "' declared twice");
  auto index = static_cast<std::uint32_t>(props_.size());
  by_name_.emplace(name, index);
  props_.push_back({std::move(name), index, role});
  return index;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> Vocabulary::block(Role role) const {
  std::vector<std::uint32_t> out;
  for (const auto& p : props_)
    if (p.role == role) out.push_back(p.index);
  return out;
}

std::vector<std::uint32_t> Vocabulary::observable() const {
  std::vector<std::uint32_t> out;
  for (const auto& p : props_)
    if (p.role != Role::unobservable) out.push_back(p.index);
  return out;
}

bool apply(BinOp op, bool a, bool b) {
  switch (op) {
    case BinOp::and_: return a && b;
    case BinOp::or_: return a || b;
    case BinOp::implies: return !a || b;
    case BinOp::equiv: return a == b;
    case BinOp::xor_: return a != b;
  }
  return false;
}

Op to_op(BinOp op) {
  switch (op) {
    case BinOp::and_: return Op::and_;
    case BinOp::or_: return Op::or_;
    case BinOp::implies: return Op::implies;
    case BinOp::equiv: return Op::equiv;
    case BinOp::xor_: return Op::xor_;
  }
  return Op::and_;
}

std::optional<BinOp> to_binop(Op op) {
  switch (op) {
    case Op::and_: return BinOp::and_;
    case Op::or_: return BinOp::or_;
    case Op::implies: return BinOp::implies;
    case Op::equiv: return BinOp::equiv;
    case Op::xor_: return BinOp::xor_;
    default: return std::nullopt;
  }
}

bool is_temporal(Op op) {
  switch (op) {
    case Op::next:
    case Op::strong_next:
    case Op::finally:
    case Op::globally:
    case Op::until:
    case Op::release:
      return true;
    default:
      return false;
  }
}

namespace {

bool is_unary(Op op) {
  return op == Op::not_ || op == Op::next || op == Op::strong_next || op == Op::finally ||
         op == Op::globally;
}

}  // namespace

std::size_t FormulaStore::NodeHash::operator()(const Node& n) const noexcept {
  return detail::TripleHash{}({static_cast<std::uint32_t>(n.op), n.lhs, n.rhs});
}

FormulaStore::FormulaStore(const Vocabulary& vocabulary)
    : vocab_(vocabulary), dd_(std::make_unique<SkeletonDd>()) {
  intern({Op::tt, 0, 0});
  intern({Op::ff, 0, 0});
  key_of_.emplace(0, SkeletonDd::kTrue);
  key_of_.emplace(1, SkeletonDd::kFalse);
  rep_of_.emplace(SkeletonDd::kTrue, 0);
  rep_of_.emplace(SkeletonDd::kFalse, 1);
}

FormulaStore::~FormulaStore() = default;

Formula FormulaStore::intern(Node n) {
  if (auto it = table_.find(n); it != table_.end()) return Formula{it->second};
  auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(n);
  table_.emplace(n, id);
  return Formula{id};
}

Formula FormulaStore::tt() { return Formula{0}; }
Formula FormulaStore::ff() { return Formula{1}; }

Formula FormulaStore::atom(std::uint32_t prop) {
  if (prop >= vocab_.size()) throw UsageError("atom index out of range");
  return intern({Op::atom, prop, 0});
}

Formula FormulaStore::make_not(Formula f) { return intern({Op::not_, f.id, 0}); }

Formula FormulaStore::make_binary(Op op, Formula lhs, Formula rhs) {
  if (!to_binop(op) && op != Op::until && op != Op::release)
    throw UsageError("make_binary: not a binary operator");
  return intern({op, lhs.id, rhs.id});
}

Formula FormulaStore::make_unary(Op op, Formula f) {
  if (!is_unary(op)) throw UsageError("make_unary: not a unary operator");
  return intern({op, f.id, 0});
}

std::uint32_t FormulaStore::skeleton_var(Formula f) {
  if (auto it = var_of_.find(f.id); it != var_of_.end()) return it->second;
  auto v = static_cast<std::uint32_t>(var_formula_.size());
  var_formula_.push_back(f);
  var_of_.emplace(f.id, v);
  return v;
}

PropKey FormulaStore::prop_key(Formula f) {
  if (auto it = key_of_.find(f.id); it != key_of_.end()) return PropKey{it->second};
  Node n = nodes_[f.id];
  std::uint32_t key;
  if (n.op == Op::atom || is_temporal(n.op)) {
    key = dd_->var(skeleton_var(f));
  } else if (n.op == Op::not_) {
    key = dd_->negate(prop_key(Formula{n.lhs}).node);
  } else {
    // Left operand first so x_psi allocation follows left-to-right order.
    std::uint32_t l = prop_key(Formula{n.lhs}).node;
    std::uint32_t r = prop_key(Formula{n.rhs}).node;
    key = dd_->apply(*to_binop(n.op), l, r);
  }
  key_of_.emplace(f.id, key);
  return PropKey{key};
}

Formula FormulaStore::representative(std::uint32_t dd_node) {
  if (auto it = rep_of_.find(dd_node); it != rep_of_.end()) return Formula{it->second};
  SkeletonDd::Node n = dd_->node(dd_node);
  Formula v = var_formula_[n.var];
  Formula high = representative(n.high);
  Formula low = representative(n.low);
  Formula r;
  if (high == tt() && low == ff()) {
    r = v;
  } else if (high == ff() && low == tt()) {
    r = make_not(v);
  } else if (low == ff()) {
    r = make_binary(Op::and_, v, high);
  } else if (high == ff()) {
    r = make_binary(Op::and_, make_not(v), low);
  } else if (high == tt()) {
    r = make_binary(Op::or_, v, low);
  } else if (low == tt()) {
    r = make_binary(Op::or_, make_not(v), high);
  } else {
    r = make_binary(Op::or_, make_binary(Op::and_, v, high),
                    make_binary(Op::and_, make_not(v), low));
  }
  rep_of_.emplace(dd_node, r.id);
  key_of_.emplace(r.id, dd_node);
  return r;
}

Formula FormulaStore::canonical(Formula f) { return representative(prop_key(f).node); }

Formula FormulaStore::fuse(BinOp op, Formula lhs, Formula rhs) {
  return representative(dd_->apply(op, prop_key(lhs).node, prop_key(rhs).node));
}

Formula FormulaStore::fuse_not(Formula f) { return representative(dd_->negate(prop_key(f).node)); }

bool FormulaStore::is_canonical(Formula f) { return canonical(f) == f; }

std::size_t FormulaStore::skeleton_nodes() const { return dd_->size(); }

namespace {

int level(Op op) {
  switch (op) {
    case Op::until:
    case Op::release: return 1;
    case Op::implies:
    case Op::equiv:
    case Op::xor_: return 2;
    case Op::or_: return 3;
    case Op::and_: return 4;
    default: return 5;
  }
}

const char* symbol(Op op) {
  switch (op) {
    case Op::and_: return " & ";
    case Op::or_: return " | ";
    case Op::implies: return " -> ";
    case Op::equiv: return " <-> ";
    case Op::xor_: return " xor ";
    case Op::until: return " U ";
    case Op::release: return " R ";
    case Op::next: return "X";
    case Op::strong_next: return "X[!]";
    case Op::finally: return "F";
    case Op::globally: return "G";
    default: return "?";
  }
}

}  // namespace

std::string FormulaStore::to_string(Formula f) const {
  const Node& n = nodes_[f.id];
  switch (n.op) {
    case Op::tt: return "tt";
    case Op::ff: return "ff";
    case Op::atom: return vocab_[n.lhs].name;
    case Op::not_: {
      std::string s = to_string(Formula{n.lhs});
      if (level(nodes_[n.lhs].op) < 5) s = "(" + s + ")";
      return "!" + s;
    }
    case Op::next:
    case Op::strong_next:
    case Op::finally:
    case Op::globally:
      return std::string(symbol(n.op)) + "(" + to_string(Formula{n.lhs}) + ")";
    default: break;
  }
  int own = level(n.op);
  bool right_assoc = own <= 2;
  std::string l = to_string(Formula{n.lhs});
  std::string r = to_string(Formula{n.rhs});
  int ll = level(nodes_[n.lhs].op);
  int rl = level(nodes_[n.rhs].op);
  if (right_assoc ? ll <= own : ll < own) l = "(" + l + ")";
  if (right_assoc ? rl < own : rl <= own) r = "(" + r + ")";
  return l + symbol(n.op) + r;
}

std::vector<Formula> subformulas(const FormulaStore& store, Formula f) {
  std::vector<Formula> out;
  std::unordered_set<std::uint32_t> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g.id).second) continue;
    out.push_back(g);
    const auto& n = store.node(g);
    if (n.op == Op::tt || n.op == Op::ff || n.op == Op::atom) continue;
    if (is_unary(n.op)) {
      stack.push_back(Formula{n.lhs});
    } else {
      stack.push_back(Formula{n.rhs});
      stack.push_back(Formula{n.lhs});
    }
  }
  return out;
}

std::size_t depth(const FormulaStore& store, Formula f) {
  const auto& n = store.node(f);
  if (n.op == Op::tt || n.op == Op::ff || n.op == Op::atom) return 0;
  if (is_unary(n.op)) return 1 + depth(store, Formula{n.lhs});
  return 1 + std::max(depth(store, Formula{n.lhs}), depth(store, Formula{n.rhs}));
}

void Assignment::set(std::uint32_t prop, bool value) {
  if (prop >= values_.size()) values_.resize(prop + 1, -1);
  values_[prop] = value ? 1 : 0;
}

bool Assignment::get(std::uint32_t prop) const {
  if (!assigned(prop)) throw UsageError("variable " + std::to_string(prop) + " is unassigned");
  return values_[prop] == 1;
}

Assignment Assignment::restrict_to(const std::vector<std::uint32_t>& props) const {
  Assignment out(values_.size());
  for (auto p : props)
    if (assigned(p)) out.values_[p] = values_[p];
  return out;
}

Assignment Assignment::fuse(const Assignment& other) const {
  Assignment out(std::max(values_.size(), other.values_.size()));
  for (std::size_t p = 0; p < out.values_.size(); ++p) {
    bool a = p < values_.size() && values_[p] >= 0;
    bool b = p < other.values_.size() && other.values_[p] >= 0;
    if (a && b) throw UsageError("fusion of assignments with overlapping domains");
    if (a) out.values_[p] = values_[p];
    if (b) out.values_[p] = other.values_[p];
  }
  return out;
}

Assignment Assignment::from_bits(std::size_t width, const std::vector<std::uint32_t>& props,
                                 std::uint64_t bits) {
  Assignment out(width);
  for (std::size_t k = 0; k < props.size(); ++k) out.set(props[k], (bits >> k) & 1U);
  return out;
}

Trace::Trace(std::vector<Assignment> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) throw UsageError("traces are nonempty");
}

Trace Trace::restrict_to(const std::vector<std::uint32_t>& props) const {
  std::vector<Assignment> out;
  out.reserve(letters_.size());
  for (const auto& w : letters_) out.push_back(w.restrict_to(props));
  return Trace(std::move(out));
}

Trace Trace::fuse(const Trace& other) const {
  if (other.size() != size()) throw UsageError("fusion of traces with different lengths");
  std::vector<Assignment> out;
  out.reserve(letters_.size());
  for (std::size_t i = 0; i < letters_.size(); ++i) out.push_back(letters_[i].fuse(other[i]));
  return Trace(std::move(out));
}

bool models(const FormulaStore& store, const Trace& trace, std::size_t i, Formula f) {
  const std::size_t n = trace.size();
  if (i >= n) throw UsageError("position out of range");
  const auto& node = store.node(f);
  Formula a{node.lhs};
  Formula b{node.rhs};
  switch (node.op) {
    case Op::tt: return true;
    case Op::ff: return false;
    case Op::atom: return trace[i].get(node.lhs);
    case Op::not_: return !models(store, trace, i, a);
    case Op::and_:
    case Op::or_:
    case Op::implies:
    case Op::equiv:
    case Op::xor_:
      return apply(*to_binop(node.op), models(store, trace, i, a), models(store, trace, i, b));
    case Op::next: return i + 1 == n || models(store, trace, i + 1, a);
    case Op::strong_next: return i + 1 < n && models(store, trace, i + 1, a);
    case Op::finally:
      for (std::size_t j = i; j < n; ++j)
        if (models(store, trace, j, a)) return true;
      return false;
    case Op::globally:
      for (std::size_t j = i; j < n; ++j)
        if (!models(store, trace, j, a)) return false;
      return true;
    case Op::until:
      for (std::size_t j = i; j < n; ++j) {
        if (models(store, trace, j, b)) return true;
        if (!models(store, trace, j, a)) return false;
      }
      return false;
    case Op::release:
      for (std::size_t j = i; j < n; ++j) {
        if (!models(store, trace, j, b)) return false;
        if (models(store, trace, j, a)) return true;
      }
      return true;
  }
  return false;
}

std::string to_string(const Vocabulary& vocab, const Assignment& w) {
  std::string s = "{";
  bool first = true;
  for (std::uint32_t p = 0; p < vocab.size(); ++p) {
    if (!w.assigned(p)) continue;
    if (!first) s += ",";
    first = false;
    s += (w.get(p) ? "" : "!") + vocab[p].name;
  }
  return s + "}";
}

}  // namespace posynt
