#pragma once

// LTLf syntax: propositions, hash-consed formulas, propositional
// equivalence, finite traces and the reference satisfaction relation.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace posynt {

enum class Role : std::uint8_t { input, output, unobservable };

const char* to_string(Role r);

struct Proposition {
  std::string name;
  std::uint32_t index = 0;
  Role role = Role::input;
};

/// Declared propositions of one problem instance. Indices follow
/// declaration order and never change once assigned.
class Vocabulary {
 public:
  /// Throws PartitionError when the name is already declared.
  std::uint32_t declare(std::string name, Role role);

  std::optional<std::uint32_t> find(std::string_view name) const;
  const Proposition& operator[](std::uint32_t index) const { return props_[index]; }
  std::size_t size() const { return props_.size(); }

  /// Indices of one block, in declaration order.
  std::vector<std::uint32_t> block(Role role) const;
  std::vector<std::uint32_t> observable() const;

 private:
  std::vector<Proposition> props_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
};

enum class Op : std::uint8_t {
  tt,
  ff,
  atom,
  not_,
  and_,
  or_,
  implies,
  equiv,
  xor_,
  next,         // weak next, vacuously true at the last position
  strong_next,  // false at the last position
  finally,
  globally,
  until,
  release,
};

/// The Boolean connectives that may appear between two formulas.
enum class BinOp : std::uint8_t { and_, or_, implies, equiv, xor_ };

bool apply(BinOp op, bool a, bool b);
Op to_op(BinOp op);
std::optional<BinOp> to_binop(Op op);
bool is_temporal(Op op);

/// Interned formula handle. Equal ids mean structurally equal formulas.
struct Formula {
  std::uint32_t id = 0;
  friend bool operator==(Formula, Formula) = default;
  friend auto operator<=>(Formula, Formula) = default;
};

/// Canonical identifier of the Boolean skeleton of a formula.
struct PropKey {
  std::uint32_t node = 0;
  friend bool operator==(PropKey, PropKey) = default;
};

}  // namespace posynt

template <>
struct std::hash<posynt::Formula> {
  std::size_t operator()(posynt::Formula f) const noexcept { return f.id; }
};

namespace posynt {

class SkeletonDd;

/// Owns every formula of a synthesis context together with the tables
/// used for propositional-equivalence canonicalization.
class FormulaStore {
 public:
  struct Node {
    Op op;
    std::uint32_t lhs;  // atom: proposition index; unary: operand id
    std::uint32_t rhs;
  };

  explicit FormulaStore(const Vocabulary& vocabulary);
  ~FormulaStore();
  FormulaStore(const FormulaStore&) = delete;
  FormulaStore& operator=(const FormulaStore&) = delete;

  const Vocabulary& vocabulary() const { return vocab_; }

  Formula tt();
  Formula ff();
  Formula atom(std::uint32_t prop);
  Formula make_not(Formula f);
  Formula make_binary(Op op, Formula lhs, Formula rhs);
  Formula make_binary(BinOp op, Formula lhs, Formula rhs) {
    return make_binary(to_op(op), lhs, rhs);
  }
  Formula make_unary(Op op, Formula f);

  const Node& node(Formula f) const { return nodes_[f.id]; }
  Op op(Formula f) const { return nodes_[f.id].op; }
  Formula lhs(Formula f) const { return Formula{nodes_[f.id].lhs}; }
  Formula rhs(Formula f) const { return Formula{nodes_[f.id].rhs}; }
  std::size_t size() const { return nodes_.size(); }

  /// Key of the Boolean function obtained by replacing every maximal
  /// temporal subformula psi by a variable x_psi.
  PropKey prop_key(Formula f);
  /// Deterministic representative of the propositional-equivalence class,
  /// rebuilt from the reduced ordered skeleton diagram.
  Formula canonical(Formula f);
  /// [lhs op rhs] without building the intermediate formula.
  Formula fuse(BinOp op, Formula lhs, Formula rhs);
  /// [!f]
  Formula fuse_not(Formula f);
  bool is_canonical(Formula f);

  std::size_t skeleton_nodes() const;

  std::string to_string(Formula f) const;

 private:
  Formula intern(Node n);
  std::uint32_t skeleton_var(Formula f);
  Formula representative(std::uint32_t dd_node);

  struct NodeHash {
    std::size_t operator()(const Node& n) const noexcept;
  };
  struct NodeEq {
    bool operator()(const Node& a, const Node& b) const noexcept {
      return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
    }
  };

  const Vocabulary& vocab_;
  std::vector<Node> nodes_;
  std::unordered_map<Node, std::uint32_t, NodeHash, NodeEq> table_;

  std::unique_ptr<SkeletonDd> dd_;
  std::unordered_map<std::uint32_t, std::uint32_t> key_of_;       // formula -> dd node
  std::unordered_map<std::uint32_t, std::uint32_t> var_of_;       // atom/temporal formula -> dd var
  std::vector<Formula> var_formula_;                              // dd var -> formula
  std::unordered_map<std::uint32_t, std::uint32_t> rep_of_;       // dd node -> formula
};

/// Parse LTLf text. Atoms must be declared in `store.vocabulary()`.
/// Throws ParseError or UndeclaredAtomError.
Formula parse(std::string_view text, FormulaStore& store);

/// sf(phi), including phi itself, in first-visit preorder.
std::vector<Formula> subformulas(const FormulaStore& store, Formula f);
std::size_t depth(const FormulaStore& store, Formula f);

/// Valuation of the context's propositions. Propositions outside the
/// assignment's domain are unassigned.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t vocabulary_size) : values_(vocabulary_size, -1) {}

  void set(std::uint32_t prop, bool value);
  bool get(std::uint32_t prop) const;  // throws UsageError when unassigned
  bool assigned(std::uint32_t prop) const {
    return prop < values_.size() && values_[prop] >= 0;
  }
  std::size_t width() const { return values_.size(); }

  Assignment restrict_to(const std::vector<std::uint32_t>& props) const;
  /// Disjoint union; throws UsageError when the domains overlap.
  Assignment fuse(const Assignment& other) const;

  /// Assignment of `props` taken from the low bits of `bits` (first prop = bit 0).
  static Assignment from_bits(std::size_t width, const std::vector<std::uint32_t>& props,
                              std::uint64_t bits);

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::int8_t> values_;
};

/// Nonempty finite word of assignments over a common domain.
class Trace {
 public:
  explicit Trace(std::vector<Assignment> letters);  // throws UsageError when empty

  std::size_t size() const { return letters_.size(); }
  const Assignment& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Assignment>& letters() const { return letters_; }

  Trace restrict_to(const std::vector<std::uint32_t>& props) const;
  Trace fuse(const Trace& other) const;

 private:
  std::vector<Assignment> letters_;
};

/// sigma, i |= phi, literally following the finite-word semantics.
bool models(const FormulaStore& store, const Trace& trace, std::size_t i, Formula f);

std::string to_string(const Vocabulary& vocab, const Assignment& w);

}  // namespace posynt
