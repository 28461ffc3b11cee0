#include "posynt/progression.hpp"

#include "posynt/error.hpp"

namespace posynt {

namespace {

ProgResult lift(FormulaStore& store, BinOp op, ProgResult a, ProgResult b) {
  return {store.fuse(op, a.remainder, b.remainder), apply(op, a.flag, b.flag)};
}

}  // namespace

ProgResult fp(FormulaStore& store, Formula f, const Assignment& w) {
  const auto node = store.node(f);
  Formula a{node.lhs};
  Formula b{node.rhs};
  switch (node.op) {
    case Op::tt: return {store.tt(), true};
    case Op::ff: return {store.ff(), false};
    case Op::atom:
      return w.get(node.lhs) ? ProgResult{store.tt(), true} : ProgResult{store.ff(), false};
    case Op::not_: {
      ProgResult r = fp(store, a, w);
      return {store.fuse_not(r.remainder), !r.flag};
    }
    case Op::and_:
    case Op::or_:
    case Op::implies:
    case Op::equiv:
    case Op::xor_:
      return lift(store, *to_binop(node.op), fp(store, a, w), fp(store, b, w));
    case Op::next: return {store.canonical(a), true};
    case Op::strong_next: return {store.canonical(a), false};
    case Op::finally:
      return lift(store, BinOp::or_, fp(store, a, w), {store.canonical(f), false});
    case Op::globally:
      return lift(store, BinOp::and_, fp(store, a, w), {store.canonical(f), true});
    case Op::until:
      return lift(store, BinOp::or_, fp(store, b, w),
                  lift(store, BinOp::and_, fp(store, a, w), {store.canonical(f), false}));
    case Op::release:
      return lift(store, BinOp::and_, fp(store, b, w),
                  lift(store, BinOp::or_, fp(store, a, w), {store.canonical(f), true}));
  }
  throw UsageError("fp: unknown operator");
}

ProgResult fp_word(FormulaStore& store, Formula f, const Trace& sigma) {
  ProgResult r{f, false};
  for (const auto& w : sigma.letters()) r = fp(store, r.remainder, w);
  return r;
}

ProgResult fp_obs(FormulaStore& store, Formula f, const Assignment& w_obs,
                  const std::vector<std::uint32_t>& unobservable) {
  if (unobservable.size() >= 63) throw UsageError("fp_obs: too many unobservable variables");
  const std::uint64_t completions = std::uint64_t{1} << unobservable.size();
  ProgResult acc{store.tt(), true};
  for (std::uint64_t bits = 0; bits < completions; ++bits) {
    // Lexicographic: the first listed variable is the most significant.
    Assignment w_u(w_obs.width());
    for (std::size_t k = 0; k < unobservable.size(); ++k)
      w_u.set(unobservable[k], (bits >> (unobservable.size() - 1 - k)) & 1U);
    acc = lift(store, BinOp::and_, acc, fp(store, f, w_obs.fuse(w_u)));
  }
  return acc;
}

ProgResult fp_obs_word(FormulaStore& store, Formula f, const Trace& sigma_obs,
                       const std::vector<std::uint32_t>& unobservable) {
  ProgResult r{f, false};
  for (const auto& w : sigma_obs.letters()) r = fp_obs(store, r.remainder, w, unobservable);
  return r;
}

}  // namespace posynt
