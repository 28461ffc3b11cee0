#include "posynt/translate.hpp"

#include <deque>
#include <sstream>

#include "posynt/error.hpp"

namespace posynt {

Mtbdd tr(Context& ctx, Formula f) {
  if (auto it = ctx.tr_memo.find(f); it != ctx.tr_memo.end()) return it->second;
  auto& dd = ctx.mtbdd();
  auto& store = ctx.store();
  const auto node = store.node(f);
  Formula a{node.lhs};
  Formula b{node.rhs};
  Mtbdd r;
  switch (node.op) {
    case Op::tt: r = dd.terminal(store.tt(), true); break;
    case Op::ff: r = dd.terminal(store.ff(), false); break;
    case Op::atom:
      r = dd.ite_node(node.lhs, dd.terminal(store.ff(), false), dd.terminal(store.tt(), true));
      break;
    case Op::not_: r = dd.negate(tr(ctx, a)); break;
    case Op::and_:
    case Op::or_:
    case Op::implies:
    case Op::equiv:
    case Op::xor_: {
      Mtbdd l = tr(ctx, a);
      r = dd.apply(*to_binop(node.op), l, tr(ctx, b));
      break;
    }
    case Op::strong_next: r = dd.terminal(a, false); break;
    case Op::next: r = dd.terminal(a, true); break;
    case Op::until: {
      Mtbdd rhs = tr(ctx, b);
      Mtbdd stay = dd.apply(BinOp::and_, tr(ctx, a), dd.terminal(f, false));
      r = dd.apply(BinOp::or_, rhs, stay);
      break;
    }
    case Op::finally: r = dd.apply(BinOp::or_, tr(ctx, a), dd.terminal(f, false)); break;
    case Op::release: {
      Mtbdd rhs = tr(ctx, b);
      Mtbdd stay = dd.apply(BinOp::or_, tr(ctx, a), dd.terminal(f, true));
      r = dd.apply(BinOp::and_, rhs, stay);
      break;
    }
    case Op::globally: r = dd.apply(BinOp::and_, tr(ctx, a), dd.terminal(f, true)); break;
  }
  ctx.tr_memo.emplace(f, r);
  return r;
}

Mtbdd belief_delta(Context& ctx, Formula s) {
  if (auto it = ctx.delta_memo.find(s); it != ctx.delta_memo.end()) return it->second;
  Mtbdd r = ctx.mtbdd().forall_unobservable(tr(ctx, s));
  ctx.delta_memo.emplace(s, r);
  return r;
}

Mtdfa::Mtdfa(Formula initial) {
  states_.push_back(initial);
  index_.emplace(initial, 0);
  deltas_.emplace_back();
}

std::optional<std::uint32_t> Mtdfa::find(Formula s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Mtbdd Mtdfa::delta(std::uint32_t index) const {
  if (!deltas_[index]) throw UsageError("state " + std::to_string(index) + " is not expanded");
  return *deltas_[index];
}

std::uint32_t Mtdfa::add(Formula s, const Limits& limits) {
  if (auto it = index_.find(s); it != index_.end()) return it->second;
  if (states_.size() >= limits.max_states) throw ResourceError("state limit exceeded");
  auto index = static_cast<std::uint32_t>(states_.size());
  states_.push_back(s);
  index_.emplace(s, index);
  deltas_.emplace_back();
  return index;
}

void Mtdfa::set_delta(std::uint32_t index, Mtbdd m) {
  if (!deltas_[index]) ++delta_count_;
  deltas_[index] = m;
}

Mtdfa make_mtdfa(Context& ctx, Formula phi) { return Mtdfa(ctx.store().canonical(phi)); }

Mtbdd expand(Context& ctx, Mtdfa& m, std::uint32_t index, bool register_accepting) {
  if (m.has_delta(index)) return m.delta(index);
  ctx.limits().check_deadline();
  Mtbdd d = belief_delta(ctx, m.state(index));
  m.set_delta(index, d);
  for (const auto& t : ctx.mtbdd().terminals(d))
    if (register_accepting || !t.accepting) m.add(t.dest, ctx.limits());
  return d;
}

Mtdfa build_full(Context& ctx, Formula phi) {
  Mtdfa m = make_mtdfa(ctx, phi);
  for (std::uint32_t i = 0; i < m.state_count(); ++i) expand(ctx, m, i, true);
  return m;
}

bool accepts(Context& ctx, Mtdfa& m, const Trace& sigma_obs) {
  std::uint32_t s = 0;
  bool flag = false;
  for (const auto& w : sigma_obs.letters()) {
    Terminal t = ctx.mtbdd().evaluate(expand(ctx, m, s, true), w);
    flag = t.accepting;
    s = m.add(t.dest, ctx.limits());
  }
  return flag;
}

std::string format_cube(const Vocabulary& vocab, const std::vector<std::uint32_t>& vars,
                        const Assignment& partial) {
  if (vars.empty()) return "tt";
  std::string out;
  for (auto p : vars) {
    if (!out.empty()) out += ' ';
    if (!partial.assigned(p)) out += '-';
    else out += (partial.get(p) ? "" : "!") + vocab[p].name;
  }
  return out;
}

namespace {

template <typename Fn>
void for_each_path(const MtbddManager& dd, Mtbdd n, Assignment& cube, Fn&& fn) {
  if (dd.is_terminal(n)) {
    fn(cube, dd.terminal_of(n));
    return;
  }
  std::uint32_t p = dd.prop_of(n);
  Assignment saved = cube;
  cube.set(p, false);
  for_each_path(dd, dd.low(n), cube, fn);
  cube = saved;
  cube.set(p, true);
  for_each_path(dd, dd.high(n), cube, fn);
  cube = saved;
}

}  // namespace

std::string export_text(const Context& ctx, const Mtdfa& m) {
  const auto& vocab = ctx.vocabulary();
  std::ostringstream os;
  os << "semantics: " << to_string(ctx.semantics()) << "\n";
  os << "observable:";
  for (auto p : ctx.observable()) os << ' ' << vocab[p].name;
  os << "\ninitial: 0\n";
  for (std::uint32_t i = 0; i < m.state_count(); ++i)
    os << "state " << i << ' ' << ctx.store().to_string(m.state(i)) << "\n";
  for (std::uint32_t i = 0; i < m.state_count(); ++i) {
    if (!m.has_delta(i)) continue;
    Assignment cube(vocab.size());
    for_each_path(ctx.mtbdd(), m.delta(i), cube, [&](const Assignment& c, const Terminal& t) {
      os << i << ' ' << format_cube(vocab, ctx.observable(), c) << ' ' << (t.accepting ? 1 : 0)
         << ' ';
      if (auto j = m.find(t.dest)) os << *j;
      else os << '?';
      os << "\n";
    });
  }
  return os.str();
}

std::string export_dot(const Context& ctx, const Mtdfa& m) {
  std::vector<std::pair<std::string, Mtbdd>> roots;
  for (std::uint32_t i = 0; i < m.state_count(); ++i)
    if (m.has_delta(i)) roots.emplace_back(ctx.store().to_string(m.state(i)), m.delta(i));
  return ctx.mtbdd().to_dot(roots);
}

}  // namespace posynt
