#include "posynt/game.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "posynt/error.hpp"

namespace posynt {

const char* to_string(Value v) {
  switch (v) {
    case Value::unknown: return "UNKNOWN";
    case Value::win: return "WIN";
    case Value::lose: return "LOSE";
  }
  return "?";
}

std::string GameStats::to_json(bool with_time) const {
  std::ostringstream os;
  os << "{\"state_count\": " << state_count << ", \"delta_count\": " << delta_count
     << ", \"node_count\": " << node_count << ", \"cache_hits\": " << cache_hits;
  if (with_time) os << ", \"wall_ms\": " << wall_ms;
  os << "}";
  return os.str();
}

namespace {

bool is_controller(const VariableOrder& order, std::uint32_t level) {
  Role r = order.role_at(level);
  if (r == Role::unobservable) throw UsageError("game: unobservable variable in a belief MTBDD");
  return r == Role::output;
}

Value and3(Value a, Value b) {
  if (a == Value::lose || b == Value::lose) return Value::lose;
  if (a == Value::win && b == Value::win) return Value::win;
  return Value::unknown;
}

Value or3(Value a, Value b) {
  if (a == Value::win || b == Value::win) return Value::win;
  if (a == Value::lose && b == Value::lose) return Value::lose;
  return Value::unknown;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

void fill_stats(const Context& ctx, const Mtdfa& m, GameStats& stats) {
  stats.state_count = m.state_count();
  stats.delta_count = m.delta_count();
  stats.node_count = ctx.mtbdd().node_count();
  stats.cache_hits = ctx.mtbdd().cache_hits();
}

std::vector<std::uint32_t> rejecting_successors(const Context& ctx, const Mtdfa& m, Mtbdd d) {
  std::vector<std::uint32_t> out;
  for (const auto& t : ctx.mtbdd().terminals(d)) {
    if (t.accepting) continue;
    if (auto j = m.find(t.dest)) out.push_back(*j);
  }
  return out;
}

}  // namespace

Evaluator::Evaluator(const Context& ctx, StatusFn status)
    : dd_(ctx.mtbdd()), order_(ctx.order()), status_(std::move(status)) {}

Value Evaluator::operator()(Mtbdd node) {
  if (dd_.is_terminal(node)) {
    Terminal t = dd_.terminal_of(node);
    return t.accepting ? Value::win : status_(t.dest);
  }
  if (auto it = memo_.find(node.id); it != memo_.end() && it->second.first == version_)
    return it->second.second;
  Value lo = (*this)(dd_.low(node));
  Value hi = (*this)(dd_.high(node));
  Value v = is_controller(order_, dd_.level_of(node)) ? or3(lo, hi) : and3(lo, hi);
  memo_[node.id] = {version_, v};
  return v;
}

Value eval3(const Context& ctx, Mtbdd node, const StatusFn& status) {
  return Evaluator(ctx, status)(node);
}

void check_block_order(const Context& ctx, Mtbdd node) {
  const auto& dd = ctx.mtbdd();
  const auto& order = ctx.order();
  bool mealy = ctx.semantics() == Semantics::mealy;
  std::unordered_set<std::uint32_t> seen;
  std::vector<Mtbdd> stack{node};
  while (!stack.empty()) {
    Mtbdd n = stack.back();
    stack.pop_back();
    if (dd.is_terminal(n) || !seen.insert(n.id).second) continue;
    bool ctrl = is_controller(order, dd.level_of(n));
    for (Mtbdd c : {dd.low(n), dd.high(n)}) {
      if (dd.is_terminal(c)) continue;
      bool child_ctrl = is_controller(order, dd.level_of(c));
      if (mealy && ctrl && !child_ctrl)
        throw UsageError("game: environment variable below a controller variable");
      if (!mealy && !ctrl && child_ctrl)
        throw UsageError("game: controller variable below an environment variable");
      stack.push_back(c);
    }
  }
}

GameResult solve_full(Context& ctx, Mtdfa& m) {
  auto start = std::chrono::steady_clock::now();
  const std::size_t n = m.state_count();
  GameResult result;
  result.status.assign(n, Value::unknown);
  result.rank.assign(n, 0);

  std::vector<std::vector<std::uint32_t>> preds(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    Mtbdd d = m.delta(s);
    check_block_order(ctx, d);
    for (auto t : rejecting_successors(ctx, m, d)) preds[t].push_back(s);
  }

  // Pessimistic reading: only states already won count.
  Evaluator eval(ctx, [&](Formula f) {
    auto i = m.find(f);
    return i && result.status[*i] == Value::win ? Value::win : Value::lose;
  });

  std::vector<std::uint32_t> candidates(n);
  for (std::uint32_t s = 0; s < n; ++s) candidates[s] = s;
  for (std::uint32_t round = 1; !candidates.empty(); ++round) {
    ctx.limits().check_deadline();
    std::vector<std::uint32_t> won;
    for (auto s : candidates)
      if (result.status[s] != Value::win && eval(m.delta(s)) == Value::win) won.push_back(s);
    for (auto s : won) {
      result.status[s] = Value::win;
      result.rank[s] = round;
    }
    eval.invalidate();
    std::vector<std::uint32_t> next;
    for (auto s : won)
      for (auto p : preds[s])
        if (result.status[p] != Value::win) next.push_back(p);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    candidates = std::move(next);
  }
  for (auto& v : result.status)
    if (v != Value::win) v = Value::lose;

  result.realizable = result.status[0] == Value::win;
  if (result.realizable) result.strategy = extract_strategy(ctx, m, result);
  fill_stats(ctx, m, result.stats);
  result.stats.wall_ms = elapsed_ms(start);
  return result;
}

GameResult solve_otf(Context& ctx, Mtdfa& m) {
  auto start = std::chrono::steady_clock::now();
  std::vector<Value> status;
  std::vector<std::uint32_t> rank, index, lowlink;
  std::vector<char> visited, on_stack;
  std::vector<std::vector<std::uint32_t>> preds;
  auto grow = [&] {
    std::size_t n = m.state_count();
    status.resize(n, Value::unknown);
    rank.resize(n, 0);
    index.resize(n, 0);
    lowlink.resize(n, 0);
    visited.resize(n, 0);
    on_stack.resize(n, 0);
    preds.resize(n);
  };
  grow();

  Evaluator eval(ctx, [&](Formula f) {
    auto i = m.find(f);
    return i && *i < status.size() ? status[*i] : Value::unknown;
  });

  std::uint32_t win_counter = 0;
  auto resolve = [&](std::uint32_t s, Value v) {
    std::vector<std::pair<std::uint32_t, Value>> work{{s, v}};
    while (!work.empty()) {
      auto [t, value] = work.back();
      work.pop_back();
      if (status[t] != Value::unknown) continue;
      status[t] = value;
      if (value == Value::win) rank[t] = ++win_counter;
      eval.invalidate();
      for (auto p : preds[t]) {
        if (status[p] != Value::unknown || !m.has_delta(p)) continue;
        Value e = eval(m.delta(p));
        if (e != Value::unknown) work.emplace_back(p, e);
      }
    }
  };

  struct Frame {
    std::uint32_t state;
    std::vector<std::uint32_t> succ;
    std::size_t next = 0;
  };
  std::vector<Frame> dfs;
  std::vector<std::uint32_t> tarjan;
  std::uint32_t counter = 0;

  auto visit = [&](std::uint32_t s) {
    Mtbdd d = expand(ctx, m, s, false);
    grow();
    check_block_order(ctx, d);
    visited[s] = 1;
    index[s] = lowlink[s] = counter++;
    on_stack[s] = 1;
    tarjan.push_back(s);
    auto succ = rejecting_successors(ctx, m, d);
    for (auto t : succ) preds[t].push_back(s);
    Value v = eval(d);
    if (v != Value::unknown) resolve(s, v);
    dfs.push_back({s, std::move(succ), 0});
  };

  visit(0);
  while (!dfs.empty() && status[0] == Value::unknown) {
    Frame& f = dfs.back();
    if (status[f.state] == Value::unknown && f.next < f.succ.size()) {
      std::uint32_t t = f.succ[f.next++];
      if (status[t] != Value::unknown) continue;
      if (!visited[t]) {
        visit(t);
      } else if (on_stack[t]) {
        lowlink[f.state] = std::min(lowlink[f.state], index[t]);
      }
      continue;
    }
    std::uint32_t s = f.state;
    dfs.pop_back();
    if (lowlink[s] == index[s]) {
      // Closed component: every open member explored all its successors,
      // and none can force a win, so the environment avoids the target.
      std::vector<std::uint32_t> members;
      std::uint32_t t;
      do {
        t = tarjan.back();
        tarjan.pop_back();
        on_stack[t] = 0;
        members.push_back(t);
      } while (t != s);
      for (auto u : members)
        if (status[u] == Value::unknown) resolve(u, Value::lose);
    }
    if (!dfs.empty()) {
      std::uint32_t parent = dfs.back().state;
      lowlink[parent] = std::min(lowlink[parent], lowlink[s]);
    }
  }

  GameResult result;
  grow();
  result.status = status;
  result.rank = rank;
  result.realizable = status[0] == Value::win;
  if (result.realizable) result.strategy = extract_strategy(ctx, m, result);
  fill_stats(ctx, m, result.stats);
  result.stats.wall_ms = elapsed_ms(start);
  return result;
}

Strategy extract_strategy(Context& ctx, const Mtdfa& m, const GameResult& result) {
  if (result.status.empty() || result.status[0] != Value::win)
    throw UsageError("extract_strategy: the initial state is not winning");
  auto& dd = ctx.mtbdd();
  const auto& order = ctx.order();
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  // Cost of a subtree under best play: 0 for an accepting leaf, the rank of
  // a won destination otherwise; max over environment, min over controller.
  std::unordered_map<std::uint32_t, std::uint32_t> cost_memo;
  std::function<std::uint32_t(Mtbdd)> cost = [&](Mtbdd n) -> std::uint32_t {
    if (dd.is_terminal(n)) {
      Terminal t = dd.terminal_of(n);
      if (t.accepting) return 0;
      auto i = m.find(t.dest);
      if (!i || *i >= result.status.size() || result.status[*i] != Value::win) return kInf;
      return result.rank[*i];
    }
    if (auto it = cost_memo.find(n.id); it != cost_memo.end()) return it->second;
    std::uint32_t lo = cost(dd.low(n));
    std::uint32_t hi = cost(dd.high(n));
    std::uint32_t c = is_controller(order, dd.level_of(n)) ? std::min(lo, hi) : std::max(lo, hi);
    cost_memo.emplace(n.id, c);
    return c;
  };

  const Mtbdd unchosen = dd.terminal(ctx.store().ff(), false);
  std::unordered_map<std::uint32_t, Mtbdd> restrict_memo;
  std::function<Mtbdd(Mtbdd)> restrict = [&](Mtbdd n) -> Mtbdd {
    if (dd.is_terminal(n)) return n;
    if (auto it = restrict_memo.find(n.id); it != restrict_memo.end()) return it->second;
    std::uint32_t p = dd.prop_of(n);
    Mtbdd r;
    if (is_controller(order, dd.level_of(n))) {
      // Ties go to the high branch.
      if (cost(dd.high(n)) <= cost(dd.low(n))) r = dd.ite_node(p, unchosen, restrict(dd.high(n)));
      else r = dd.ite_node(p, restrict(dd.low(n)), unchosen);
    } else {
      r = dd.ite_node(p, restrict(dd.low(n)), restrict(dd.high(n)));
    }
    restrict_memo.emplace(n.id, r);
    return r;
  };

  Strategy strategy;
  std::vector<std::uint32_t> queue{0};
  std::unordered_set<std::uint32_t> seen{0};
  while (!queue.empty()) {
    std::uint32_t s = queue.back();
    queue.pop_back();
    Mtbdd d = m.delta(s);
    if (cost(d) >= result.rank[s])
      throw std::logic_error("extract_strategy: winning state without rank progress");
    Mtbdd r = restrict(d);
    strategy.choice.emplace(s, r);
    for (const auto& t : dd.terminals(r)) {
      if (t.accepting || (t.dest == ctx.store().ff())) continue;
      auto j = m.find(t.dest);
      if (j && seen.insert(*j).second) queue.push_back(*j);
    }
  }
  return strategy;
}

}  // namespace posynt
