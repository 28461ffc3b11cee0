#include "posynt/controller.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "posynt/error.hpp"

namespace posynt {

const ControllerTransition* Controller::step(std::uint32_t state, const Assignment& in) const {
  for (const auto& t : states.at(state).transitions)
    for (const auto& cube : t.guard) {
      bool match = true;
      for (auto p : inputs)
        if (cube.assigned(p) && cube.get(p) != in.get(p)) {
          match = false;
          break;
        }
      if (match) return &t;
    }
  return nullptr;
}

namespace {

struct PathEnd {
  Assignment inputs;
  Assignment outputs;
  Terminal terminal;
};

class PathWalker {
 public:
  explicit PathWalker(Context& ctx)
      : dd_(ctx.mtbdd()),
        order_(ctx.order()),
        marker_(ctx.mtbdd().terminal(ctx.store().ff(), false)) {}

  // Every input path of the restricted diagram with the outputs it commits to.
  void walk(Mtbdd n, Assignment in, Assignment out, std::vector<PathEnd>& ends) {
    if (dd_.is_terminal(n)) {
      ends.push_back({in, out, dd_.terminal_of(n)});
      return;
    }
    std::uint32_t p = dd_.prop_of(n);
    if (order_.role_at(dd_.level_of(n)) == Role::output) {
      // One branch survives restriction; the other is the marker.
      bool take_high = dd_.high(n) != marker_ || dd_.low(n) == marker_;
      out.set(p, take_high);
      walk(take_high ? dd_.high(n) : dd_.low(n), in, out, ends);
      return;
    }
    Assignment lo = in, hi = in;
    lo.set(p, false);
    hi.set(p, true);
    walk(dd_.low(n), lo, out, ends);
    walk(dd_.high(n), hi, out, ends);
  }

 private:
  const MtbddManager& dd_;
  const VariableOrder& order_;
  Mtbdd marker_;
};

// Disjoint cube cover of the union of `cubes`, via a BDD over the inputs.
std::vector<Assignment> merge_cubes(Context& ctx, const std::vector<std::uint32_t>& inputs,
                                    const std::vector<Assignment>& cubes, std::size_t width) {
  auto& dd = ctx.mtbdd();
  const Mtbdd top = dd.terminal(ctx.store().tt(), true);
  const Mtbdd bottom = dd.terminal(ctx.store().ff(), false);
  std::vector<std::uint32_t> by_level = inputs;
  std::sort(by_level.begin(), by_level.end(), [&](auto a, auto b) {
    return ctx.order().level(a) > ctx.order().level(b);
  });
  Mtbdd acc = bottom;
  for (const auto& cube : cubes) {
    Mtbdd c = top;
    for (auto p : by_level) {
      if (!cube.assigned(p)) continue;
      c = cube.get(p) ? dd.ite_node(p, bottom, c) : dd.ite_node(p, c, bottom);
    }
    acc = dd.apply(BinOp::or_, acc, c);
  }
  std::vector<Assignment> out;
  std::vector<std::pair<Mtbdd, Assignment>> stack{{acc, Assignment(width)}};
  while (!stack.empty()) {
    auto [n, cube] = stack.back();
    stack.pop_back();
    if (dd.is_terminal(n)) {
      if (n == top) out.push_back(cube);
      continue;
    }
    Assignment lo = cube, hi = cube;
    lo.set(dd.prop_of(n), false);
    hi.set(dd.prop_of(n), true);
    stack.emplace_back(dd.high(n), hi);
    stack.emplace_back(dd.low(n), lo);
  }
  return out;
}

Assignment complete_outputs(const Assignment& partial, const std::vector<std::uint32_t>& outs,
                            std::size_t width) {
  Assignment out(width);
  for (auto p : outs) out.set(p, partial.assigned(p) ? partial.get(p) : true);
  return out;
}

}  // namespace

Controller build_controller(Context& ctx, const Mtdfa& m, const GameResult& result) {
  if (!result.realizable) throw UsageError("build_controller: specification is unrealizable");
  const std::size_t width = ctx.vocabulary().size();
  Controller c;
  c.semantics = ctx.semantics();
  c.inputs = ctx.inputs();
  c.outputs = ctx.outputs();
  c.width = width;

  std::map<std::uint32_t, std::int32_t> number;  // mtdfa index -> controller state
  std::deque<std::uint32_t> queue{0};
  number[0] = 0;
  PathWalker walker(ctx);
  while (!queue.empty()) {
    std::uint32_t s = queue.front();
    queue.pop_front();
    auto it = result.strategy.choice.find(s);
    if (it == result.strategy.choice.end())
      throw std::logic_error("build_controller: no strategy for a reachable state");
    std::vector<PathEnd> ends;
    walker.walk(it->second, Assignment(width), Assignment(width), ends);

    ControllerState state{m.state(s), s, {}};
    // Group by (outputs, destination) in order of first appearance.
    std::vector<std::pair<ControllerTransition, std::vector<Assignment>>> groups;
    for (const auto& e : ends) {
      std::int32_t target = ControllerTransition::kTerminate;
      if (!e.terminal.accepting) {
        auto j = m.find(e.terminal.dest);
        if (!j) throw std::logic_error("build_controller: unknown destination");
        auto [pos, fresh] = number.emplace(*j, static_cast<std::int32_t>(number.size()));
        if (fresh) queue.push_back(*j);
        target = pos->second;
      }
      Assignment out = complete_outputs(e.outputs, c.outputs, width);
      auto g = std::find_if(groups.begin(), groups.end(), [&](const auto& x) {
        return x.first.target == target && x.first.output == out;
      });
      if (g == groups.end()) {
        groups.push_back({ControllerTransition{{}, out, target}, {}});
        g = groups.end() - 1;
      }
      g->second.push_back(e.inputs);
    }
    for (auto& [t, cubes] : groups) {
      t.guard = merge_cubes(ctx, c.inputs, cubes, width);
      state.transitions.push_back(std::move(t));
    }
    c.states.push_back(std::move(state));
  }
  return c;
}

namespace {

std::string letter_string(const Vocabulary& vocab, const Assignment& w) {
  return to_string(vocab, w);
}

VerifyReport fail(std::string message, std::optional<Trace> witness = std::nullopt) {
  return {false, std::move(message), std::move(witness)};
}

std::vector<Assignment> all_letters(const std::vector<std::uint32_t>& props, std::size_t width) {
  std::vector<Assignment> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << props.size()); ++bits)
    out.push_back(Assignment::from_bits(width, props, bits));
  return out;
}

// Product of the controller with the belief automaton: acceptance exactly
// at termination, determinism, input-enabledness, and no cycles.
VerifyReport product_check(Context& ctx, Mtdfa& m, const Controller& c) {
  const auto& vocab = ctx.vocabulary();
  auto inputs = all_letters(c.inputs, c.width);
  std::map<std::pair<std::int32_t, std::uint32_t>, int> color;  // 1 open, 2 done
  struct Frame {
    std::int32_t cs;
    std::uint32_t ms;
    std::size_t next;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  color[{0, 0}] = 1;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == inputs.size()) {
      color[{f.cs, f.ms}] = 2;
      stack.pop_back();
      continue;
    }
    const Assignment& in = inputs[f.next++];
    std::size_t matches = 0;
    for (const auto& t : c.states[f.cs].transitions)
      for (const auto& cube : t.guard) {
        bool hit = true;
        for (auto p : c.inputs)
          if (cube.assigned(p) && cube.get(p) != in.get(p)) hit = false;
        matches += hit;
      }
    if (matches != 1)
      return fail("state " + std::to_string(f.cs) + ": " + std::to_string(matches) +
                  " transitions match input " + letter_string(vocab, in));
    const ControllerTransition* t = c.step(f.cs, in);
    Mtbdd d = expand(ctx, m, f.ms, false);
    Terminal term = ctx.mtbdd().evaluate(d, in.fuse(t->output));
    if (t->target == ControllerTransition::kTerminate) {
      if (!term.accepting)
        return fail("state " + std::to_string(f.cs) + " terminates on a rejecting transition");
      continue;
    }
    if (term.accepting)
      return fail("state " + std::to_string(f.cs) + " continues past an accepting transition");
    std::uint32_t next_ms = m.add(term.dest, ctx.limits());
    std::pair<std::int32_t, std::uint32_t> key{t->target, next_ms};
    auto it = color.find(key);
    if (it != color.end()) {
      if (it->second == 1) return fail("controller loops without terminating");
      continue;
    }
    color[key] = 1;
    stack.push_back({t->target, next_ms, 0});
  }
  return {};
}

// Longest path to TERMINATE in the controller graph alone.
VerifyReport termination_bound(const Controller& c) {
  const std::size_t n = c.states.size();
  std::vector<int> color(n, 0);
  std::vector<std::size_t> longest(n, 0);
  std::function<bool(std::size_t)> visit = [&](std::size_t s) {
    color[s] = 1;
    std::size_t best = 0;
    for (const auto& t : c.states[s].transitions) {
      if (t.target == ControllerTransition::kTerminate) {
        best = std::max<std::size_t>(best, 1);
        continue;
      }
      auto u = static_cast<std::size_t>(t.target);
      if (color[u] == 1) return false;
      if (color[u] == 0 && !visit(u)) return false;
      best = std::max(best, longest[u] + 1);
    }
    longest[s] = best;
    color[s] = 2;
    return true;
  };
  if (!visit(0)) return fail("controller graph has a cycle");
  if (longest[0] > n) return fail("termination takes more steps than there are states");
  return {};
}

class SemanticCheck {
 public:
  SemanticCheck(Context& ctx, Formula phi, const Controller& c)
      : ctx_(ctx), phi_(phi), c_(c), horizon_(c.states.size()) {}

  VerifyReport exhaustive() {
    auto inputs = all_letters(c_.inputs, c_.width);
    std::vector<Assignment> prefix;
    return explore(0, prefix, inputs);
  }

  VerifyReport sampled(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto inputs = all_letters(c_.inputs, c_.width);
    for (std::size_t k = 0; k < samples; ++k) {
      std::vector<Assignment> prefix;
      std::int32_t s = 0;
      while (true) {
        if (prefix.size() >= horizon_)
          return fail("no termination within " + std::to_string(horizon_) + " steps",
                      Trace(prefix));
        const Assignment& in = inputs[rng() % inputs.size()];
        const ControllerTransition* t = c_.step(s, in);
        if (!t) return fail("no transition for input " + letter_string(ctx_.vocabulary(), in));
        prefix.push_back(in.fuse(t->output));
        if (t->target == ControllerTransition::kTerminate) {
          if (auto r = check_completions(prefix, &rng); !r.ok) return r;
          break;
        }
        s = t->target;
      }
    }
    return {};
  }

 private:
  VerifyReport explore(std::int32_t s, std::vector<Assignment>& prefix,
                       const std::vector<Assignment>& inputs) {
    if (prefix.size() >= horizon_)
      return fail("no termination within " + std::to_string(horizon_) + " steps", Trace(prefix));
    for (const auto& in : inputs) {
      const ControllerTransition* t = c_.step(s, in);
      if (!t) return fail("no transition for input " + letter_string(ctx_.vocabulary(), in));
      prefix.push_back(in.fuse(t->output));
      VerifyReport r = t->target == ControllerTransition::kTerminate
                           ? check_completions(prefix, nullptr)
                           : explore(t->target, prefix, inputs);
      prefix.pop_back();
      if (!r.ok) return r;
    }
    return {};
  }

  // The termination point is fixed by the observable prefix; every
  // unobservable completion of that same length must satisfy phi.
  VerifyReport check_completions(const std::vector<Assignment>& prefix, std::mt19937_64* rng) {
    const auto& unobs = ctx_.unobservable();
    const std::size_t n = prefix.size();
    const std::size_t bits = unobs.size() * n;
    auto run = [&](std::uint64_t code) -> VerifyReport {
      std::vector<Assignment> letters;
      for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t chunk = (code >> (k * unobs.size())) & ((std::uint64_t{1} << unobs.size()) - 1);
        letters.push_back(prefix[k].fuse(Assignment::from_bits(c_.width, unobs, chunk)));
      }
      Trace sigma(letters);
      if (!models(ctx_.store(), sigma, 0, phi_))
        return fail("specification violated by a completion at termination", sigma);
      return {};
    };
    if (rng && bits > 16) {
      for (int k = 0; k < 256; ++k)
        if (auto r = run((*rng)() & ((std::uint64_t{1} << bits) - 1)); !r.ok) return r;
      return {};
    }
    if (bits >= 63) throw BudgetError("verify_controller: too many unobservable completions");
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code)
      if (auto r = run(code); !r.ok) return r;
    return {};
  }

  Context& ctx_;
  Formula phi_;
  const Controller& c_;
  std::size_t horizon_;
};

}  // namespace

VerifyReport verify_controller(Context& ctx, Mtdfa& m, Formula phi, const Controller& c,
                               const VerifyOptions& options) {
  if (c.states.empty()) return fail("controller has no states");
  if (m.state(0) != ctx.store().canonical(phi))
    return fail("automaton is not rooted at the specification");
  if (c.semantics == Semantics::moore)
    for (const auto& s : c.states)
      for (const auto& t : s.transitions)
        if (!(t.output == s.transitions.front().output))
          return fail("Moore state with input-dependent outputs");
  if (auto r = termination_bound(c); !r.ok) return r;
  if (options.product)
    if (auto r = product_check(ctx, m, c); !r.ok) return r;
  SemanticCheck sem(ctx, phi, c);
  if (ctx.vocabulary().size() <= options.exhaustive_limit) return sem.exhaustive();
  return sem.sampled(options.samples, options.seed);
}

std::string export_controller(const Context& ctx, const Controller& c, ControllerFormat format) {
  const auto& vocab = ctx.vocabulary();
  auto names = [&](const std::vector<std::uint32_t>& ps) {
    std::string s;
    for (auto p : ps) s += (s.empty() ? "" : " ") + vocab[p].name;
    return s;
  };
  auto label = [&](const Assignment& cube, const Assignment& out) {
    return format_cube(vocab, c.inputs, cube) + " / " + format_cube(vocab, c.outputs, out);
  };
  auto target = [](std::int32_t t) {
    return t == ControllerTransition::kTerminate ? std::string("TERMINATE") : std::to_string(t);
  };
  std::ostringstream os;
  if (format == ControllerFormat::text) {
    os << "semantics: " << to_string(c.semantics) << "\n";
    auto header = [&](const char* key, const std::vector<std::uint32_t>& ps) {
      os << key << (ps.empty() ? "" : " ") << names(ps) << "\n";
    };
    header("ins:", c.inputs);
    header("outs:", c.outputs);
    for (std::size_t s = 0; s < c.states.size(); ++s)
      for (const auto& t : c.states[s].transitions)
        for (const auto& cube : t.guard)
          os << s << " \"" << label(cube, t.output) << "\" " << target(t.target) << "\n";
    return os.str();
  }
  os << "digraph controller {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  init [shape=point];\n  init -> s0;\n";
  bool terminates = false;
  for (std::size_t s = 0; s < c.states.size(); ++s) {
    std::string belief = ctx.store().to_string(c.states[s].belief);
    std::string escaped;
    for (char ch : belief) {
      if (ch == '"' || ch == '\\') escaped += '\\';
      escaped += ch;
    }
    os << "  s" << s << " [label=\"" << s << "\", tooltip=\"" << escaped << "\"];\n";
  }
  for (std::size_t s = 0; s < c.states.size(); ++s)
    for (const auto& t : c.states[s].transitions)
      for (const auto& cube : t.guard) {
        bool term = t.target == ControllerTransition::kTerminate;
        terminates |= term;
        os << "  s" << s << " -> " << (term ? "TERMINATE" : "s" + std::to_string(t.target))
           << " [label=\"" << label(cube, t.output) << "\"];\n";
      }
  if (terminates) os << "  TERMINATE [shape=doublecircle, label=\"\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace posynt
