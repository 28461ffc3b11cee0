#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "posynt/context.hpp"
#include "posynt/error.hpp"

using namespace posynt;

TEST_CASE("variable order per semantics") {
  Context mealy({{"i1", "i2"}, {"o1"}, {"u1"}}, Semantics::mealy);
  const auto& om = mealy.order();
  CHECK(om.level(mealy.prop("i1")) == 0);
  CHECK(om.level(mealy.prop("i2")) == 1);
  CHECK(om.level(mealy.prop("o1")) == 2);
  CHECK(om.level(mealy.prop("u1")) == 3);
  CHECK(om.unobservable_begin() == 3);
  Context moore({{"i1", "i2"}, {"o1"}, {"u1"}}, Semantics::moore);
  const auto& oo = moore.order();
  CHECK(oo.level(moore.prop("o1")) == 0);
  CHECK(oo.level(moore.prop("i1")) == 1);
  CHECK(oo.role_at(3) == Role::unobservable);
}

TEST_CASE("terminals are interned up to propositional equivalence") {
  Context ctx({{"a", "b"}, {}, {}}, Semantics::mealy);
  auto& dd = ctx.mtbdd();
  Mtbdd x = dd.terminal(ctx.parse("F a & F b"), true);
  Mtbdd y = dd.terminal(ctx.parse("F b & F a"), true);
  CHECK(x == y);
  CHECK(dd.terminal(ctx.parse("F a & F b"), false) != x);
  CHECK(dd.is_terminal(x));
  CHECK(dd.terminal_of(x).accepting);
  Mtbdd n = dd.ite_node(0, x, dd.terminal(ctx.store().ff(), false));
  CHECK_THROWS_AS(dd.terminal_of(n), UsageError);
}

TEST_CASE("node construction respects the order") {
  Context ctx({{"a", "b"}, {}, {}}, Semantics::mealy);
  auto& dd = ctx.mtbdd();
  Mtbdd t = dd.terminal(ctx.store().tt(), true);
  Mtbdd f = dd.terminal(ctx.store().ff(), false);
  Mtbdd b = dd.ite_node(1, f, t);
  CHECK(dd.ite_node(0, b, b) == b);  // reduced away
  Mtbdd ab = dd.ite_node(0, f, b);
  CHECK(dd.ite_node(0, f, b) == ab);  // unique table
  CHECK_THROWS_AS(dd.ite_node(1, ab, t), UsageError);
  CHECK_THROWS_AS(dd.ite_node(7, f, t), UsageError);
  CHECK(dd.size(ab) == 4);
}

TEST_CASE("apply fuses terminals and short-circuits units") {
  Context ctx({{"a", "b"}, {}, {}}, Semantics::mealy);
  auto& dd = ctx.mtbdd();
  auto& st = ctx.store();
  Mtbdd top = dd.terminal(st.tt(), true);
  Mtbdd bot = dd.terminal(st.ff(), false);
  Mtbdd fa = dd.terminal(ctx.parse("F a"), false);
  Mtbdd gb = dd.terminal(ctx.parse("G b"), true);
  CHECK(dd.apply(BinOp::and_, top, fa) == fa);
  CHECK(dd.apply(BinOp::and_, bot, fa) == bot);
  CHECK(dd.apply(BinOp::or_, top, fa) == top);
  CHECK(dd.apply(BinOp::or_, bot, fa) == fa);
  Mtbdd c = dd.apply(BinOp::and_, fa, gb);
  CHECK(dd.terminal_of(c) == Terminal{st.canonical(ctx.parse("F a & G b")), false});
  Mtbdd x = dd.apply(BinOp::implies, gb, fa);
  CHECK(dd.terminal_of(x) == Terminal{st.canonical(ctx.parse("G b -> F a")), false});
  Mtbdd e = dd.apply(BinOp::xor_, fa, fa);
  CHECK(dd.terminal_of(e) == Terminal{st.ff(), false});

  Mtbdd a = dd.ite_node(0, bot, top);
  Mtbdd b = dd.ite_node(1, fa, gb);
  Mtbdd ab = dd.apply(BinOp::or_, a, b);
  CHECK(dd.evaluate(ab, ctx.assignment("a !b")) == Terminal{st.tt(), true});
  CHECK(dd.evaluate(ab, ctx.assignment("!a !b")) == dd.terminal_of(fa));
  CHECK(dd.evaluate(ab, ctx.assignment("!a b")) == dd.terminal_of(gb));
  CHECK(dd.apply(BinOp::or_, b, a) == ab);
  CHECK(dd.cache_hits() > 0);
  CHECK_THROWS_AS(dd.evaluate(ab, ctx.assignment("!a")), UsageError);
}

TEST_CASE("negation is an involution on leaves and structure") {
  Context ctx({{"a", "b"}, {}, {}}, Semantics::mealy);
  auto& dd = ctx.mtbdd();
  Mtbdd m = dd.ite_node(0, dd.terminal(ctx.parse("F b"), false), dd.terminal(ctx.parse("X b"), true));
  Mtbdd n = dd.negate(m);
  CHECK(dd.terminal_of(dd.low(n)) == Terminal{ctx.store().canonical(ctx.parse("!F b")), true});
  CHECK(dd.negate(n) == m);
}

TEST_CASE("universal quantification of the bottom block") {
  Context ctx({{"i"}, {"o"}, {"u"}}, Semantics::mealy);
  auto& dd = ctx.mtbdd();
  auto& st = ctx.store();
  Mtbdd fa = dd.terminal(ctx.parse("F i"), false);
  Mtbdd gb = dd.terminal(ctx.parse("G o"), true);
  Mtbdd top = dd.terminal(st.tt(), true);
  std::uint32_t u = ctx.prop("u"), o = ctx.prop("o");
  Mtbdd m = dd.ite_node(o, dd.ite_node(u, fa, gb), top);
  Mtbdd q = dd.forall_unobservable(m);
  CHECK(dd.terminal_of(dd.low(q)) == Terminal{st.canonical(ctx.parse("F i & G o")), false});
  CHECK(dd.high(q) == top);
  CHECK(dd.forall(m, {u}) == q);
  CHECK(dd.forall(m, {}) == m);
  CHECK_THROWS_AS(dd.forall(m, {o}), UsageError);
}

TEST_CASE("resource limits") {
  Limits tiny;
  tiny.max_nodes = 3;
  Context ctx({{"a", "b", "c"}, {}, {}}, Semantics::mealy, tiny);
  auto& dd = ctx.mtbdd();
  Mtbdd x = dd.terminal(ctx.parse("F a"), false);
  Mtbdd y = dd.terminal(ctx.parse("F b"), false);
  dd.ite_node(0, x, y);
  CHECK_THROWS_AS(dd.ite_node(1, x, y), ResourceError);
  Limits past;
  past.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  CHECK_THROWS_AS(past.check_deadline(), ResourceError);
}

TEST_CASE("DOT export marks accepting leaves") {
  Context ctx({{"a"}, {}, {}}, Semantics::mealy);
  auto& dd = ctx.mtbdd();
  Mtbdd m = dd.ite_node(0, dd.terminal(ctx.parse("F a"), false), dd.terminal(ctx.store().tt(), true));
  std::string dot = dd.to_dot({{"F(a)", m}});
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("peripheries=2") != std::string::npos);
}
