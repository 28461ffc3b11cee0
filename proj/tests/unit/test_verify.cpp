#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "posynt/error.hpp"
#include "posynt/game.hpp"
#include "posynt/verify.hpp"

using namespace posynt;

namespace {

const char* kPsi = "(G F u -> F(i <-> o)) & (G F !u -> F(i | o))";

}  // namespace

TEST_CASE("realizability oracle on the running example") {
  Context hidden({{"i"}, {"o"}, {"u"}}, Semantics::mealy);
  Formula psi = hidden.parse(kPsi);
  CHECK(oracle_realizable(hidden, psi, 1) == OracleVerdict::unrealizable_within_horizon);
  CHECK(oracle_realizable(hidden, psi, 2) == OracleVerdict::realizable);
  Context visible({{"u", "i"}, {"o"}, {}}, Semantics::mealy);
  CHECK(oracle_realizable(visible, visible.parse(kPsi), 1) == OracleVerdict::realizable);
  Context c({{"i"}, {"o"}, {}}, Semantics::mealy);
  for (std::size_t h = 0; h <= 3; ++h)
    CHECK(oracle_realizable(c, c.parse("ff"), h) == OracleVerdict::unrealizable_within_horizon);
  CHECK(oracle_realizable(c, c.parse("tt"), 1) == OracleVerdict::realizable);
  CHECK(std::string(to_string(OracleVerdict::realizable)) == "realizable");
}

TEST_CASE("moore oracle commits before reading") {
  Context mealy({{"i"}, {"o"}, {}}, Semantics::mealy);
  CHECK(oracle_realizable(mealy, mealy.parse("i <-> o"), 1) == OracleVerdict::realizable);
  Context moore({{"i"}, {"o"}, {}}, Semantics::moore);
  CHECK(oracle_realizable(moore, moore.parse("i <-> o"), 3) ==
        OracleVerdict::unrealizable_within_horizon);
  Context moore2({{"i"}, {"o"}, {}}, Semantics::moore);
  CHECK(oracle_realizable(moore2, moore2.parse("o & N o"), 2) == OracleVerdict::realizable);
}

TEST_CASE("belief language oracle") {
  Context ctx({{"i"}, {"o"}, {"u"}}, Semantics::mealy);
  Formula psi = ctx.parse(kPsi);
  CHECK(oracle_belief_language(ctx, psi, Trace({ctx.assignment("i o")})));
  CHECK_FALSE(oracle_belief_language(ctx, psi, Trace({ctx.assignment("!i !o")})));
  CHECK(oracle_belief_language(ctx, psi,
                               Trace({ctx.assignment("!i !o"), ctx.assignment("!i o")})));
  Context vis({{"i"}, {"o"}, {}}, Semantics::mealy);
  Formula f = vis.parse("F(i & X o)");
  for (const auto& w : testing::words(testing::letters({0, 1}, 2), 3))
    CHECK(oracle_belief_language(vis, f, w) == models(vis.store(), w, 0, f));
}

TEST_CASE("oracle budgets fail loudly") {
  Context ctx({{"i"}, {"o"}, {"u"}}, Semantics::mealy);
  Formula psi = ctx.parse(kPsi);
  OracleBudget tight;
  tight.max_trace_length = 1;
  CHECK_THROWS_AS(oracle_realizable(ctx, psi, 2, tight), BudgetError);
  OracleBudget few_vars;
  few_vars.max_variables = 2;
  CHECK_THROWS_AS(oracle_belief_language(ctx, psi, Trace({ctx.assignment("i o")}), few_vars),
                  BudgetError);
  OracleBudget few_calls;
  few_calls.enumeration_cap = 3;
  CHECK_THROWS_AS(oracle_realizable(ctx, psi, 2, few_calls), BudgetError);
}

TEST_CASE("solver verdicts match the oracle at the state-count horizon") {
  std::size_t compared = 0, skipped = 0;
  for (const auto& inst : testing::random_corpus(300, 71, {3, 3, 1})) {
    Context ctx(inst.partition, Semantics::mealy);
    Formula f = ctx.parse(inst.formula);
    Mtdfa m = build_full(ctx, f);
    bool realizable = solve_full(ctx, m).realizable;
    try {
      OracleBudget budget;
      budget.enumeration_cap = 200'000;
      auto v = oracle_realizable(ctx, f, m.state_count(), budget);
      REQUIRE((v == OracleVerdict::realizable) == realizable);
      ++compared;
    } catch (const BudgetError&) {
      ++skipped;
    }
  }
  CHECK(compared > 150);
  INFO("skipped " << skipped);
}
