#pragma once

// Brute-force oracles over explicit traces. Exponential by design; they only
// use models(), never the decision-diagram code.

#include <cstddef>

#include "posynt/context.hpp"

namespace posynt {

struct OracleBudget {
  std::size_t max_trace_length = 6;
  std::size_t max_variables = 6;
  std::size_t enumeration_cap = 20'000'000;  // models() calls
};

enum class OracleVerdict { realizable, unrealizable_within_horizon };

const char* to_string(OracleVerdict v);

/// Search over controller decision trees on observable histories of length
/// <= horizon. Throws BudgetError past the budget.
OracleVerdict oracle_realizable(Context& ctx, Formula phi, std::size_t horizon,
                                const OracleBudget& budget = {});

/// True iff every completion of `sigma_obs` over the unobservables models phi.
bool oracle_belief_language(Context& ctx, Formula phi, const Trace& sigma_obs,
                            const OracleBudget& budget = {});

}  // namespace posynt
