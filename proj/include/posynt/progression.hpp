#pragma once

// Explicit formula progression and observable progression. These are the
// enumerative reference for the decision-diagram translation: exponential
// in the number of variables, independent of the MTBDD code path.

#include <vector>

#include "posynt/logic.hpp"

namespace posynt {

/// Remaining obligation after one letter, plus whether the word may stop here.
struct ProgResult {
  Formula remainder;
  bool flag = false;
  friend bool operator==(const ProgResult&, const ProgResult&) = default;
};

ProgResult fp(FormulaStore& store, Formula f, const Assignment& w);
ProgResult fp_word(FormulaStore& store, Formula f, const Trace& sigma);

/// Conjunction of fp over every completion of `w_obs` on `unobservable`,
/// completions enumerated in lexicographic order of the listed variables.
ProgResult fp_obs(FormulaStore& store, Formula f, const Assignment& w_obs,
                  const std::vector<std::uint32_t>& unobservable);
ProgResult fp_obs_word(FormulaStore& store, Formula f, const Trace& sigma_obs,
                       const std::vector<std::uint32_t>& unobservable);

}  // namespace posynt
