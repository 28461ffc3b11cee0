#include "posynt/verify.hpp"

#include "posynt/error.hpp"

namespace posynt {

const char* to_string(OracleVerdict v) {
  return v == OracleVerdict::realizable ? "realizable" : "unrealizable-within-horizon";
}

namespace {

class Oracle {
 public:
  Oracle(Context& ctx, Formula phi, const OracleBudget& budget)
      : ctx_(ctx), phi_(phi), budget_(budget), width_(ctx.vocabulary().size()) {
    if (width_ > budget.max_variables)
      throw BudgetError("oracle: " + std::to_string(width_) + " variables exceed the budget");
  }

  // Every completion of the observable prefix over the unobservables satisfies phi.
  bool all_completions(const std::vector<Assignment>& prefix) {
    const auto& unobs = ctx_.unobservable();
    if (prefix.size() > budget_.max_trace_length)
      throw BudgetError("oracle: trace length exceeds the budget");
    const std::size_t bits = unobs.size() * prefix.size();
    if (bits >= 63) throw BudgetError("oracle: too many completions");
    const std::uint64_t mask = (std::uint64_t{1} << unobs.size()) - 1;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
      if (++calls_ > budget_.enumeration_cap) throw BudgetError("oracle: enumeration cap reached");
      std::vector<Assignment> letters;
      for (std::size_t k = 0; k < prefix.size(); ++k)
        letters.push_back(prefix[k].fuse(
            Assignment::from_bits(width_, unobs, (code >> (k * unobs.size())) & mask)));
      if (!models(ctx_.store(), Trace(letters), 0, phi_)) return false;
    }
    return true;
  }

  // Mealy round: the environment picks inputs, then the controller outputs
  // and either stops (the prefix must be accepted) or continues.
  bool win(std::vector<Assignment>& prefix, std::size_t steps_left) {
    if (steps_left == 0) return false;
    const auto ins = letters(ctx_.inputs());
    const auto outs = letters(ctx_.outputs());
    auto respond = [&](const Assignment& in, const Assignment& out) {
      prefix.push_back(in.fuse(out));
      bool ok = all_completions(prefix) || win(prefix, steps_left - 1);
      prefix.pop_back();
      return ok;
    };
    if (ctx_.semantics() == Semantics::mealy) {
      for (const auto& in : ins) {
        bool some = false;
        for (const auto& out : outs)
          if (respond(in, out)) {
            some = true;
            break;
          }
        if (!some) return false;
      }
      return true;
    }
    for (const auto& out : outs) {
      bool every = true;
      for (const auto& in : ins)
        if (!respond(in, out)) {
          every = false;
          break;
        }
      if (every) return true;
    }
    return false;
  }

 private:
  std::vector<Assignment> letters(const std::vector<std::uint32_t>& props) const {
    std::vector<Assignment> out;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << props.size()); ++b)
      out.push_back(Assignment::from_bits(width_, props, b));
    return out;
  }

  Context& ctx_;
  Formula phi_;
  OracleBudget budget_;
  std::size_t width_;
  std::size_t calls_ = 0;
};

}  // namespace

OracleVerdict oracle_realizable(Context& ctx, Formula phi, std::size_t horizon,
                                const OracleBudget& budget) {
  if (horizon > budget.max_trace_length) throw BudgetError("oracle: horizon exceeds the budget");
  Oracle oracle(ctx, phi, budget);
  std::vector<Assignment> prefix;
  return oracle.win(prefix, horizon) ? OracleVerdict::realizable
                                     : OracleVerdict::unrealizable_within_horizon;
}

bool oracle_belief_language(Context& ctx, Formula phi, const Trace& sigma_obs,
                            const OracleBudget& budget) {
  Oracle oracle(ctx, phi, budget);
  auto obs = sigma_obs.restrict_to(ctx.observable());
  return oracle.all_completions(obs.letters());
}

}  // namespace posynt
