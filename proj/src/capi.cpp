#include "posynt/posynt.h"

#include <algorithm>
#include <chrono>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "posynt/controller.hpp"
#include "posynt/error.hpp"
#include "posynt/game.hpp"

using namespace posynt;

struct posynt_context {
  std::unique_ptr<Context> ctx;
  double timeout_ms = 0;
  bool solved = false;
  std::optional<Formula> phi;
  std::optional<Mtdfa> mtdfa;
  GameResult result;
  std::optional<Controller> controller;
  std::string text;  // last string handed out
};

namespace {

thread_local std::string last_error;

std::vector<std::string> split(const char* list) {
  std::vector<std::string> out;
  if (!list) return out;
  std::string cur;
  for (const char* p = list;; ++p) {
    char c = *p;
    if (c == '\0' || c == ',' || c == ' ' || c == '\t' || c == '\n') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
      if (c == '\0') break;
    } else {
      cur += c;
    }
  }
  return out;
}

template <typename Fn>
posynt_status guard(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const ParseError& e) {
    last_error = e.what();
    return POSYNT_ERR_PARSE;
  } catch (const UndeclaredAtomError& e) {
    last_error = e.what();
    return POSYNT_ERR_PARSE;
  } catch (const PartitionError& e) {
    last_error = e.what();
    return POSYNT_ERR_PARTITION;
  } catch (const ResourceError& e) {
    last_error = e.what();
    return POSYNT_ERR_RESOURCE;
  } catch (const BudgetError& e) {
    last_error = e.what();
    return POSYNT_ERR_BUDGET;
  } catch (const UsageError& e) {
    last_error = e.what();
    return POSYNT_ERR_USAGE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return POSYNT_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return POSYNT_ERR_INTERNAL;
  }
}

posynt_status usage(const std::string& msg) {
  last_error = msg;
  return POSYNT_ERR_USAGE;
}

}  // namespace

extern "C" {

const char* posynt_version(void) { return "0.1.0"; }

const char* posynt_last_error(void) { return last_error.c_str(); }

const char* posynt_status_name(posynt_status status) {
  switch (status) {
    case POSYNT_OK: return "ok";
    case POSYNT_ERR_PARSE: return "parse";
    case POSYNT_ERR_PARTITION: return "partition";
    case POSYNT_ERR_RESOURCE: return "resource";
    case POSYNT_ERR_USAGE: return "usage";
    case POSYNT_ERR_BUDGET: return "budget";
    case POSYNT_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

posynt_status posynt_context_create(const char* inputs, const char* outputs,
                                    const char* unobservable, posynt_semantics semantics,
                                    posynt_context** out) {
  if (!out) return usage("posynt_context_create: null output pointer");
  *out = nullptr;
  if (semantics != POSYNT_MEALY && semantics != POSYNT_MOORE)
    return usage("posynt_context_create: unknown semantics");
  return guard([&] {
    Partition part{split(inputs), split(outputs), split(unobservable)};
    // Unobservable names may be given as part of the inputs.
    std::erase_if(part.inputs, [&](const std::string& n) {
      return std::find(part.unobservable.begin(), part.unobservable.end(), n) !=
             part.unobservable.end();
    });
    auto h = std::make_unique<posynt_context>();
    h->ctx = std::make_unique<Context>(
        part, semantics == POSYNT_MEALY ? Semantics::mealy : Semantics::moore);
    *out = h.release();
    return POSYNT_OK;
  });
}

void posynt_context_destroy(posynt_context* ctx) { delete ctx; }

posynt_status posynt_set_limits(posynt_context* ctx, size_t max_states, size_t max_nodes,
                                double timeout_ms) {
  if (!ctx) return usage("posynt_set_limits: null context");
  if (timeout_ms < 0) return usage("posynt_set_limits: negative timeout");
  if (max_states) ctx->ctx->limits().max_states = max_states;
  if (max_nodes) ctx->ctx->limits().max_nodes = max_nodes;
  ctx->timeout_ms = timeout_ms;
  return POSYNT_OK;
}

posynt_status posynt_solve(posynt_context* ctx, const char* formula, posynt_mode mode,
                           int* realizable) {
  if (!ctx || !formula || !realizable) return usage("posynt_solve: null argument");
  if (ctx->solved) return usage("posynt_solve: context already solved");
  if (mode != POSYNT_MODE_OTF && mode != POSYNT_MODE_FULL)
    return usage("posynt_solve: unknown mode");
  return guard([&] {
    Context& c = *ctx->ctx;
    auto start = std::chrono::steady_clock::now();
    if (ctx->timeout_ms > 0)
      c.limits().deadline =
          start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double, std::milli>(ctx->timeout_ms));
    Formula phi = c.parse(formula);
    ctx->solved = true;
    ctx->phi = phi;
    if (mode == POSYNT_MODE_FULL) {
      ctx->mtdfa.emplace(build_full(c, phi));
      ctx->result = solve_full(c, *ctx->mtdfa);
    } else {
      ctx->mtdfa.emplace(make_mtdfa(c, phi));
      ctx->result = solve_otf(c, *ctx->mtdfa);
    }
    ctx->result.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    if (ctx->result.realizable) ctx->controller = build_controller(c, *ctx->mtdfa, ctx->result);
    c.limits().deadline.reset();
    *realizable = ctx->result.realizable ? 1 : 0;
    return POSYNT_OK;
  });
}

posynt_status posynt_controller(posynt_context* ctx, posynt_format format, const char** out) {
  if (!ctx || !out) return usage("posynt_controller: null argument");
  if (!ctx->controller) return usage("posynt_controller: no controller (unsolved or unrealizable)");
  return guard([&] {
    ctx->text = export_controller(
        *ctx->ctx, *ctx->controller,
        format == POSYNT_FORMAT_DOT ? ControllerFormat::dot : ControllerFormat::text);
    *out = ctx->text.c_str();
    return POSYNT_OK;
  });
}

posynt_status posynt_automaton(posynt_context* ctx, posynt_format format, const char** out) {
  if (!ctx || !out) return usage("posynt_automaton: null argument");
  if (!ctx->mtdfa) return usage("posynt_automaton: nothing solved yet");
  return guard([&] {
    ctx->text = format == POSYNT_FORMAT_DOT ? export_dot(*ctx->ctx, *ctx->mtdfa)
                                            : export_text(*ctx->ctx, *ctx->mtdfa);
    *out = ctx->text.c_str();
    return POSYNT_OK;
  });
}

posynt_status posynt_stats(posynt_context* ctx, int with_time, const char** out) {
  if (!ctx || !out) return usage("posynt_stats: null argument");
  if (!ctx->solved) return usage("posynt_stats: nothing solved yet");
  ctx->text = ctx->result.stats.to_json(with_time != 0);
  *out = ctx->text.c_str();
  return POSYNT_OK;
}

posynt_status posynt_counts(posynt_context* ctx, size_t* states, size_t* deltas, size_t* nodes,
                            double* wall_ms) {
  if (!ctx) return usage("posynt_counts: null context");
  if (!ctx->solved) return usage("posynt_counts: nothing solved yet");
  const GameStats& s = ctx->result.stats;
  if (states) *states = s.state_count;
  if (deltas) *deltas = s.delta_count;
  if (nodes) *nodes = s.node_count;
  if (wall_ms) *wall_ms = s.wall_ms;
  return POSYNT_OK;
}

posynt_status posynt_verify(posynt_context* ctx, int* ok, const char** message) {
  if (!ctx || !ok) return usage("posynt_verify: null argument");
  if (!ctx->controller) return usage("posynt_verify: no controller (unsolved or unrealizable)");
  return guard([&] {
    VerifyReport r = verify_controller(*ctx->ctx, *ctx->mtdfa, *ctx->phi, *ctx->controller);
    *ok = r.ok ? 1 : 0;
    ctx->text = r.message;
    if (r.witness) ctx->text += ": " + [&] {
      std::string w;
      for (const auto& letter : r.witness->letters())
        w += (w.empty() ? "" : " ; ") + to_string(ctx->ctx->vocabulary(), letter);
      return w;
    }();
    if (message) *message = ctx->text.c_str();
    return POSYNT_OK;
  });
}

}  // extern "C"
