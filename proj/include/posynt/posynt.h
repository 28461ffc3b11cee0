/* C interface of the posynt library: LTLf synthesis under partial
 * observability. All functions return a posynt_status; on failure the
 * message is available from posynt_last_error() on the calling thread.
 * Strings handed out by a context stay valid until the next call on that
 * context or its destruction. */
#ifndef POSYNT_POSYNT_H
#define POSYNT_POSYNT_H

#include <stddef.h>

#if defined(_WIN32)
#define POSYNT_API __declspec(dllexport)
#else
#define POSYNT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct posynt_context posynt_context;

typedef enum {
  POSYNT_OK = 0,
  POSYNT_ERR_PARSE = 1,     /* malformed formula or undeclared atom */
  POSYNT_ERR_PARTITION = 2, /* overlapping or malformed variable blocks */
  POSYNT_ERR_RESOURCE = 3,  /* state, node or time budget exhausted */
  POSYNT_ERR_USAGE = 4,     /* bad argument or call order */
  POSYNT_ERR_BUDGET = 5,    /* oracle enumeration budget exhausted */
  POSYNT_ERR_INTERNAL = 6
} posynt_status;

typedef enum { POSYNT_MEALY = 0, POSYNT_MOORE = 1 } posynt_semantics;
typedef enum { POSYNT_MODE_OTF = 0, POSYNT_MODE_FULL = 1 } posynt_mode;
typedef enum { POSYNT_FORMAT_TEXT = 0, POSYNT_FORMAT_DOT = 1 } posynt_format;

POSYNT_API const char* posynt_version(void);
POSYNT_API const char* posynt_last_error(void);
POSYNT_API const char* posynt_status_name(posynt_status status);

/* Variable lists are comma or whitespace separated; NULL means empty.
 * Unobservable names listed among the inputs are moved out of them. */
POSYNT_API posynt_status posynt_context_create(const char* inputs, const char* outputs,
                                               const char* unobservable,
                                               posynt_semantics semantics,
                                               posynt_context** out);
POSYNT_API void posynt_context_destroy(posynt_context* ctx);

/* Zero keeps the default; timeout_ms counts from the start of each solve. */
POSYNT_API posynt_status posynt_set_limits(posynt_context* ctx, size_t max_states,
                                           size_t max_nodes, double timeout_ms);

/* Parse, build and solve. *realizable receives 1 or 0. One solve per context. */
POSYNT_API posynt_status posynt_solve(posynt_context* ctx, const char* formula, posynt_mode mode,
                                      int* realizable);

/* Artifacts of the last solve. */
POSYNT_API posynt_status posynt_controller(posynt_context* ctx, posynt_format format,
                                           const char** out);
POSYNT_API posynt_status posynt_automaton(posynt_context* ctx, posynt_format format,
                                          const char** out);
POSYNT_API posynt_status posynt_stats(posynt_context* ctx, int with_time, const char** out);

/* Numeric stats of the last solve; any pointer may be NULL. */
POSYNT_API posynt_status posynt_counts(posynt_context* ctx, size_t* states, size_t* deltas,
                                       size_t* nodes, double* wall_ms);

/* Check the synthesized controller; *ok is 1 when it passes, otherwise
 * *message explains the first violation. */
POSYNT_API posynt_status posynt_verify(posynt_context* ctx, int* ok, const char** message);

#ifdef __cplusplus
}
#endif

#endif
