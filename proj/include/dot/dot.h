/* SPDX-License-Identifier: Apache-2.0 */

/*
 * C interface to the DOT workbench.
 *
 * Every call returns a dot_status. On failure the thread-local message
 * from dot_last_error() describes it; outputs are left untouched. Strings
 * returned through char** are owned by the caller and released with
 * dot_string_free. Handles are released with their matching _free call;
 * passing NULL to any _free is a no-op.
 *
 * Names: types, terms, contexts and derivations parsed through the same
 * session share free variables by name, so a context file and a term
 * typed against it agree on what "x" means.
 */

#ifndef DOT_DOT_H
#define DOT_DOT_H

#include <stddef.h>

#if defined(_WIN32)
#define DOT_API __declspec(dllexport)
#else
#define DOT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dot_status {
  DOT_OK = 0,
  DOT_ERR_PARSE,
  DOT_ERR_UNBOUND_VARIABLE,
  DOT_ERR_NON_INERT_CONTEXT,
  DOT_ERR_INVALID_INPUT,
  DOT_ERR_SUBJECT_NOT_VAR_OR_VALUE,
  DOT_ERR_X_NOT_LAST,
  DOT_ERR_PRECONDITION,
  DOT_ERR_NOT_FOUND, /* bounded search gave up */
  DOT_ERR_ARGUMENT,  /* NULL or out-of-range argument */
  DOT_ERR_INTERNAL
} dot_status;

typedef struct dot_session dot_session;
typedef struct dot_type dot_type;
typedef struct dot_term dot_term;
typedef struct dot_context dot_context;
typedef struct dot_deriv dot_deriv;

DOT_API const char* dot_version(void);
DOT_API const char* dot_status_name(dot_status s);
DOT_API const char* dot_last_error(void);
DOT_API void dot_string_free(char* s);

DOT_API dot_status dot_session_new(dot_session** out);
DOT_API void dot_session_free(dot_session* s);

/* Parsing and printing. */

DOT_API dot_status dot_type_parse(dot_session* s, const char* src, dot_type** out);
DOT_API dot_status dot_term_parse(dot_session* s, const char* src, dot_term** out);
/* "x: T; y: U". An empty string gives the empty context. */
DOT_API dot_status dot_context_parse(dot_session* s, const char* src, dot_context** out);
/* A .deriv.json document. Rule names and arities are checked on load. */
DOT_API dot_status dot_deriv_parse(dot_session* s, const char* doc, dot_deriv** out);

DOT_API void dot_type_free(dot_type* t);
DOT_API void dot_term_free(dot_term* t);
DOT_API void dot_context_free(dot_context* g);
DOT_API void dot_deriv_free(dot_deriv* d);

DOT_API dot_status dot_type_print(const dot_type* t, char** out);
DOT_API dot_status dot_term_print(const dot_term* t, char** out);
DOT_API dot_status dot_context_print(const dot_context* g, char** out);
/* json != 0: the .deriv.json document; otherwise an indented tree. */
DOT_API dot_status dot_deriv_print(const dot_deriv* d, int json, char** out);

/* Shape summary: constructor, free variables, size. */
DOT_API dot_status dot_type_describe(const dot_type* t, int json, char** out);
DOT_API dot_status dot_term_describe(const dot_term* t, int json, char** out);

/* Inertness. *inert receives 1 or 0; the report names the first violation. */

DOT_API dot_status dot_inert_type(const dot_type* t, int loose, int json, int* inert, char** report);
DOT_API dot_status dot_inert_context(const dot_context* g, int loose, int json, int* inert,
                                     char** report);

/* Precise types of the variable named var in g, one per line. */
DOT_API dot_status dot_precise(const dot_context* g, const char* var, int json, char** report);

/* Derivations. */

/* *valid receives 1 or 0; the report lists every failing node. */
DOT_API dot_status dot_validate(const dot_deriv* d, int json, int* valid, char** report);

/* Γ ⊢ t : target, or any type when target is NULL. DOT_ERR_NOT_FOUND when
 * nothing turns up within depth. */
DOT_API dot_status dot_search(const dot_context* g, const dot_term* t, const dot_type* target, int depth,
                              dot_deriv** out);

/* General to tight. The conclusion context must be inert. */
DOT_API dot_status dot_to_tight(const dot_deriv* d, dot_deriv** out);
/* General or tight to invertible, for variable and value subjects. */
DOT_API dot_status dot_to_invertible(const dot_deriv* d, dot_deriv** out);

typedef enum dot_canon_kind {
  DOT_CANON_FUN_VAR = 0,
  DOT_CANON_FUN_VAL,
  DOT_CANON_OBJ_VAR,
  DOT_CANON_OBJ_VAL
} dot_canon_kind;

/* label selects the field for DOT_CANON_OBJ_VAL; NULL or "" picks the first. */
DOT_API dot_status dot_canon(const dot_deriv* d, dot_canon_kind kind, const char* label, int json,
                             char** report);

/* sub concludes Γ' ⊢ T' <: Γ(x) where Γ' is Γ with x: T'. */
DOT_API dot_status dot_narrow(const dot_deriv* d, const char* var, const dot_deriv* sub, dot_deriv** out);
/* d concludes Γ, x: T ⊢ ...; arg concludes Γ ⊢ y : T. */
DOT_API dot_status dot_subst(const dot_deriv* d, const char* var, const dot_deriv* arg, dot_deriv** out);

/* Evaluation. */

typedef enum dot_step_kind { DOT_STEPPED = 0, DOT_ANSWER, DOT_STUCK } dot_step_kind;
typedef enum dot_outcome { DOT_OUTCOME_ANSWER = 0, DOT_OUTCOME_STUCK, DOT_OUTCOME_FUEL } dot_outcome;

DOT_API dot_status dot_step(const dot_term* t, int json, dot_step_kind* kind, char** report);
DOT_API dot_status dot_run(const dot_term* t, size_t fuel, int json, dot_outcome* outcome, char** report);

/* Runs the subject of a closed typing derivation and re-derives its type
 * after every step. */
DOT_API dot_status dot_soundness(const dot_deriv* d, size_t fuel, int depth, int json, int* pass,
                                 char** report);

DOT_API dot_status dot_demo_bad_bounds(int depth, int json, char** report);

#ifdef __cplusplus
}
#endif

#endif
