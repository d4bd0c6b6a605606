#ifndef PATSEL_H
#define PATSEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a library call. Codes 0 to 4 agree with the exit codes of the
 * `patsel` command line.
 */
typedef enum PatselStatus {
  PATSEL_STATUS_OK = 0,
  /**
   * Unparsable term, rule file or pattern, unknown rule, bad pattern.
   */
  PATSEL_STATUS_INPUT_ERROR = 1,
  PATSEL_STATUS_EMPTY_SELECTION = 2,
  /**
   * No selected subterm could be rewritten.
   */
  PATSEL_STATUS_NOT_APPLICABLE = 3,
  /**
   * Binder names or where-bindings are inconsistent.
   */
  PATSEL_STATUS_NAME_CLASH = 4,
  /**
   * Null pointer, invalid UTF-8 or an index out of range.
   */
  PATSEL_STATUS_INVALID_ARGUMENT = 5,
  /**
   * A panic was caught at the boundary.
   */
  PATSEL_STATUS_INTERNAL = 6,
} PatselStatus;

/**
 * A parsed rule file.
 */
typedef struct PatselRules PatselRules;

/**
 * The result of evaluating a pattern against a term.
 */
typedef struct PatselSelectionSet PatselSelectionSet;

/**
 * A parsed term.
 */
typedef struct PatselTerm PatselTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on the same thread.
 */
const char *patsel_last_error(void);

/**
 * Releases a string returned by the library.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void patsel_string_free(char *s);

/**
 * Parses a term.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PatselStatus patsel_term_parse(const char *text, struct PatselTerm **out);

/**
 * Canonical text of a term, or null on failure.
 *
 * # Safety
 * `term` must be a live handle.
 */
char *patsel_term_print(const struct PatselTerm *term);

/**
 * Whether two terms are equal up to the names of bound variables.
 *
 * # Safety
 * Both handles must be live.
 */
bool patsel_term_equal(const struct PatselTerm *a, const struct PatselTerm *b);

/**
 * # Safety
 * `term` must be null or a live handle; it is invalid afterwards.
 */
void patsel_term_free(struct PatselTerm *term);

/**
 * Parses a rule file, one `name : lhs == rhs` per line.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PatselStatus patsel_rules_parse(const char *text, struct PatselRules **out);

/**
 * Number of rules, 0 for a null handle.
 *
 * # Safety
 * `rules` must be null or a live handle.
 */
size_t patsel_rules_count(const struct PatselRules *rules);

/**
 * # Safety
 * `rules` must be null or a live handle; it is invalid afterwards.
 */
void patsel_rules_free(struct PatselRules *rules);

/**
 * Evaluates a pattern expression against `term`.
 *
 * # Safety
 * `term` must be a live handle, `pattern` a NUL-terminated string and `out`
 * writable.
 */
enum PatselStatus patsel_select(const struct PatselTerm *term,
                                const char *pattern,
                                struct PatselSelectionSet **out);

/**
 * Number of selections, 0 for a null handle.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t patsel_selection_count(const struct PatselSelectionSet *set);

/**
 * Position of the selection at `index` as a word over `l`, `r` and `a`;
 * the root position is the empty string.
 *
 * # Safety
 * `set` must be a live handle.
 */
char *patsel_selection_position(const struct PatselSelectionSet *set, size_t index);

/**
 * The subterm selected at `index`. Variables bound above it print as
 * `L0`, `L1`, ... counting outwards.
 *
 * # Safety
 * `set` must be a live handle.
 */
char *patsel_selection_term(const struct PatselSelectionSet *set, size_t index);

/**
 * The root term with every selected subterm wrapped in markers.
 *
 * # Safety
 * `set` must be a live handle.
 */
char *patsel_selection_marked(const struct PatselSelectionSet *set, bool ascii);

/**
 * # Safety
 * `set` must be null or a live handle; it is invalid afterwards.
 */
void patsel_selection_free(struct PatselSelectionSet *set);

/**
 * Rewrites the subterms of `term` selected by `pattern` with the rule named
 * `rule_name`. `where_bindings` holds `where_len` strings of the form
 * `?name = term`; it may be null when `where_len` is 0. With `all` every
 * applicable selection is rewritten, otherwise the first one.
 *
 * # Safety
 * Handles must be live, strings NUL-terminated, `where_bindings` must point
 * to `where_len` strings and `out` must be writable.
 */
enum PatselStatus patsel_rewrite(const struct PatselTerm *term,
                                 const char *pattern,
                                 const struct PatselRules *rules,
                                 const char *rule_name,
                                 const char *const *where_bindings,
                                 size_t where_len,
                                 bool symmetric,
                                 bool all,
                                 struct PatselTerm **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATSEL_H */
