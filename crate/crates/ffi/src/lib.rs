//! C ABI for `patsel`.
//!
//! Terms, rule sets and selection sets are opaque handles. Every handle
//! returned through an out-parameter is owned by the caller and must be
//! released with the matching `*_free` function. Strings returned by the
//! library are released with [`patsel_string_free`].
//!
//! Functions return a [`PatselStatus`]. On failure a message is kept per
//! thread and can be read with [`patsel_last_error`].

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use patsel::cli::{exit_code, parse_where, EXIT_EMPTY_SELECTION, EXIT_INPUT, EXIT_NAME_CLASH, EXIT_NOT_APPLICABLE};
use patsel::position::Position;
use patsel::rewrite::{Mode, RewriteError};
use patsel::syntax::print_marked;
use patsel::{eval_pattern, parse_pattern_expr, parse_rules, parse_term, patsubst, print_term, Rule, SelectionSet, Term};

/// Result of a library call. Codes 0 to 4 agree with the exit codes of the
/// `patsel` command line.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatselStatus {
    Ok = 0,
    /// Unparsable term, rule file or pattern, unknown rule, bad pattern.
    InputError = 1,
    EmptySelection = 2,
    /// No selected subterm could be rewritten.
    NotApplicable = 3,
    /// Binder names or where-bindings are inconsistent.
    NameClash = 4,
    /// Null pointer, invalid UTF-8 or an index out of range.
    InvalidArgument = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

/// A parsed term.
pub struct PatselTerm {
    term: Term,
}

/// A parsed rule file.
pub struct PatselRules {
    rules: Vec<Rule>,
}

/// The result of evaluating a pattern against a term.
pub struct PatselSelectionSet {
    root: Term,
    set: SelectionSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(PatselStatus, String);

type FfiResult<T> = Result<T, Failure>;

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> FfiResult<()>) -> PatselStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PatselStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside patsel".into());
            PatselStatus::Internal
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(PatselStatus::InvalidArgument, msg.into())
}

fn status_of(code: i32) -> PatselStatus {
    match code {
        EXIT_INPUT => PatselStatus::InputError,
        EXIT_EMPTY_SELECTION => PatselStatus::EmptySelection,
        EXIT_NOT_APPLICABLE => PatselStatus::NotApplicable,
        EXIT_NAME_CLASH => PatselStatus::NameClash,
        _ => PatselStatus::Internal,
    }
}

fn rewrite_failure(e: &RewriteError) -> Failure {
    Failure(status_of(exit_code(e)), e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(invalid(format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| invalid(format!("{what} is null")))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn string_call(f: impl FnOnce() -> FfiResult<String>) -> *mut c_char {
    let mut out = None;
    guard(|| {
        out = Some(f()?);
        Ok(())
    });
    out.map_or(ptr::null_mut(), to_c)
}

unsafe fn free_box<T>(p: *mut T) {
    if !p.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(p))));
    }
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn patsel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn patsel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a term.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn patsel_term_parse(text: *const c_char, out: *mut *mut PatselTerm) -> PatselStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let term = parse_term(text).map_err(|e| Failure(PatselStatus::InputError, e.to_string()))?;
        put(out, PatselTerm { term })
    })
}

/// Canonical text of a term, or null on failure.
///
/// # Safety
/// `term` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn patsel_term_print(term: *const PatselTerm) -> *mut c_char {
    string_call(|| Ok(print_term(&ref_arg(term, "term")?.term)))
}

/// Whether two terms are equal up to the names of bound variables.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn patsel_term_equal(a: *const PatselTerm, b: *const PatselTerm) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.term == b.term,
        _ => false,
    }
}

/// # Safety
/// `term` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn patsel_term_free(term: *mut PatselTerm) {
    free_box(term)
}

/// Parses a rule file, one `name : lhs == rhs` per line.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn patsel_rules_parse(text: *const c_char, out: *mut *mut PatselRules) -> PatselStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let rules = parse_rules(text).map_err(|e| Failure(PatselStatus::InputError, e.to_string()))?;
        put(out, PatselRules { rules })
    })
}

/// Number of rules, 0 for a null handle.
///
/// # Safety
/// `rules` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn patsel_rules_count(rules: *const PatselRules) -> usize {
    rules.as_ref().map_or(0, |r| r.rules.len())
}

/// # Safety
/// `rules` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn patsel_rules_free(rules: *mut PatselRules) {
    free_box(rules)
}

/// Evaluates a pattern expression against `term`.
///
/// # Safety
/// `term` must be a live handle, `pattern` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn patsel_select(
    term: *const PatselTerm,
    pattern: *const c_char,
    out: *mut *mut PatselSelectionSet,
) -> PatselStatus {
    guard(|| {
        let root = ref_arg(term, "term")?.term.clone();
        let pe = parse_pattern_expr(str_arg(pattern, "pattern")?)
            .map_err(|e| Failure(PatselStatus::InputError, e.to_string()))?;
        let set = eval_pattern(&pe, &root).map_err(|e| Failure(PatselStatus::InputError, e.to_string()))?;
        put(out, PatselSelectionSet { root, set })
    })
}

/// Number of selections, 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn patsel_selection_count(set: *const PatselSelectionSet) -> usize {
    set.as_ref().map_or(0, |s| s.set.len())
}

unsafe fn nth<'a>(set: *const PatselSelectionSet, index: usize) -> FfiResult<&'a patsel::Selection> {
    let s = ref_arg(set, "selection set")?;
    s.set
        .selections()
        .get(index)
        .ok_or_else(|| invalid(format!("index {index} out of range for {} selections", s.set.len())))
}

/// Position of the selection at `index` as a word over `l`, `r` and `a`;
/// the root position is the empty string.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn patsel_selection_position(set: *const PatselSelectionSet, index: usize) -> *mut c_char {
    string_call(|| Ok(nth(set, index)?.pos.render("")))
}

/// The subterm selected at `index`. Variables bound above it print as
/// `L0`, `L1`, ... counting outwards.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn patsel_selection_term(set: *const PatselSelectionSet, index: usize) -> *mut c_char {
    string_call(|| Ok(print_term(&nth(set, index)?.term)))
}

/// The root term with every selected subterm wrapped in markers.
///
/// # Safety
/// `set` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn patsel_selection_marked(set: *const PatselSelectionSet, ascii: bool) -> *mut c_char {
    string_call(|| {
        let s = ref_arg(set, "selection set")?;
        let marks: BTreeSet<Position> = s.set.positions().into_iter().collect();
        Ok(print_marked(&s.root, &marks, ascii))
    })
}

/// # Safety
/// `set` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn patsel_selection_free(set: *mut PatselSelectionSet) {
    free_box(set)
}

/// Rewrites the subterms of `term` selected by `pattern` with the rule named
/// `rule_name`. `where_bindings` holds `where_len` strings of the form
/// `?name = term`; it may be null when `where_len` is 0. With `all` every
/// applicable selection is rewritten, otherwise the first one.
///
/// # Safety
/// Handles must be live, strings NUL-terminated, `where_bindings` must point
/// to `where_len` strings and `out` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn patsel_rewrite(
    term: *const PatselTerm,
    pattern: *const c_char,
    rules: *const PatselRules,
    rule_name: *const c_char,
    where_bindings: *const *const c_char,
    where_len: usize,
    symmetric: bool,
    all: bool,
    out: *mut *mut PatselTerm,
) -> PatselStatus {
    guard(|| {
        let root = &ref_arg(term, "term")?.term;
        let pe = parse_pattern_expr(str_arg(pattern, "pattern")?)
            .map_err(|e| Failure(PatselStatus::InputError, e.to_string()))?;
        let rules = &ref_arg(rules, "rules")?.rules;
        let name = str_arg(rule_name, "rule name")?;
        let rule = rules
            .iter()
            .find(|r| r.name == name)
            .ok_or_else(|| Failure(PatselStatus::InputError, format!("no rule named `{name}`")))?;
        if where_len > 0 && where_bindings.is_null() {
            return Err(invalid("where bindings are null"));
        }
        let mut bindings = Vec::with_capacity(where_len);
        for i in 0..where_len {
            let s = str_arg(*where_bindings.add(i), "where binding")?;
            let b = parse_where(s).ok_or_else(|| {
                Failure(
                    PatselStatus::NameClash,
                    format!("where-binding `{s}` is not of the form `?name = term`"),
                )
            })?;
            bindings.push(b);
        }
        let mode = if all { Mode::All } else { Mode::First };
        let (t, _) = patsubst(root, &pe, rule, &bindings, symmetric, mode).map_err(|e| rewrite_failure(&e))?;
        put(out, PatselTerm { term: t })
    })
}
