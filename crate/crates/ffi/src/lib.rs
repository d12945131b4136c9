//! C interface to `unialg`.
//!
//! Objects are handed out as opaque pointers and released with the matching
//! `*_free` function. Every fallible call returns a [`UnialgStatus`]; on
//! failure [`unialg_last_error_message`] describes the problem. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`unialg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use unialg::machine::{compile, machine_accepts};
use unialg::syntax::{
    parse_machine_file, parse_observation_file, parse_positions_file, parse_term, parse_wiring,
    parse_word_file, render_machine_file, render_observation_file, render_word_file, ObservationFile,
};
use unialg::word::default_positions;
use unialg::{mgu, validate_observation, Error, Observation, PointerMachine, Wiring, Word};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnialgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    NotUnifiable = 5,
    Internal = 6,
}

/// A linear combination of flows.
pub struct UnialgWiring(Wiring);

/// A word together with its alphabet.
pub struct UnialgWord(Word);

/// A validated observation.
pub struct UnialgObservation(Observation);

/// A pointer machine.
pub struct UnialgMachine(PointerMachine);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(UnialgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::Syntax { .. } => UnialgStatus::ParseError,
            _ => UnialgStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

/// Runs `f`, recording any failure or panic.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> UnialgStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UnialgStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal error: {message}"));
            UnialgStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(UnialgStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(UnialgStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let s = CString::new(s).map_err(|e| Failure(UnialgStatus::Internal, e.to_string()))?;
    *out = s.into_raw();
    Ok(())
}

unsafe fn put_bool(out: *mut bool, b: bool) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = b;
    Ok(())
}

/// Message describing the last failed call on this thread, or null. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn unialg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn unialg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a wiring. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn unialg_wiring_free(p: *mut UnialgWiring) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a word. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn unialg_word_free(p: *mut UnialgWord) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases an observation. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn unialg_observation_free(p: *mut UnialgObservation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a machine. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn unialg_machine_free(p: *mut UnialgMachine) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes the most general unifier of two terms as `{?x -> t, ...}`.
/// Returns `NotUnifiable` when there is none.
///
/// # Safety
/// `left` and `right` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_unify(left: *const c_char, right: *const c_char, out: *mut *mut c_char) -> UnialgStatus {
    guard(|| {
        let t = parse_term(text(left, "left")?)?;
        let u = parse_term(text(right, "right")?)?;
        let s = mgu(&t, &u).ok_or_else(|| Failure(UnialgStatus::NotUnifiable, format!("{t} and {u} do not unify")))?;
        put_string(out, s.to_string())
    })
}

/// Parses a wiring such as `(a <- b) + 2 * (?x . a <- ?x)`.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_wiring_parse(source: *const c_char, out: *mut *mut UnialgWiring) -> UnialgStatus {
    guard(|| put(out, UnialgWiring(parse_wiring(text(source, "source")?)?)))
}

/// # Safety
/// `w` must be a live wiring; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_wiring_render(w: *const UnialgWiring, out: *mut *mut c_char) -> UnialgStatus {
    guard(|| put_string(out, get(w, "w")?.0.to_string()))
}

/// Product `a b`.
///
/// # Safety
/// `a` and `b` must be live wirings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_wiring_mul(
    a: *const UnialgWiring,
    b: *const UnialgWiring,
    out: *mut *mut UnialgWiring,
) -> UnialgStatus {
    guard(|| put(out, UnialgWiring(get(a, "a")?.0.mul(&get(b, "b")?.0))))
}

/// Adjoint of `w`.
///
/// # Safety
/// `w` must be a live wiring; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_wiring_dagger(w: *const UnialgWiring, out: *mut *mut UnialgWiring) -> UnialgStatus {
    guard(|| put(out, UnialgWiring(get(w, "w")?.0.dagger())))
}

/// # Safety
/// `w` must be a live wiring; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_wiring_is_isometric(w: *const UnialgWiring, out: *mut bool) -> UnialgStatus {
    guard(|| put_bool(out, get(w, "w")?.0.is_isometric()))
}

/// Parses a word file (`alphabet ...` and `word ...` lines).
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_word_parse(source: *const c_char, out: *mut *mut UnialgWord) -> UnialgStatus {
    guard(|| put(out, UnialgWord(parse_word_file(text(source, "source")?)?)))
}

/// # Safety
/// `w` must be a live word; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_word_render(w: *const UnialgWord, out: *mut *mut c_char) -> UnialgStatus {
    guard(|| put_string(out, render_word_file(&get(w, "w")?.0)))
}

/// Parses and validates an observation file.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_observation_parse(
    source: *const c_char,
    out: *mut *mut UnialgObservation,
) -> UnialgStatus {
    guard(|| {
        let file = parse_observation_file(text(source, "source")?)?;
        put(out, UnialgObservation(validate_observation(&file.wiring, &file.alphabet)?))
    })
}

/// # Safety
/// `obs` must be a live observation; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_observation_render(
    obs: *const UnialgObservation,
    out: *mut *mut c_char,
) -> UnialgStatus {
    guard(|| {
        let obs = &get(obs, "obs")?.0;
        put_string(
            out,
            render_observation_file(&ObservationFile {
                alphabet: obs.alphabet()[1..].to_vec(),
                wiring: obs.wiring().clone(),
            }),
        )
    })
}

/// # Safety
/// `obs` must be a live observation; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_observation_is_isometric(obs: *const UnialgObservation, out: *mut bool) -> UnialgStatus {
    guard(|| put_bool(out, get(obs, "obs")?.0.is_isometric()))
}

/// Decides whether `obs` accepts `word`. `positions` is a positions file
/// naming one closed term per line, or null for fresh constants.
///
/// # Safety
/// `obs` and `word` must be live objects; `positions` must be null or a
/// nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_observation_accepts(
    obs: *const UnialgObservation,
    word: *const UnialgWord,
    positions: *const c_char,
    out: *mut bool,
) -> UnialgStatus {
    guard(|| {
        let obs = &get(obs, "obs")?.0;
        let word = &get(word, "word")?.0;
        let positions = if positions.is_null() {
            default_positions(word.len())
        } else {
            parse_positions_file(text(positions, "positions")?)?
        };
        put_bool(out, unialg::accepts(obs, word, &positions)?)
    })
}

/// Parses a machine file.
///
/// # Safety
/// `source` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_machine_parse(source: *const c_char, out: *mut *mut UnialgMachine) -> UnialgStatus {
    guard(|| put(out, UnialgMachine(parse_machine_file(text(source, "source")?)?)))
}

/// # Safety
/// `m` must be a live machine; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_machine_render(m: *const UnialgMachine, out: *mut *mut c_char) -> UnialgStatus {
    guard(|| put_string(out, render_machine_file(&get(m, "m")?.0)))
}

/// # Safety
/// `m` must be a live machine; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_machine_is_reversible(m: *const UnialgMachine, out: *mut bool) -> UnialgStatus {
    guard(|| put_bool(out, get(m, "m")?.0.is_reversible()))
}

/// Decides acceptance by running the machine. The word's letters must
/// belong to the machine's alphabet.
///
/// # Safety
/// `m` and `word` must be live objects; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_machine_accepts(
    m: *const UnialgMachine,
    word: *const UnialgWord,
    out: *mut bool,
) -> UnialgStatus {
    guard(|| {
        let m = &get(m, "m")?.0;
        let word = &get(word, "word")?.0;
        if let Some(c) = word.letters().iter().find(|c| !m.alphabet().contains(c)) {
            return Err(Error::LetterOutsideAlphabet(c.to_string()).into());
        }
        put_bool(out, machine_accepts(m, word))
    })
}

/// The observation compiled from a machine.
///
/// # Safety
/// `m` must be a live machine; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unialg_machine_compile(m: *const UnialgMachine, out: *mut *mut UnialgObservation) -> UnialgStatus {
    guard(|| put(out, UnialgObservation(compile(&get(m, "m")?.0))))
}
