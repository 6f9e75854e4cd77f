//! C ABI over the interpol library.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or by an
//! operation and released with the matching `*_free`. Every fallible call
//! returns an `InterpolStatus`; on failure `interpol_last_error` describes
//! the problem. Strings handed out by the library are freed with
//! `interpol_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use interpol::craig::{self, Status};
use interpol::lp::{self, LPProgram, Relation};
use interpol::syntax::{parse_concept, parse_ontology, sig_concept, sig_ontology, split_names, Concept, Ontology, Signature};
use interpol::uinterp::{self, Policy};
use interpol::{reasoner, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpolStatus {
    Ok = 0,
    /// an argument was NULL or not valid UTF-8
    InvalidArgument = 1,
    Syntax = 2,
    Unsupported = 3,
    Precondition = 4,
    ResourceLimit = 5,
    /// no interpolant or definition exists over the signature
    NoneExists = 6,
    /// the inclusion to interpolate does not hold
    NotEntailed = 7,
    /// an internal self-check failed; a bug
    Verification = 8,
    Panic = 9,
    Other = 10,
}

pub struct InterpolOntology(Ontology);

pub struct InterpolProgram(LPProgram);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InterpolRelation {
    Ht = 0,
    Cautious = 1,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> InterpolStatus {
    match e {
        Error::Syntax { .. } | Error::UnboundVariable(_) | Error::NegativeVariable(_) => InterpolStatus::Syntax,
        Error::Unsupported(_) => InterpolStatus::Unsupported,
        Error::Precondition(_) | Error::NameCollision(_) | Error::NotFound(_) => InterpolStatus::Precondition,
        Error::ResourceLimit(_) => InterpolStatus::ResourceLimit,
        Error::NotDefinable(_) => InterpolStatus::NoneExists,
        Error::Verification(_) => InterpolStatus::Verification,
        Error::Io(_) => InterpolStatus::Other,
    }
}

struct Fail(InterpolStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any error and converts panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> InterpolStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => InterpolStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(p) => {
            let m = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            set_error(format!("panic: {}", m.unwrap_or_default()));
            InterpolStatus::Panic
        }
    }
}

fn invalid(what: &str) -> Fail {
    Fail(InterpolStatus::InvalidArgument, format!("{} is NULL or not UTF-8", what))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(invalid(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(what))
}

unsafe fn optional_str_arg<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, what).map(Some)
    }
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| invalid(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| invalid(what))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

unsafe fn concept(p: *const c_char, what: &str) -> Result<Concept, Fail> {
    Ok(parse_concept(str_arg(p, what)?)?)
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn interpol_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn interpol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn interpol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an ontology in the DSL.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn interpol_ontology_parse(text: *const c_char, out: *mut *mut InterpolOntology) -> InterpolStatus {
    guard(|| {
        let o = parse_ontology(str_arg(text, "text")?)?;
        *out_arg(out, "out")? = Box::into_raw(Box::new(InterpolOntology(o)));
        Ok(())
    })
}

/// # Safety
/// `o` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn interpol_ontology_free(o: *mut InterpolOntology) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Number of axioms, or 0 for NULL.
///
/// # Safety
/// `o` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn interpol_ontology_len(o: *const InterpolOntology) -> usize {
    o.as_ref().map_or(0, |o| o.0.len())
}

/// The ontology in the DSL; free with `interpol_string_free`.
///
/// # Safety
/// `o` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn interpol_ontology_render(o: *const InterpolOntology) -> *mut c_char {
    o.as_ref().map_or(ptr::null_mut(), |o| to_c(o.0.to_string()))
}

/// Whether `o` entails `lhs [= rhs`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn interpol_subsumes(
    o: *const InterpolOntology,
    lhs: *const c_char,
    rhs: *const c_char,
    result: *mut bool,
) -> InterpolStatus {
    guard(|| {
        let o = handle(o, "ontology")?;
        let holds = reasoner::subsumes(&o.0, &concept(lhs, "lhs")?, &concept(rhs, "rhs")?)?;
        *out_arg(result, "result")? = holds;
        Ok(())
    })
}

/// Whether the two ontologies entail each other.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn interpol_equivalent(a: *const InterpolOntology, b: *const InterpolOntology, result: *mut bool) -> InterpolStatus {
    guard(|| {
        let holds = reasoner::equivalent(&handle(a, "a")?.0, &handle(b, "b")?.0)?;
        *out_arg(result, "result")? = holds;
        Ok(())
    })
}

fn signature(names: &str, reference: &Signature) -> Signature {
    Signature::classify(&split_names(names), reference)
}

/// Uniform interpolant of `o` for the comma-separated symbols `keep`.
/// `policy` is "fixpoint", "aux" or "approx:K"; NULL means "fixpoint".
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn interpol_uniform_interpolant(
    o: *const InterpolOntology,
    keep: *const c_char,
    policy: *const c_char,
    result: *mut *mut InterpolOntology,
) -> InterpolStatus {
    guard(|| {
        let o = &handle(o, "ontology")?.0;
        let sigma = signature(str_arg(keep, "keep")?, &sig_ontology(o));
        let policy: Policy = optional_str_arg(policy, "policy")?.unwrap_or("fixpoint").parse()?;
        let r = uinterp::uniform_interpolant(o, &sigma, policy)?;
        *out_arg(result, "result")? = Box::into_raw(Box::new(InterpolOntology(r.ontology)));
        Ok(())
    })
}

/// Interpolant of `c1 [= c2` under `o1 ∪ o2`, written to `result` as DSL
/// text. Either ontology may be NULL (empty). With `sigma` NULL the shared
/// signature is used. Returns `NoneExists` or `NotEntailed` when there is
/// no interpolant.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn interpol_craig_interpolant(
    o1: *const InterpolOntology,
    o2: *const InterpolOntology,
    c1: *const c_char,
    c2: *const c_char,
    sigma: *const c_char,
    result: *mut *mut c_char,
) -> InterpolStatus {
    guard(|| {
        let empty = Ontology::new();
        let o1 = o1.as_ref().map_or(&empty, |o| &o.0);
        let o2 = o2.as_ref().map_or(&empty, |o| &o.0);
        let (c1, c2) = (concept(c1, "c1")?, concept(c2, "c2")?);
        let all = sig_ontology(&o1.union(o2)).union(&sig_concept(&c1)).union(&sig_concept(&c2));
        let sigma = optional_str_arg(sigma, "sigma")?.map(|s| signature(s, &all));
        let rep = craig::craig_or_sigma_interpolant(o1, o2, &c1, &c2, sigma.as_ref())?;
        let slot = out_arg(result, "result")?;
        *slot = ptr::null_mut();
        match rep.status {
            Status::Found => {
                *slot = to_c(rep.interpolant.unwrap_or_default());
                Ok(())
            }
            Status::NoneExists => Err(Fail(InterpolStatus::NoneExists, "no interpolant over the signature".into())),
            Status::NotEntailed => Err(Fail(InterpolStatus::NotEntailed, "the inclusion does not hold".into())),
        }
    })
}

/// Whether an ALCO(Σ)-interpolant of `c1 [= c2` under `o` (NULL for
/// empty) exists.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn interpol_alco_interpolant_exists(
    o: *const InterpolOntology,
    c1: *const c_char,
    c2: *const c_char,
    sigma: *const c_char,
    result: *mut bool,
) -> InterpolStatus {
    guard(|| {
        let empty = Ontology::new();
        let o = o.as_ref().map_or(&empty, |o| &o.0);
        let (c1, c2) = (concept(c1, "c1")?, concept(c2, "c2")?);
        let all = sig_ontology(o).union(&sig_concept(&c1)).union(&sig_concept(&c2));
        let sigma = signature(str_arg(sigma, "sigma")?, &all);
        *out_arg(result, "result")? = craig::interpolant_exists_alco(o, &c1, &c2, &sigma)?;
        Ok(())
    })
}

/// Explicit Σ-definition of `target` under `o` within `context` (NULL for
/// top). Returns `NoneExists` when the target is not definable.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn interpol_explicit_definition(
    o: *const InterpolOntology,
    context: *const c_char,
    target: *const c_char,
    sigma: *const c_char,
    result: *mut *mut c_char,
) -> InterpolStatus {
    guard(|| {
        let o = &handle(o, "ontology")?.0;
        let context = match optional_str_arg(context, "context")? {
            Some(c) => parse_concept(c)?,
            None => Concept::top(),
        };
        let target = concept(target, "target")?;
        let all = sig_ontology(o).union(&sig_concept(&context)).union(&sig_concept(&target));
        let sigma = signature(str_arg(sigma, "sigma")?, &all);
        let slot = out_arg(result, "result")?;
        *slot = ptr::null_mut();
        let rep = craig::explicit_definition(o, &context, &target, &sigma)?;
        *slot = to_c(rep.interpolant.unwrap_or_default());
        Ok(())
    })
}

/// Parses a program (`a | b :- c, not d, not not e.`).
///
/// # Safety
/// `text` must be NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn interpol_program_parse(text: *const c_char, out: *mut *mut InterpolProgram) -> InterpolStatus {
    guard(|| {
        let p = lp::parse_program(str_arg(text, "text")?)?;
        *out_arg(out, "out")? = Box::into_raw(Box::new(InterpolProgram(p)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn interpol_program_free(p: *mut InterpolProgram) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// The program text; free with `interpol_string_free`.
///
/// # Safety
/// `p` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn interpol_program_render(p: *const InterpolProgram) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| to_c(p.0.to_string()))
}

/// Answer sets, one per line as space-separated atoms (an empty line for
/// the empty set); free with `interpol_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn interpol_answer_sets(p: *const InterpolProgram, count: *mut usize, result: *mut *mut c_char) -> InterpolStatus {
    guard(|| {
        let sets = lp::answer_sets(&handle(p, "program")?.0)?;
        let lines: Vec<String> = sets.iter().map(|s| s.iter().cloned().collect::<Vec<_>>().join(" ")).collect();
        *out_arg(count, "count")? = sets.len();
        *out_arg(result, "result")? = to_c(lines.iter().map(|l| format!("{}\n", l)).collect());
        Ok(())
    })
}

/// Forgets the comma-separated `atoms` from `p` under the HT projection.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn interpol_forget_ht(
    p: *const InterpolProgram,
    atoms: *const c_char,
    result: *mut *mut InterpolProgram,
) -> InterpolStatus {
    guard(|| {
        let v = split_names(str_arg(atoms, "atoms")?).into_iter().collect();
        let f = lp::forget_ht(&handle(p, "program")?.0, &v)?;
        *out_arg(result, "result")? = Box::into_raw(Box::new(InterpolProgram(f)));
        Ok(())
    })
}

/// Whether `p1` entails `p2` under `relation`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn interpol_program_entails(
    p1: *const InterpolProgram,
    p2: *const InterpolProgram,
    relation: InterpolRelation,
    result: *mut bool,
) -> InterpolStatus {
    guard(|| {
        let rel = match relation {
            InterpolRelation::Ht => Relation::Ht,
            InterpolRelation::Cautious => Relation::Cautious,
        };
        *out_arg(result, "result")? = lp::entails_lp(&handle(p1, "p1")?.0, &handle(p2, "p2")?.0, rel)?;
        Ok(())
    })
}

/// Whether `candidate` is a uniform interpolant of `p` for the
/// comma-separated atoms `keep`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn interpol_is_uniform_interpolant(
    p: *const InterpolProgram,
    keep: *const c_char,
    candidate: *const InterpolProgram,
    relation: InterpolRelation,
    result: *mut bool,
) -> InterpolStatus {
    guard(|| {
        let keep = split_names(str_arg(keep, "keep")?).into_iter().collect();
        let rel = match relation {
            InterpolRelation::Ht => Relation::Ht,
            InterpolRelation::Cautious => Relation::Cautious,
        };
        *out_arg(result, "result")? = lp::is_uniform_interpolant(&handle(p, "program")?.0, &keep, &handle(candidate, "candidate")?.0, rel)?;
        Ok(())
    })
}
