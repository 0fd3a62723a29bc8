//! C ABI over divseq. Handles are opaque; every call returns a
//! `DivseqStatus` and fills an out-parameter. Strings returned to the caller
//! are JSON and must be released with `divseq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use divseq::cli::display::{component_json, factorization_json, primitive_form, rational_json};
use divseq::cli::{eds_context, lucas_spec, parse_input, parse_poly};
use divseq::eds::{eds_divisor, eds_render, EdsContext, EdsOptions};
use divseq::lucas::LucasSpec;
use divseq::Error;
use serde_json::json;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivseqStatus {
    Ok = 0,
    Input = 1,
    Unsupported = 2,
    Resource = 3,
    NullPtr = 4,
    Utf8 = 5,
    Internal = 6,
}

/// A Lucas sequence parsed from a `kind = lucas` spec.
pub struct DivseqLucas {
    spec: LucasSpec,
}

/// An EDS context parsed from a `kind = eds` or `kind = isogeny-pair` spec.
pub struct DivseqEds {
    ctx: EdsContext,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(DivseqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Unsupported(_) => DivseqStatus::Unsupported,
            Error::ResourceLimit(_) => DivseqStatus::Resource,
            Error::Internal(_) => DivseqStatus::Internal,
            _ => DivseqStatus::Input,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DivseqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            DivseqStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DivseqStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(DivseqStatus::NullPtr, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(DivseqStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_json(out: *mut *mut c_char, v: serde_json::Value) -> Result<(), Failure> {
    let s = CString::new(v.to_string())
        .map_err(|_| Failure(DivseqStatus::Internal, "NUL in output".into()))?;
    *out = s.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn divseq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn divseq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Factors a polynomial written in the expression grammar.
///
/// # Safety
/// `expr` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn divseq_factor_json(
    expr: *const c_char,
    out: *mut *mut c_char,
) -> DivseqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = parse_poly(read_str(expr, "expr")?)?;
        let f = divseq::arith::factor_over_rationals(&p)?;
        write_json(out, factorization_json(&primitive_form(&f)))
    })
}

/// # Safety
/// `spec` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn divseq_lucas_new(
    spec: *const c_char,
    out: *mut *mut DivseqLucas,
) -> DivseqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = lucas_spec(&parse_input(read_str(spec, "spec")?)?)?;
        *out = Box::into_raw(Box::new(DivseqLucas { spec: s }));
        Ok(())
    })
}

/// Factored terms L_1 .. L_{n_max} as a JSON array.
///
/// # Safety
/// `h` must come from `divseq_lucas_new`; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn divseq_lucas_terms_json(
    h: *const DivseqLucas,
    n_max: u64,
    out: *mut *mut c_char,
) -> DivseqStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if n_max > divseq::cli::MAX_LUCAS_INDEX {
            return Err(Error::ResourceLimit(format!("n_max = {n_max}")).into());
        }
        let mut terms = Vec::new();
        for (n, l) in h.spec.terms(n_max).iter().enumerate().skip(1) {
            let mut j =
                factorization_json(&primitive_form(&divseq::arith::factor_over_rationals(l)?));
            j["n"] = json!(n);
            terms.push(j);
        }
        write_json(out, json!(terms))
    })
}

/// # Safety
/// `h` must come from `divseq_lucas_new` or be null.
#[no_mangle]
pub unsafe extern "C" fn divseq_lucas_free(h: *mut DivseqLucas) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `spec` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn divseq_eds_new(
    spec: *const c_char,
    seed: u64,
    out: *mut *mut DivseqEds,
) -> DivseqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let opts = EdsOptions {
            skip_torsion_check: false,
            seed,
        };
        let ctx = eds_context(&parse_input(read_str(spec, "spec")?)?, opts)?;
        *out = Box::into_raw(Box::new(DivseqEds { ctx }));
        Ok(())
    })
}

fn check_index(n: u64) -> Result<(), Failure> {
    if n > divseq::cli::MAX_EDS_INDEX {
        return Err(Error::ResourceLimit(format!("n = {n}")).into());
    }
    Ok(())
}

/// D_{nP} as `{"n", "degree", "components": [...]}`.
///
/// # Safety
/// `h` must come from `divseq_eds_new`; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn divseq_eds_divisor_json(
    h: *const DivseqEds,
    n: u64,
    out: *mut *mut c_char,
) -> DivseqStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_index(n)?;
        let d = eds_divisor(&h.ctx, n)?;
        let comps: Vec<_> = d
            .components
            .iter()
            .map(|c| component_json(c, 'u'))
            .collect();
        write_json(
            out,
            json!({ "n": n, "degree": d.degree, "components": comps }),
        )
    })
}

/// D_{nP} as a function on C: constant, v-power and primitive u-factors.
///
/// # Safety
/// `h` must come from `divseq_eds_new`; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn divseq_eds_render_json(
    h: *const DivseqEds,
    n: u64,
    out: *mut *mut c_char,
) -> DivseqStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("handle"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        check_index(n)?;
        let r = eds_render(&h.ctx, n)?;
        let mut j = factorization_json(&primitive_form(&r.u_factors));
        j["n"] = json!(n);
        j["constant"] = rational_json(&r.constant);
        j["v_power"] = json!(r.v_power);
        j["root"] = json!(r.root_symbol);
        j["symbolic_root"] = json!(r.symbolic_root);
        write_json(out, j)
    })
}

/// # Safety
/// `h` must come from `divseq_eds_new` or be null.
#[no_mangle]
pub unsafe extern "C" fn divseq_eds_free(h: *mut DivseqEds) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Runs a command given as a JSON array of arguments, e.g.
/// `["eds", "divisor", "--spec", "split.spec", "--n", "2"]`. `out` receives
/// standard output on success and the diagnostic otherwise.
///
/// # Safety
/// `args` must be a NUL-terminated string; `out` and `exit_code` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn divseq_run(
    args: *const c_char,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> DivseqStatus {
    guard(|| {
        if out.is_null() || exit_code.is_null() {
            return Err(null("out"));
        }
        let args: Vec<String> = serde_json::from_str(read_str(args, "args")?).map_err(|e| {
            Failure(
                DivseqStatus::Input,
                format!("args must be a JSON array of strings: {e}"),
            )
        })?;
        let argv = std::iter::once("divseq".to_string()).chain(args);
        let o = divseq::cli::run_command(argv);
        *exit_code = o.code;
        let text = if o.code == 0 { o.stdout } else { o.stderr };
        *out = CString::new(text)
            .map_err(|_| Failure(DivseqStatus::Internal, "NUL in output".into()))?
            .into_raw();
        Ok(())
    })
}
