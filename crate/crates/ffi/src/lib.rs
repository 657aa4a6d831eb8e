//! C ABI over `witt_theta`.
//!
//! Objects are opaque handles released with their `_free` function. Every call returns a
//! `WtStatus`; on failure `wt_last_error()` holds a message until the next call on the
//! same thread. Strings returned through `char **` belong to the caller and are released
//! with `wt_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use witt_theta::forms::{
    invariants, is_anisotropic, split_rank, FormSpec, FormType, SpaceClass, SpaceKind,
};
use witt_theta::localfield::LocalField;
use witt_theta::theta::{conserve_predict, default_tower, n_trivial_antisplit, OccurrenceQuery};
use witt_theta::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidField = 3,
    UnsupportedField = 4,
    FieldMismatch = 5,
    InvalidCoefficientSystem = 6,
    InvalidForm = 7,
    TypeMismatch = 8,
    InvalidClass = 9,
    InvalidGroup = 10,
    Numerics = 11,
    Inconsistent = 12,
    NotApplicable = 13,
    Parse = 14,
    Panic = 15,
}

impl From<&Error> for WtStatus {
    fn from(e: &Error) -> WtStatus {
        match e {
            Error::InvalidField(_) => WtStatus::InvalidField,
            Error::UnsupportedField(_) => WtStatus::UnsupportedField,
            Error::FieldMismatch(_) => WtStatus::FieldMismatch,
            Error::InvalidCoefficientSystem(_) => WtStatus::InvalidCoefficientSystem,
            Error::InvalidForm(_) => WtStatus::InvalidForm,
            Error::TypeMismatch(_) => WtStatus::TypeMismatch,
            Error::InvalidClass(_) => WtStatus::InvalidClass,
            Error::InvalidGroup(_) => WtStatus::InvalidGroup,
            Error::Numerics(_) => WtStatus::Numerics,
            Error::Inconsistent(_) => WtStatus::Inconsistent,
            Error::NotApplicable(_) => WtStatus::NotApplicable,
            Error::Parse(_) => WtStatus::Parse,
        }
    }
}

/// A local field.
pub struct WtField {
    field: LocalField,
}

/// The isometry class of a form.
pub struct WtClass {
    class: SpaceClass,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: WtStatus, msg: String) -> WtStatus {
    set_error(msg);
    status
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), WtStatus>) -> WtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WtStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(WtStatus::Panic, "internal panic".into()),
    }
}

fn lib<T>(r: witt_theta::Result<T>) -> Result<T, WtStatus> {
    r.map_err(|e| fail(WtStatus::from(&e), e.to_string()))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, WtStatus> {
    if p.is_null() {
        return Err(fail(WtStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(WtStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, WtStatus> {
    p.as_mut()
        .ok_or_else(|| fail(WtStatus::NullPointer, format!("{what} is null")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, WtStatus> {
    p.as_ref()
        .ok_or_else(|| fail(WtStatus::NullPointer, format!("{what} is null")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Quadratic datum: 0 means none (and -1 over R).
fn form_type(field: LocalField, kind: &str, d: i64) -> Result<FormType, WtStatus> {
    lib(FormType::parse(kind, field, (d != 0).then_some(d)))
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn wt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn wt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn wt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `p3`, `Q_3`, `real`, `complex` or a JSON object.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_field_parse(name: *const c_char, out: *mut *mut WtField) -> WtStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let field = lib(LocalField::parse(str_arg(name, "name")?))?;
        *out = Box::into_raw(Box::new(WtField { field }));
        Ok(())
    })
}

/// # Safety
/// `f` must be null or a handle from `wt_field_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wt_field_free(f: *mut WtField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Hilbert symbol `(a, b)` over the field, written as +1 or -1.
///
/// # Safety
/// `field` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn wt_hilbert(
    field: *const WtField,
    a: i64,
    b: i64,
    out: *mut c_int,
) -> WtStatus {
    guard(|| {
        let f = ref_arg(field, "field")?;
        let out = out_arg(out, "out")?;
        *out = c_int::from(lib(f.field.hilbert(a, b))?);
        Ok(())
    })
}

/// Maximal anisotropic degree of a non-archimedean space of the given kind.
///
/// # Safety
/// `kind` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wt_d_max(kind: *const c_char, out: *mut i64) -> WtStatus {
    guard(|| {
        let k = lib(SpaceKind::parse(str_arg(kind, "kind")?))?;
        *out_arg(out, "out")? = k.d_max();
        Ok(())
    })
}

/// Class of the diagonal form `diag[0..len]` of the given kind (`d` as for `FormType`).
///
/// # Safety
/// `diag` must point to `len` integers (or be null with `len == 0`); other pointers valid.
#[no_mangle]
pub unsafe extern "C" fn wt_class_from_diag(
    field: *const WtField,
    kind: *const c_char,
    d: i64,
    diag: *const i64,
    len: usize,
    out: *mut *mut WtClass,
) -> WtStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let f = ref_arg(field, "field")?;
        let ty = form_type(f.field, str_arg(kind, "kind")?, d)?;
        let entries = if len == 0 {
            Vec::new()
        } else {
            if diag.is_null() {
                return Err(fail(WtStatus::NullPointer, "diag is null".into()));
            }
            std::slice::from_raw_parts(diag, len).to_vec()
        };
        let class = lib(FormSpec::diagonal(ty, entries).and_then(|s| invariants(&s)))?;
        *out = Box::into_raw(Box::new(WtClass { class }));
        Ok(())
    })
}

/// Class of a form given only by its dimension (symplectic and dimension-only types).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wt_class_from_dim(
    field: *const WtField,
    kind: *const c_char,
    d: i64,
    dim: i64,
    out: *mut *mut WtClass,
) -> WtStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let f = ref_arg(field, "field")?;
        let ty = form_type(f.field, str_arg(kind, "kind")?, d)?;
        let class = lib(FormSpec::of_dim(ty, dim).and_then(|s| invariants(&s)))?;
        *out = Box::into_raw(Box::new(WtClass { class }));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wt_class_free(c: *mut WtClass) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wt_class_dim(c: *const WtClass, out: *mut i64) -> WtStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(c, "class")?.class.dim;
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wt_class_split_rank(c: *const WtClass, out: *mut i64) -> WtStatus {
    guard(|| {
        let c = ref_arg(c, "class")?;
        *out_arg(out, "out")? = lib(split_rank(&c.class))?;
        Ok(())
    })
}

/// Writes 1 if anisotropic, 0 otherwise.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wt_class_is_anisotropic(c: *const WtClass, out: *mut c_int) -> WtStatus {
    guard(|| {
        let c = ref_arg(c, "class")?;
        *out_arg(out, "out")? = c_int::from(lib(is_anisotropic(&c.class))?);
        Ok(())
    })
}

/// JSON rendering of the class; free with `wt_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wt_class_to_json(c: *const WtClass, out: *mut *mut c_char) -> WtStatus {
    guard(|| {
        let c = ref_arg(c, "class")?;
        *out_arg(out, "out")? = to_c_string(c.class.to_json().to_string());
        Ok(())
    })
}

/// `2 dim U + d`: first occurrence of the trivial representation in the anti-split tower.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wt_trivial_bound(
    field: *const WtField,
    u_kind: *const c_char,
    d: i64,
    dim_u: i64,
    out: *mut i64,
) -> WtStatus {
    guard(|| {
        let f = ref_arg(field, "field")?;
        let u = form_type(f.field, str_arg(u_kind, "u_kind")?, d)?;
        *out_arg(out, "out")? = lib(n_trivial_antisplit(u, dim_u))?.value;
        Ok(())
    })
}

/// First occurrence on the partner tower, given `known` on the least-degree tower compatible
/// with it. `out_partner_deg` may be null.
///
/// # Safety
/// Pointers other than `out_partner_deg` must be valid.
#[no_mangle]
pub unsafe extern "C" fn wt_conserve_predict(
    field: *const WtField,
    u_kind: *const c_char,
    d: i64,
    dim_u: i64,
    known: i64,
    out_n: *mut i64,
    out_partner_deg: *mut i64,
) -> WtStatus {
    guard(|| {
        let f = ref_arg(field, "field")?;
        let u = form_type(f.field, str_arg(u_kind, "u_kind")?, d)?;
        let tower = lib(default_tower(u, known))?;
        let p = lib(conserve_predict(&OccurrenceQuery {
            u_type: u,
            dim_u,
            tower,
            known_n: Some(known),
            parity: None,
        }))?;
        if !p.consistent() {
            return Err(fail(WtStatus::Inconsistent, p.to_json().to_string()));
        }
        *out_arg(out_n, "out_n")? = p.predicted_n;
        if let Some(o) = out_partner_deg.as_mut() {
            *o = p.partner.deg();
        }
        Ok(())
    })
}

/// Runs a command line (`argv[0]` is the first verb, not a program name). The JSON output
/// goes to `out_json` and the process-style exit code to `out_code`.
///
/// # Safety
/// `argv` must point to `argc` valid C strings; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wt_cli_run(
    argv: *const *const c_char,
    argc: usize,
    out_json: *mut *mut c_char,
    out_code: *mut c_int,
) -> WtStatus {
    guard(|| {
        let out_json = out_arg(out_json, "out_json")?;
        *out_json = ptr::null_mut();
        let out_code = out_arg(out_code, "out_code")?;
        let mut args = vec!["witt-theta".to_string()];
        if argc > 0 {
            if argv.is_null() {
                return Err(fail(WtStatus::NullPointer, "argv is null".into()));
            }
            for (i, &p) in std::slice::from_raw_parts(argv, argc).iter().enumerate() {
                args.push(str_arg(p, &format!("argv[{i}]"))?.to_string());
            }
        }
        let o = witt_theta::cli::run(args);
        *out_code = o.code;
        *out_json = to_c_string(o.stdout.to_string());
        Ok(())
    })
}
