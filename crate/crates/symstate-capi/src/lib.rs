//! C ABI for the `symstate` library.
//!
//! Matrices cross the boundary as opaque [`SymstateMatrix`] handles created
//! and destroyed by this crate; every fallible call returns a
//! [`SymstateStatus`] and stores a human-readable message retrievable with
//! [`symstate_last_error_message`]. The companion header `symstate.h` is
//! generated by cbindgen at build time (see `build.rs`).
//!
//! All functions are panic-safe: internal panics are caught and surface as
//! `SYMSTATE_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, c_double, c_int, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use symstate::criteria::{self, PptMethod};
use symstate::linalg::{self, CMatrix};
use symstate::states::{self, PermutationSpec};
use symstate::symmetry::{self, InvarianceLaw, Partition};
use symstate::Error;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymstateStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A parameter was out of range or malformed.
    InvalidArgument = 2,
    /// An input matrix was not Hermitian where required.
    NotHermitian = 3,
    /// An input matrix was not a valid state.
    NotAState = 4,
    /// A file or string could not be parsed.
    ParseError = 5,
    /// Underlying I/O failed.
    IoError = 6,
    /// An output buffer was too small.
    BufferTooSmall = 7,
    /// Unexpected internal failure.
    Internal = 8,
}

/// Invariance law selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymstateLaw {
    UUbar = 0,
    UU = 1,
}

impl From<SymstateLaw> for InvarianceLaw {
    fn from(law: SymstateLaw) -> Self {
        match law {
            SymstateLaw::UUbar => InvarianceLaw::UUbar,
            SymstateLaw::UU => InvarianceLaw::UU,
        }
    }
}

/// PPT verdict method selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymstateMethod {
    Dense = 0,
    Blocked = 1,
}

impl From<SymstateMethod> for PptMethod {
    fn from(m: SymstateMethod) -> Self {
        match m {
            SymstateMethod::Dense => PptMethod::Dense,
            SymstateMethod::Blocked => PptMethod::Blocked,
        }
    }
}

/// Result of a PPT check.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SymstatePptReport {
    /// 1 when the partial transpose is positive semidefinite.
    pub is_ppt: c_int,
    pub min_eig_rho: c_double,
    pub min_eig_gamma: c_double,
}

/// Opaque dense complex matrix handle.
pub struct SymstateMatrix {
    inner: CMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(message: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.into());
}

fn status_of(err: &Error) -> SymstateStatus {
    match err {
        Error::NotHermitian { .. } => SymstateStatus::NotHermitian,
        Error::NotAState { .. } | Error::NotPsd { .. } | Error::BadNormalization { .. } => {
            SymstateStatus::NotAState
        }
        Error::Parse { .. } => SymstateStatus::ParseError,
        Error::Io(_) => SymstateStatus::IoError,
        _ => SymstateStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> SymstateStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

/// Runs a fallible body, converting errors and panics to status codes.
fn guarded(body: impl FnOnce() -> Result<SymstateStatus, Error>) -> SymstateStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(err)) => fail(err),
        Err(_) => {
            set_error("internal panic");
            SymstateStatus::Internal
        }
    }
}

fn null_pointer() -> SymstateStatus {
    set_error("null pointer argument");
    SymstateStatus::NullPointer
}

/// Borrows an input handle.
///
/// # Safety
/// `m` must be null or a live handle from this crate.
unsafe fn borrow<'a>(m: *const SymstateMatrix) -> Option<&'a CMatrix> {
    m.as_ref().map(|h| &h.inner)
}

fn emit(out: *mut *mut SymstateMatrix, m: CMatrix) -> SymstateStatus {
    let handle = Box::new(SymstateMatrix { inner: m });
    unsafe { *out = Box::into_raw(handle) };
    SymstateStatus::Ok
}

unsafe fn parse_cstr<'a>(s: *const c_char) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(Error::NotAState {
            reason: "null string".into(),
        });
    }
    CStr::from_ptr(s).to_str().map_err(|_| Error::Parse {
        line: 0,
        message: "string is not valid UTF-8".into(),
    })
}

/// Copies `text` into a caller buffer as NUL-terminated UTF-8.
unsafe fn write_buffer(text: &str, buf: *mut c_char, len: usize) -> SymstateStatus {
    if buf.is_null() {
        return null_pointer();
    }
    if text.len() + 1 > len {
        set_error(format!("buffer of {len} bytes, need {}", text.len() + 1));
        return SymstateStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(text.as_ptr(), buf as *mut u8, text.len());
    *buf.add(text.len()) = 0;
    SymstateStatus::Ok
}

/// Writes the last error message for this thread into `buf` and returns
/// the status of the copy. Safe to call with an empty history.
///
/// # Safety
/// `buf` must point to at least `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn symstate_last_error_message(
    buf: *mut c_char,
    len: usize,
) -> SymstateStatus {
    LAST_ERROR.with(|e| write_buffer(&e.borrow(), buf, len))
}

/// Frees a matrix handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle returned by this crate, freed only once.
#[no_mangle]
pub unsafe extern "C" fn symstate_matrix_free(m: *mut SymstateMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of rows of a matrix handle (0 for null).
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn symstate_matrix_rows(m: *const SymstateMatrix) -> usize {
    borrow(m).map_or(0, |m| m.rows())
}

/// Number of columns of a matrix handle (0 for null).
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn symstate_matrix_cols(m: *const SymstateMatrix) -> usize {
    borrow(m).map_or(0, |m| m.cols())
}

/// Reads one entry (0-based indices) into `re`/`im`.
///
/// # Safety
/// `m` must be a live handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symstate_matrix_get(
    m: *const SymstateMatrix,
    row: usize,
    col: usize,
    re: *mut c_double,
    im: *mut c_double,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if re.is_null() || im.is_null() {
        return null_pointer();
    }
    if row >= m.rows() || col >= m.cols() {
        set_error(format!(
            "index ({row},{col}) out of range for {}x{}",
            m.rows(),
            m.cols()
        ));
        return SymstateStatus::InvalidArgument;
    }
    let z = m[(row, col)];
    *re = z.re;
    *im = z.im;
    SymstateStatus::Ok
}

/// Builds the correlated two-qutrit state at mixing parameter `a`.
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_horodecki(
    a: c_double,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| Ok(emit(out, states::horodecki(a)?)))
}

/// Representation with the `12|3` symmetry (b,c block on {|11>, |12>}).
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_horodecki_prime(
    a: c_double,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| Ok(emit(out, states::horodecki_prime(a)?)))
}

/// Representation with the `1|23` symmetry (b,c block on {|22>, |23>}).
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_horodecki_dprime(
    a: c_double,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| Ok(emit(out, states::horodecki_dprime(a)?)))
}

/// The d (x) d generalization correlating the pair {1, d}.
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_generalized_horodecki(
    d: usize,
    a: c_double,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| Ok(emit(out, states::generalized_horodecki(d, a)?)))
}

/// Partial transposition on the second tensor factor.
///
/// # Safety
/// `m` must be a live handle; `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_partial_transpose(
    m: *const SymstateMatrix,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let d = m.local_dim()?;
        Ok(emit(out, linalg::partial_transpose(m, d)?))
    })
}

/// Realignment map of a bipartite matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_realign(
    m: *const SymstateMatrix,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let d = m.local_dim()?;
        Ok(emit(out, linalg::realign(m, d)?))
    })
}

/// Conjugation by a local permutation on both factors. `perm` holds the
/// 1-based images of 1..=len.
///
/// # Safety
/// `m` must be a live handle; `perm` must point to `len` entries; `out`
/// must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_conjugate(
    m: *const SymstateMatrix,
    perm: *const usize,
    len: usize,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if perm.is_null() || out.is_null() {
        return null_pointer();
    }
    let images = std::slice::from_raw_parts(perm, len).to_vec();
    guarded(|| {
        let s = PermutationSpec::new(images)?;
        Ok(emit(out, states::conjugate(m, &s)?))
    })
}

/// Projects onto the invariant set of the phase subgroup given by a
/// partition in bar syntax (e.g. `"13|2"`).
///
/// # Safety
/// `m` must be a live handle; `partition` must be a NUL-terminated string;
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_twirl(
    m: *const SymstateMatrix,
    partition: *const c_char,
    law: SymstateLaw,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let d = m.local_dim()?;
        let part = Partition::parse(parse_cstr(partition)?, d)?;
        Ok(emit(out, symmetry::twirl(m, &part, law.into())?))
    })
}

/// Mask-based invariance test; writes 1 or 0 into `invariant`.
///
/// # Safety
/// `m` must be a live handle; `partition` must be a NUL-terminated string;
/// `invariant` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symstate_is_invariant(
    m: *const SymstateMatrix,
    partition: *const c_char,
    law: SymstateLaw,
    tol: c_double,
    invariant: *mut c_int,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if invariant.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let d = m.local_dim()?;
        let part = Partition::parse(parse_cstr(partition)?, d)?;
        let verdict = symmetry::is_invariant(m, &part, law.into(), tol)?;
        *invariant = verdict as c_int;
        Ok(SymstateStatus::Ok)
    })
}

/// Finds the finest invariant partition (d <= 6) and writes its bar-syntax
/// form into `buf`.
///
/// # Safety
/// `m` must be a live handle; `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn symstate_finest_partition(
    m: *const SymstateMatrix,
    law: SymstateLaw,
    tol: c_double,
    buf: *mut c_char,
    len: usize,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    guarded(|| {
        let finest = symmetry::finest_symmetry(m, law.into(), tol)?;
        Ok(write_buffer(&finest.to_string(), buf, len))
    })
}

/// PPT check; fills `report`.
///
/// # Safety
/// `m` must be a live handle; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symstate_ppt_check(
    m: *const SymstateMatrix,
    method: SymstateMethod,
    tol: c_double,
    report: *mut SymstatePptReport,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if report.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let d = m.local_dim()?;
        let r = criteria::ppt_check(m, d, method.into(), tol)?;
        *report = SymstatePptReport {
            is_ppt: r.is_ppt as c_int,
            min_eig_rho: r.min_eig_rho,
            min_eig_gamma: r.min_eig_gamma,
        };
        Ok(SymstateStatus::Ok)
    })
}

/// Realignment (CCNR) value of a state.
///
/// # Safety
/// `m` must be a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symstate_ccnr(
    m: *const SymstateMatrix,
    value: *mut c_double,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if value.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let d = m.local_dim()?;
        *value = criteria::ccnr_value(m, d)?;
        Ok(SymstateStatus::Ok)
    })
}

/// Smallest eigenvalue of a Hermitian matrix.
///
/// # Safety
/// `m` must be a live handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn symstate_min_eigenvalue(
    m: *const SymstateMatrix,
    value: *mut c_double,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    if value.is_null() {
        return null_pointer();
    }
    guarded(|| {
        *value = linalg::min_eigenvalue(m, linalg::default_hermiticity_tol(m))?;
        Ok(SymstateStatus::Ok)
    })
}

/// Reads a DMAT1 file into a new handle.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be a writable
/// pointer slot.
#[no_mangle]
pub unsafe extern "C" fn symstate_matrix_read(
    path: *const c_char,
    out: *mut *mut SymstateMatrix,
) -> SymstateStatus {
    if out.is_null() {
        return null_pointer();
    }
    guarded(|| {
        let path = parse_cstr(path)?;
        Ok(emit(out, symstate::dmat::read_file(std::path::Path::new(path))?))
    })
}

/// Writes a handle to a DMAT1 file.
///
/// # Safety
/// `m` must be a live handle; `path` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn symstate_matrix_write(
    m: *const SymstateMatrix,
    path: *const c_char,
) -> SymstateStatus {
    let Some(m) = borrow(m) else {
        return null_pointer();
    };
    guarded(|| {
        let path = parse_cstr(path)?;
        symstate::dmat::write_file(std::path::Path::new(path), m)?;
        Ok(SymstateStatus::Ok)
    })
}
