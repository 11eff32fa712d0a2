//! C ABI over `hwgroup`.
//!
//! Every fallible call returns an [`HwStatus`]; results come back through
//! out-pointers. On failure a message for the calling thread is available
//! from [`hw_last_error_message`]. Handles are opaque and must be released
//! with the matching `*_free` function. Buffer-filling calls take a capacity
//! and report the required length, so callers can size the buffer first by
//! passing a capacity of zero.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hwgroup::fusion::FusionTerm;
use hwgroup::{GroupElement, GroupParams, HwError, IrrepLabel};

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotCanonical = 3,
    ResourceLimit = 4,
    Overflow = 5,
    BufferTooSmall = 6,
    OutOfRange = 7,
    Internal = 8,
}

/// Group element `z^m x^n y^l`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HwElement {
    pub m: u32,
    pub n: u32,
    pub l: u32,
}

/// Irrep label `(p, q, r)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HwLabel {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

/// `scale * w^exp` with `w = exp(2 pi i / root_modulus)`; `scale == 0` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HwCharValue {
    pub scale: u64,
    pub exp: u32,
    pub root_modulus: u32,
}

/// Row `row` of a monomial matrix has `w^exp` in column `col`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HwMonomialEntry {
    pub row: u32,
    pub col: u32,
    pub exp: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HwFusionTerm {
    pub label: HwLabel,
    pub dim: u64,
    pub mult: u64,
}

/// Opaque group handle.
pub struct HwGroup {
    params: GroupParams,
}

/// Opaque irrep handle.
pub struct HwIrrep {
    label: IrrepLabel,
}

/// Opaque tensor-product decomposition.
pub struct HwFusion {
    terms: Vec<FusionTerm>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &HwError) -> HwStatus {
    match e {
        HwError::NotCanonical { .. } => HwStatus::NotCanonical,
        HwError::Resource { .. } => HwStatus::ResourceLimit,
        HwError::Overflow => HwStatus::Overflow,
        HwError::Inconsistency(_) => HwStatus::Internal,
        _ => HwStatus::InvalidArgument,
    }
}

fn fail(status: HwStatus, msg: impl Into<String>) -> HwStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), HwStatus>) -> HwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HwStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(HwStatus::Internal, "panic inside hwgroup"),
    }
}

fn lift<T>(r: hwgroup::Result<T>) -> Result<T, HwStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, HwStatus> {
    // SAFETY: the caller promises `p` is null or valid for reads.
    unsafe { p.as_ref() }.ok_or_else(|| fail(HwStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(p: *mut T, value: T, what: &str) -> Result<(), HwStatus> {
    if p.is_null() {
        return Err(fail(HwStatus::NullPointer, format!("{what} is null")));
    }
    // SAFETY: non-null and, per the caller's contract, valid for writes.
    unsafe { p.write(value) };
    Ok(())
}

fn to_element(e: HwElement) -> GroupElement {
    GroupElement::new(e.m, e.n, e.l)
}

fn from_element(e: GroupElement) -> HwElement {
    HwElement { m: e.m, n: e.n, l: e.l }
}

fn from_label(l: &IrrepLabel) -> HwLabel {
    HwLabel {
        p: l.p(),
        q: l.q(),
        r: l.r(),
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static name of a status code; "unknown status" for other values.
#[no_mangle]
pub extern "C" fn hw_status_name(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer\0",
        2 => b"invalid argument\0",
        3 => b"label not canonical\0",
        4 => b"resource limit\0",
        5 => b"arithmetic overflow\0",
        6 => b"buffer too small\0",
        7 => b"index out of range\0",
        8 => b"internal error\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// `N_s = 2^{s-1}(3 * 2^s - 1)`; 0 when `s` is outside `1..=16`.
#[no_mangle]
pub extern "C" fn hw_irrep_count(s: u32) -> u64 {
    if GroupParams::new(s).is_ok() {
        hwgroup::rep::irrep_count_formula(s)
    } else {
        0
    }
}

/// Number of conjugacy classes from the class-size sum; 0 when `s` is
/// outside `1..=16`.
#[no_mangle]
pub extern "C" fn hw_class_count(s: u32) -> u64 {
    if GroupParams::new(s).is_ok() {
        hwgroup::group::class_count_formula(s)
    } else {
        0
    }
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hw_group_new(s: u32, out: *mut *mut HwGroup) -> HwStatus {
    guard(|| {
        let params = lift(GroupParams::new(s))?;
        unsafe { write(out, Box::into_raw(Box::new(HwGroup { params })), "out") }
    })
}

/// # Safety
/// `group` must be null or a handle from [`hw_group_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hw_group_free(group: *mut HwGroup) {
    if !group.is_null() {
        // SAFETY: created by Box::into_raw in hw_group_new.
        drop(unsafe { Box::from_raw(group) });
    }
}

/// # Safety
/// Pointers must be valid; `group` from [`hw_group_new`].
#[no_mangle]
pub unsafe extern "C" fn hw_group_order(group: *const HwGroup, out: *mut u64) -> HwStatus {
    guard(|| {
        let g = unsafe { deref(group, "group") }?;
        unsafe { write(out, g.params.order(), "out") }
    })
}

/// # Safety
/// Pointers must be valid; `group` from [`hw_group_new`].
#[no_mangle]
pub unsafe extern "C" fn hw_group_multiply(
    group: *const HwGroup,
    a: HwElement,
    b: HwElement,
    out: *mut HwElement,
) -> HwStatus {
    guard(|| {
        let g = unsafe { deref(group, "group") }?;
        let product = lift(g.params.multiply(&to_element(a), &to_element(b)))?;
        unsafe { write(out, from_element(product), "out") }
    })
}

/// # Safety
/// Pointers must be valid; `group` from [`hw_group_new`].
#[no_mangle]
pub unsafe extern "C" fn hw_group_inverse(group: *const HwGroup, a: HwElement, out: *mut HwElement) -> HwStatus {
    guard(|| {
        let g = unsafe { deref(group, "group") }?;
        let inv = lift(g.params.inverse(&to_element(a)))?;
        unsafe { write(out, from_element(inv), "out") }
    })
}

/// Reduces any integer triple to its canonical label.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hw_label_canonicalize(s: u32, p: i64, q: i64, r: i64, out: *mut HwLabel) -> HwStatus {
    guard(|| {
        let l = lift(hwgroup::canonicalize_label(s, p, q, r))?;
        unsafe { write(out, from_label(&l), "out") }
    })
}

/// Creates an irrep handle; fails with `NOT_CANONICAL` unless `q, r < 2^t`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hw_irrep_new(s: u32, label: HwLabel, out: *mut *mut HwIrrep) -> HwStatus {
    guard(|| {
        let label = lift(IrrepLabel::new(s, label.p, label.q, label.r))?;
        unsafe { write(out, Box::into_raw(Box::new(HwIrrep { label })), "out") }
    })
}

/// # Safety
/// `irrep` must be null or a handle from [`hw_irrep_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hw_irrep_free(irrep: *mut HwIrrep) {
    if !irrep.is_null() {
        // SAFETY: created by Box::into_raw in hw_irrep_new.
        drop(unsafe { Box::from_raw(irrep) });
    }
}

/// Dimension `2^{s-t}`, or 0 for a null handle.
///
/// # Safety
/// `irrep` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hw_irrep_dim(irrep: *const HwIrrep) -> usize {
    unsafe { irrep.as_ref() }.map_or(0, |i| i.label.dim())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hw_irrep_label(irrep: *const HwIrrep, out: *mut HwLabel) -> HwStatus {
    guard(|| {
        let i = unsafe { deref(irrep, "irrep") }?;
        unsafe { write(out, from_label(&i.label), "out") }
    })
}

/// Writes the `dim` nonzero entries of `Γ(g)` into `entries`. `len_out`
/// always receives `dim`; with `capacity < dim` nothing else is written
/// and `BUFFER_TOO_SMALL` is returned. Exponents are of `exp(2 pi i / 2^s)`.
///
/// # Safety
/// `entries` must be valid for `capacity` writes (may be null if
/// `capacity == 0`); other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hw_irrep_matrix(
    irrep: *const HwIrrep,
    g: HwElement,
    entries: *mut HwMonomialEntry,
    capacity: usize,
    len_out: *mut usize,
) -> HwStatus {
    guard(|| {
        let i = unsafe { deref(irrep, "irrep") }?;
        let m = lift(hwgroup::irrep_matrix(&i.label, &to_element(g)))?;
        let d = m.dim();
        unsafe { write(len_out, d, "len_out") }?;
        if capacity < d {
            return Err(fail(HwStatus::BufferTooSmall, format!("need {d} entries, got {capacity}")));
        }
        if entries.is_null() {
            return Err(fail(HwStatus::NullPointer, "entries is null"));
        }
        for k in 0..d {
            let (row, col, exp) = m.entry(k);
            // SAFETY: k < d <= capacity.
            unsafe {
                entries.add(k).write(HwMonomialEntry {
                    row: row as u32,
                    col: col as u32,
                    exp,
                })
            };
        }
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hw_character(irrep: *const HwIrrep, g: HwElement, out: *mut HwCharValue) -> HwStatus {
    guard(|| {
        let i = unsafe { deref(irrep, "irrep") }?;
        let c = lift(hwgroup::character(&i.label, &to_element(g)))?;
        let value = HwCharValue {
            scale: c.scale,
            exp: c.exp,
            root_modulus: 1 << i.label.s(),
        };
        unsafe { write(out, value, "out") }
    })
}

/// Multiplicity of `c` in `a ⊗ b` (closed form).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hw_fusion_coeff(
    a: *const HwIrrep,
    b: *const HwIrrep,
    c: *const HwIrrep,
    out: *mut u64,
) -> HwStatus {
    guard(|| {
        let (a, b, c) = unsafe { (deref(a, "a")?, deref(b, "b")?, deref(c, "c")?) };
        let n = lift(hwgroup::fusion_coeff_closed(&a.label, &b.label, &c.label))?;
        unsafe { write(out, n, "out") }
    })
}

/// Multiplicity of `c` in `a ⊗ b` from the exact character sum.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hw_fusion_coeff_bruteforce(
    a: *const HwIrrep,
    b: *const HwIrrep,
    c: *const HwIrrep,
    out: *mut u64,
) -> HwStatus {
    guard(|| {
        let (a, b, c) = unsafe { (deref(a, "a")?, deref(b, "b")?, deref(c, "c")?) };
        let n = lift(hwgroup::fusion_coeff_bruteforce(&a.label, &b.label, &c.label))?;
        unsafe { write(out, n, "out") }
    })
}

/// Decomposes `a ⊗ b`; release the result with [`hw_fusion_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hw_fuse(a: *const HwIrrep, b: *const HwIrrep, out: *mut *mut HwFusion) -> HwStatus {
    guard(|| {
        let (a, b) = unsafe { (deref(a, "a")?, deref(b, "b")?) };
        let terms = lift(hwgroup::fuse(&a.label, &b.label))?;
        unsafe { write(out, Box::into_raw(Box::new(HwFusion { terms })), "out") }
    })
}

/// Number of distinct irreps in the decomposition, or 0 for null.
///
/// # Safety
/// `fusion` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hw_fusion_len(fusion: *const HwFusion) -> usize {
    unsafe { fusion.as_ref() }.map_or(0, |f| f.terms.len())
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hw_fusion_term(fusion: *const HwFusion, index: usize, out: *mut HwFusionTerm) -> HwStatus {
    guard(|| {
        let f = unsafe { deref(fusion, "fusion") }?;
        let t = f
            .terms
            .get(index)
            .ok_or_else(|| fail(HwStatus::OutOfRange, format!("term {index} of {}", f.terms.len())))?;
        let term = HwFusionTerm {
            label: from_label(&t.label),
            dim: t.label.dim() as u64,
            mult: t.mult,
        };
        unsafe { write(out, term, "out") }
    })
}

/// # Safety
/// `fusion` must be null or a handle from [`hw_fuse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hw_fusion_free(fusion: *mut HwFusion) {
    if !fusion.is_null() {
        // SAFETY: created by Box::into_raw in hw_fuse.
        drop(unsafe { Box::from_raw(fusion) });
    }
}

/// Writes `F_D` row-major as separate real and imaginary arrays of
/// `dim * dim` doubles. `len_out` always receives `dim * dim`.
///
/// # Safety
/// `re` and `im` must each be valid for `capacity` writes; other pointers
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn hw_fourier_fd(
    irrep: *const HwIrrep,
    re: *mut f64,
    im: *mut f64,
    capacity: usize,
    len_out: *mut usize,
) -> HwStatus {
    guard(|| {
        let i = unsafe { deref(irrep, "irrep") }?;
        let f = lift(hwgroup::fourier_fd(&i.label))?;
        let d = f.dim();
        let need = d * d;
        unsafe { write(len_out, need, "len_out") }?;
        if capacity < need {
            return Err(fail(HwStatus::BufferTooSmall, format!("need {need} values, got {capacity}")));
        }
        if re.is_null() || im.is_null() {
            return Err(fail(HwStatus::NullPointer, "re or im is null"));
        }
        for r in 0..d {
            for c in 0..d {
                let z = f.get(r, c);
                // SAFETY: r * d + c < need <= capacity.
                unsafe {
                    re.add(r * d + c).write(z.re);
                    im.add(r * d + c).write(z.im);
                }
            }
        }
        Ok(())
    })
}
