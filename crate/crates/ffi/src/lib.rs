//! C ABI over `nc_hopf`.
//!
//! Every fallible call returns an [`NcHopfStatus`] and writes its result
//! through an out-pointer. On failure the message is available from
//! [`nc_hopf_last_error`] on the same thread. Strings handed out by the
//! library are released with [`nc_hopf_string_free`], partitions with
//! [`nc_hopf_partition_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nc_hopf::cumulants::{
    classical_cumulants_from_moments, classical_moments_from_cumulants, free_cumulants_from_moments,
    free_moments_from_cumulants, CumulantSequence, Flavor, MomentSequence,
};
use nc_hopf::hopf::coproduct;
use nc_hopf::moebius::{Lattice, Moebius};
use nc_hopf::partition::{enumerate_nc_partitions, enumerate_set_partitions, Limits};
use nc_hopf::tree::hierarchy_tree;
use nc_hopf::{Alphabet, BarWord, Coefficient, Error, NonCrossingPartition, SetPartition, Variant, Word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcHopfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    SizeLimit = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcHopfLattice {
    NonCrossing = 0,
    SetPartitions = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcHopfVariant {
    Full = 0,
    LeftPlus = 1,
    RightPlus = 2,
    Left = 3,
    Right = 4,
    Reduced = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcHopfFlavor {
    Classical = 0,
    Free = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcHopfDirection {
    CumulantsToMoments = 0,
    MomentsToCumulants = 1,
}

/// Opaque set partition handle.
pub struct NcHopfPartition(SetPartition);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

enum Fail {
    Null(&'static str),
    Utf8,
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> NcHopfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NcHopfStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            NcHopfStatus::NullPointer
        }
        Ok(Err(Fail::Utf8)) => {
            set_error("input is not valid UTF-8".into());
            NcHopfStatus::InvalidUtf8
        }
        Ok(Err(Fail::Core(e))) => {
            let status = match e {
                Error::Parse(_) | Error::InvalidPartition(_) | Error::UnknownLetter(_) => NcHopfStatus::ParseError,
                Error::SizeLimit { .. } => NcHopfStatus::SizeLimit,
                _ => NcHopfStatus::DomainError,
            };
            set_error(e.to_string());
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            NcHopfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Utf8)
}

unsafe fn handle<'a>(p: *const NcHopfPartition, what: &'static str) -> Result<&'a SetPartition, Fail> {
    p.as_ref().map(|h| &h.0).ok_or(Fail::Null(what))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    let c = CString::new(s).map_err(|_| Fail::Core(Error::Parse("interior NUL in output".into())))?;
    out.write(c.into_raw());
    Ok(())
}

fn variant(v: NcHopfVariant) -> Variant {
    match v {
        NcHopfVariant::Full => Variant::Full,
        NcHopfVariant::LeftPlus => Variant::LeftPlus,
        NcHopfVariant::RightPlus => Variant::RightPlus,
        NcHopfVariant::Left => Variant::Left,
        NcHopfVariant::Right => Variant::Right,
        NcHopfVariant::Reduced => Variant::Reduced,
    }
}

fn lattice(l: NcHopfLattice) -> Lattice {
    match l {
        NcHopfLattice::NonCrossing => Lattice::NonCrossing,
        NcHopfLattice::SetPartitions => Lattice::SetPartitions,
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread; do not free.
#[no_mangle]
pub extern "C" fn nc_hopf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{1,4}{2,3}` (optionally with an `on {…}` suffix, or the JSON form).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_partition_parse(text: *const c_char, out: *mut *mut NcHopfPartition) -> NcHopfStatus {
    guard(|| {
        let p: SetPartition = str_arg(text, "text")?.parse()?;
        put(out, Box::into_raw(Box::new(NcHopfPartition(p))))
    })
}

/// # Safety
/// `p` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_partition_free(p: *mut NcHopfPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text form. Free the result with [`nc_hopf_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_partition_to_string(p: *const NcHopfPartition, out: *mut *mut c_char) -> NcHopfStatus {
    guard(|| put_string(out, handle(p, "partition")?.to_string()))
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_partition_size(p: *const NcHopfPartition, out: *mut usize) -> NcHopfStatus {
    guard(|| put(out, handle(p, "partition")?.size()))
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_partition_is_noncrossing(p: *const NcHopfPartition, out: *mut bool) -> NcHopfStatus {
    guard(|| put(out, handle(p, "partition")?.is_noncrossing()))
}

/// New handle relabelled onto `1..=n`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_partition_standardize(
    p: *const NcHopfPartition,
    out: *mut *mut NcHopfPartition,
) -> NcHopfStatus {
    guard(|| {
        let s = handle(p, "partition")?.standardize();
        put(out, Box::into_raw(Box::new(NcHopfPartition(s))))
    })
}

/// Möbius function of the interval `[lower, upper]`.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_moebius(
    lat: NcHopfLattice,
    lower: *const NcHopfPartition,
    upper: *const NcHopfPartition,
    out: *mut i64,
) -> NcHopfStatus {
    guard(|| {
        let mu = Moebius::new(lattice(lat)).value(handle(lower, "lower")?, handle(upper, "upper")?)?;
        put(out, mu)
    })
}

/// Number of partitions of `1..=n` in the lattice, by enumeration.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_count(lat: NcHopfLattice, n: usize, out: *mut u64) -> NcHopfStatus {
    guard(|| {
        let limits = Limits::default();
        let count = match lat {
            NcHopfLattice::NonCrossing => enumerate_nc_partitions(n, &limits)?.len(),
            NcHopfLattice::SetPartitions => enumerate_set_partitions(n, &limits)?.len(),
        };
        put(out, count as u64)
    })
}

/// Coproduct of a bar word of non-crossing partitions, e.g. `{1,2}{3}|{1}`.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_coproduct_nc(
    input: *const c_char,
    v: NcHopfVariant,
    out: *mut *mut c_char,
) -> NcHopfStatus {
    guard(|| {
        let a = Alphabet::default();
        let b = BarWord::<NonCrossingPartition>::parse(str_arg(input, "input")?, &a)?;
        put_string(out, coproduct(&b, variant(v)).render(&a))
    })
}

/// Coproduct of a bar word of words over the comma-separated `alphabet`,
/// e.g. input `a.b|a` with alphabet `a,b`.
///
/// # Safety
/// `input` and `alphabet` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_coproduct_word(
    input: *const c_char,
    alphabet: *const c_char,
    v: NcHopfVariant,
    out: *mut *mut c_char,
) -> NcHopfStatus {
    guard(|| {
        let a = Alphabet::parse_list(str_arg(alphabet, "alphabet")?)?;
        let b = BarWord::<Word>::parse(str_arg(input, "input")?, &a)?;
        put_string(out, coproduct(&b, variant(v)).render(&a))
    })
}

/// Hierarchy tree of a non-crossing partition as nested parentheses.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_hierarchy_tree(p: *const NcHopfPartition, out: *mut *mut c_char) -> NcHopfStatus {
    guard(|| {
        let l = NonCrossingPartition::new(handle(p, "partition")?.standardize())?;
        put_string(out, hierarchy_tree(&l).to_string())
    })
}

/// Moment-cumulant transform on comma-separated exact values starting at
/// index 1 (`m_1,…` or `k_1,…`). Writes the transformed values in the same
/// format.
///
/// # Safety
/// `values` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_hopf_transform(
    flavor: NcHopfFlavor,
    direction: NcHopfDirection,
    values: *const c_char,
    out: *mut *mut c_char,
) -> NcHopfStatus {
    guard(|| {
        let input: Vec<Coefficient> =
            str_arg(values, "values")?.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>()?;
        let f = match flavor {
            NcHopfFlavor::Classical => Flavor::Classical,
            NcHopfFlavor::Free => Flavor::Free,
        };
        let result = match direction {
            NcHopfDirection::CumulantsToMoments => {
                let k = CumulantSequence::new(f, input);
                let m = match f {
                    Flavor::Classical => classical_moments_from_cumulants(&k)?,
                    Flavor::Free => free_moments_from_cumulants(&k)?,
                };
                m.positive().to_vec()
            }
            NcHopfDirection::MomentsToCumulants => {
                let m = MomentSequence::from_positive(input);
                let k = match f {
                    Flavor::Classical => classical_cumulants_from_moments(&m)?,
                    Flavor::Free => free_cumulants_from_moments(&m)?,
                };
                k.values().to_vec()
            }
        };
        put_string(out, result.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
    })
}
