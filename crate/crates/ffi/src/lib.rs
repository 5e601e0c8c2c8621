//! C interface. Objects are opaque handles created and destroyed through
//! this API; every function returns an [`FpStatus`] and writes results
//! through out-pointers. No strings cross the boundary.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use facetpath::bounds::BoundsTable;
use facetpath::chirotope::Chirotope;
use facetpath::encoder::encode_gp_axioms;
use facetpath::pathcomplex::{enumerate_candidates, CandidateSet, CandidateSpec, PivotSequence};
use facetpath::prover::{prove_instance, BackendConfig, Limits, Mode, Status};
use facetpath::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpStatus {
    FpOk = 0,
    FpErrNull = 1,
    FpErrInvalidArgument = 2,
    FpErrOutOfRange = 3,
    FpErrBufferTooSmall = 4,
    FpErrBackend = 5,
    FpErrIo = 6,
    FpErrPanic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpMode {
    FpModeEager = 0,
    FpModeLazy = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpVerdict {
    FpVerdictSat = 0,
    FpVerdictUnsat = 1,
    FpVerdictTimeout = 2,
}

/// Enumerated candidate pivot sequences.
pub struct FpCandidates {
    set: CandidateSet,
    flat: Vec<PivotSequence>,
}

/// A uniform chirotope.
pub struct FpChirotope {
    inner: Chirotope,
}

fn code(e: &Error) -> FpStatus {
    match e {
        Error::Io(_) => FpStatus::FpErrIo,
        Error::Backend(_) => FpStatus::FpErrBackend,
        Error::ElementOutOfRange { .. } => FpStatus::FpErrOutOfRange,
        _ => FpStatus::FpErrInvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> FpStatus) -> FpStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(FpStatus::FpErrPanic)
}

macro_rules! try_ffi {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return code(&e),
        }
    };
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() { return FpStatus::FpErrNull; })+
    };
}

/// Enumerates candidates of `length` pivots for `(d, n)`. Bit `r` of
/// `revisit_mask` selects the class with `r` revisits (r ≤ 3).
///
/// # Safety
/// `out` must be valid for writes. Free the result with `fp_candidates_free`.
#[no_mangle]
pub unsafe extern "C" fn fp_enumerate(
    d: usize,
    n: usize,
    length: usize,
    revisit_mask: u32,
    out: *mut *mut FpCandidates,
) -> FpStatus {
    guard(|| {
        non_null!(out);
        if revisit_mask == 0 || revisit_mask >> 4 != 0 {
            return FpStatus::FpErrInvalidArgument;
        }
        let revisits = (0..4).filter(|r| revisit_mask >> r & 1 == 1).collect();
        let spec = CandidateSpec::new(d, n, length, revisits);
        let set = try_ffi!(enumerate_candidates(&spec, &BoundsTable::known()));
        let flat = set.sequences().cloned().collect();
        *out = Box::into_raw(Box::new(FpCandidates { set, flat }));
        FpStatus::FpOk
    })
}

/// # Safety
/// `set` must come from `fp_enumerate` (or be null) and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fp_candidates_free(set: *mut FpCandidates) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Total count, or the count of one revisit class when `revisits >= 0`.
///
/// # Safety
/// `set` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fp_candidates_count(set: *const FpCandidates, revisits: i32, out: *mut usize) -> FpStatus {
    guard(|| {
        non_null!(set, out);
        let set = &*set;
        *out = if revisits < 0 {
            set.flat.len()
        } else {
            set.set.class(revisits as usize).map_or(0, |c| c.sequences.len())
        };
        FpStatus::FpOk
    })
}

/// Copies the pivots of candidate `index` (0-based) as `(l, e)` pairs into
/// `pairs` (capacity `cap` pairs). `len` receives the number of pivots even
/// when the buffer is too small.
///
/// # Safety
/// `pairs` must be valid for `2 * cap` writes; `set`, `len` as above.
#[no_mangle]
pub unsafe extern "C" fn fp_candidates_pivots(
    set: *const FpCandidates,
    index: usize,
    pairs: *mut u32,
    cap: usize,
    len: *mut usize,
) -> FpStatus {
    guard(|| {
        non_null!(set, len);
        let Some(seq) = (&*set).flat.get(index) else {
            return FpStatus::FpErrOutOfRange;
        };
        *len = seq.len();
        if cap < seq.len() {
            return FpStatus::FpErrBufferTooSmall;
        }
        non_null!(pairs);
        for (i, p) in seq.pivots().iter().enumerate() {
            *pairs.add(2 * i) = p.leaving;
            *pairs.add(2 * i + 1) = p.entering;
        }
        FpStatus::FpOk
    })
}

/// Proves candidate `index` with the embedded solver. `time_limit` in
/// seconds; non-positive means unlimited.
///
/// # Safety
/// `set` must be a live handle; `verdict` and `cuts` valid for writes
/// (`cuts` may be null).
#[no_mangle]
pub unsafe extern "C" fn fp_prove(
    set: *const FpCandidates,
    index: usize,
    mode: FpMode,
    time_limit: f64,
    verdict: *mut FpVerdict,
    cuts: *mut usize,
) -> FpStatus {
    guard(|| {
        non_null!(set, verdict);
        let set = &*set;
        let Some(seq) = set.flat.get(index) else {
            return FpStatus::FpErrOutOfRange;
        };
        let pc = try_ffi!(seq.to_path_complex(set.set.spec.n));
        let limits = Limits {
            time_limit: (time_limit > 0.0).then(|| Duration::from_secs_f64(time_limit)),
            ..Limits::default()
        };
        let mode = match mode {
            FpMode::FpModeEager => Mode::Eager,
            FpMode::FpModeLazy => Mode::Lazy,
        };
        let v = try_ffi!(prove_instance(&pc, mode, &BackendConfig::Embedded, &limits));
        *verdict = match v.status {
            Status::Sat => FpVerdict::FpVerdictSat,
            Status::Unsat => FpVerdict::FpVerdictUnsat,
            Status::Timeout => FpVerdict::FpVerdictTimeout,
        };
        if !cuts.is_null() {
            *cuts = v.added_cuts;
        }
        FpStatus::FpOk
    })
}

/// Builds a chirotope from `len = C(n, r)` signs (±1) in colex order.
///
/// # Safety
/// `signs` must be valid for `len` reads and `out` for writes.
#[no_mangle]
pub unsafe extern "C" fn fp_chirotope_new(
    n: usize,
    r: usize,
    signs: *const i8,
    len: usize,
    out: *mut *mut FpChirotope,
) -> FpStatus {
    guard(|| {
        non_null!(signs, out);
        let v = std::slice::from_raw_parts(signs, len).to_vec();
        let inner = try_ffi!(Chirotope::new(n, r, v));
        *out = Box::into_raw(Box::new(FpChirotope { inner }));
        FpStatus::FpOk
    })
}

/// # Safety
/// `chi` must come from `fp_chirotope_new` (or be null).
#[no_mangle]
pub unsafe extern "C" fn fp_chirotope_free(chi: *mut FpChirotope) {
    if !chi.is_null() {
        drop(Box::from_raw(chi));
    }
}

/// Sign of an ordered tuple of `len = r` distinct elements.
///
/// # Safety
/// `tuple` valid for `len` reads; `chi` live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fp_chirotope_evaluate(
    chi: *const FpChirotope,
    tuple: *const u32,
    len: usize,
    out: *mut i8,
) -> FpStatus {
    guard(|| {
        non_null!(chi, tuple, out);
        let t = std::slice::from_raw_parts(tuple, len);
        *out = try_ffi!((&*chi).inner.evaluate(t));
        FpStatus::FpOk
    })
}

/// `out` = 1 if the Grassmann–Plücker sign conditions hold, else 0.
///
/// # Safety
/// `chi` live; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fp_chirotope_verify(chi: *const FpChirotope, out: *mut u8) -> FpStatus {
    guard(|| {
        non_null!(chi, out);
        *out = (&*chi).inner.verify_axioms() as u8;
        FpStatus::FpOk
    })
}

/// Number of facets, and of elements lying on no facet.
///
/// # Safety
/// `chi` live; `facets` and `uncovered` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fp_chirotope_facet_count(
    chi: *const FpChirotope,
    facets: *mut usize,
    uncovered: *mut usize,
) -> FpStatus {
    guard(|| {
        non_null!(chi, facets, uncovered);
        let r = (&*chi).inner.facets_of();
        *facets = r.facets.len();
        *uncovered = r.uncovered.len();
        FpStatus::FpOk
    })
}

/// Number of GP axiom clauses and variables for rank `r` on `n` elements.
///
/// # Safety
/// `clauses` and `vars` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fp_gp_clause_count(n: usize, r: usize, clauses: *mut u64, vars: *mut u64) -> FpStatus {
    guard(|| {
        non_null!(clauses, vars);
        if n > 64 || r > n {
            return FpStatus::FpErrInvalidArgument;
        }
        let f = encode_gp_axioms(n, r);
        *clauses = f.len() as u64;
        *vars = f.num_vars() as u64;
        FpStatus::FpOk
    })
}

/// Interval bounds on Δ(d, n). `with_computed` adds Δ(6,12) = Δ(4,11) = 6.
/// `has_hi` is 0 when no upper bound is known; `lo` = 0 means unknown.
///
/// # Safety
/// Out-pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fp_bounds(
    d: usize,
    n: usize,
    with_computed: u8,
    lo: *mut usize,
    hi: *mut usize,
    has_hi: *mut u8,
) -> FpStatus {
    guard(|| {
        non_null!(lo, hi, has_hi);
        let t = if with_computed != 0 { BoundsTable::with_computed() } else { BoundsTable::known() };
        let Some(i) = t.interval(d, n) else {
            return FpStatus::FpErrOutOfRange;
        };
        *lo = i.lo;
        *has_hi = i.hi.is_some() as u8;
        *hi = i.hi.unwrap_or(0);
        FpStatus::FpOk
    })
}
