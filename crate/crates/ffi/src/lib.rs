//! C ABI over `hermcode`.
//!
//! A curve is an opaque `HcCurve*` from `hc_curve_new`, released with
//! `hc_curve_free`. Every other call returns an `HcStatus` and writes its
//! result through out-pointers. On failure the message of the last error on
//! the calling thread is available through `hc_last_error`. Panics never
//! cross the boundary; they surface as `HC_STATUS_PANIC`.
//!
//! Divisor arguments `a`, `b` are the coefficients of G = a·P∞ + b·P0,
//! except for `hc_multiplicity`, which takes the shifted arguments of
//! G = K + a·P∞ + b·P0.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::collections::HashMap;
use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;

use hermcode::agcode::build_code;
use hermcode::curve::CurveContext;
use hermcode::distance::{hk_distance, park_distance, HighCase, LowCase, RegimeTag, ScopeReason};
use hermcode::multiplicity::{mult_closed, BasePoint};
use hermcode::orderbound::{BoundConfig, OrderBoundSolver};
use hermcode::rrspace::rr_dim;
use hermcode::search::exact_dual_distance;
use hermcode::witness::build_witness_support;
use hermcode::Error;

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// No closed form applies to the input.
    OutOfScope = 3,
    /// The code is already the full space.
    FullSpace = 4,
    /// Exhaustive search refused the input as too large.
    Infeasible = 5,
    WitnessFailed = 6,
    /// The output buffer is too short; the required length was written.
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HcPoint {
    Pinf = 0,
    P0 = 1,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HcRegime {
    HighCase1 = 0,
    HighCase2 = 1,
    HighCase2Prime = 2,
    HighCase3 = 3,
    HighCase3Prime = 4,
    HighCase4 = 5,
    HighMaxForm = 6,
    LowAxisPoints = 10,
    LowLineThroughP0 = 11,
    LowVerticalLine = 12,
    OutZeroCode = 20,
    OutTrivialDual = 21,
    OutBeyondProofRange = 22,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct HcCurveInfo {
    pub q: u32,
    pub genus: i64,
    /// Length of the codes, q³ − 1.
    pub n: usize,
    /// All rational points, P∞ included.
    pub points: usize,
}

/// Opaque curve handle.
pub struct HcCurve {
    curve: CurveContext,
    bounds: Mutex<HashMap<(i64, i64), i64>>,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> HcStatus {
    match e {
        Error::FullSpace { .. } => HcStatus::FullSpace,
        Error::OutOfScope { .. } | Error::HkRange(_) | Error::Ineligible(_) => HcStatus::OutOfScope,
        Error::OracleInfeasible(_) | Error::OracleTooLarge(_) => HcStatus::Infeasible,
        Error::WitnessExhausted(_) => HcStatus::WitnessFailed,
        _ => HcStatus::InvalidArgument,
    }
}

/// Runs `body`, turning errors and panics into a status and a message.
fn guard(body: impl FnOnce() -> Result<(), (HcStatus, String)>) -> HcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error(String::new());
            HcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            HcStatus::Panic
        }
    }
}

fn lib(e: Error) -> (HcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (HcStatus, String) {
    (HcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn curve_ref<'a>(curve: *const HcCurve) -> Result<&'a HcCurve, (HcStatus, String)> {
    curve.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (HcStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

/// Builds the curve over F_{q²}; q must be a prime power in 2..=16.
#[no_mangle]
pub unsafe extern "C" fn hc_curve_new(q: u32, out: *mut *mut HcCurve) -> HcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let curve = CurveContext::new(q).map_err(lib)?;
        let handle = Box::new(HcCurve { curve, bounds: Mutex::new(HashMap::new()) });
        out.write(Box::into_raw(handle));
        Ok(())
    })
}

/// Releases a handle from `hc_curve_new`; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hc_curve_free(curve: *mut HcCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hc_curve_info(curve: *const HcCurve, out: *mut HcCurveInfo) -> HcStatus {
    guard(|| {
        let c = &curve_ref(curve)?.curve;
        write(out, HcCurveInfo { q: c.q(), genus: c.genus(), n: c.n(), points: c.points().len() })
    })
}

/// dim L(a·P∞ + b·P0).
#[no_mangle]
pub unsafe extern "C" fn hc_rr_dim(curve: *const HcCurve, a: i64, b: i64, out: *mut usize) -> HcStatus {
    guard(|| {
        let c = &curve_ref(curve)?.curve;
        write(out, rr_dim(c.q() as i64, a, b))
    })
}

/// m_P(2g − 2 + a, b) at the shifted arguments.
#[no_mangle]
pub unsafe extern "C" fn hc_multiplicity(
    curve: *const HcCurve,
    a: i64,
    b: i64,
    point: HcPoint,
    out: *mut i64,
) -> HcStatus {
    guard(|| {
        let c = &curve_ref(curve)?.curve;
        let point = match point {
            HcPoint::Pinf => BasePoint::Pinf,
            HcPoint::P0 => BasePoint::P0,
        };
        write(out, mult_closed(c.q() as i64, a, b, point))
    })
}

fn regime_code(tag: RegimeTag) -> HcRegime {
    match tag {
        RegimeTag::ParkHigh(case) => match case {
            HighCase::One => HcRegime::HighCase1,
            HighCase::Two => HcRegime::HighCase2,
            HighCase::TwoPrime => HcRegime::HighCase2Prime,
            HighCase::Three => HcRegime::HighCase3,
            HighCase::ThreePrime => HcRegime::HighCase3Prime,
            HighCase::Four => HcRegime::HighCase4,
            HighCase::MaxForm => HcRegime::HighMaxForm,
        },
        RegimeTag::ParkLow(case) => match case {
            LowCase::AxisPoints => HcRegime::LowAxisPoints,
            LowCase::LineThroughP0 => HcRegime::LowLineThroughP0,
            LowCase::VerticalLine => HcRegime::LowVerticalLine,
        },
        RegimeTag::OutOfScope(reason) => match reason {
            ScopeReason::ZeroCode => HcRegime::OutZeroCode,
            ScopeReason::TrivialDual => HcRegime::OutTrivialDual,
            ScopeReason::BeyondProofRange => HcRegime::OutBeyondProofRange,
        },
    }
}

/// Closed-form d(C(a, b)^⊥). The regime is always written when `regime` is
/// non-null; `HC_STATUS_OUT_OF_SCOPE` means no distance was written.
#[no_mangle]
pub unsafe extern "C" fn hc_park_distance(
    curve: *const HcCurve,
    a: i64,
    b: i64,
    out_d: *mut i64,
    regime: *mut HcRegime,
) -> HcStatus {
    guard(|| {
        let c = &curve_ref(curve)?.curve;
        let p = park_distance(c.q() as i64, a, b);
        if !regime.is_null() {
            regime.write(regime_code(p.tag));
        }
        let d = p.d.ok_or_else(|| (HcStatus::OutOfScope, format!("no closed form for ({a}, {b}): {:?}", p.tag)))?;
        write(out_d, d)
    })
}

/// Primal d(C(m, n)) for 0 ≤ n ≤ q.
#[no_mangle]
pub unsafe extern "C" fn hc_hk_distance(curve: *const HcCurve, m: i64, n: i64, out: *mut i64) -> HcStatus {
    guard(|| {
        let c = &curve_ref(curve)?.curve;
        let d = hk_distance(c.q() as i64, m, n)
            .map_err(lib)?
            .ok_or_else(|| (HcStatus::OutOfScope, format!("no primal formula covers ({m}, {n})")))?;
        write(out, d)
    })
}

/// Order bound for d(C(a, b)^⊥). Results are cached on the handle.
#[no_mangle]
pub unsafe extern "C" fn hc_order_bound(curve: *const HcCurve, a: i64, b: i64, out: *mut i64) -> HcStatus {
    guard(|| {
        let h = curve_ref(curve)?;
        if out.is_null() {
            return Err(null());
        }
        let cached = h.bounds.lock().unwrap_or_else(|p| p.into_inner()).get(&(a, b)).copied();
        let value = match cached {
            Some(v) => v,
            None => {
                let mut solver = OrderBoundSolver::new(&h.curve, BoundConfig::for_q(h.curve.q()));
                let v = solver.bound_value(a, b).map_err(lib)?;
                h.bounds.lock().unwrap_or_else(|p| p.into_inner()).insert((a, b), v);
                v
            }
        };
        write(out, value)
    })
}

/// Support of a certified minimum-weight dual word. Writes the support size
/// to `len`; the indices (into the D ordering) go to `support` when
/// `capacity` suffices, otherwise `HC_STATUS_BUFFER_TOO_SMALL` is returned.
#[no_mangle]
pub unsafe extern "C" fn hc_witness_support(
    curve: *const HcCurve,
    a: i64,
    b: i64,
    support: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> HcStatus {
    guard(|| {
        let c = &curve_ref(curve)?.curve;
        let w = build_witness_support(c, a, b).map_err(lib)?;
        write(len, w.support.len())?;
        if w.support.len() > capacity {
            return Err((HcStatus::BufferTooSmall, format!("need room for {} indices", w.support.len())));
        }
        if support.is_null() {
            return Err(null());
        }
        std::slice::from_raw_parts_mut(support, w.support.len()).copy_from_slice(&w.support);
        Ok(())
    })
}

/// Exact d(C(a, b)^⊥) by exhaustive search, refused beyond `budget`
/// elementary operations.
#[no_mangle]
pub unsafe extern "C" fn hc_dual_distance(
    curve: *const HcCurve,
    a: i64,
    b: i64,
    budget: f64,
    out: *mut i64,
) -> HcStatus {
    guard(|| {
        let c = &curve_ref(curve)?.curve;
        if out.is_null() {
            return Err(null());
        }
        let code = build_code(c, a, b);
        let r = exact_dual_distance(c.field(), &code.matrix, budget).map_err(lib)?;
        write(out, r.d as i64)
    })
}

/// Static description of a status; never null.
#[no_mangle]
pub extern "C" fn hc_status_message(status: HcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        HcStatus::Ok => b"ok\0",
        HcStatus::NullPointer => b"null pointer argument\0",
        HcStatus::InvalidArgument => b"invalid argument\0",
        HcStatus::OutOfScope => b"no closed form applies\0",
        HcStatus::FullSpace => b"the code is already the full space\0",
        HcStatus::Infeasible => b"exhaustive search over budget\0",
        HcStatus::WitnessFailed => b"no certified witness support found\0",
        HcStatus::BufferTooSmall => b"output buffer too small\0",
        HcStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Copies the calling thread's last error message, NUL-terminated and
/// truncated to `capacity`, into `buf`. Returns the full length including
/// the terminator, so a call with a null `buf` sizes the buffer.
#[no_mangle]
pub unsafe extern "C" fn hc_last_error(buf: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && capacity > 0 {
            let n = bytes.len().min(capacity - 1);
            std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), n);
            *buf.add(n) = 0;
        }
        bytes.len() + 1
    })
}
