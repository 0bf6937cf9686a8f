use std::ffi::CStr;
use std::ptr;

use hermcode_ffi::*;

struct Curve(*mut HcCurve);

impl Curve {
    fn new(q: u32) -> Curve {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { hc_curve_new(q, &mut h) }, HcStatus::Ok);
        assert!(!h.is_null());
        Curve(h)
    }
}

impl Drop for Curve {
    fn drop(&mut self) {
        unsafe { hc_curve_free(self.0) }
    }
}

fn last_error() -> String {
    let len = unsafe { hc_last_error(ptr::null_mut(), 0) };
    let mut buf = vec![0 as std::ffi::c_char; len];
    unsafe { hc_last_error(buf.as_mut_ptr(), len) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn bad_q_is_rejected_with_a_message() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { hc_curve_new(6, &mut h) }, HcStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(last_error().contains('6'));
    assert_eq!(unsafe { hc_curve_new(3, ptr::null_mut()) }, HcStatus::NullPointer);
    unsafe { hc_curve_free(ptr::null_mut()) };
}

#[test]
fn curve_info() {
    let c = Curve::new(3);
    let mut info = HcCurveInfo::default();
    assert_eq!(unsafe { hc_curve_info(c.0, &mut info) }, HcStatus::Ok);
    assert_eq!(info, HcCurveInfo { q: 3, genus: 3, n: 26, points: 28 });
    assert_eq!(unsafe { hc_curve_info(ptr::null(), &mut info) }, HcStatus::NullPointer);
}

#[test]
fn scalar_queries_match_the_library() {
    let c = Curve::new(3);
    let q = 3i64;
    for a in -2..20 {
        for b in -2..8 {
            let mut dim = 0usize;
            assert_eq!(unsafe { hc_rr_dim(c.0, a, b, &mut dim) }, HcStatus::Ok);
            assert_eq!(dim, hermcode::rrspace::rr_dim(q, a, b));
            let mut m = 0i64;
            assert_eq!(unsafe { hc_multiplicity(c.0, a, b, HcPoint::P0, &mut m) }, HcStatus::Ok);
            assert_eq!(m, hermcode::multiplicity::mult_closed(q, a, b, hermcode::multiplicity::BasePoint::P0));
        }
    }
}

#[test]
fn park_and_primal_distances() {
    let c = Curve::new(8);
    let (mut d, mut regime) = (0i64, HcRegime::OutZeroCode);
    assert_eq!(unsafe { hc_park_distance(c.0, 82, 3, &mut d, &mut regime) }, HcStatus::Ok);
    assert_eq!((d, regime), (35, HcRegime::HighMaxForm));

    d = -1;
    assert_eq!(unsafe { hc_park_distance(c.0, -5, 0, &mut d, &mut regime) }, HcStatus::OutOfScope);
    assert_eq!((d, regime), (-1, HcRegime::OutZeroCode));
    assert_eq!(unsafe { hc_park_distance(c.0, 5000, 0, &mut d, &mut regime) }, HcStatus::OutOfScope);
    assert_eq!(regime, HcRegime::OutTrivialDual);

    let c3 = Curve::new(3);
    assert_eq!(unsafe { hc_hk_distance(c3.0, 10, 0, &mut d) }, HcStatus::Ok);
    assert_eq!(d, 16);
    assert_eq!(unsafe { hc_hk_distance(c3.0, 10, 4, &mut d) }, HcStatus::OutOfScope);
}

#[test]
fn order_bound_agrees_with_exhaustive_search() {
    let c = Curve::new(2);
    for (a, b) in [(1, 1), (2, 0), (3, 1), (5, 0)] {
        let (mut bound, mut exact) = (0i64, 0i64);
        assert_eq!(unsafe { hc_order_bound(c.0, a, b, &mut bound) }, HcStatus::Ok);
        assert_eq!(unsafe { hc_dual_distance(c.0, a, b, 1e9, &mut exact) }, HcStatus::Ok);
        assert!(bound <= exact, "({a},{b}): {bound} > {exact}");
        let mut again = 0i64;
        assert_eq!(unsafe { hc_order_bound(c.0, a, b, &mut again) }, HcStatus::Ok);
        assert_eq!(again, bound);
    }
    let mut d = 0i64;
    assert_eq!(unsafe { hc_dual_distance(c.0, 3, 1, 1.0, &mut d) }, HcStatus::Infeasible);
    assert_eq!(unsafe { hc_order_bound(c.0, 6, 2, &mut d) }, HcStatus::FullSpace);
}

#[test]
fn witness_buffer_protocol() {
    let c = Curve::new(3);
    let mut len = 0usize;
    let status = unsafe { hc_witness_support(c.0, 0, 0, ptr::null_mut(), 0, &mut len) };
    assert_eq!(status, HcStatus::BufferTooSmall);
    assert_eq!(len, 2);
    let mut buf = vec![usize::MAX; len];
    assert_eq!(unsafe { hc_witness_support(c.0, 0, 0, buf.as_mut_ptr(), buf.len(), &mut len) }, HcStatus::Ok);
    assert!(buf.iter().all(|&i| i < 26));
    assert_ne!(buf[0], buf[1]);
}

#[test]
fn status_messages_are_static_strings() {
    for s in [HcStatus::Ok, HcStatus::OutOfScope, HcStatus::Panic] {
        let msg = unsafe { CStr::from_ptr(hc_status_message(s)) };
        assert!(!msg.to_bytes().is_empty());
    }
}
