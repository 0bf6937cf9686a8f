use hermcode::agcode::{build_code, code_dimension, code_rank, scaling_class};
use hermcode::curve::CurveContext;
use hermcode::multiplicity::{
    decompose_minus, decompose_plus, mult_closed, mult_excess_form, mult_lattice_count, BasePoint,
};
use hermcode::rrspace::rr_dim;
use proptest::prelude::*;

proptest! {
    #[test]
    fn decompositions_reassemble(q in 2i64..=9, v in -200i64..400) {
        let (v0, v1) = decompose_minus(q, v);
        prop_assert_eq!(v0 * (q + 1) - v1, v);
        prop_assert!((0..=q).contains(&v1));
        let (w0, w1) = decompose_plus(q, v);
        prop_assert_eq!(w0 * (q + 1) + w1, v);
        prop_assert!((0..=q).contains(&w1));
    }

    #[test]
    fn closed_forms_agree(q in prop::sample::select(vec![2i64, 3, 4, 5, 7, 8]), a in -20i64..60, b in -20i64..60) {
        for point in [BasePoint::Pinf, BasePoint::P0] {
            let c = mult_closed(q, a, b, point);
            prop_assert_eq!(mult_lattice_count(q, a, b, point), c);
            prop_assert_eq!(mult_excess_form(q, a, b, point), c);
            prop_assert!(c >= 0);
        }
    }

    #[test]
    fn multiplicities_swap_under_the_point_exchange(q in 2i64..=8, a in -20i64..60, b in -20i64..60) {
        prop_assert_eq!(mult_closed(q, a, b, BasePoint::Pinf), mult_closed(q, b, a, BasePoint::P0));
    }

    #[test]
    fn dimension_is_symmetric_and_monotone(q in 2i64..=8, a in -30i64..90, b in -30i64..90) {
        prop_assert_eq!(rr_dim(q, a, b), rr_dim(q, b, a));
        prop_assert!(rr_dim(q, a + 1, b) >= rr_dim(q, a, b));
        prop_assert!(rr_dim(q, a + 1, b) <= rr_dim(q, a, b) + 1);
    }

    #[test]
    fn dimension_depends_only_on_the_class(q in 2i64..=8, a in -30i64..90, b in -30i64..90) {
        prop_assert_eq!(rr_dim(q, a + q + 1, b - q - 1), rr_dim(q, a, b));
        prop_assert_eq!(scaling_class(q, a + q + 1, b - q - 1), scaling_class(q, a, b));
    }
}

#[test]
fn evaluation_rank_matches_the_dimension_below_the_length() {
    for q in [2u32, 3] {
        let curve = CurveContext::new(q).unwrap();
        let qi = q as i64;
        let n = curve.n() as i64;
        for a in -2..n {
            for b in -2..=qi + 1 {
                if a + b >= n {
                    continue;
                }
                let code = build_code(&curve, a, b);
                assert_eq!(code_rank(&curve, &code), rr_dim(qi, a, b), "q={q} ({a},{b})");
                assert_eq!(code_dimension(qi, a, b), rr_dim(qi, a, b), "q={q} ({a},{b})");
            }
        }
    }
}
