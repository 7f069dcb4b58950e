mod common;

use common::props::{d2_after_everything, fingerprint, reductions_agree};
use common::random::{potential, rng};
use krh_core::algebra::{Poly, Potential};
use krh_core::mf::{CohomOptions, KoszulCohomology, KoszulMF, KoszulRow};
use krh_core::moy::arc_row;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn d_squared_is_w(seed in any::<u64>()) {
        prop_assert!(d2_after_everything(seed).is_ok(), "{:?}", d2_after_everything(seed));
    }

    #[test]
    fn reductions_keep_cohomology(seed in any::<u64>()) {
        prop_assert!(reductions_agree(seed).is_ok(), "{:?}", reductions_agree(seed));
    }
}

#[test]
fn exclusion_on_three_marking_circle() {
    let mut r = rng(7);
    for _ in 0..10 {
        let n = r.gen_range(2..=3);
        let p = potential(&mut r, n);
        let rows = vec![arc_row(&p, 0, 1), arc_row(&p, 1, 2), arc_row(&p, 2, 0)];
        let m = KoszulMF::new(n, rows).unwrap();
        let opts = CohomOptions::default();
        let want = fingerprint(&KoszulCohomology::compute(&m, &opts).unwrap());
        for row in 0..3 {
            let e = m.exclude_variable(row).unwrap();
            assert_eq!(fingerprint(&KoszulCohomology::compute(&e, &opts).unwrap()), want);
        }
    }
}

#[test]
fn twist_degree_bound_is_enforced() {
    let p = Potential::sl(2).unwrap();
    let m = KoszulMF::new(2, vec![arc_row(&p, 0, 1), arc_row(&p, 1, 0)]).unwrap();
    assert!(m.twist(&Poly::var(0).pow(2)).is_err());
    assert!(m.row_operation(&Poly::var(0)).is_err());
    let bad = KoszulMF::new(2, vec![KoszulRow::new(Poly::var(0), Poly::var(0).pow(2)).unwrap()]).unwrap();
    assert!(bad.exclude_variable(0).is_err());
}
