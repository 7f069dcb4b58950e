mod common;

use common::random::{rng, split_complex};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Homology and pages of a conjugated split complex against its known
    /// split form, before and after elimination.
    #[test]
    fn elimination_matches_split_form(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = split_complex(&mut r);
        let c = &s.complex;
        prop_assert!(c.d_squared_zero());
        prop_assert!(c.is_filtered());
        prop_assert_eq!(c.homology(), s.infinity.clone());
        let reduced = c.reduce();
        prop_assert!(reduced.d_squared_zero());
        prop_assert!(reduced.is_filtered());
        prop_assert_eq!(reduced.homology(), s.infinity.clone());
        for (r, page) in c.pages(Some(5)).iter().enumerate() {
            prop_assert_eq!(page.total(), s.page_total(r), "page {}", r);
        }
        for (r, page) in reduced.pages(Some(5)).iter().enumerate() {
            if r >= 1 {
                prop_assert_eq!(page.table(), c.page_at(r).table(), "page {}", r);
            }
        }
    }
}
