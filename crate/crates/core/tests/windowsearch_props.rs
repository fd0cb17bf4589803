mod common;

use common::*;
use proptest::prelude::*;
use tfcert::funcs::{make_example1, make_gaussian};
use tfcert::windowsearch::{search, WindowParams};

#[test]
fn example1_trace_monotone() {
    let f = make_example1(4.0, 2.0).unwrap();
    let r = search(&f, 1.0, 4, 4, 30, 3).unwrap();
    trace_monotone(&r).unwrap();
}

#[test]
fn achieved_search_certifies_theorem3() {
    achieved_implies_thm3(&make_gaussian(1).unwrap(), 2.0, 2).unwrap();
    achieved_implies_thm3(&make_gaussian(1).unwrap(), 2.5, 3).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn search_deterministic_and_monotone(seed in any::<u64>(), d in 0usize..4, budget in 10usize..24) {
        let f = make_example1(3.0, 1.0).unwrap();
        let r = search_deterministic(&f, 1.5, 3, d, budget, seed);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn tail_ratio_scale_invariant(
        width in 0.25..4.0f64,
        coeffs in prop::collection::vec(-1.0..1.0f64, 1..5),
        scale in 0.01..100.0f64,
    ) {
        prop_assume!(coeffs.iter().any(|c| c.abs() > 0.05));
        let p = WindowParams { width, hermite_coeffs: coeffs };
        let r = tail_scaling(&make_example1(4.0, 2.0).unwrap(), &p, scale, 1.0);
        prop_assert!(r.is_ok(), "{:?}", r);
    }
}
