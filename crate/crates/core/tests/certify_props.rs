mod common;

use common::*;
use proptest::prelude::*;
use tfcert::certify::{check_theorem1, CertifyOptions};
use tfcert::funcs::{make_bump, make_example1, make_example2, make_gaussian};
use tfcert::tfops::{GridSpec, PointSet};

/// Dyadic time gaps and frequencies, so shifted coordinates stay exact.
fn lambda(min_gap: f64) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((0u32..32, -16i32..16), 1..6).prop_map(move |v| {
        let mut t = 0.0;
        let pairs: Vec<(f64, f64)> = v
            .iter()
            .map(|(g, w)| {
                t += min_gap + *g as f64 / 16.0;
                (t, *w as f64 / 8.0)
            })
            .collect();
        PointSet::from_pairs(&pairs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theorem1_translation_invariant(lam in lambda(0.25), a in -64i32..64, c in 1u32..40, w in -8i32..8) {
        let a = [a as f64 / 8.0];
        for f in [make_example1(c as f64 / 4.0, w as f64 / 4.0).unwrap(), make_gaussian(1).unwrap(), make_bump(1, 0.5).unwrap()] {
            let r = translation_invariance(&f, &lam, &a);
            prop_assert!(r.is_ok(), "{:?}", r);
        }
    }

    #[test]
    fn radius_monotone_in_n(c in 0.5..20.0f64, w in -5.0..5.0f64, s in 0.3..3.0f64) {
        prop_assert!(monotone_in_n(&make_example1(c, w).unwrap(), &[0.0]).is_ok());
        prop_assert!(monotone_in_n(&gaussian_like(1, s, &[0.0]), &[0.0]).is_ok());
        prop_assert!(monotone_in_n(&make_bump(2, s).unwrap(), &[0.0, 0.0]).is_ok());
    }

    #[test]
    fn theorem2_translate_reanchors(lam in lambda(0.5), w in -4.0..4.0f64) {
        prop_assume!(lam.len() >= 2);
        let r = thm2_consistency(&make_example2(w).unwrap(), &lam);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn m_greater_than_r_iff_certified(lam in lambda(0.05), c in 1u32..40) {
        let cert = check_theorem1(&make_example1(c as f64 / 4.0, 1.0).unwrap(), &lam, &CertifyOptions::default()).unwrap();
        if lam.len() >= 2 {
            prop_assert_eq!(cert.is_certified(), cert.separation > cert.radius);
        } else {
            prop_assert!(cert.is_certified());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn corollary1_contract(lam in lambda(0.25), c in 0.5..10.0f64, w in -3.0..3.0f64) {
        prop_assume!(lam.len() >= 2);
        for f in [make_example1(c, w).unwrap(), make_gaussian(1).unwrap(), make_bump(1, 0.7).unwrap()] {
            let r = cor1_contract(&f, &lam);
            prop_assert!(r.is_ok(), "{:?}", r);
        }
    }

    #[test]
    fn certified_is_gram_independent(lam in lambda(0.9), w in -3.0..3.0f64) {
        prop_assume!(lam.len() >= 2);
        let f = make_example1(4.0, w).unwrap();
        let cert = check_theorem1(&f, &lam, &CertifyOptions::default()).unwrap();
        let r = soundness(&cert, &f, &lam, &GridSpec::default_for(1));
        prop_assert!(r.is_ok(), "{:?}", r);
    }
}
