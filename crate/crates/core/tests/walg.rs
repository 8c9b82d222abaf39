mod common;

use kmv_core::lie::{symbolic_multiple, SlN};
use kmv_core::scalar::{int, rat, var_set};
use kmv_core::text::{parse_poly, parse_ratfunc};
use kmv_core::walg::{collapse_check, hf_top_data, integrality_scan, load_table, OpeTable};
use kmv_core::{Error, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn table() -> OpeTable {
    load_table(common::data().get("ope_subreg_sl4.toml").unwrap()).unwrap()
}

#[test]
fn stored_entries() {
    let t = table();
    let rf = |s: &str| parse_ratfunc(s).unwrap();
    assert_eq!(t.coefficient("G+", "G-", 4, "1"), rf("(2+k)*(5+2*k)*(8+3*k)"));
    assert_eq!(t.coefficient("J", "J", 2, "1"), rf("2+3*k/4"));
    assert_eq!(t.get("L", "J", 1).unwrap().len(), 1);
    assert_eq!(t.coefficient("L", "J", 1, "dJ"), rf("1"));
    assert!(t.weight_violations().unwrap().is_empty());
}

#[test]
fn self_products_have_even_scalar_top_poles() {
    let t = table();
    for (a, top) in [("J", 2), ("L", 4), ("W", 6)] {
        assert_eq!(t.top_pole(a, a), Some(top), "{a}");
        let entry = t.get(a, a, top).unwrap();
        assert_eq!(entry.len(), 1);
        assert_eq!(entry[0].0 .0, "1");
    }
}

#[test]
fn coefficients_are_finite_at_the_level() {
    let k = rat(-5, 2);
    for (_, terms) in table().entries() {
        for (w, c) in terms {
            assert!(c.eval(&k).is_ok(), "{w:?}");
        }
    }
}

#[test]
fn collapse_at_minus_five_halves() {
    let c = collapse_check(&table(), &rat(-5, 2)).unwrap();
    assert!(c.collapses());
    assert!(c.pole4.is_zero() && c.pole3.is_zero() && c.ww_leading.is_zero());
    assert_eq!(c.pole2_scalar, Some(rat(3, 4)));
    assert_eq!(c.central, rat(1, 2));
    assert_eq!(c.central_charge, int(1));
}

#[test]
fn no_collapse_at_zero() {
    let c = collapse_check(&table(), &int(0)).unwrap();
    assert!(!c.collapses());
    assert!(c.none_vanish());
    assert!(!c.pole4.is_zero());
}

#[test]
fn poles_are_reported() {
    assert!(matches!(collapse_check(&table(), &int(-4)), Err(Error::Pole(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pole_four_matches_its_factorization(n in -40i64..40, d in 1i64..7) {
        let k = rat(n, d);
        prop_assume!(k != int(-4) && k != int(-2) && k != rat(-8, 3));
        let c = collapse_check(&table(), &k).unwrap();
        let want = (&k + int(2)) * (int(5) + int(2) * &k) * (int(8) + int(3) * &k);
        prop_assert_eq!(c.pole4, want);
    }
}

#[test]
fn reduced_top_weights() {
    let sl = SlN::new(4).unwrap();
    let k = rat(-5, 2);
    let nv = var_set(&["n"]);
    let p = |s: &str| parse_poly(s, &nv).unwrap();
    let (dw, j0) = hf_top_data(&sl, &symbolic_multiple(&sl, 1, "n"), &k).unwrap();
    assert_eq!((dw, j0), (p("n*(n+1)/4"), p("3*n/4")));
    let (dw, j0) = hf_top_data(&sl, &symbolic_multiple(&sl, 3, "n"), &k).unwrap();
    assert_eq!((dw, j0), (p("n*(n-1)/4"), p("n/4")));
    let (dw, j0) = hf_top_data(&sl, &sl.zero_weight(), &k).unwrap();
    assert!(dw.is_zero() && j0.is_zero());
    assert!(matches!(hf_top_data(&sl, &sl.zero_weight(), &int(-4)), Err(Error::CriticalLevel(4))));
}

#[test]
fn integrality_of_reduced_weights() {
    let sl = SlN::new(4).unwrap();
    let k = rat(-5, 2);
    let w1 = integrality_scan(&sl, 1, 6, &k).unwrap();
    for r in &w1.rows {
        assert_eq!(r.delta_w, rat(i64::from(r.n * (r.n + 1)), 4));
    }
    assert_eq!(w1.vacuum_weight, vec![0]);
    assert_eq!(w1.integral, vec![0, 3, 4]);
    let w3 = integrality_scan(&sl, 3, 6, &k).unwrap();
    assert_eq!(w3.vacuum_weight, vec![0, 1]);
    assert_eq!(w3.integral, vec![0, 1, 4, 5]);
    assert_eq!(w3.excluded, vec![(1, rat(5, 4))]);
    assert_eq!(w3.rows[0].delta_w, Rational::zero());
}
