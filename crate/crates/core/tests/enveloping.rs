mod common;

use common::{highest_weight_reps, mul, Rep};
use kmv_core::enveloping::{
    ad_act, generate_ad_submodule, hc_project, u_mul, word_weight, UAlgebra, UElement,
};
use kmv_core::lie::{GElem, Gen, SlN};
use kmv_core::scalar::int;
use kmv_core::zhu::parse_u_element;
use kmv_core::Poly;
use proptest::prelude::*;

fn sl4() -> SlN {
    SlN::new(4).unwrap()
}

fn word(sl: &SlN, idx: &[usize]) -> Vec<Gen> {
    let b = sl.basis();
    idx.iter().map(|&i| b[i % b.len()]).collect()
}

fn element(sl: &SlN, words: &[(Vec<usize>, i64)]) -> UElement {
    let alg = UAlgebra::new(sl);
    let mut u = UElement::zero();
    for (w, c) in words {
        u = u.add(&alg.product(&word(sl, w)).scale(&int(*c)));
    }
    u
}

fn words() -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0usize..24, 0..=3), -3i64..=3), 1..=2)
}

fn is_pbw_ordered(u: &UElement) -> bool {
    u.terms().all(|(w, _)| w.windows(2).all(|p| p[0].pbw_key() <= p[1].pbw_key()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_agrees_with_matrix_representations(a in words(), b in words()) {
        let sl = sl4();
        let (a, b) = (element(&sl, &a), element(&sl, &b));
        let p = u_mul(&sl, &a, &b);
        prop_assert!(is_pbw_ordered(&p));
        for rep in highest_weight_reps(4) {
            prop_assert_eq!(rep.element(&p), mul(&rep.element(&a), &rep.element(&b)), "{}", rep.name);
        }
    }

    #[test]
    fn product_is_associative(a in words(), b in words(), c in words()) {
        let sl = sl4();
        let (a, b, c) = (element(&sl, &a), element(&sl, &b), element(&sl, &c));
        prop_assert_eq!(u_mul(&sl, &u_mul(&sl, &a, &b), &c), u_mul(&sl, &a, &u_mul(&sl, &b, &c)));
    }

    #[test]
    fn adjoint_action_is_a_derivation(g in 0usize..15, a in words(), b in words()) {
        let sl = sl4();
        let x = GElem::gen(sl.basis()[g]);
        let (a, b) = (element(&sl, &a), element(&sl, &b));
        let lhs = ad_act(&sl, &x, &u_mul(&sl, &a, &b));
        let rhs = u_mul(&sl, &ad_act(&sl, &x, &a), &b).add(&u_mul(&sl, &a, &ad_act(&sl, &x, &b)));
        prop_assert_eq!(lhs, rhs);
    }
}

/// HC(u) evaluated at the highest weight equals the eigenvalue of u on the highest-weight vector.
fn projection_matches(sl: &SlN, reps: &[Rep], u: &UElement) {
    let p = hc_project(sl, u).unwrap();
    for rep in reps {
        let lambda = rep.top_weight(sl.rank());
        let m = rep.element(u);
        assert_eq!(p.eval_at(&lambda).unwrap(), m[0][0], "{u} on {}", rep.name);
    }
}

#[test]
fn projection_agrees_with_highest_weight_eigenvalues() {
    let sl = sl4();
    let alg = UAlgebra::new(&sl);
    let reps = highest_weight_reps(4);
    let basis = sl.basis();
    let mut count = 0;
    for len in 1..=3usize {
        let mut idx = vec![0usize; len];
        loop {
            let w: Vec<Gen> = idx.iter().map(|&i| basis[i]).collect();
            if word_weight(&w, 3) == vec![0; 3] {
                projection_matches(&sl, &reps, &alg.product(&w));
                count += 1;
            }
            let mut p = 0;
            while p < len {
                idx[p] += 1;
                if idx[p] < basis.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
            if p == len {
                break;
            }
        }
    }
    assert_eq!(count, 207);
}

#[test]
fn submodule_dimensions() {
    let sl = sl4();
    let data = common::data();
    let vp = parse_u_element(&sl, data.get("vprime_sl4.ug").unwrap()).unwrap();
    assert_eq!(generate_ad_submodule(&sl, &vp, 512).unwrap().len(), 20);
    assert_eq!(generate_ad_submodule(&sl, &UElement::one(), 512).unwrap().len(), 1);
    let theta = UElement::monomial(vec![sl.theta_e()], Poly::scalar(int(1)));
    assert_eq!(generate_ad_submodule(&sl, &theta, 512).unwrap().len(), 15);
}

#[test]
fn projection_rejects_nonzero_weight() {
    let sl = sl4();
    let e = UElement::monomial(vec![Gen::e(1, 3)], Poly::scalar(int(1)));
    assert!(hc_project(&sl, &e).is_err());
}
