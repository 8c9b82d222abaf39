use std::collections::HashMap;

use kmv_core::enveloping::{u_mul, UAlgebra, UElement};
use kmv_core::lie::{GElem, Gen, SlN};
use kmv_core::scalar::{int, rat, var_set, VarSet};
use kmv_core::weyl::{act_symbolic, b_vars, ma_criterion, parse_weyl, phi, SymbolicMonomial, Weyl};
use kmv_core::{Poly, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn xvars(n: usize) -> VarSet {
    var_set(&(1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>())
}

fn derivative(p: &Poly, i: usize) -> Poly {
    Poly::from_terms(
        p.vars(),
        p.terms().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e = e.clone();
            let k = e[i];
            e[i] -= 1;
            (e, c * int(i64::from(k)))
        }),
    )
}

/// Applies a normally ordered operator to a polynomial in x_1..x_n by differentiation.
fn apply(w: &Weyl, f: &Poly) -> Poly {
    let vars = f.vars().clone();
    let mut out = Poly::zero(&vars);
    for ((xs, ds), c) in w.terms() {
        let mut g = f.clone();
        for (i, &k) in ds.iter().enumerate() {
            for _ in 0..k {
                g = derivative(&g, i);
            }
        }
        let m = Poly::monomial(&vars, xs.clone(), c.clone());
        out = &out + &(&m * &g);
    }
    out
}

fn weyl(rank: usize) -> impl Strategy<Value = Weyl> {
    let term = (prop::collection::vec(0u32..=2, rank), prop::collection::vec(0u32..=2, rank), -3i64..=3);
    prop::collection::vec(term, 1..=3).prop_map(move |ts| {
        let mut w = Weyl::zero(rank);
        for (xs, ds, c) in ts {
            w.add_term((xs, ds), int(c));
        }
        w
    })
}

fn poly(rank: usize) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0u32..=3, rank), -4i64..=4);
    prop::collection::vec(term, 1..=4)
        .prop_map(move |ts| Poly::from_terms(&xvars(rank), ts.into_iter().map(|(e, c)| (e, int(c)))))
}

fn gelem(sl: &SlN, coeffs: &[i64]) -> GElem {
    let mut x = GElem::zero();
    for (g, &c) in sl.basis().into_iter().zip(coeffs) {
        x.add(g, &Poly::scalar(int(c)));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_agrees_with_operator_composition(p in weyl(3), q in weyl(3), f in poly(3)) {
        let pq = p.mul(&q).unwrap();
        prop_assert_eq!(apply(&pq, &f), apply(&p, &apply(&q, &f)));
    }

    #[test]
    fn product_is_associative(p in weyl(2), q in weyl(2), r in weyl(2)) {
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
    }

    #[test]
    fn phi_preserves_brackets(a in prop::collection::vec(-2i64..=2, 24), b in prop::collection::vec(-2i64..=2, 24)) {
        let sl = SlN::new(5).unwrap();
        let (a, b) = (gelem(&sl, &a), gelem(&sl, &b));
        let lhs = phi(&sl, &UElement::from_gelem(&sl.bracket(&a, &b))).unwrap();
        let pa = phi(&sl, &UElement::from_gelem(&a)).unwrap();
        let pb = phi(&sl, &UElement::from_gelem(&b)).unwrap();
        prop_assert_eq!(lhs, pa.commutator(&pb).unwrap());
    }

    #[test]
    fn phi_is_multiplicative(a in prop::collection::vec(0usize..15, 1..=3), b in prop::collection::vec(0usize..15, 1..=3)) {
        let sl = SlN::new(4).unwrap();
        let alg = UAlgebra::new(&sl);
        let basis = sl.basis();
        let word = |w: &[usize]| alg.product(&w.iter().map(|&i| basis[i]).collect::<Vec<_>>());
        let (ua, ub) = (word(&a), word(&b));
        let lhs = phi(&sl, &u_mul(&sl, &ua, &ub)).unwrap();
        prop_assert_eq!(lhs, phi(&sl, &ua).unwrap().mul(&phi(&sl, &ub).unwrap()).unwrap());
    }

    #[test]
    fn symbolic_action_matches_concrete_monomials(w in weyl(3), b in prop::collection::vec(0u32..=4, 3)) {
        let act = act_symbolic(&w, &SymbolicMonomial { offset: vec![0; 3] }).unwrap();
        let vals: Vec<Rational> = b.iter().map(|&e| int(i64::from(e))).collect();
        let mut got = Poly::zero(&xvars(3));
        for (m, c) in &act {
            let e: Vec<i64> = b.iter().zip(&m.offset).map(|(&x, &o)| i64::from(x) + o).collect();
            let c = c.eval_at(&vals).unwrap();
            if c.is_zero() {
                continue;
            }
            prop_assert!(e.iter().all(|&x| x >= 0));
            got = &got + &Poly::monomial(&xvars(3), e.iter().map(|&x| x as u32).collect(), c);
        }
        let f = Poly::monomial(&xvars(3), b.clone(), int(1));
        prop_assert_eq!(got, apply(&w, &f));
    }
}

#[test]
fn products_of_generators() {
    let p = parse_weyl(4, "x[1] d[2]").unwrap().mul(&parse_weyl(4, "x[2] d[1]").unwrap()).unwrap();
    assert_eq!(p, parse_weyl(4, "x[1] x[2] d[1] d[2] + x[1] d[1]").unwrap());
    assert_eq!(Weyl::d(4, 1).mul(&Weyl::x(4, 2)).unwrap(), Weyl::x(4, 2).mul(&Weyl::d(4, 1)).unwrap());
}

#[test]
fn phi_examples() {
    let sl = SlN::new(4).unwrap();
    let alg = UAlgebra::new(&sl);
    let ef = alg.product(&[Gen::e(1, 2), Gen::f(1, 2)]);
    assert_eq!(phi(&sl, &ef).unwrap(), parse_weyl(4, "x[1] x[2] d[1] d[2] + x[1] d[1]").unwrap());
    let h = UElement::monomial(vec![Gen::h(1)], Poly::scalar(int(1)));
    assert_eq!(phi(&sl, &h).unwrap(), parse_weyl(4, "x[1] d[1] - x[2] d[2]").unwrap());
}

#[test]
fn symbolic_action_examples() {
    let euler = parse_weyl(5, "x[1] d[1]").unwrap();
    let act = act_symbolic(&euler, &SymbolicMonomial { offset: vec![0; 5] }).unwrap();
    let b1 = Poly::var(&b_vars(5), "b1").unwrap();
    assert_eq!(act.into_iter().collect::<Vec<_>>(), vec![(SymbolicMonomial { offset: vec![0; 5] }, b1)]);
    let d5 = act_symbolic(&Weyl::d(5, 5), &SymbolicMonomial { offset: vec![0; 5] }).unwrap();
    let (_, c) = d5.iter().next().unwrap();
    let mut at = HashMap::new();
    for i in 1..=5 {
        let v = if i == 5 { Poly::scalar(int(0)) } else { Poly::var(&b_vars(5), &format!("b{i}")).unwrap() };
        at.insert(format!("b{i}"), v);
    }
    assert!(c.eval(&at).unwrap().is_zero());
}

#[test]
fn module_criterion_examples() {
    for t in [int(0), int(3), rat(-7, 2), rat(1, 3)] {
        let a = vec![t.clone(), int(0), int(0), int(0), -t - rat(5, 2)];
        assert!(ma_criterion(&a).unwrap().holds);
    }
    let zero = ma_criterion(&[int(0), int(0), int(0), int(0), int(0)]).unwrap();
    assert!(!zero.holds);
    let (b, c) = zero.witness.unwrap();
    assert!(!c.is_zero());
    assert_eq!(b.iter().cloned().sum::<Rational>(), int(0));
    assert!(ma_criterion(&vec![rat(-1, 2); 5]).unwrap().holds);
    assert!(ma_criterion(&[int(0)]).is_err());
}
