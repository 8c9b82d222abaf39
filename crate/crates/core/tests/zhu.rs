mod common;

use common::{commutator, highest_weight_reps, Mat};
use kmv_core::affine::{AffineModule, Direction, Letter, SymN, TopSpaceModel};
use kmv_core::enveloping::{cartan_vars, UAlgebra, UElement};
use kmv_core::lie::{Gen, SlN};
use kmv_core::scalar::{int, rat};
use kmv_core::singular::{level, load_vector};
use kmv_core::text::parse_poly;
use kmv_core::zhu::{
    box_scan, dominant_integral, extract_p0, family_membership, independent, parse_families,
    parse_named_polys, parse_u_element, restrict, t_vars, verify_factorizations, verify_families,
    zhu_project, Dominance, WeightFamily, P0,
};
use kmv_core::{Poly, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn sl4() -> SlN {
    SlN::new(4).unwrap()
}

fn p0() -> (P0, std::collections::BTreeMap<String, Poly>) {
    let data = common::data();
    let sl = sl4();
    let vp = parse_u_element(&sl, data.get("vprime_sl4.ug").unwrap()).unwrap();
    let named = parse_named_polys(data.get("p0_sl4.poly").unwrap(), &cartan_vars(&sl)).unwrap();
    (extract_p0(&sl, &vp).unwrap(), named)
}

fn families() -> Vec<WeightFamily> {
    parse_families(common::data().get("families_sl4.txt").unwrap()).unwrap()
}

fn one() -> Poly {
    Poly::scalar(int(1))
}

#[test]
fn zhu_map_on_short_words() {
    let sl = sl4();
    let m = AffineModule::vacuum(sl.clone(), level());
    let v = m.apply_word(&[Letter::new(Gen::e(1, 3), -1)], &m.highest()).unwrap();
    assert_eq!(zhu_project(&m, &v).unwrap(), UElement::monomial(vec![Gen::e(1, 3)], one()));

    let w = m
        .apply_word(&[Letter::new(Gen::e(1, 3), -1), Letter::new(Gen::e(2, 4), -3)], &m.highest())
        .unwrap();
    let want = UAlgebra::new(&sl).product(&[Gen::e(2, 4), Gen::e(1, 3)]);
    assert_eq!(zhu_project(&m, &w).unwrap(), want);

    let odd = m.apply_word(&[Letter::new(Gen::h(2), -2)], &m.highest()).unwrap();
    assert_eq!(zhu_project(&m, &odd).unwrap(), UElement::monomial(vec![Gen::h(2)], Poly::scalar(int(-1))));
}

#[test]
fn zhu_image_of_the_vacuum_vector_is_the_stored_element() {
    let data = common::data();
    let sl = sl4();
    let lv = load_vector(&sl, &level(), data.get("singv_vacuum_sl4.vec").unwrap(), None).unwrap();
    let stored = parse_u_element(&sl, data.get("vprime_sl4.ug").unwrap()).unwrap();
    assert_eq!(zhu_project(&lv.module, &lv.vector).unwrap(), stored);
    let sym = AffineModule::new(
        sl.clone(),
        level(),
        TopSpaceModel::SymPower { n: SymN::Concrete(1), direction: Direction::First },
    )
    .unwrap();
    assert!(zhu_project(&sym, &sym.highest()).is_err());
}

/// Value of (f_{e2-e4} f_{e1-e3})_L v' or (f_{e2-e3} f_{e1-e4})_L v' on a highest-weight vector,
/// computed with matrix commutators only.
fn lowered_eigenvalue(rep: &common::Rep, vp: &Mat, a: Gen, b: Gen) -> Rational {
    let inner = commutator(&rep.of(b), vp);
    commutator(&rep.of(a), &inner)[0][0].clone()
}

#[test]
fn p0_against_matrix_representations() {
    let data = common::data();
    let sl = sl4();
    let vp = parse_u_element(&sl, data.get("vprime_sl4.ug").unwrap()).unwrap();
    let (p0, named) = p0();
    let mut nonzero = 0;
    for rep in highest_weight_reps(4) {
        let m = rep.element(&vp);
        let lambda = rep.top_weight(3);
        let o1 = lowered_eigenvalue(&rep, &m, Gen::f(2, 4), Gen::f(1, 3));
        let o2 = lowered_eigenvalue(&rep, &m, Gen::f(2, 3), Gen::f(1, 4));
        assert_eq!(p0.p1.eval_at(&lambda).unwrap(), o1, "p1 on {}", rep.name);
        assert_eq!(p0.p2.eval_at(&lambda).unwrap(), o2, "p2 on {}", rep.name);
        // The stored polynomials carry the opposite overall sign.
        assert_eq!(named["p1"].eval_at(&lambda).unwrap(), -o1.clone());
        assert_eq!(named["p2"].eval_at(&lambda).unwrap(), -o2.clone());
        nonzero += usize::from(o1 != int(0)) + usize::from(o2 != int(0));
    }
    assert!(nonzero > 0);
}

#[test]
fn p0_shape() {
    let (p0, named) = p0();
    assert_eq!((p0.submodule_dim, p0.zero_weight_dim), (20, 2));
    assert!(independent(&p0.p1, &p0.p2));
    assert_eq!(p0.p1, named["p1"].scale(&int(-1)));
    assert_eq!(p0.p2, named["p2"].scale(&int(-1)));
    assert_eq!(named["p1"].coeff_of(&[("H2", 4)]).unwrap(), rat(-2, 3));
    assert_eq!(named["p1"].coeff_of(&[("H2", 2)]).unwrap(), rat(-31, 6));
    assert_eq!(named["p2"].coeff_of(&[("H1", 1), ("H2", 1), ("H3", 1)]).unwrap(), rat(16, 3));
    assert_eq!(p0.p1.coeff_of(&[("H2", 4)]).unwrap(), rat(2, 3));
}

#[test]
fn families_are_common_zeros() {
    let (p0, _) = p0();
    let fams = families();
    assert_eq!(fams.len(), 16);
    assert!(verify_families(&p0, &fams).unwrap().iter().all(|v| v.pass()));
    let tv = t_vars();
    let perturbed = WeightFamily {
        id: 0,
        coords: vec![parse_poly("t", &tv).unwrap(), Poly::constant(&tv, int(1)), Poly::zero(&tv)],
    };
    let r = restrict(&p0.p1, &perturbed).unwrap();
    let s = restrict(&p0.p2, &perturbed).unwrap();
    assert!(!(r.is_zero() && s.is_zero()));
    assert!(!r.eval_at(&[int(1)]).unwrap().is_zero() || !s.eval_at(&[int(1)]).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_points_are_zeros(i in 0usize..16, n in -20i64..20, d in 1i64..5) {
        let (p0, _) = p0();
        let fams = families();
        let t = rat(n, d);
        let mu: Vec<Rational> = fams[i].coords.iter().map(|c| c.eval_at(&[t.clone()]).unwrap()).collect();
        prop_assert!(p0.p1.eval_at(&mu).unwrap().is_zero());
        prop_assert!(p0.p2.eval_at(&mu).unwrap().is_zero());
        prop_assert!(family_membership(&fams, &mu).unwrap().iter().any(|&(id, ref s)| id == fams[i].id && *s == t));
    }
}

#[test]
fn scan_finds_only_family_points() {
    let (p0, _) = p0();
    let scan = box_scan(&p0, &families(), 4).unwrap();
    assert!(scan.pass());
    assert_eq!(scan.points, 17 * 17 * 17);
    assert_eq!(scan.zeros, 216);
}

#[test]
fn factorization_constants() {
    let (p0, named) = p0();
    let f = verify_factorizations(&p0, &named).unwrap();
    assert!(f.pass());
    assert_eq!((f.c, f.c_prime), (Some(int(-3)), Some(int(-6))));
    let printed = P0 { p1: named["p1"].clone(), p2: named["p2"].clone(), ..p0 };
    let g = verify_factorizations(&printed, &named).unwrap();
    assert_eq!((g.c, g.c_prime), (Some(int(3)), Some(int(6))));
    let vars = cartan_vars(&sl4());
    assert_eq!(named["Q1 - 4*Q2"], parse_poly("-12*H1*H3 - 6*H1 - 6*H3 - 3", &vars).unwrap());
}

#[test]
fn membership_examples() {
    let fams = families();
    assert_eq!(family_membership(&fams, &[rat(-3, 2), int(0), int(5)]).unwrap(), vec![(9, int(5))]);
    assert_eq!(family_membership(&fams, &[int(0), int(0), int(0)]).unwrap(), vec![(1, int(0)), (2, int(0))]);
    assert!(family_membership(&fams, &[int(0), int(1), int(0)]).unwrap().is_empty());
}

#[test]
fn dominant_members() {
    let fams = families();
    let by_id = |i: usize| fams.iter().find(|f| f.id == i).unwrap();
    assert_eq!(dominant_integral(by_id(1)).unwrap(), Dominance::FromOnward(int(0)));
    assert_eq!(dominant_integral(by_id(2)).unwrap(), Dominance::FromOnward(int(0)));
    for i in 3..=16 {
        match dominant_integral(by_id(i)).unwrap() {
            Dominance::Finite { values, .. } => assert!(values.is_empty(), "family {i}"),
            d => panic!("family {i}: {d:?}"),
        }
    }
}
