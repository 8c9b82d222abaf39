use std::collections::BTreeSet;

mod common;

use kmv_core::affine::{AffineModule, Letter, SymN};
use kmv_core::c2::{c2_project, compute_grading, jchi_reduce, parse_sg_file, single_term, wnu_reduction_coefficient};
use kmv_core::lie::{Gen, SlN};
use kmv_core::scalar::{int, is_integer};
use kmv_core::singular::{level, load_vector};
use kmv_core::Poly;
use proptest::prelude::*;

fn sl4() -> SlN {
    SlN::new(4).unwrap()
}

fn vacuum_vector(word: &[(usize, i32)]) -> (AffineModule, kmv_core::affine::ModuleVector) {
    let m = AffineModule::vacuum(sl4(), level());
    let b = sl4().basis();
    let letters: Vec<Letter> = word.iter().map(|&(g, d)| Letter::new(b[g], d)).collect();
    let v = m.apply_word(&letters, &m.highest()).unwrap();
    (m, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_is_a_module_map(a in 0usize..15, w in prop::collection::vec((0usize..15, -3i32..=-1), 0..=3)) {
        let (m, v) = vacuum_vector(&w);
        let g = sl4().basis()[a];
        let av = m.act_letter(Letter::new(g, -1), &v).unwrap();
        prop_assert_eq!(c2_project(&av).unwrap(), c2_project(&v).unwrap().mul_gen(g));
    }

    #[test]
    fn projection_preserves_weight(w in prop::collection::vec((0usize..15, -2i32..=-1), 1..=3)) {
        let (m, v) = vacuum_vector(&w);
        let (_, wt) = m.degree_and_weight(&v).unwrap();
        for x in c2_project(&v).unwrap().weights(&m).unwrap() {
            prop_assert_eq!(&x, &wt);
        }
    }
}

#[test]
fn deep_modes_vanish() {
    let w: Vec<(usize, i32)> = {
        let b = sl4().basis();
        let i = |g| b.iter().position(|&x| x == g).unwrap();
        vec![(i(Gen::e(1, 3)), -3), (i(Gen::e(2, 4)), -1)]
    };
    let (_, u) = vacuum_vector(&w);
    assert!(c2_project(&u).unwrap().is_empty());
}

#[test]
fn grading_is_even_and_compatible_with_brackets() {
    let sl = sl4();
    let chi = compute_grading(&sl).unwrap();
    for a in sl.basis() {
        assert!(is_integer(&chi.degree(a)));
        for b in sl.basis() {
            for (c, _) in sl.bracket_gens(a, b) {
                assert_eq!(chi.degree(c), chi.degree(a) + chi.degree(b), "[{a}, {b}]");
            }
        }
    }
    assert_eq!(chi.degree(Gen::e(1, 2)), int(0));
    assert_eq!(chi.degree(Gen::e(1, 4)), int(2));
    assert_eq!(chi.degree(Gen::h(2)), int(0));
    let set = |v: Vec<Gen>| v.into_iter().collect::<BTreeSet<_>>();
    assert_eq!(set(chi.part(1)), set(vec![Gen::e(1, 3), Gen::e(2, 3), Gen::e(3, 4)]));
    assert_eq!(set(chi.part(2)), set(vec![Gen::e(1, 4), Gen::e(2, 4)]));
    for g in chi.m() {
        let want = i64::from(g == Gen::e(2, 3) || g == Gen::e(3, 4));
        assert_eq!(chi.chi[&g], int(want), "chi({g})");
    }
}

#[test]
fn reductions_modulo_the_ideal() {
    let data = common::data();
    let sl = sl4();
    let chi = compute_grading(&sl).unwrap();
    let lv = load_vector(&sl, &level(), data.get("singv_vacuum_sl4.vec").unwrap(), None).unwrap();
    let image = c2_project(&lv.vector).unwrap();
    assert_eq!(image, parse_sg_file(&lv.module, data.get("vdprime_sl4.sg").unwrap()).unwrap());
    assert_eq!(single_term(&jchi_reduce(&chi, &image)), Some((vec![Gen::e(1, 2)], vec![], Poly::scalar(int(2)))));

    for (vf, sf, symbols) in [
        ("wnu_omega1.vec", "wnu_omega1.sg", vec![]),
        ("wnu_omega3.vec", "wnu_omega3.sg", vec![Gen::e(1, 2)]),
    ] {
        let lv = load_vector(&sl, &level(), data.get(vf).unwrap(), Some(SymN::Symbolic)).unwrap();
        let image = c2_project(&lv.vector).unwrap();
        assert_eq!(image, parse_sg_file(&lv.module, data.get(sf).unwrap()).unwrap());
        let red = jchi_reduce(&chi, &image);
        let want = (symbols, lv.module.highest_key(), wnu_reduction_coefficient().unwrap());
        assert_eq!(single_term(&red), Some(want), "{vf}");
    }
}
