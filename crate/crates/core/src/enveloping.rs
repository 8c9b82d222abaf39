//! U(sl(n)) in the PBW basis.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{Block, GElem, Gen, SlN};
use crate::scalar::{int, var_set, Poly, Rational, VarSet};

/// PBW monomial: generators in nondecreasing PBW order.
pub type UMonomial = Vec<Gen>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UElement {
    terms: BTreeMap<UMonomial, Poly>,
}

impl UElement {
    pub fn zero() -> UElement {
        UElement::default()
    }

    pub fn one() -> UElement {
        UElement::monomial(Vec::new(), Poly::scalar(Rational::one()))
    }

    /// Single term; the word must already be PBW ordered.
    pub fn monomial(word: UMonomial, c: Poly) -> UElement {
        assert!(word.windows(2).all(|w| w[0] <= w[1]), "word not in PBW order");
        let mut u = UElement::zero();
        u.add_term(word, c);
        u
    }

    pub fn from_gelem(x: &GElem) -> UElement {
        let mut u = UElement::zero();
        for (g, c) in &x.0 {
            u.add_term(vec![*g], c.clone());
        }
        u
    }

    pub fn add_term(&mut self, word: UMonomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&word) {
            Some(x) => x + &c,
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UMonomial, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &[Gen]) -> Poly {
        self.terms.get(word).cloned().unwrap_or_else(|| Poly::scalar(Rational::zero()))
    }

    pub fn add(&self, o: &UElement) -> UElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &UElement) -> UElement {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> UElement {
        let mut out = UElement::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.scale(c));
        }
        out
    }

    /// Weight in fundamental coordinates; None for zero; error if inhomogeneous.
    pub fn weight(&self, rank: usize) -> Result<Option<Vec<i64>>> {
        let mut found: Option<Vec<i64>> = None;
        for w in self.terms.keys() {
            let wt = word_weight(w, rank);
            match &found {
                None => found = Some(wt),
                Some(f) if *f != wt => {
                    return Err(Error::Inhomogeneous(format!(
                        "weights {f:?} and {wt:?} both occur"
                    )))
                }
                _ => {}
            }
        }
        Ok(found)
    }
}

pub fn word_weight(w: &[Gen], rank: usize) -> Vec<i64> {
    let mut s = vec![0; rank];
    for g in w {
        for (a, b) in s.iter_mut().zip(g.weight(rank)) {
            *a += b;
        }
    }
    s
}

pub fn render_word(w: &[Gen]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(w[i].to_string());
        } else {
            parts.push(format!("{}^{}", w[i], j - i));
        }
        i = j;
    }
    parts.join(" ")
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() { "1".to_string() } else { render_word(w) };
                format!("+ ({c}) * {word}")
            })
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

type Expansion = Rc<Vec<(UMonomial, Rational)>>;

/// Normal-ordering engine with a per-instance cache.
pub struct UAlgebra<'a> {
    sl: &'a SlN,
    memo: RefCell<HashMap<(UMonomial, Gen), Expansion>>,
}

impl<'a> UAlgebra<'a> {
    pub fn new(sl: &'a SlN) -> Self {
        UAlgebra { sl, memo: RefCell::new(HashMap::new()) }
    }

    pub fn sl(&self) -> &SlN {
        self.sl
    }

    /// PBW expansion of (ordered word) * g.
    fn rmul(&self, w: &[Gen], g: Gen) -> Expansion {
        if w.last().is_none_or(|&y| y <= g) {
            let mut v = w.to_vec();
            v.push(g);
            return Rc::new(vec![(v, Rational::one())]);
        }
        let key = (w.to_vec(), g);
        if let Some(e) = self.memo.borrow().get(&key) {
            return e.clone();
        }
        let y = *w.last().unwrap();
        let head = &w[..w.len() - 1];
        let mut acc: BTreeMap<UMonomial, Rational> = BTreeMap::new();
        // head y g = (head g) y + head [y, g]
        for (m, c) in self.rmul(head, g).iter() {
            for (m2, c2) in self.rmul(m, y).iter() {
                *acc.entry(m2.clone()).or_insert_with(Rational::zero) += c * c2;
            }
        }
        for (z, s) in self.sl.bracket_gens(y, g) {
            for (m, c) in self.rmul(head, z).iter() {
                *acc.entry(m.clone()).or_insert_with(Rational::zero) += c * int(s);
            }
        }
        let res: Expansion = Rc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        self.memo.borrow_mut().insert(key, res.clone());
        res
    }

    fn word_times(&self, w: &[Gen], tail: &[Gen]) -> BTreeMap<UMonomial, Rational> {
        let mut cur: BTreeMap<UMonomial, Rational> = BTreeMap::new();
        cur.insert(w.to_vec(), Rational::one());
        for &g in tail {
            let mut next: BTreeMap<UMonomial, Rational> = BTreeMap::new();
            for (m, c) in &cur {
                for (m2, c2) in self.rmul(m, g).iter() {
                    *next.entry(m2.clone()).or_insert_with(Rational::zero) += c * c2;
                }
            }
            next.retain(|_, c| !c.is_zero());
            cur = next;
        }
        cur
    }

    pub fn mul(&self, a: &UElement, b: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (wa, ca) in &a.terms {
            for (wb, cb) in &b.terms {
                let c = ca * cb;
                for (m, s) in self.word_times(wa, wb) {
                    out.add_term(m, c.scale(&s));
                }
            }
        }
        out
    }

    /// Product of the generators in the order given, normal ordered.
    pub fn product(&self, gens: &[Gen]) -> UElement {
        let mut out = UElement::zero();
        for (m, s) in self.word_times(&[], gens) {
            out.add_term(m, Poly::scalar(s));
        }
        out
    }

    pub fn ad(&self, x: &GElem, u: &UElement) -> UElement {
        let xe = UElement::from_gelem(x);
        self.mul(&xe, u).sub(&self.mul(u, &xe))
    }

    pub fn ad_gen(&self, g: Gen, u: &UElement) -> UElement {
        self.ad(&GElem::gen(g), u)
    }
}

pub fn u_mul(sl: &SlN, a: &UElement, b: &UElement) -> UElement {
    UAlgebra::new(sl).mul(a, b)
}

pub fn ad_act(sl: &SlN, x: &GElem, u: &UElement) -> UElement {
    UAlgebra::new(sl).ad(x, u)
}

pub const DEFAULT_DIMENSION_CAP: usize = 512;

type RVec = BTreeMap<UMonomial, Rational>;

fn numeric(u: &UElement) -> Result<RVec> {
    u.terms
        .iter()
        .map(|(w, c)| {
            c.as_constant().map(|q| (w.clone(), q)).ok_or_else(|| {
                Error::Unsupported("symbolic coefficient in an adjoint-submodule seed".into())
            })
        })
        .collect()
}

fn to_element(v: &RVec) -> UElement {
    let mut u = UElement::zero();
    for (w, c) in v {
        u.add_term(w.clone(), Poly::scalar(c.clone()));
    }
    u
}

/// Basis of the adjoint submodule generated by `seed`, in reduced echelon form per weight.
pub fn generate_ad_submodule(sl: &SlN, seed: &UElement, cap: usize) -> Result<Vec<UElement>> {
    seed.weight(sl.rank())?;
    let alg = UAlgebra::new(sl);
    let ops: Vec<Gen> =
        (1..=sl.rank()).flat_map(|i| [sl.simple_e(i), sl.simple_f(i)]).collect();
    let mut rows: BTreeMap<Vec<i64>, Vec<(UMonomial, RVec)>> = BTreeMap::new();
    let mut order: Vec<(Vec<i64>, UMonomial)> = Vec::new();
    let mut queue: VecDeque<RVec> = VecDeque::new();
    let insert = |v: RVec,
                      rows: &mut BTreeMap<Vec<i64>, Vec<(UMonomial, RVec)>>,
                      order: &mut Vec<(Vec<i64>, UMonomial)>|
     -> Option<RVec> {
        let wt = word_weight(v.keys().next()?, sl.rank());
        let bucket = rows.entry(wt.clone()).or_default();
        let mut v = v;
        for (p, r) in bucket.iter() {
            if let Some(c) = v.get(p).cloned() {
                for (w, x) in r {
                    let e = v.entry(w.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
        let (p, lead) = v.iter().next().map(|(w, c)| (w.clone(), c.clone()))?;
        let inv = Rational::one() / lead;
        for x in v.values_mut() {
            *x *= &inv;
        }
        for (_, r) in bucket.iter_mut() {
            if let Some(c) = r.get(&p).cloned() {
                for (w, x) in &v {
                    let e = r.entry(w.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                }
                r.retain(|_, x| !x.is_zero());
            }
        }
        bucket.push((p.clone(), v.clone()));
        order.push((wt, p));
        Some(v)
    };
    if let Some(v) = insert(numeric(seed)?, &mut rows, &mut order) {
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        let u = to_element(&v);
        for &g in &ops {
            let img = numeric(&alg.ad_gen(g, &u))?;
            if img.is_empty() {
                continue;
            }
            if let Some(nv) = insert(img, &mut rows, &mut order) {
                if order.len() > cap {
                    return Err(Error::DimensionCap(cap));
                }
                queue.push_back(nv);
            }
        }
    }
    Ok(order
        .iter()
        .map(|(wt, p)| {
            let r = &rows[wt].iter().find(|(q, _)| q == p).unwrap().1;
            to_element(r)
        })
        .collect())
}

pub fn zero_weight_subspace(sl: &SlN, basis: &[UElement]) -> Result<Vec<UElement>> {
    let zero = vec![0; sl.rank()];
    let mut out = Vec::new();
    for b in basis {
        if b.weight(sl.rank())?.as_ref() == Some(&zero) {
            out.push(b.clone());
        }
    }
    Ok(out)
}

pub fn cartan_vars(sl: &SlN) -> VarSet {
    let names: Vec<String> = (1..=sl.rank()).map(|i| format!("H{i}")).collect();
    var_set(&names)
}

/// U(h)-component of a weight-zero element, with h_i read as the indeterminate H_i.
pub fn hc_project(sl: &SlN, u: &UElement) -> Result<Poly> {
    let zero = vec![0; sl.rank()];
    if let Some(w) = u.weight(sl.rank())? {
        if w != zero {
            return Err(Error::Usage(format!("projection of an element of weight {w:?}")));
        }
    }
    let vars = cartan_vars(sl);
    let mut out = Poly::zero(&vars);
    for (w, c) in &u.terms {
        if w.iter().all(|g| g.block() == Block::Cartan) {
            let mut e = vec![0u32; sl.rank()];
            for g in w {
                if let Gen::H(i) = g {
                    e[*i as usize - 1] += 1;
                }
            }
            let k = c.as_constant().ok_or_else(|| {
                Error::Unsupported("symbolic coefficient in a projection".into())
            })?;
            out = &out + &Poly::monomial(&vars, e, k);
        }
    }
    Ok(out)
}
