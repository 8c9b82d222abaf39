//! The Weyl algebra A_n, the map e_ij -> x_i d_j from U(sl(n)), and the action on formal
//! monomials x^b with symbolic exponents.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::enveloping::UElement;
use crate::error::{Error, Result};
use crate::lie::{Gen, SlN};
use crate::scalar::{int, rat, var_set, MultiPoly, Poly, Rational, Scalar, VarSet};
use crate::text::{content_lines, parse_terms, TermSpec};

/// Normally ordered monomial x^a d^b.
pub type WeylKey = (Vec<u32>, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement<C> {
    rank: usize,
    terms: BTreeMap<WeylKey, C>,
}

pub type Weyl = WeylElement<Rational>;

fn binom<C: Scalar>(n: u32, k: u32) -> C {
    let mut c = C::one();
    for i in 0..k {
        c = c * C::from_u32(n - i).unwrap() / C::from_u32(i + 1).unwrap();
    }
    c
}

fn factorial<C: Scalar>(k: u32) -> C {
    (1..=k).fold(C::one(), |a, i| a * C::from_u32(i).unwrap())
}

impl<C: Scalar> WeylElement<C> {
    pub fn zero(rank: usize) -> Self {
        WeylElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, vec![0; rank], vec![0; rank], C::one())
    }

    pub fn monomial(rank: usize, xs: Vec<u32>, ds: Vec<u32>, c: C) -> Self {
        let mut w = Self::zero(rank);
        w.add_term((xs, ds), c);
        w
    }

    /// x_i, 1-based.
    pub fn x(rank: usize, i: usize) -> Self {
        let mut xs = vec![0; rank];
        xs[i - 1] = 1;
        Self::monomial(rank, xs, vec![0; rank], C::one())
    }

    /// d_i, 1-based.
    pub fn d(rank: usize, i: usize) -> Self {
        let mut ds = vec![0; rank];
        ds[i - 1] = 1;
        Self::monomial(rank, vec![0; rank], ds, C::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylKey, &C)> {
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

    pub fn add_term(&mut self, key: WeylKey, c: C) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&key) {
            Some(x) => x + c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(key, s);
        }
    }

    fn same_rank(&self, o: &Self) -> Result<()> {
        if self.rank != o.rank {
            return Err(Error::Usage(format!("Weyl ranks {} and {}", self.rank, o.rank)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_rank(o)?;
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.rank);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.clone() * c.clone());
        }
        out
    }

    /// Normally ordered product, using d^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) d^(b-k) per variable.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_rank(o)?;
        let mut out = Self::zero(self.rank);
        for ((a, b), p) in &self.terms {
            for ((c, d), q) in &o.terms {
                // Per variable: list of (x exponent, d exponent, coefficient).
                let mut partial: Vec<(Vec<u32>, Vec<u32>, C)> = vec![(Vec::new(), Vec::new(), p.clone() * q.clone())];
                for i in 0..self.rank {
                    let mut next = Vec::new();
                    for (xs, ds, coef) in &partial {
                        for k in 0..=b[i].min(c[i]) {
                            let f = binom::<C>(b[i], k) * binom::<C>(c[i], k) * factorial::<C>(k);
                            let mut xs = xs.clone();
                            let mut ds = ds.clone();
                            xs.push(a[i] + c[i] - k);
                            ds.push(b[i] - k + d[i]);
                            next.push((xs, ds, coef.clone() * f));
                        }
                    }
                    partial = next;
                }
                for (xs, ds, coef) in partial {
                    out.add_term((xs, ds), coef);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.mul(o)?.sub(&o.mul(self)?)
    }
}

impl<C: Scalar> fmt::Display for WeylElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((xs, ds), c) in &self.terms {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            let sign = match (first, neg) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            first = false;
            let mut parts = Vec::new();
            for (name, es) in [("x", xs), ("d", ds)] {
                for (i, e) in es.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => parts.push(format!("{name}[{}]", i + 1)),
                        e => parts.push(format!("{name}[{}]^{e}", i + 1)),
                    }
                }
            }
            if parts.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sign}{}", parts.join(" "))?;
            } else {
                write!(f, "{sign}{mag} {}", parts.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Image of a basis element: E_ij -> x_i d_j, h_i -> x_i d_i - x_(i+1) d_(i+1).
pub fn phi_gen(sl: &SlN, g: Gen) -> Weyl {
    let n = sl.n();
    let xd = |i: u8, j: u8| Weyl::x(n, i as usize).mul(&Weyl::d(n, j as usize)).unwrap();
    match g {
        Gen::E(i, j) => xd(i, j),
        Gen::H(i) => xd(i, i).sub(&xd(i + 1, i + 1)).unwrap(),
    }
}

pub fn phi_word(sl: &SlN, word: &[Gen]) -> Weyl {
    word.iter().fold(Weyl::one(sl.n()), |acc, g| acc.mul(&phi_gen(sl, *g)).unwrap())
}

pub fn phi(sl: &SlN, u: &UElement) -> Result<Weyl> {
    let mut out = Weyl::zero(sl.n());
    for (w, c) in u.terms() {
        let c = c
            .as_constant()
            .ok_or_else(|| Error::Unsupported("symbolic coefficient under phi".into()))?;
        out = out.add(&phi_word(sl, w).scale(&c))?;
    }
    Ok(out)
}

/// phi([a,b]) - [phi(a), phi(b)] over all basis pairs; returns the failing pairs.
pub fn homomorphism_defects(sl: &SlN) -> Vec<(Gen, Gen)> {
    let basis = sl.basis();
    let mut bad = Vec::new();
    for &a in &basis {
        for &b in &basis {
            let mut lhs = Weyl::zero(sl.n());
            for (g, c) in sl.bracket_gens(a, b) {
                lhs = lhs.add(&phi_gen(sl, g).scale(&int(c))).unwrap();
            }
            let rhs = phi_gen(sl, a).commutator(&phi_gen(sl, b)).unwrap();
            if lhs != rhs {
                bad.push((a, b));
            }
        }
    }
    bad
}

/// (3/5) x1 d5 (sum_i x_i d_i + 5/2) in A_5.
pub fn uprime_operator() -> Weyl {
    let mut euler = Weyl::one(5).scale(&rat(5, 2));
    for i in 1..=5 {
        euler = euler.add(&Weyl::x(5, i).mul(&Weyl::d(5, i)).unwrap()).unwrap();
    }
    Weyl::x(5, 1).mul(&Weyl::d(5, 5)).unwrap().mul(&euler).unwrap().scale(&rat(3, 5))
}

pub fn b_vars(rank: usize) -> VarSet {
    var_set(&(1..=rank).map(|i| format!("b{i}")).collect::<Vec<_>>())
}

/// x^(b + offset) with symbolic b.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymbolicMonomial {
    pub offset: Vec<i64>,
}

/// Sum of coefficient polynomials in b times shifted monomials.
pub type SymbolicAction = BTreeMap<SymbolicMonomial, Poly>;

pub fn act_symbolic(w: &Weyl, m: &SymbolicMonomial) -> Result<SymbolicAction> {
    let n = w.rank();
    if m.offset.len() != n {
        return Err(Error::Usage("monomial rank".into()));
    }
    let vars = b_vars(n);
    let mut out = SymbolicAction::new();
    for ((xs, ds), c) in w.terms() {
        let mut coef = MultiPoly::constant(&vars, c.clone());
        let mut off = m.offset.clone();
        for i in 0..n {
            // d_i^k: falling factorial in b_i + offset_i.
            for _ in 0..ds[i] {
                let e = Poly::var(&vars, &format!("b{}", i + 1))?
                    .try_add(&MultiPoly::constant(&vars, int(off[i])))?;
                coef = coef.try_mul(&e)?;
                off[i] -= 1;
            }
        }
        for i in 0..n {
            off[i] += i64::from(xs[i]);
        }
        if coef.is_zero() {
            continue;
        }
        let key = SymbolicMonomial { offset: off };
        let s = match out.remove(&key) {
            Some(x) => x.try_add(&coef)?,
            None => coef,
        };
        if !s.is_zero() {
            out.insert(key, s);
        }
    }
    Ok(out)
}

/// (3/5) b5 (b1 + ... + b5 + 5/2) at offset e1 - e5.
pub fn expected_uprime_action() -> Result<SymbolicAction> {
    let vars = b_vars(5);
    let mut s = MultiPoly::constant(&vars, rat(5, 2));
    for i in 1..=5 {
        s = s.try_add(&Poly::var(&vars, &format!("b{i}"))?)?;
    }
    let c = Poly::var(&vars, "b5")?.try_mul(&s)?.scale(&rat(3, 5));
    Ok([(SymbolicMonomial { offset: vec![1, 0, 0, 0, -1] }, c)].into_iter().collect())
}

#[derive(Clone, Debug)]
pub struct MaCriterion {
    pub a: Vec<Rational>,
    pub sum: Rational,
    pub holds: bool,
    /// Coefficient of the action after b1 -> sum(a) - b2 - ... - b5.
    pub constrained: Poly,
    /// A monomial of M(a) with nonzero action, when one exists.
    pub witness: Option<(Vec<Rational>, Rational)>,
}

/// M(a) is an A(V)-module iff the action of u' vanishes on every x^b with sum(b) = sum(a).
pub fn ma_criterion(a: &[Rational]) -> Result<MaCriterion> {
    if a.len() != 5 {
        return Err(Error::Usage("M(a) needs five exponents".into()));
    }
    let sum: Rational = a.iter().cloned().sum();
    let act = act_symbolic(&uprime_operator(), &SymbolicMonomial { offset: vec![0; 5] })?;
    if act.len() != 1 {
        return Err(Error::Consistency("u' action is not a single shift".into()));
    }
    let coef = act.values().next().unwrap().clone();
    let vars = b_vars(5);
    let mut b1 = MultiPoly::constant(&vars, sum.clone());
    for i in 2..=5 {
        b1 = b1.try_sub(&Poly::var(&vars, &format!("b{i}"))?)?;
    }
    let mut assign: HashMap<String, Poly> = HashMap::new();
    for i in 2..=5 {
        let v = format!("b{i}");
        assign.insert(v.clone(), Poly::var(&vars, &v)?);
    }
    assign.insert("b1".to_string(), b1);
    let constrained = coef.eval(&assign)?;
    let holds = constrained.is_zero();
    let witness = if holds {
        None
    } else {
        let mut b = a.to_vec();
        if b[4].is_zero() {
            b[4] += int(1);
            b[0] -= int(1);
        }
        let c = coef.eval_at(&b)?;
        Some((b, c))
    };
    Ok(MaCriterion { a: a.to_vec(), sum, holds, constrained, witness })
}

fn term_to_weyl(rank: usize, t: &TermSpec) -> Result<Weyl> {
    let c = t
        .coef
        .to_poly(&var_set::<&str>(&[]))?
        .as_constant()
        .ok_or_else(|| Error::Parse("symbolic Weyl coefficient".into()))?;
    let mut w = Weyl::one(rank);
    for a in &t.atoms {
        let i = match a.idx.as_slice() {
            [i] if (1..=rank as u32).contains(i) => *i as usize,
            _ => return Err(Error::Parse(format!("bad index {:?}", a.idx))),
        };
        let g = match a.name.as_str() {
            "x" => Weyl::x(rank, i),
            "d" => Weyl::d(rank, i),
            n => return Err(Error::Parse(format!("`{n}` in a Weyl expression"))),
        };
        for _ in 0..a.pow {
            w = w.mul(&g)?;
        }
    }
    Ok(w.scale(&c))
}

pub fn parse_weyl(rank: usize, s: &str) -> Result<Weyl> {
    let mut out = Weyl::zero(rank);
    for t in parse_terms(s)? {
        out = out.add(&term_to_weyl(rank, &t)?)?;
    }
    Ok(out)
}

fn phi_of_terms(sl: &SlN, s: &str) -> Result<Weyl> {
    let mut out = Weyl::zero(sl.n());
    for t in parse_terms(s)? {
        let c = term_to_weyl(sl.n(), &TermSpec { coef: t.coef.clone(), atoms: Vec::new(), top: None })?;
        let mut word = Vec::new();
        for a in &t.atoms {
            let g = sl.check(Gen::from_parts(&a.name, &a.idx)?)?;
            word.extend(std::iter::repeat_n(g, a.pow as usize));
        }
        out = out.add(&c.mul(&phi_word(sl, &word))?)?;
    }
    Ok(out)
}

fn side(sl: &SlN, s: &str) -> Result<Weyl> {
    let s = s.trim();
    match s.strip_prefix("phi(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => phi_of_terms(sl, inner),
        None => parse_weyl(sl.n(), s),
    }
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub id: String,
    pub lhs: Weyl,
    pub rhs: Weyl,
    pub holds: bool,
}

/// Lines `id: phi(A) = phi(B)` or `id: phi(A) = <Weyl element>`.
pub fn check_relations(sl: &SlN, src: &str) -> Result<Vec<RelationCheck>> {
    let mut out = Vec::new();
    for (no, line) in content_lines(src) {
        let (id, body) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("line {no}: missing id")))?;
        let (l, r) = body
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {no}: missing `=`")))?;
        let lhs = side(sl, l).map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
        let rhs = side(sl, r).map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
        let holds = lhs == rhs;
        out.push(RelationCheck { id: id.trim().to_string(), lhs, rhs, holds });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations() {
        let d1x1 = Weyl::d(4, 1).mul(&Weyl::x(4, 1)).unwrap();
        assert_eq!(d1x1.to_string(), "1 + x[1] d[1]");
        let d1x2 = Weyl::d(4, 1).mul(&Weyl::x(4, 2)).unwrap();
        assert_eq!(d1x2, Weyl::x(4, 2).mul(&Weyl::d(4, 1)).unwrap());
        assert!(Weyl::d(4, 1).mul(&Weyl::x(5, 1)).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let w = parse_weyl(4, "2 x[1] x[2] x[3] d[3]^2 d[4] - x[1]^2 x[2] x[4] d[1] d[3] d[4]^2").unwrap();
        assert_eq!(parse_weyl(4, &w.to_string()).unwrap(), w);
    }
}
