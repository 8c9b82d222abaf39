//! sl(n) in the elementary-matrix basis: brackets, the trace form, weights and the diagram flip.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, var_set, Poly, Rational};

/// Basis element of sl(n): `E(i,j)` (i != j) or `H(i) = E(i,i) - E(i+1,i+1)`, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    E(u8, u8),
    H(u8),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Block {
    Lower,
    Cartan,
    Raise,
}

impl Gen {
    /// Root vector for the root e_i - e_j with i < j.
    pub fn e(i: u8, j: u8) -> Gen {
        assert!(i < j, "e[{i},{j}] needs i < j");
        Gen::E(i, j)
    }

    /// Root vector for the negative root -(e_i - e_j) with i < j.
    pub fn f(i: u8, j: u8) -> Gen {
        assert!(i < j, "f[{i},{j}] needs i < j");
        Gen::E(j, i)
    }

    pub fn h(i: u8) -> Gen {
        Gen::H(i)
    }

    pub fn block(&self) -> Block {
        match *self {
            Gen::E(i, j) if i < j => Block::Raise,
            Gen::E(..) => Block::Lower,
            Gen::H(_) => Block::Cartan,
        }
    }

    /// Sort key of the PBW order: f's, then h's, then e's; roots by height, then lexicographic.
    pub fn pbw_key(&self) -> (u8, u8, u8, u8) {
        match *self {
            Gen::E(i, j) if i < j => (2, j - i, i, j),
            Gen::E(i, j) => (0, i - j, j, i),
            Gen::H(i) => (1, 0, i, 0),
        }
    }

    /// Coordinates of the weight in the simple-root basis (length `rank`).
    pub fn root(&self, rank: usize) -> Vec<i64> {
        let mut r = vec![0; rank];
        if let Gen::E(i, j) = *self {
            let (lo, hi, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
            for l in lo..hi {
                r[(l - 1) as usize] = s;
            }
        }
        r
    }

    /// Coordinates of the weight in the fundamental-weight basis.
    pub fn weight(&self, rank: usize) -> Vec<i64> {
        let mut w = vec![0; rank];
        if let Gen::E(i, j) = *self {
            for (l, wl) in w.iter_mut().enumerate() {
                let l = (l + 1) as u8;
                let d = |a: u8, b: u8| i64::from(a == b);
                *wl = d(i, l) - d(i, l + 1) - d(j, l) + d(j, l + 1);
            }
        }
        w
    }

    pub fn is_valid(&self, n: usize) -> bool {
        match *self {
            Gen::E(i, j) => i != j && i >= 1 && j >= 1 && (i as usize) <= n && (j as usize) <= n,
            Gen::H(i) => i >= 1 && (i as usize) < n,
        }
    }

    /// Parses the text forms `e[i,j]`, `f[i,j]` (i < j) and `h[i]`.
    pub fn from_parts(name: &str, idx: &[u32]) -> Result<Gen> {
        let small = |x: u32| u8::try_from(x).map_err(|_| Error::Parse(format!("index {x}")));
        match (name, idx) {
            ("e", [i, j]) if i < j => Ok(Gen::E(small(*i)?, small(*j)?)),
            ("f", [i, j]) if i < j => Ok(Gen::E(small(*j)?, small(*i)?)),
            ("h", [i]) => Ok(Gen::H(small(*i)?)),
            _ => Err(Error::Parse(format!("bad generator {name}{idx:?}"))),
        }
    }
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pbw_key().cmp(&other.pbw_key())
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::E(i, j) if i < j => write!(f, "e[{i},{j}]"),
            Gen::E(i, j) => write!(f, "f[{j},{i}]"),
            Gen::H(i) => write!(f, "h[{i}]"),
        }
    }
}

/// The Lie algebra sl(n) with its root data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlN {
    n: usize,
}

impl SlN {
    pub fn new(n: usize) -> Result<SlN> {
        if !(2..=12).contains(&n) {
            return Err(Error::Unsupported(format!("sl({n})")));
        }
        Ok(SlN { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn dual_coxeter(&self) -> usize {
        self.n
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        match i.abs_diff(j) {
            0 => 2,
            1 => -1,
            _ => 0,
        }
    }

    /// Entry (i,j), 1-based, of the inverse Cartan matrix: min(i,j)(n - max(i,j))/n.
    pub fn inv_cartan(&self, i: usize, j: usize) -> Rational {
        let n = self.n as i64;
        let (a, b) = (i.min(j) as i64, i.max(j) as i64);
        Rational::new((a * (n - b)).into(), n.into())
    }

    /// All basis elements in PBW order.
    pub fn basis(&self) -> Vec<Gen> {
        let n = self.n as u8;
        let mut v = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    v.push(Gen::E(i, j));
                }
            }
        }
        for i in 1..n {
            v.push(Gen::H(i));
        }
        v.sort();
        v
    }

    pub fn positive_roots(&self) -> Vec<Gen> {
        self.basis().into_iter().filter(|g| g.block() == Block::Raise).collect()
    }

    pub fn simple_e(&self, i: usize) -> Gen {
        Gen::E(i as u8, i as u8 + 1)
    }

    pub fn simple_f(&self, i: usize) -> Gen {
        Gen::E(i as u8 + 1, i as u8)
    }

    pub fn theta_e(&self) -> Gen {
        Gen::E(1, self.n as u8)
    }

    pub fn theta_f(&self) -> Gen {
        Gen::E(self.n as u8, 1)
    }

    pub fn check(&self, g: Gen) -> Result<Gen> {
        if g.is_valid(self.n) {
            Ok(g)
        } else {
            Err(Error::Usage(format!("{g} is not a generator of sl({})", self.n)))
        }
    }

    /// Bracket of two basis elements in the basis, with integer structure constants.
    pub fn bracket_gens(&self, a: Gen, b: Gen) -> Vec<(Gen, i64)> {
        let ma = as_matrix_units(a);
        let mb = as_matrix_units(b);
        let mut off: BTreeMap<(u8, u8), i64> = BTreeMap::new();
        let mut diag: BTreeMap<u8, i64> = BTreeMap::new();
        for &((p, q), x) in &ma {
            for &((r, s), y) in &mb {
                // [E(p,q), E(r,s)] = d(q,r) E(p,s) - d(s,p) E(r,q)
                if q == r {
                    bump(&mut off, &mut diag, p, s, x * y);
                }
                if s == p {
                    bump(&mut off, &mut diag, r, q, -x * y);
                }
            }
        }
        let mut out: Vec<(Gen, i64)> =
            off.into_iter().filter(|&(_, c)| c != 0).map(|((i, j), c)| (Gen::E(i, j), c)).collect();
        // Traceless diagonal sum_l d_l E(l,l) = sum_i (d_1 + ... + d_i) H(i).
        let mut partial = 0;
        for i in 1..self.n as u8 {
            partial += diag.get(&i).copied().unwrap_or(0);
            if partial != 0 {
                out.push((Gen::H(i), partial));
            }
        }
        out.sort();
        out
    }

    /// Trace form on basis elements.
    pub fn form_gens(&self, a: Gen, b: Gen) -> i64 {
        match (a, b) {
            (Gen::E(i, j), Gen::E(k, l)) => i64::from(j == k && i == l),
            (Gen::H(i), Gen::H(j)) => self.cartan(i as usize, j as usize),
            _ => 0,
        }
    }

    pub fn bracket(&self, a: &GElem, b: &GElem) -> GElem {
        let mut out = GElem::zero();
        for (&x, cx) in &a.0 {
            for (&y, cy) in &b.0 {
                let c = cx * cy;
                for (z, s) in self.bracket_gens(x, y) {
                    out.add(z, &c.scale(&int(s)));
                }
            }
        }
        out
    }

    pub fn inv_form(&self, a: &GElem, b: &GElem) -> Poly {
        let mut s = Poly::scalar(Rational::zero());
        for (&x, cx) in &a.0 {
            for (&y, cy) in &b.0 {
                let f = self.form_gens(x, y);
                if f != 0 {
                    s = &s + &(cx * cy).scale(&int(f));
                }
            }
        }
        s
    }

    /// Lift of the Dynkin diagram flip for sl(4): E(i,j) -> -E(5-j,5-i), H(i) -> H(4-i).
    pub fn sigma_gen(&self, g: Gen) -> Result<(Gen, i64)> {
        if self.n != 4 {
            return Err(Error::Unsupported(format!("diagram flip on sl({})", self.n)));
        }
        let m = self.n as u8 + 1;
        Ok(match g {
            Gen::E(i, j) => (Gen::E(m - j, m - i), -1),
            Gen::H(i) => (Gen::H(m - 1 - i), 1),
        })
    }

    pub fn sigma(&self, a: &GElem) -> Result<GElem> {
        let mut out = GElem::zero();
        for (&g, c) in &a.0 {
            let (h, s) = self.sigma_gen(g)?;
            out.add(h, &c.scale(&int(s)));
        }
        Ok(out)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::from_ints(&vec![0; self.rank()])
    }

    pub fn rho(&self) -> Weight {
        Weight::from_ints(&vec![1; self.rank()])
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut v = vec![0; self.rank()];
        v[i - 1] = 1;
        Weight::from_ints(&v)
    }

    /// (lambda|mu) through the inverse Cartan matrix.
    pub fn weight_form(&self, l: &Weight, m: &Weight) -> Result<Poly> {
        self.check_weight(l)?;
        self.check_weight(m)?;
        let mut s = Poly::scalar(Rational::zero());
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let t = l.0[i].try_mul(&m.0[j])?.scale(&self.inv_cartan(i + 1, j + 1));
                s = s.try_add(&t)?;
            }
        }
        Ok(s)
    }

    /// (lambda|lambda + 2 rho) / (2 (k + n)).
    pub fn conformal_weight(&self, l: &Weight, k: &Rational) -> Result<Poly> {
        let d = k + int(self.n as i64);
        if d.is_zero() {
            return Err(Error::CriticalLevel(self.n));
        }
        let shifted = l.add(&self.rho().scale(&int(2)))?;
        Ok(self.weight_form(l, &shifted)?.scale(&(Rational::one() / (int(2) * d))))
    }

    fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.0.len() != self.rank() {
            return Err(Error::Usage(format!(
                "weight of length {} for sl({})",
                w.0.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Weight with the given coefficients on e_1, ..., e_n.
    pub fn from_epsilon(&self, c: &[Rational]) -> Result<Weight> {
        if c.len() != self.n {
            return Err(Error::Usage("epsilon vector length".into()));
        }
        Ok(Weight::from_rationals(
            &(0..self.rank()).map(|l| &c[l] - &c[l + 1]).collect::<Vec<_>>(),
        ))
    }
}

fn as_matrix_units(g: Gen) -> Vec<((u8, u8), i64)> {
    match g {
        Gen::E(i, j) => vec![((i, j), 1)],
        Gen::H(i) => vec![((i, i), 1), ((i + 1, i + 1), -1)],
    }
}

fn bump(off: &mut BTreeMap<(u8, u8), i64>, diag: &mut BTreeMap<u8, i64>, i: u8, j: u8, c: i64) {
    if i == j {
        *diag.entry(i).or_insert(0) += c;
    } else {
        *off.entry((i, j)).or_insert(0) += c;
    }
}

/// Element of sl(n) with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GElem(pub BTreeMap<Gen, Poly>);

impl GElem {
    pub fn zero() -> GElem {
        GElem(BTreeMap::new())
    }

    pub fn gen(g: Gen) -> GElem {
        let mut m = BTreeMap::new();
        m.insert(g, Poly::scalar(Rational::one()));
        GElem(m)
    }

    pub fn add(&mut self, g: Gen, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let s = match self.0.get(&g) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.0.remove(&g);
        } else {
            self.0.insert(g, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(g, c)| format!("({c})*{g}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Weight in fundamental coordinates; entries may involve symbolic parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight(pub Vec<Poly>);

impl Weight {
    pub fn from_ints(v: &[i64]) -> Weight {
        Weight(v.iter().map(|&x| Poly::scalar(int(x))).collect())
    }

    pub fn from_rationals(v: &[Rational]) -> Weight {
        Weight(v.iter().map(|x| Poly::scalar(x.clone())).collect())
    }

    pub fn add(&self, o: &Weight) -> Result<Weight> {
        if self.0.len() != o.0.len() {
            return Err(Error::Usage("weights of different rank".into()));
        }
        Ok(Weight(self.0.iter().zip(&o.0).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?))
    }

    pub fn sub(&self, o: &Weight) -> Result<Weight> {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a.scale(c)).collect())
    }

    pub fn scale_poly(&self, c: &Poly) -> Result<Weight> {
        Ok(Weight(self.0.iter().map(|a| a.try_mul(c)).collect::<Result<_>>()?))
    }

    /// The numeric coordinates, if every entry is constant.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.0.iter().map(|p| p.as_constant()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|p| p.is_zero())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Weight of affine sl(n): level, finite part and the coefficient of -delta.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWeight {
    pub level: Rational,
    pub finite: Weight,
    pub degree: Rational,
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} L0 - {} delta + {}", self.level, self.degree, self.finite)
    }
}

/// Symbolic weight `n * w_i` with a named parameter.
pub fn symbolic_multiple(sl: &SlN, i: usize, param: &str) -> Weight {
    let vars = var_set(&[param]);
    let mut v: Vec<Poly> = vec![Poly::scalar(Rational::zero()); sl.rank()];
    v[i - 1] = Poly::var(&vars, param).unwrap();
    Weight(v)
}
