//! Exact scalars, sparse multivariate polynomials and rational functions in k.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact field usable as a polynomial coefficient.
pub trait Scalar:
    Clone + Eq + Ord + fmt::Debug + fmt::Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Eq + Ord + fmt::Debug + fmt::Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `3`, `-5/2` or `+7`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let parse_int = |x: &str| {
        x.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational: `{s}`")))
    };
    match t.split_once('/') {
        Some((a, b)) => {
            let d = parse_int(b)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(parse_int(a)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(t)?)),
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Returns the value as i64 when it is an integer that fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if !is_integer(q) {
        return None;
    }
    i64::try_from(q.numer().clone()).ok()
}

pub type VarSet = Arc<Vec<String>>;

pub fn var_set<S: AsRef<str>>(names: &[S]) -> VarSet {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// Sparse polynomial over a declared, ordered set of indeterminates.
#[derive(Clone, Debug)]
pub struct MultiPoly<C> {
    vars: VarSet,
    terms: BTreeMap<Vec<u32>, C>,
}

pub type Poly = MultiPoly<Rational>;

impl<C: Scalar> MultiPoly<C> {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    /// Constant with no indeterminates; promoted on contact with any other polynomial.
    pub fn scalar(c: C) -> Self {
        Self::constant(&Arc::new(Vec::new()), c)
    }

    pub fn constant(vars: &VarSet, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        MultiPoly { vars: vars.clone(), terms }
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Usage(format!("`{name}` is not among {:?}", vars)))?;
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Ok(Self::monomial(vars, e, C::one()))
    }

    pub fn monomial(vars: &VarSet, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { vars: vars.clone(), terms }
    }

    pub fn from_terms(vars: &VarSet, it: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            assert_eq!(e.len(), vars.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
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

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of a monomial given by (name, exponent) pairs.
    pub fn coeff_of(&self, mono: &[(&str, u32)]) -> Result<C> {
        let mut e = vec![0; self.vars.len()];
        for (name, d) in mono {
            let i = self
                .vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::Usage(format!("`{name}` is not among {:?}", self.vars)))?;
            e[i] = *d;
        }
        Ok(self.coeff(&e))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    fn unify(&self, other: &Self) -> Result<VarSet> {
        if self.vars == other.vars || other.vars.is_empty() {
            Ok(self.vars.clone())
        } else if self.vars.is_empty() {
            Ok(other.vars.clone())
        } else {
            Err(Error::VarMismatch(self.vars.to_vec(), other.vars.to_vec()))
        }
    }

    /// Re-expresses the polynomial over `vars`; every indeterminate in use must occur there.
    pub fn embed(&self, vars: &VarSet) -> Result<Self> {
        if &self.vars == vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let used = self.terms.keys().any(|e| e[i] > 0);
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if !used => map.push(None),
                None => return Err(Error::VarMismatch(self.vars.to_vec(), vars.to_vec())),
            }
        }
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (i, &d) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    f[j] = d;
                }
            }
            out.add_term(f, c.clone());
        }
        Ok(out)
    }

    fn promoted(&self, vars: &VarSet) -> Self {
        if &self.vars == vars {
            self.clone()
        } else {
            let pad = vars.len();
            MultiPoly {
                vars: vars.clone(),
                terms: self.terms.iter().map(|(_, c)| (vec![0; pad], c.clone())).collect(),
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let vars = self.unify(other)?;
        let mut out = self.promoted(&vars);
        for (e, c) in &other.promoted(&vars).terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let vars = self.unify(other)?;
        let a = self.promoted(&vars);
        let b = other.promoted(&vars);
        let mut out = Self::zero(&vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(&self.vars, C::one());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitution homomorphism. Every indeterminate occurring in `self` must be assigned;
    /// the assigned values must share one indeterminate set, which becomes the result's.
    pub fn eval(&self, assignment: &HashMap<String, MultiPoly<C>>) -> Result<Self> {
        let mut target: VarSet = Arc::new(Vec::new());
        for val in assignment.values() {
            if !val.vars.is_empty() {
                if target.is_empty() {
                    target = val.vars.clone();
                } else if target != val.vars {
                    return Err(Error::VarMismatch(target.to_vec(), val.vars.to_vec()));
                }
            }
        }
        let mut cols = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let used = self.terms.keys().any(|e| e[i] > 0);
            match assignment.get(v) {
                Some(val) => cols.push(Some(val.promoted(&target))),
                None if !used => cols.push(None),
                None => return Err(Error::MissingAssignment(v.clone())),
            }
        }
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(&target, c.clone());
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    term = &term * &cols[i].as_ref().unwrap().pow(d);
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Full numeric evaluation with values listed in indeterminate order.
    pub fn eval_at(&self, values: &[C]) -> Result<C> {
        if values.len() != self.vars.len() {
            return Err(Error::Usage(format!(
                "expected {} values, got {}",
                self.vars.len(),
                values.len()
            )));
        }
        let mut s = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &d) in e.iter().enumerate() {
                for _ in 0..d {
                    t = t * values[i].clone();
                }
            }
            s = s + t;
        }
        Ok(s)
    }

    /// Terms in graded order: ascending total degree, then descending lexicographic exponents.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        v
    }

    fn render_monomial(&self, e: &[u32]) -> String {
        let mut parts = Vec::new();
        for (i, &d) in e.iter().enumerate() {
            match d {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], d)),
            }
        }
        parts.join("*")
    }
}

impl<C: Scalar> PartialEq for MultiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        match self.unify(other) {
            Ok(vars) => self.promoted(&vars).terms == other.promoted(&vars).terms,
            Err(_) => false,
        }
    }
}

impl<C: Scalar> Eq for MultiPoly<C> {}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let m = self.render_monomial(e);
            if m.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<C: Scalar> $tr<&MultiPoly<C>> for &MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                self.$try(rhs).expect("polynomial operands over different indeterminates")
            }
        }
        impl<C: Scalar> $tr<MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl<C: Scalar> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<C: Scalar> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

/// Quotient of two polynomials in the single indeterminate k.
#[derive(Clone, Debug)]
pub struct RationalFunc<C> {
    num: MultiPoly<C>,
    den: MultiPoly<C>,
}

pub type RatFunc = RationalFunc<Rational>;

pub fn k_vars() -> VarSet {
    var_set(&["k"])
}

impl<C: Scalar> RationalFunc<C> {
    pub fn new(num: MultiPoly<C>, den: MultiPoly<C>) -> Result<Self> {
        let kv = k_vars();
        let num = num.embed(&kv)?;
        let den = den.embed(&kv)?;
        if den.is_zero() {
            return Err(Error::Usage("zero denominator".into()));
        }
        // Normalize the content: make the leading coefficient of the denominator one.
        let lead = den.terms.iter().next_back().map(|(_, c)| c.clone()).unwrap();
        let inv = C::one() / lead;
        Ok(RationalFunc { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: MultiPoly<C>) -> Result<Self> {
        Self::new(p, MultiPoly::scalar(C::one()))
    }

    pub fn constant(c: C) -> Self {
        Self::from_poly(MultiPoly::scalar(c)).unwrap()
    }

    pub fn numer(&self) -> &MultiPoly<C> {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, k0: &C) -> Result<C> {
        let d = self.den.eval_at(std::slice::from_ref(k0))?;
        if d.is_zero() {
            return Err(Error::Pole(k0.to_string()));
        }
        Ok(self.num.eval_at(std::slice::from_ref(k0))? / d)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Usage("division by the zero rational function".into()));
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> Self {
        RationalFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl<C: Scalar> PartialEq for RationalFunc<C> {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<C: Scalar> fmt::Display for RationalFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den.as_constant() {
            Some(d) if d.is_one() => write!(f, "{}", self.num),
            _ => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn h() -> VarSet {
        var_set(&["H1", "H2", "H3"])
    }

    #[test]
    fn product_examples() {
        let v = h();
        let h1 = Poly::var(&v, "H1").unwrap();
        let h2 = Poly::var(&v, "H2").unwrap();
        let h3 = Poly::var(&v, "H3").unwrap();
        assert_eq!(&h2 * &(&h1 + &h2), &(&h1 * &h2) + &(&h2 * &h2));
        let three = Poly::constant(&v, int(3));
        let two = Poly::constant(&v, int(2));
        let a = &three + &(&two * &h1);
        let b = &three + &(&two * &h3);
        assert_eq!((&a * &b).to_string(), "9 + 6*H1 + 6*H3 + 4*H1*H3");
        let t = var_set(&["t"]);
        assert!((&Poly::var(&t, "t").unwrap() * &Poly::zero(&t)).is_zero());
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let a = Poly::var(&var_set(&["t"]), "t").unwrap();
        let b = Poly::var(&var_set(&["n"]), "n").unwrap();
        assert!(matches!(a.try_mul(&b), Err(Error::VarMismatch(..))));
        assert_eq!(a.try_mul(&Poly::scalar(int(2))).unwrap().to_string(), "2*t");
    }

    #[test]
    fn eval_examples() {
        let v = h();
        let h1 = Poly::var(&v, "H1").unwrap();
        let h2 = Poly::var(&v, "H2").unwrap();
        let h3 = Poly::var(&v, "H3").unwrap();
        let p = &h2 * &(&h1 + &h3);
        let mut a = HashMap::new();
        a.insert("H2".to_string(), Poly::scalar(int(0)));
        a.insert("H1".to_string(), Poly::scalar(int(5)));
        a.insert("H3".to_string(), Poly::scalar(int(1)));
        assert!(p.eval(&a).unwrap().is_zero());
        a.remove("H3");
        assert!(matches!(p.eval(&a), Err(Error::MissingAssignment(s)) if s == "H3"));
    }

    #[test]
    fn rf_examples() {
        let kv = k_vars();
        let k = Poly::var(&kv, "k").unwrap();
        let c = |x| Poly::constant(&kv, int(x));
        let num = -(&(&c(8) + &(&c(3) * &k)) * &(&c(17) + &(&c(8) * &k)));
        let den = &c(2) * &(&c(4) + &k);
        let f = RatFunc::new(num, den).unwrap();
        assert_eq!(f.eval(&rat(-5, 2)).unwrap(), rat(1, 2));
        assert!(matches!(f.eval(&int(-4)), Err(Error::Pole(_))));
        let g = RatFunc::from_poly(
            &(&(&c(2) + &k) * &(&c(5) + &(&c(2) * &k))) * &(&c(8) + &(&c(3) * &k)),
        )
        .unwrap();
        assert!(g.eval(&rat(-5, 2)).unwrap().is_zero());
    }

    #[test]
    fn generic_over_machine_ratios() {
        let v = var_set(&["x"]);
        let x = MultiPoly::<Ratio<i64>>::var(&v, "x").unwrap();
        let one = MultiPoly::constant(&v, Ratio::new(1, 2));
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p.to_string(), "-1/4 + x^2");
        assert_eq!(p.eval_at(&[Ratio::new(1, 2)]).unwrap(), Ratio::new(0, 1));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("-5/2").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
