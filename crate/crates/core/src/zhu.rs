//! Zhu-algebra image of vacuum vectors, the polynomials p1, p2 and the weight classification.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::affine::{AffineModule, ModuleVector, TopSpaceModel};
use crate::enveloping::{
    cartan_vars, generate_ad_submodule, hc_project, zero_weight_subspace, UAlgebra, UElement,
    DEFAULT_DIMENSION_CAP,
};
use crate::error::{Error, Result};
use crate::lie::{Gen, SlN};
use crate::scalar::{int, is_integer, rat, var_set, Poly, Rational, VarSet};
use crate::text::{content_lines, parse_poly, parse_terms};

/// F(a_1(-n_1-1) ... a_m(-n_m-1) 1) = (-1)^(n_1+...+n_m) a_m ... a_1, normal ordered.
pub fn zhu_project(m: &AffineModule, v: &ModuleVector) -> Result<UElement> {
    if *m.top() != TopSpaceModel::Trivial {
        return Err(Error::Usage("Zhu projection needs a vacuum vector".into()));
    }
    let alg = UAlgebra::new(m.sl());
    let mut out = UElement::zero();
    for ((w, _), c) in v.terms() {
        let mut shift = 0i64;
        for l in w {
            if l.mode >= 0 {
                return Err(Error::Usage(format!("non-negative mode in {l}")));
            }
            shift += -i64::from(l.mode) - 1;
        }
        let sign = if shift % 2 == 0 { int(1) } else { int(-1) };
        let gens: Vec<Gen> = w.iter().rev().map(|l| l.gen).collect();
        let p = alg.product(&gens);
        for (word, x) in p.terms() {
            out.add_term(word.clone(), (x * c).scale(&sign));
        }
    }
    Ok(out)
}

/// Parses a `.ug` file: each line an ordered product of generators, normal ordered on load.
pub fn parse_u_element(sl: &SlN, src: &str) -> Result<UElement> {
    let alg = UAlgebra::new(sl);
    let vars = var_set::<&str>(&[]);
    let mut out = UElement::zero();
    for (no, line) in content_lines(src) {
        for t in parse_terms(line).map_err(|e| Error::Parse(format!("line {no}: {e}")))? {
            let c = t.coef.to_poly(&vars)?;
            let mut gens = Vec::new();
            for a in &t.atoms {
                if a.mode.is_some() {
                    return Err(Error::Parse(format!("line {no}: modes are not allowed in U(g)")));
                }
                let g = sl.check(Gen::from_parts(&a.name, &a.idx)?)?;
                gens.extend(std::iter::repeat_n(g, a.pow as usize));
            }
            let p = alg.product(&gens);
            for (w, x) in p.terms() {
                out.add_term(w.clone(), x * &c);
            }
        }
    }
    Ok(out)
}

/// The named polynomials of the `p0` data file.
pub fn parse_named_polys(src: &str, vars: &VarSet) -> Result<BTreeMap<String, Poly>> {
    let mut out = BTreeMap::new();
    for (no, line) in content_lines(src) {
        let (lhs, rhs) =
            line.split_once('=').ok_or_else(|| Error::Parse(format!("line {no}: missing `=`")))?;
        out.insert(lhs.trim().to_string(), parse_poly(rhs, vars)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct P0 {
    pub submodule_dim: usize,
    pub zero_weight_dim: usize,
    pub p1: Poly,
    pub p2: Poly,
}

/// p1 = HC((f24 f13)_L v'), p2 = HC((f23 f14)_L v') for the generator v' of R.
pub fn extract_p0(sl: &SlN, vprime: &UElement) -> Result<P0> {
    if sl.n() != 4 {
        return Err(Error::Unsupported("P0 is defined for sl(4)".into()));
    }
    let basis = generate_ad_submodule(sl, vprime, DEFAULT_DIMENSION_CAP)?;
    let zero = zero_weight_subspace(sl, &basis)?;
    if zero.len() != 2 {
        return Err(Error::Consistency(format!(
            "zero-weight space of dimension {} instead of 2",
            zero.len()
        )));
    }
    let alg = UAlgebra::new(sl);
    let lower = |a: Gen, b: Gen| alg.ad_gen(a, &alg.ad_gen(b, vprime));
    let v1 = lower(Gen::f(2, 4), Gen::f(1, 3));
    let v2 = lower(Gen::f(2, 3), Gen::f(1, 4));
    Ok(P0 {
        submodule_dim: basis.len(),
        zero_weight_dim: zero.len(),
        p1: hc_project(sl, &v1)?,
        p2: hc_project(sl, &v2)?,
    })
}

/// Nonzero 2x2 minor of the coefficient matrix of (p1, p2).
pub fn independent(p1: &Poly, p2: &Poly) -> bool {
    let keys: Vec<&Vec<u32>> = p1.terms().map(|(e, _)| e).chain(p2.terms().map(|(e, _)| e)).collect();
    for a in &keys {
        for b in &keys {
            let m = p1.coeff(a) * p2.coeff(b) - p1.coeff(b) * p2.coeff(a);
            if !m.is_zero() {
                return true;
            }
        }
    }
    false
}

/// A line mu_i(t) in (H1, H2, H3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFamily {
    pub id: usize,
    pub coords: Vec<Poly>,
}

pub fn t_vars() -> VarSet {
    var_set(&["t"])
}

pub fn parse_families(src: &str) -> Result<Vec<WeightFamily>> {
    let tv = t_vars();
    let mut out = Vec::new();
    for (no, line) in content_lines(src) {
        let (id, rest) =
            line.split_once(':').ok_or_else(|| Error::Parse(format!("line {no}: missing `:`")))?;
        let id: usize =
            id.trim().parse().map_err(|_| Error::Parse(format!("line {no}: bad id")))?;
        let coords =
            rest.split(',').map(|c| parse_poly(c, &tv)).collect::<Result<Vec<_>>>()?;
        if coords.len() != 3 {
            return Err(Error::Parse(format!("line {no}: expected three coordinates")));
        }
        out.push(WeightFamily { id, coords });
    }
    Ok(out)
}

/// p evaluated on the family, as a polynomial in t.
pub fn restrict(p: &Poly, fam: &WeightFamily) -> Result<Poly> {
    let mut a = HashMap::new();
    for (i, c) in fam.coords.iter().enumerate() {
        a.insert(format!("H{}", i + 1), c.embed(&t_vars())?);
    }
    p.eval(&a)?.embed(&t_vars())
}

#[derive(Clone, Debug)]
pub struct FamilyVerdict {
    pub id: usize,
    pub p1: Poly,
    pub p2: Poly,
}

impl FamilyVerdict {
    pub fn pass(&self) -> bool {
        self.p1.is_zero() && self.p2.is_zero()
    }
}

pub fn verify_families(p0: &P0, fams: &[WeightFamily]) -> Result<Vec<FamilyVerdict>> {
    fams.iter()
        .map(|f| {
            Ok(FamilyVerdict { id: f.id, p1: restrict(&p0.p1, f)?, p2: restrict(&p0.p2, f)? })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub c: Option<Rational>,
    pub c_prime: Option<Rational>,
    pub residual_f1: Poly,
    pub residual_f2: Poly,
    pub q_identity: bool,
}

impl Factorization {
    pub fn pass(&self) -> bool {
        self.c.is_some() && self.c_prime.is_some() && self.q_identity
    }
}

/// Finds c with c*a = b, if one exists.
pub fn proportionality(a: &Poly, b: &Poly) -> Option<Rational> {
    let (e, x) = a.terms().next()?;
    let c = b.coeff(e) / x.clone();
    (a.scale(&c) == *b).then_some(c)
}

/// Checks c p2 = H2 (H1+H2+H3+5/2) Q2, c' (p1+p2) = H1 H3 Q1 and Q1 - 4 Q2 = the stored form.
pub fn verify_factorizations(p0: &P0, named: &BTreeMap<String, Poly>) -> Result<Factorization> {
    let vars = cartan_vars(&SlN::new(4)?);
    let get = |k: &str| {
        named.get(k).cloned().ok_or_else(|| Error::Parse(format!("missing polynomial {k}")))
    };
    let h = |i: &str| Poly::var(&vars, i).unwrap();
    let q1 = get("Q1")?;
    let q2 = get("Q2")?;
    let lin = &(&(&h("H1") + &h("H2")) + &h("H3")) + &Poly::constant(&vars, rat(5, 2));
    let rhs1 = &(&h("H2") * &lin) * &q2;
    let rhs2 = &(&h("H1") * &h("H3")) * &q1;
    let sum = &p0.p1 + &p0.p2;
    let c = proportionality(&p0.p2, &rhs1);
    let cp = proportionality(&sum, &rhs2);
    let residual_f1 = match &c {
        Some(c) => &p0.p2.scale(c) - &rhs1,
        None => rhs1.clone(),
    };
    let residual_f2 = match &cp {
        Some(c) => &sum.scale(c) - &rhs2,
        None => rhs2.clone(),
    };
    let q_identity = &q1 - &q2.scale(&int(4)) == get("Q1 - 4*Q2")?;
    Ok(Factorization { c, c_prime: cp, residual_f1, residual_f2, q_identity })
}

/// Dominance of a family over integer t.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dominance {
    /// Dominant integral exactly for integer t >= start.
    FromOnward(Rational),
    /// Dominant integral only at finitely many t (possibly none); the certificate explains why.
    Finite { values: Vec<Rational>, certificate: String },
}

fn affine_parts(p: &Poly) -> Result<(Rational, Rational)> {
    if p.total_degree() > 1 {
        return Err(Error::Unsupported("non-linear family coordinate".into()));
    }
    let z = p.coeff(&[0]);
    let a = p.coeff(&[1]);
    Ok((a, z))
}

/// Solves a*t + b in Z>=0 for all coordinates with slopes in {-1, 0, 1}.
pub fn dominant_integral(fam: &WeightFamily) -> Result<Dominance> {
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    let mut residue: Option<Rational> = None;
    for (i, c) in fam.coords.iter().enumerate() {
        let (a, b) = affine_parts(&c.embed(&t_vars())?)?;
        if a.is_zero() {
            if !is_integer(&b) || b.is_negative() {
                return Ok(Dominance::Finite {
                    values: Vec::new(),
                    certificate: format!("coordinate {} is the constant {b}", i + 1),
                });
            }
            continue;
        }
        if a.abs() != Rational::one() {
            return Err(Error::Unsupported("family slope other than +-1".into()));
        }
        // t must be congruent to -b/a modulo 1.
        let r = (-&b / &a).fract();
        let r = if r.is_negative() { r + int(1) } else { r };
        match &residue {
            Some(x) if *x != r => {
                return Ok(Dominance::Finite {
                    values: Vec::new(),
                    certificate: "coordinates need incompatible fractional parts of t".into(),
                })
            }
            _ => residue = Some(r),
        }
        let bound = -&b / &a;
        if a.is_positive() {
            lo = Some(lo.map_or(bound.clone(), |l: Rational| l.max(bound.clone())));
        } else {
            hi = Some(hi.map_or(bound.clone(), |h: Rational| h.min(bound.clone())));
        }
    }
    match (lo, hi) {
        (Some(l), None) => Ok(Dominance::FromOnward(l)),
        (None, Some(_)) | (None, None) => Err(Error::Unsupported("unbounded below".into())),
        (Some(l), Some(h)) => {
            let mut values = Vec::new();
            let mut t = l.clone();
            while t <= h {
                values.push(t.clone());
                t += int(1);
            }
            let certificate = if values.is_empty() {
                format!("needs t >= {l} and t <= {h}")
            } else {
                format!("t confined to [{l}, {h}]")
            };
            Ok(Dominance::Finite { values, certificate })
        }
    }
}

/// All (family id, t) with mu_i(t) = mu.
pub fn family_membership(fams: &[WeightFamily], mu: &[Rational]) -> Result<Vec<(usize, Rational)>> {
    let mut out = Vec::new();
    'fam: for f in fams {
        let mut t: Option<Rational> = None;
        let mut consts = Vec::new();
        for (i, c) in f.coords.iter().enumerate() {
            let (a, b) = affine_parts(&c.embed(&t_vars())?)?;
            if a.is_zero() {
                consts.push((i, b));
            } else {
                let s = (&mu[i] - &b) / &a;
                match &t {
                    Some(x) if *x != s => continue 'fam,
                    _ => t = Some(s),
                }
            }
        }
        if consts.iter().any(|(i, b)| *b != mu[*i]) {
            continue;
        }
        if let Some(t) = t {
            out.push((f.id, t));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct BoxScan {
    pub points: usize,
    pub zeros: usize,
    pub off_line: Vec<Vec<Rational>>,
    pub missed: Vec<Vec<Rational>>,
}

impl BoxScan {
    pub fn pass(&self) -> bool {
        self.off_line.is_empty() && self.missed.is_empty()
    }
}

/// Scans half-integer points of [-r, r]^3: common zeros of p1, p2 must be exactly the family points.
pub fn box_scan(p0: &P0, fams: &[WeightFamily], r: i64) -> Result<BoxScan> {
    let grid: Vec<Rational> = (-2 * r..=2 * r).map(|i| rat(i, 2)).collect();
    let mut scan = BoxScan { points: 0, zeros: 0, off_line: Vec::new(), missed: Vec::new() };
    for a in &grid {
        for b in &grid {
            for c in &grid {
                let mu = vec![a.clone(), b.clone(), c.clone()];
                scan.points += 1;
                let z = p0.p1.eval_at(&mu)?.is_zero() && p0.p2.eval_at(&mu)?.is_zero();
                let on = !family_membership(fams, &mu)?.is_empty();
                if z {
                    scan.zeros += 1;
                }
                if z && !on {
                    scan.off_line.push(mu);
                } else if on && !z {
                    scan.missed.push(mu);
                }
            }
        }
    }
    Ok(scan)
}
