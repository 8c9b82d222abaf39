//! C2-algebra image in S(g) (tensored with the top space), the ad-x grading of sl(4) and the
//! reduction modulo J_chi.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::affine::{parse_vector_file, AffineModule, Letter, ModuleVector, TopHeader, TopKey};
use crate::error::{Error, Result};
use crate::lie::{GElem, Gen, SlN};
use crate::scalar::{int, rat, var_set, Poly, Rational};
use crate::text::TermSpec;

/// Commutative monomial in the basis symbols, as a sorted multiset.
pub type SMonomial = Vec<Gen>;

/// Element of S(g) (x) top space with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SGElement {
    terms: BTreeMap<(SMonomial, TopKey), Poly>,
}

impl SGElement {
    pub fn zero() -> SGElement {
        SGElement::default()
    }

    pub fn add_term(&mut self, mut m: SMonomial, t: TopKey, c: Poly) {
        if c.is_zero() {
            return;
        }
        m.sort();
        let key = (m, t);
        let s = match self.terms.get(&key) {
            Some(x) => x + &c,
            None => c,
        };
        if s.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(SMonomial, TopKey), &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &SGElement) -> SGElement {
        let mut out = self.clone();
        for ((m, t), c) in &o.terms {
            out.add_term(m.clone(), t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &SGElement) -> SGElement {
        self.add(&o.scale(&Poly::scalar(int(-1))))
    }

    pub fn scale(&self, c: &Poly) -> SGElement {
        let mut out = SGElement::zero();
        for ((m, t), x) in &self.terms {
            out.add_term(m.clone(), t.clone(), x * c);
        }
        out
    }

    /// Multiplication by a basis symbol.
    pub fn mul_gen(&self, g: Gen) -> SGElement {
        let mut out = SGElement::zero();
        for ((m, t), c) in &self.terms {
            let mut m2 = m.clone();
            m2.push(g);
            out.add_term(m2, t.clone(), c.clone());
        }
        out
    }

    /// Sum of the basis weights of the symbols plus the top weight, per term.
    pub fn weights(&self, m: &AffineModule) -> Result<Vec<crate::lie::Weight>> {
        let r = m.sl().rank();
        let mut out = Vec::new();
        for (mono, t) in self.terms.keys() {
            let mut w = m.top_weight(t);
            for g in mono {
                w = w.add(&crate::lie::Weight::from_ints(&g.weight(r)))?;
            }
            if !out.contains(&w) {
                out.push(w);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((m, t), c) in &self.terms {
            if !first {
                writeln!(f)?;
            }
            first = false;
            let word = render_monomial(m);
            let top = if t.iter().all(|&a| a == 0) { "v".to_string() } else { format!("v{t:?}") };
            let sep = if word.is_empty() { "" } else { " " };
            write!(f, "+ ({c}) * {word}{sep}{top}")?;
        }
        Ok(())
    }
}

fn render_monomial(m: &[Gen]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(m[i].to_string());
        } else {
            parts.push(format!("{}^{}", m[i], j - i));
        }
        i = j;
    }
    parts.join(" ")
}

/// x(-1) w -> x w; a factor of mode <= -2 kills the word.
pub fn c2_project(v: &ModuleVector) -> Result<SGElement> {
    let mut out = SGElement::zero();
    for ((w, t), c) in v.terms() {
        if let Some(l) = w.iter().find(|l| l.mode >= 0) {
            return Err(Error::Usage(format!("mode {} in the C2 projection", l.mode)));
        }
        if w.iter().any(|l| l.mode <= -2) {
            continue;
        }
        out.add_term(w.iter().map(|l| l.gen).collect(), t.clone(), c.clone());
    }
    Ok(out)
}

/// Builds an S(g) element from `.sg` term lines: mode-free atoms are symbols, atoms with
/// mode 0 act on the top vector of `m`.
pub fn build_sg(m: &AffineModule, terms: &[TermSpec]) -> Result<SGElement> {
    let vars = var_set(&["n"]);
    let mut out = SGElement::zero();
    for t in terms {
        let mut c = t.coef.to_poly(&vars)?;
        if c.degree_in("n") == 0 {
            c = Poly::scalar(c.as_constant().unwrap());
        }
        let mut syms = Vec::new();
        let mut zero_modes = Vec::new();
        for a in &t.atoms {
            let g = m.sl().check(Gen::from_parts(&a.name, &a.idx)?)?;
            match a.mode {
                None => syms.extend(std::iter::repeat_n(g, a.pow as usize)),
                Some(0) => zero_modes.extend(std::iter::repeat_n(Letter::new(g, 0), a.pow as usize)),
                Some(x) => return Err(Error::Parse(format!("mode {x} in an S(g) term"))),
            }
        }
        let top = m.apply_word(&zero_modes, &m.highest())?;
        for ((w, key), x) in top.terms() {
            if !w.is_empty() {
                return Err(Error::Consistency("zero modes left a word".into()));
            }
            out.add_term(syms.clone(), key.clone(), x.try_mul(&c)?);
        }
    }
    Ok(out)
}

/// Parses an `.sg` file; the vacuum header is optional.
pub fn parse_sg_file(m: &AffineModule, src: &str) -> Result<SGElement> {
    let terms = if src.lines().any(|l| l.trim_start().starts_with("top")) {
        let (h, terms) = parse_vector_file(src)?;
        if h == TopHeader::Vacuum && !matches!(m.top(), crate::affine::TopSpaceModel::Trivial) {
            return Err(Error::Usage("vacuum image over a non-trivial top".into()));
        }
        terms
    } else {
        let mut out = Vec::new();
        for (no, line) in crate::text::content_lines(src) {
            out.append(
                &mut crate::text::parse_terms(line)
                    .map_err(|e| Error::Parse(format!("line {no}: {e}")))?,
            );
        }
        out
    };
    build_sg(m, &terms)
}

/// ad-x grading with x = (3 h1 + 6 h2 + 5 h3)/4 and chi = (f_subreg | .).
#[derive(Clone, Debug)]
pub struct ChiData {
    pub grading: BTreeMap<Gen, Rational>,
    pub chi: BTreeMap<Gen, Rational>,
}

impl ChiData {
    pub fn degree(&self, g: Gen) -> Rational {
        self.grading[&g].clone()
    }

    /// Basis of g_j.
    pub fn part(&self, j: i64) -> Vec<Gen> {
        self.grading.iter().filter(|(_, d)| **d == int(j)).map(|(g, _)| *g).collect()
    }

    /// Basis of m = sum of g_j for j >= 1.
    pub fn m(&self) -> Vec<Gen> {
        self.grading.iter().filter(|(_, d)| **d >= int(1)).map(|(g, _)| *g).collect()
    }
}

pub fn compute_grading(sl: &SlN) -> Result<ChiData> {
    if sl.n() != 4 {
        return Err(Error::Unsupported("subregular data is defined for sl(4)".into()));
    }
    let x = [rat(3, 4), rat(6, 4), rat(5, 4)];
    let mut f = GElem::zero();
    f.add(Gen::f(2, 3), &Poly::scalar(int(1)));
    f.add(Gen::f(3, 4), &Poly::scalar(int(1)));
    let mut grading = BTreeMap::new();
    let mut chi = BTreeMap::new();
    for g in sl.basis() {
        // alpha(x) = sum_i x_i alpha(h_i), alpha(h_i) = sum_j r_j C_ji.
        let r = g.root(sl.rank());
        let mut d = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            let ai: i64 = (0..sl.rank()).map(|j| r[j] * sl.cartan(j + 1, i + 1)).sum();
            d += xi * int(ai);
        }
        grading.insert(g, d);
        let q = sl
            .inv_form(&f, &GElem::gen(g))
            .as_constant()
            .ok_or_else(|| Error::Consistency("symbolic form".into()))?;
        chi.insert(g, q);
    }
    Ok(ChiData { grading, chi })
}

/// Substitutes x -> chi(x) for every x in m.
pub fn jchi_reduce(chi: &ChiData, s: &SGElement) -> SGElement {
    let m = chi.m();
    let mut out = SGElement::zero();
    for ((mono, t), c) in s.terms() {
        let mut coef = Rational::from_integer(1.into());
        let mut rest = Vec::new();
        for g in mono {
            if m.contains(g) {
                coef *= &chi.chi[g];
            } else {
                rest.push(*g);
            }
        }
        if !coef.is_zero() {
            out.add_term(rest, t.clone(), c.scale(&coef));
        }
    }
    out
}

/// Reads off a single-monomial result as `(symbols, top, coefficient)`.
pub fn single_term(s: &SGElement) -> Option<(SMonomial, TopKey, Poly)> {
    if s.len() != 1 {
        return None;
    }
    s.terms().next().map(|((m, t), c)| (m.clone(), t.clone(), c.clone()))
}

/// 3n(3/2 + n), the coefficient of both module reductions.
pub fn wnu_reduction_coefficient() -> Result<Poly> {
    crate::text::parse_poly("3*n*(3/2+n)", &var_set(&["n"]))
}
