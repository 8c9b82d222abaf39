//! OPE data of the subregular W-algebra of sl(4) as coefficients rational in k, the
//! collapsing-level checks and the reduced highest-weight data.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lie::{SlN, Weight};
use crate::scalar::{int, is_integer, rat, Poly, RatFunc, Rational};
use crate::text::parse_ratfunc;

/// Generators with their conformal weights.
pub const GENERATORS: [(&str, u32); 5] = [("J", 1), ("L", 2), ("W", 3), ("G+", 2), ("G-", 2)];

/// Formal field word such as `:JdG+:`; a label only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldWord(pub String);

impl FieldWord {
    /// Conformal weight: generator weights plus one per derivative.
    pub fn weight(&self) -> Result<u32> {
        let s = self.0.as_str();
        if s == "1" {
            return Ok(0);
        }
        let body = s.strip_prefix(':').and_then(|x| x.strip_suffix(':')).unwrap_or(s);
        let chars: Vec<char> = body.chars().filter(|c| *c != '(' && *c != ')').collect();
        let mut w = 0u32;
        let mut i = 0;
        while i < chars.len() {
            match chars[i] {
                'd' => {
                    if chars.get(i + 1) == Some(&'2') {
                        w += 2;
                        i += 2;
                    } else {
                        w += 1;
                        i += 1;
                    }
                }
                'J' => {
                    w += 1;
                    i += 1;
                }
                'L' | 'W' => {
                    w += if chars[i] == 'L' { 2 } else { 3 };
                    i += 1;
                }
                'G' => {
                    if !matches!(chars.get(i + 1), Some('+') | Some('-')) {
                        return Err(Error::Parse(format!("unsigned G in `{s}`")));
                    }
                    w += 2;
                    i += 2;
                }
                c => return Err(Error::Parse(format!("unknown symbol `{c}` in `{s}`"))),
            }
        }
        Ok(w)
    }
}

fn gen_weight(name: &str) -> Result<u32> {
    GENERATORS
        .iter()
        .find(|(g, _)| *g == name)
        .map(|(_, w)| *w)
        .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))
}

#[derive(Deserialize)]
struct RawFile {
    ope: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    a: String,
    b: String,
    pole: u32,
    terms: Vec<(String, String)>,
}

/// (A, B, pole) -> combination of field words.
#[derive(Clone, Debug, Default)]
pub struct OpeTable {
    entries: BTreeMap<(String, String, u32), Vec<(FieldWord, RatFunc)>>,
}

impl OpeTable {
    pub fn get(&self, a: &str, b: &str, pole: u32) -> Option<&[(FieldWord, RatFunc)]> {
        self.entries.get(&(a.to_string(), b.to_string(), pole)).map(|v| v.as_slice())
    }

    pub fn coefficient(&self, a: &str, b: &str, pole: u32, word: &str) -> RatFunc {
        self.get(a, b, pole)
            .and_then(|ts| ts.iter().find(|(w, _)| w.0 == word))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| RatFunc::constant(Rational::zero()))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(String, String, u32), &Vec<(FieldWord, RatFunc)>)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Highest pole order stored for a pair.
    pub fn top_pole(&self, a: &str, b: &str) -> Option<u32> {
        self.entries.keys().filter(|(x, y, _)| x == a && y == b).map(|(_, _, p)| *p).max()
    }

    /// Every word has weight wt(A) + wt(B) - pole.
    pub fn weight_violations(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for ((a, b, p), ts) in &self.entries {
            let expect = i64::from(gen_weight(a)? + gen_weight(b)?) - i64::from(*p);
            for (w, _) in ts {
                if i64::from(w.weight()?) != expect {
                    out.push(format!("{a}(z){b}(w) pole {p}: {}", w.0));
                }
            }
        }
        Ok(out)
    }
}

/// Splits a `+-`/`-+` prefix into the signs for G+ and G-.
fn signed(coef: &str) -> (i64, i64, &str) {
    if let Some(r) = coef.strip_prefix("+-") {
        (1, -1, r)
    } else if let Some(r) = coef.strip_prefix("-+") {
        (-1, 1, r)
    } else {
        (1, 1, coef)
    }
}

fn with_sign(word: &str, s: char) -> String {
    word.replace('G', &format!("G{s}"))
}

pub fn load_table(src: &str) -> Result<OpeTable> {
    let raw: RawFile = toml::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
    let mut t = OpeTable::default();
    for e in raw.ope {
        let variants: Vec<(String, Option<usize>)> = if e.b == "G+-" {
            vec![("G+".into(), Some(0)), ("G-".into(), Some(1))]
        } else {
            vec![(e.b.clone(), None)]
        };
        for (b, which) in variants {
            gen_weight(&e.a)?;
            gen_weight(&b)?;
            let mut terms = Vec::new();
            for (w, c) in &e.terms {
                let (sp, sm, body) = signed(c);
                let mut rf = parse_ratfunc(body)?;
                let word = match which {
                    Some(0) => with_sign(w, '+'),
                    Some(_) => with_sign(w, '-'),
                    None => w.clone(),
                };
                let s = match which {
                    Some(0) => sp,
                    Some(_) => sm,
                    None => {
                        if sp != sm {
                            return Err(Error::Parse(format!("sign pair on ({}, {b})", e.a)));
                        }
                        sp
                    }
                };
                if s < 0 {
                    rf = rf.neg();
                }
                let fw = FieldWord(word);
                fw.weight()?;
                terms.push((fw, rf));
            }
            let key = (e.a.clone(), b, e.pole);
            if t.entries.insert(key.clone(), terms).is_some() {
                return Err(Error::Parse(format!("duplicate entry {key:?}")));
            }
        }
    }
    Ok(t)
}

#[derive(Clone, Debug)]
pub struct CollapseReport {
    pub k: Rational,
    pub pole4: Rational,
    pub pole3: Rational,
    /// Coefficients of L, :JJ:, dJ in the second-order pole of G+ G-.
    pub pole2: [Rational; 3],
    /// s with pole2 = s (L - 4 :JJ:), when it exists.
    pub pole2_scalar: Option<Rational>,
    pub central: Rational,
    pub central_charge: Rational,
    pub ww_leading: Rational,
    /// First-order pole of G+ G-, evaluated and reported only.
    pub pole1: Vec<(String, Rational)>,
}

impl CollapseReport {
    /// All collapse conditions hold.
    pub fn collapses(&self) -> bool {
        self.pole4.is_zero()
            && self.pole3.is_zero()
            && self.pole2_scalar.as_ref().is_some_and(|s| !s.is_zero())
            && self.central == rat(1, 2)
            && self.ww_leading.is_zero()
    }

    /// None of the vanishing conditions hold.
    pub fn none_vanish(&self) -> bool {
        !self.pole4.is_zero()
            && !self.pole3.is_zero()
            && self.pole2_scalar.is_none()
            && self.central != rat(1, 2)
            && !self.ww_leading.is_zero()
    }
}

pub fn collapse_check(t: &OpeTable, k0: &Rational) -> Result<CollapseReport> {
    let ev = |a: &str, b: &str, p: u32, w: &str| t.coefficient(a, b, p, w).eval(k0);
    let pole4 = ev("G+", "G-", 4, "1")?;
    let pole3 = ev("G+", "G-", 3, "J")?;
    let pole2 = [ev("G+", "G-", 2, "L")?, ev("G+", "G-", 2, ":JJ:")?, ev("G+", "G-", 2, "dJ")?];
    let extra: Vec<&FieldWord> = t
        .get("G+", "G-", 2)
        .unwrap_or(&[])
        .iter()
        .map(|(w, _)| w)
        .filter(|w| !matches!(w.0.as_str(), "L" | ":JJ:" | "dJ"))
        .collect();
    let s = pole2[0].clone();
    let pole2_scalar = (extra.is_empty()
        && !s.is_zero()
        && pole2[1] == &s * int(-4)
        && pole2[2].is_zero())
    .then_some(s);
    let central = ev("L", "L", 4, "1")?;
    let central_charge = &central * int(2);
    let ww_leading = ev("W", "W", 6, "1")?;
    let mut pole1 = Vec::new();
    for (w, c) in t.get("G+", "G-", 1).unwrap_or(&[]) {
        pole1.push((w.0.clone(), c.eval(k0)?));
    }
    Ok(CollapseReport {
        k: k0.clone(),
        pole4,
        pole3,
        pole2,
        pole2_scalar,
        central,
        central_charge,
        ww_leading,
        pole1,
    })
}

/// x = (3 h1 + 6 h2 + 5 h3)/4 as coefficients on h_i.
pub fn x_coefficients() -> [Rational; 3] {
    [rat(3, 4), rat(6, 4), rat(5, 4)]
}

/// (Delta_W, J_0): Delta_W = (mu|mu+2rho)/(2(k+4)) - mu(x), J_0 = (mu|w_1).
pub fn hf_top_data(sl: &SlN, mu: &Weight, k: &Rational) -> Result<(Poly, Poly)> {
    if sl.n() != 4 {
        return Err(Error::Unsupported("reduction data is defined for sl(4)".into()));
    }
    let conf = sl.conformal_weight(mu, k)?;
    let mut mx = Poly::scalar(Rational::zero());
    for (i, c) in x_coefficients().iter().enumerate() {
        mx = mx.try_add(&mu.0[i].scale(c))?;
    }
    let j0 = sl.weight_form(mu, &sl.fundamental(1))?;
    Ok((conf.try_sub(&mx)?, j0))
}

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub n: u32,
    pub delta_w: Rational,
    pub delta_k: Rational,
}

#[derive(Clone, Debug)]
pub struct IntegralityScan {
    pub fundamental: usize,
    pub rows: Vec<ScanRow>,
    /// n with Delta_W = 0, the weight of the vacuum of M_J(1).
    pub vacuum_weight: Vec<u32>,
    /// n with Delta_W in Z>=0.
    pub integral: Vec<u32>,
    /// n > 0 with Delta_W = 0 excluded because Delta_k(n w_i) is not an integer.
    pub excluded: Vec<(u32, Rational)>,
}

pub fn integrality_scan(sl: &SlN, fundamental: usize, n_max: u32, k: &Rational) -> Result<IntegralityScan> {
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let mu = sl.fundamental(fundamental).scale(&int(i64::from(n)));
        let (dw, _) = hf_top_data(sl, &mu, k)?;
        let dk = sl.conformal_weight(&mu, k)?;
        let c = |p: &Poly| p.as_constant().ok_or_else(|| Error::Consistency("symbolic".into()));
        rows.push(ScanRow { n, delta_w: c(&dw)?, delta_k: c(&dk)? });
    }
    let vacuum_weight: Vec<u32> = rows.iter().filter(|r| r.delta_w.is_zero()).map(|r| r.n).collect();
    let integral: Vec<u32> = rows
        .iter()
        .filter(|r| is_integer(&r.delta_w) && r.delta_w >= Rational::zero())
        .map(|r| r.n)
        .collect();
    let excluded = rows
        .iter()
        .filter(|r| r.n > 0 && r.delta_w.is_zero() && !is_integer(&r.delta_k))
        .map(|r| (r.n, r.delta_k.clone()))
        .collect();
    Ok(IntegralityScan { fundamental, rows, vacuum_weight, integral, excluded })
}
