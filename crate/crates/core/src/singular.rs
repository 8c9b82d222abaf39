//! Singularity tests for the explicit vectors: vacuum sl(4), the degree-2 vectors over
//! symmetric powers, the sl(5) vector u and the gl(4) singular vectors of the sl(5) modules.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::{
    parse_vector_file, standard_conditions, AffineModule, Direction, Letter, ModuleVector, SymN,
    TopHeader, TopKey, TopSpaceModel, Word,
};
use crate::error::{Error, Result};
use crate::lie::{Gen, SlN, Weight};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::{int, is_integer, rat, var_set, Poly, Rational};
use crate::text::{content_lines, parse_poly, TermSpec};
use crate::zhu::{family_membership, WeightFamily};

/// The level of every computation in this module.
pub fn level() -> Rational {
    rat(-5, 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The vector itself vanishes, so no statement is made.
    Degenerate,
}

#[derive(Clone, Debug)]
pub struct Residual {
    pub condition: String,
    pub rendered: String,
    pub zero: bool,
}

#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub id: String,
    pub residuals: Vec<Residual>,
    pub verdict: Verdict,
    pub affine_weight: Option<String>,
    pub terms: usize,
}

impl SingularityReport {
    pub fn pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Applies every condition letter and collects the residuals.
pub fn is_singular(
    m: &AffineModule,
    id: &str,
    v: &ModuleVector,
    conditions: &[(String, Letter)],
) -> Result<SingularityReport> {
    let mut residuals = Vec::new();
    for (name, l) in conditions {
        let r = m.act_letter(*l, v)?;
        residuals.push(Residual { condition: name.clone(), rendered: m.render(&r), zero: r.is_zero() });
    }
    let verdict = if v.is_zero() {
        Verdict::Degenerate
    } else if residuals.iter().all(|r| r.zero) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let affine_weight = m.affine_weight(v).ok().map(|w| w.to_string());
    Ok(SingularityReport { id: id.to_string(), residuals, verdict, affine_weight, terms: v.len() })
}

/// Conditions for gl(4) inside sl(5): e_i(0) for i = 1, 2, 3 and f[1,4](1).
pub fn gl4_conditions() -> Vec<(String, Letter)> {
    let mut v: Vec<(String, Letter)> = (1..=3u8)
        .map(|i| {
            let g = Gen::e(i, i + 1);
            (format!("{g}(0)"), Letter::new(g, 0))
        })
        .collect();
    let g = Gen::f(1, 4);
    v.push((format!("{g}(1)"), Letter::new(g, 1)));
    v
}

/// A golden vector file loaded into its module.
pub struct LoadedVector {
    pub module: AffineModule,
    pub vector: ModuleVector,
    pub terms: Vec<TermSpec>,
}

/// Loads a `.vec` file over sl(n) at level k; `n` selects the symmetric-power size.
pub fn load_vector(sl: &SlN, k: &Rational, src: &str, n: Option<SymN>) -> Result<LoadedVector> {
    let (header, terms) = parse_vector_file(src)?;
    let top = match header {
        TopHeader::Vacuum => TopSpaceModel::Trivial,
        TopHeader::SymPower(direction) => TopSpaceModel::SymPower {
            n: n.ok_or_else(|| Error::Usage("symmetric-power vector needs n".into()))?,
            direction,
        },
    };
    let module = AffineModule::new(sl.clone(), k.clone(), top)?;
    let vector = module.build(&terms)?;
    Ok(LoadedVector { module, vector, terms })
}

pub fn verify_vacuum(src: &str, k: &Rational) -> Result<(LoadedVector, SingularityReport)> {
    let sl = SlN::new(4)?;
    let lv = load_vector(&sl, k, src, None)?;
    let rep = is_singular(&lv.module, "vacuum-sl4", &lv.vector, &standard_conditions(&sl))?;
    Ok((lv, rep))
}

/// The degree-2 vector over V(n w_1) or V(n w_3), symbolic or at a concrete n.
pub fn verify_wnu(src: &str, dir: Direction, n: SymN) -> Result<(LoadedVector, SingularityReport)> {
    let sl = SlN::new(4)?;
    let lv = load_vector(&sl, &level(), src, Some(n.clone()))?;
    let tag = match dir {
        Direction::First => "w1",
        Direction::Last => "w3",
    };
    let nn = match n {
        SymN::Concrete(x) => x.to_string(),
        SymN::Symbolic => "n".into(),
    };
    if let TopSpaceModel::SymPower { direction, .. } = lv.module.top() {
        if *direction != dir {
            return Err(Error::Usage("vector file is over the other fundamental weight".into()));
        }
    }
    let rep = is_singular(
        &lv.module,
        &format!("wnu-{tag}-n={nn}"),
        &lv.vector,
        &standard_conditions(&sl),
    )?;
    Ok((lv, rep))
}

pub fn verify_sl5_u(src: &str, k: &Rational) -> Result<(LoadedVector, SingularityReport)> {
    let sl = SlN::new(5)?;
    let lv = load_vector(&sl, k, src, None)?;
    let rep = is_singular(&lv.module, &format!("u-sl5-k={k}"), &lv.vector, &standard_conditions(&sl))?;
    Ok((lv, rep))
}

/// Image of a vector under the diagram flip; sympower tops move to the dual direction
/// through x_a -> y_(5-a).
pub fn sigma_image(src: &AffineModule, dst: &AffineModule, v: &ModuleVector) -> Result<ModuleVector> {
    let sl = src.sl();
    let mut out = ModuleVector::zero();
    for ((w, t), c) in v.terms() {
        let mut sign = 1i64;
        let mut letters = Vec::with_capacity(w.len());
        for l in w {
            let (g, s) = sl.sigma_gen(l.gen)?;
            sign *= s;
            letters.push(Letter::new(g, l.mode));
        }
        let t2: TopKey = t.iter().rev().cloned().collect();
        let img = dst.apply_word(&letters, &dst.top_vector(t2))?;
        out = out.add(&img.scale(&c.scale(&int(sign))));
    }
    Ok(out)
}

/// True iff the diagram flip fixes the vacuum vector `v`.
pub fn sigma_check(m: &AffineModule, v: &ModuleVector) -> Result<bool> {
    if *m.top() != TopSpaceModel::Trivial {
        return Err(Error::Usage("sigma check is defined on the vacuum module".into()));
    }
    Ok(sigma_image(m, m, v)? == *v)
}

#[derive(Clone, Debug)]
pub struct Mutation {
    pub term: usize,
    pub from: String,
    pub to: String,
    pub verdict: Verdict,
}

/// Perturbs single printed coefficients and retests singularity.
pub fn mutations(
    lv: &LoadedVector,
    conditions: &[(String, Letter)],
    count: usize,
    seed: u64,
) -> Result<Vec<Mutation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = var_set(&["n"]);
    let mut out = Vec::with_capacity(count);
    let mut single_terms: BTreeMap<usize, ModuleVector> = BTreeMap::new();
    for _ in 0..count {
        let i = rng.gen_range(0..lv.terms.len());
        let mut delta = Rational::zero();
        while delta.is_zero() {
            delta = rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        }
        let base = lv.terms[i].coef.to_poly(&vars)?;
        let unit = match single_terms.get(&i) {
            Some(u) => u.clone(),
            None => {
                let mut one = lv.terms[i].clone();
                one.coef = crate::text::Expr::one();
                let u = lv.module.build(&[one])?;
                single_terms.insert(i, u.clone());
                u
            }
        };
        let mutated = lv.vector.add(&unit.scale(&Poly::scalar(delta.clone())));
        let rep = is_singular(&lv.module, "mutation", &mutated, conditions)?;
        out.push(Mutation {
            term: i,
            from: base.to_string(),
            to: (&base + &Poly::scalar(delta)).to_string(),
            verdict: rep.verdict,
        });
    }
    Ok(out)
}

/// Dimension of the space of degree-2 singular vectors of weight `nu` in V^k(n w_i) at a
/// concrete n, from the full linear system over the PBW basis.
pub fn degree2_solution_dim(dir: Direction, n: u32) -> Result<(usize, usize)> {
    let sl = SlN::new(4)?;
    let m = AffineModule::new(
        sl.clone(),
        level(),
        TopSpaceModel::SymPower { n: SymN::Concrete(n), direction: dir },
    )?;
    let nu = wnu_weight(dir, &Poly::scalar(int(i64::from(n))))?;
    let tops = sympower_keys(sl.n(), n);
    let gens = sl.basis();
    let mut words: Vec<Word> = gens.iter().map(|&g| vec![Letter::new(g, -2)]).collect();
    for (a, &x) in gens.iter().enumerate() {
        for &y in &gens[a..] {
            words.push(vec![Letter::new(x, -1), Letter::new(y, -1)]);
        }
    }
    let conds = standard_conditions(&sl);
    let mut rows: Vec<SparseVec<(usize, Word, TopKey)>> = Vec::new();
    for w in &words {
        for t in &tops {
            let b = m.apply_word(w, &m.top_vector(t.clone()))?;
            if b.is_zero() || m.degree_and_weight(&b)?.1 != nu {
                continue;
            }
            let mut row = SparseVec::new();
            for (ci, (_, l)) in conds.iter().enumerate() {
                for ((w2, t2), c) in m.act_letter(*l, &b)?.terms() {
                    let q = c.as_constant().ok_or_else(|| Error::Consistency("symbolic".into()))?;
                    row.insert((ci, w2.clone(), t2.clone()), q);
                }
            }
            rows.push(row);
        }
    }
    let mut e = Echelon::new();
    for r in &rows {
        e.insert(r);
    }
    Ok((rows.len(), rows.len() - e.rank()))
}

/// Explicit exponent keys of all top monomials of V(n w).
fn sympower_keys(n_vars: usize, n: u32) -> Vec<TopKey> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n_vars - 1];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<TopKey>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, n, &mut cur, &mut out);
    out
}

/// nu = (n-1) w_1 + w_2 + w_3 over n w_1, and w_1 + w_2 + (n-1) w_3 over n w_3.
pub fn wnu_weight(dir: Direction, n: &Poly) -> Result<Weight> {
    let one = Poly::scalar(Rational::one());
    let nm1 = n.try_sub(&one)?;
    Ok(match dir {
        Direction::First => Weight(vec![nm1, one.clone(), one]),
        Direction::Last => Weight(vec![one.clone(), one, nm1]),
    })
}

/// One row of the sl(5) table together with its two gl(4) series.
#[derive(Clone, Debug)]
pub struct Sl5Row {
    pub index: usize,
    pub weight: Vec<Rational>,
    pub series: [Series; 2],
}

/// Summands mu_family(t(n)) (x) M_c(1, c(n)), for n from `start`.
#[derive(Clone, Debug)]
pub struct Series {
    pub family: usize,
    pub t: Poly,
    pub c: Poly,
    pub start: u32,
}

pub fn parse_sl5_table(src: &str) -> Result<Vec<Sl5Row>> {
    let vars = var_set(&["n"]);
    let mut out = Vec::new();
    for (no, line) in content_lines(src) {
        let err = |m: &str| Error::Parse(format!("line {no}: {m}"));
        let (idx, rest) = line.split_once(':').ok_or_else(|| err("missing index"))?;
        let index: usize = idx.trim().parse().map_err(|_| err("bad index"))?;
        let parts: Vec<&str> = rest.split('|').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(err("expected a weight and two series"));
        }
        let weight = parts[0]
            .split(',')
            .map(|s| crate::scalar::parse_rational(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        if weight.len() != 4 {
            return Err(err("weight needs four coordinates"));
        }
        let mut series = Vec::new();
        for (si, p) in parts[1..].iter().enumerate() {
            let (fam, c) = p.split_once(" c=").ok_or_else(|| err("missing c="))?;
            let fam = fam.trim().strip_prefix("mu").ok_or_else(|| err("missing mu"))?;
            let open = fam.find('(').ok_or_else(|| err("missing parameter"))?;
            let family: usize = fam[..open].parse().map_err(|_| err("bad family id"))?;
            let texpr = fam[open + 1..].strip_suffix(')').ok_or_else(|| err("unbalanced"))?;
            series.push(Series {
                family,
                t: parse_poly(texpr, &vars)?,
                c: parse_poly(c, &vars)?,
                start: si as u32,
            });
        }
        let [a, b]: [Series; 2] = series.try_into().map_err(|_| err("two series"))?;
        out.push(Sl5Row { index, weight, series: [a, b] });
    }
    Ok(out)
}

/// Constructions of gl(4) singular vectors in L(lambda_i).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Construction {
    /// f[j,5](0)^n v with j the last nonzero label.
    LastLabel(u8),
    /// A single letter applied n times: e[1,5](-1) when lambda(alpha_0^vee) is not in Z>=0,
    /// otherwise the tabulated root vector.
    Power(Letter),
    /// f[4,5](-1)^n 1, the second series of the vacuum module.
    VacuumDual,
}

impl Construction {
    pub fn letter(&self) -> Letter {
        match *self {
            Construction::LastLabel(j) => Letter::new(Gen::f(j, 5), 0),
            Construction::Power(l) => l,
            Construction::VacuumDual => Letter::new(Gen::f(4, 5), -1),
        }
    }

    pub fn describe(&self) -> String {
        format!("{}^n v", self.letter())
    }
}

/// lambda-hat(alpha_0^vee) = k - (lambda | theta).
pub fn alpha0_label(weight: &[Rational]) -> Rational {
    weight.iter().fold(level(), |a, b| a - b)
}

fn is_nonneg_integer(q: &Rational) -> bool {
    is_integer(q) && !q.is_negative()
}

/// The constructions that apply to a row: the last-label family where a nonzero label
/// exists, and the raising family routed by the alpha_0 label.
pub fn constructions(row: &Sl5Row) -> Result<Vec<Construction>> {
    let mut out = Vec::new();
    if let Some(j) = (0..4).rev().find(|&j| !row.weight[j].is_zero()) {
        out.push(Construction::LastLabel(j as u8 + 1));
    }
    if !is_nonneg_integer(&alpha0_label(&row.weight)) {
        out.push(Construction::Power(Letter::new(Gen::e(1, 5), -1)));
    } else {
        let l = match row.index {
            2 | 12 | 13 | 14 => Letter::new(Gen::e(2, 5), -1),
            3 | 15 => Letter::new(Gen::e(3, 5), -1),
            4 => Letter::new(Gen::e(4, 5), -1),
            5 => Letter::new(Gen::e(1, 5), -2),
            i => return Err(Error::Usage(format!("no tabulated construction for row {i}"))),
        };
        out.push(Construction::Power(l));
    }
    if row.weight.iter().all(|a| a.is_zero()) {
        out.push(Construction::VacuumDual);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct FamilyCase {
    pub row: usize,
    pub construction: Construction,
    pub n: u32,
    pub report: SingularityReport,
    /// Restriction of the weight to sl(4).
    pub sl4_weight: Vec<Rational>,
    /// Eigenvalue of c(0), c = diag(1,1,1,1,-4)/5.
    pub c_eigenvalue: Rational,
}

pub fn verify_sl5_family(row: &Sl5Row, con: Construction, n: u32) -> Result<FamilyCase> {
    let sl = SlN::new(5)?;
    let m = AffineModule::lowered_hw(sl, level(), row.weight.clone())?;
    let letters = vec![con.letter(); n as usize];
    let v = m.apply_word(&letters, &m.highest())?;
    let id = format!("lambda{}-{}-n={n}", row.index, con.describe());
    let report = is_singular(&m, &id, &v, &gl4_conditions())?;
    let mut w = Weight::from_rationals(&row.weight);
    for l in &letters {
        w = w.add(&Weight::from_ints(&l.gen.weight(4)))?;
    }
    let b = w.as_rationals().ok_or_else(|| Error::Consistency("symbolic weight".into()))?;
    let c = (0..4).fold(Rational::zero(), |a, i| a + &b[i] * int(i as i64 + 1)) / int(5);
    Ok(FamilyCase {
        row: row.index,
        construction: con,
        n,
        report,
        sl4_weight: b[..3].to_vec(),
        c_eigenvalue: c,
    })
}

#[derive(Clone, Debug)]
pub struct SummandCheck {
    pub row: usize,
    pub series: usize,
    pub n: u32,
    pub mu: Vec<Rational>,
    pub c: Rational,
    pub membership: Vec<(usize, Rational)>,
    pub in_classification: bool,
    pub realized_by: Option<Construction>,
}

impl SummandCheck {
    pub fn pass(&self) -> bool {
        self.in_classification && self.realized_by.is_some()
    }
}

/// Checks every summand weight of the decomposition table for n up to `n_max`: it lies on
/// the stated family and is the weight and c-eigenvalue of a verified singular vector.
pub fn verify_decomposition(
    rows: &[Sl5Row],
    fams: &[WeightFamily],
    cases: &[FamilyCase],
    n_max: u32,
) -> Result<Vec<SummandCheck>> {
    let mut out = Vec::new();
    for row in rows {
        for (si, s) in row.series.iter().enumerate() {
            let fam = fams
                .iter()
                .find(|f| f.id == s.family)
                .ok_or_else(|| Error::Usage(format!("unknown family {}", s.family)))?;
            for n in s.start..=n_max {
                let nv = [int(i64::from(n))];
                let t = s.t.eval_at(&nv)?;
                let c = s.c.eval_at(&nv)?;
                let mu: Vec<Rational> =
                    fam.coords.iter().map(|p| p.eval_at(&[t.clone()])).collect::<Result<_>>()?;
                let membership = family_membership(fams, &mu)?;
                let in_classification = membership.iter().any(|(i, q)| *i == s.family && *q == t);
                let realized_by = cases
                    .iter()
                    .filter(|k| k.row == row.index && k.n == n && k.report.pass())
                    .find(|k| k.sl4_weight == mu && k.c_eigenvalue == c)
                    .map(|k| k.construction);
                out.push(SummandCheck {
                    row: row.index,
                    series: si + 1,
                    n,
                    mu,
                    c,
                    membership,
                    in_classification,
                    realized_by,
                });
            }
        }
    }
    Ok(out)
}

/// Rows whose alpha_0 label lies in Z>=0, i.e. those routed to the tabulated vectors.
pub fn tabulated_rows(rows: &[Sl5Row]) -> BTreeSet<usize> {
    rows.iter().filter(|r| is_nonneg_integer(&alpha0_label(&r.weight))).map(|r| r.index).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sympower_key_count() {
        assert_eq!(sympower_keys(4, 2).len(), 10);
        assert_eq!(sympower_keys(4, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn alpha0_routing() {
        assert_eq!(alpha0_label(&vec![int(0); 4]), rat(-5, 2));
        assert_eq!(alpha0_label(&[rat(-5, 2), int(0), int(0), int(0)]), int(0));
    }
}
