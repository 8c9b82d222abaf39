//! Induced modules over affine sl(n): vacuum, symmetric-power tops and parabolic highest-weight tops.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{AffineWeight, Block, GElem, Gen, SlN, Weight};
use crate::scalar::{int, to_i64, var_set, Poly, Rational};
use crate::text::{content_lines, TermSpec};

/// A mode x(m) of a basis element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub mode: i32,
}

impl Letter {
    pub fn new(gen: Gen, mode: i32) -> Letter {
        Letter { gen, mode }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.gen, self.mode)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// V(n w_1) on x_1..x_n with E(a,b) acting as x_a d_b.
    First,
    /// V(n w_{n-1}) on dual variables y_1..y_n with E(a,b) acting as -y_b d_a.
    Last,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SymN {
    Concrete(u32),
    Symbolic,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TopSpaceModel {
    Trivial,
    SymPower { n: SymN, direction: Direction },
    /// Highest weight `weight` with f_a v = 0 imposed for the affine simple roots in `annihilated`
    /// (node 0 is the affine root, whose root vector is e_theta(-1)).
    LoweredHW { weight: Vec<Rational>, annihilated: BTreeSet<usize> },
}

/// Explicit exponents of a symmetric-power top monomial; empty for one-dimensional tops.
pub type TopKey = Vec<u32>;
pub type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModuleVector {
    terms: BTreeMap<(Word, TopKey), Poly>,
}

impl ModuleVector {
    pub fn zero() -> ModuleVector {
        ModuleVector::default()
    }

    pub fn add_term(&mut self, w: Word, t: TopKey, c: Poly) {
        if c.is_zero() {
            return;
        }
        let key = (w, t);
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, TopKey), &Poly)> {
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

    pub fn add(&self, o: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        for ((w, t), c) in &o.terms {
            out.add_term(w.clone(), t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ModuleVector) -> ModuleVector {
        self.add(&o.scale(&Poly::scalar(int(-1))))
    }

    pub fn scale(&self, c: &Poly) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for ((w, t), x) in &self.terms {
            out.add_term(w.clone(), t.clone(), x * c);
        }
        out
    }

    /// Substitutes a value for the module parameter n in every coefficient.
    pub fn specialize_n(&self, n: u32) -> Result<ModuleVector> {
        let mut a = HashMap::new();
        a.insert("n".to_string(), Poly::scalar(int(i64::from(n))));
        let mut out = ModuleVector::zero();
        for ((w, t), c) in &self.terms {
            out.add_term(w.clone(), t.clone(), c.eval(&a)?);
        }
        Ok(out)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for ((w, t), c) in &self.terms {
            out.add_term(w.clone(), t.clone(), f(c)?);
        }
        Ok(out)
    }
}

pub fn render_letters(w: &[Letter]) -> String {
    let mut parts = Vec::new();
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

type Terms = Arc<Vec<(Word, TopKey, Poly)>>;

/// V^k(top) for affine sl(n); carries a per-instance cache of commutation results.
pub struct AffineModule {
    sl: SlN,
    k: Rational,
    top: TopSpaceModel,
    levi: BTreeSet<usize>,
    memo: RefCell<HashMap<(Letter, Word, TopKey), Terms>>,
}

impl AffineModule {
    pub fn new(sl: SlN, k: Rational, top: TopSpaceModel) -> Result<AffineModule> {
        let levi = match &top {
            TopSpaceModel::Trivial => (1..=sl.rank()).collect(),
            TopSpaceModel::SymPower { .. } => BTreeSet::new(),
            TopSpaceModel::LoweredHW { weight, annihilated } => {
                if weight.len() != sl.rank() {
                    return Err(Error::Usage("highest weight of the wrong rank".into()));
                }
                if annihilated.iter().any(|&i| i > sl.rank()) {
                    return Err(Error::Usage("annihilated node out of range".into()));
                }
                annihilated.clone()
            }
        };
        if let TopSpaceModel::SymPower { .. } = top {
            if sl.n() < 2 {
                return Err(Error::Unsupported("symmetric power of rank 0".into()));
            }
        }
        Ok(AffineModule { sl, k, top, levi, memo: RefCell::new(HashMap::new()) })
    }

    pub fn vacuum(sl: SlN, k: Rational) -> AffineModule {
        AffineModule::new(sl, k, TopSpaceModel::Trivial).unwrap()
    }

    /// Parabolic top for the highest weight `weight`: every simple root (finite or affine)
    /// with zero label is declared annihilating.
    pub fn lowered_hw(sl: SlN, k: Rational, weight: Vec<Rational>) -> Result<AffineModule> {
        let ann = zero_label_nodes(&k, &weight);
        AffineModule::new(sl, k, TopSpaceModel::LoweredHW { weight, annihilated: ann })
    }

    pub fn sl(&self) -> &SlN {
        &self.sl
    }

    pub fn level(&self) -> &Rational {
        &self.k
    }

    pub fn top(&self) -> &TopSpaceModel {
        &self.top
    }

    fn is_lowered(&self) -> bool {
        matches!(self.top, TopSpaceModel::LoweredHW { .. })
    }

    /// Letters that may occur in normal-ordered words.
    pub fn in_alphabet(&self, l: Letter) -> bool {
        l.mode < 0 || (l.mode == 0 && self.is_lowered() && l.gen.block() == Block::Lower)
    }

    /// Root of ĝ carried by the letter, as coefficients on the affine simple roots 0..rank.
    fn affine_root(&self, l: Letter) -> Vec<i64> {
        let r = self.sl.rank();
        let m = i64::from(l.mode);
        let mut c = vec![m; r + 1];
        for (i, x) in l.gen.root(r).into_iter().enumerate() {
            c[i + 1] += x;
        }
        c
    }

    /// Letters whose root lies in the span of the annihilating nodes.
    pub fn is_levi(&self, l: Letter) -> bool {
        if !self.is_lowered() {
            return false;
        }
        self.affine_root(l).iter().enumerate().all(|(i, &c)| c == 0 || self.levi.contains(&i))
    }

    fn order_key(&self, l: Letter) -> (bool, i32, Gen) {
        (self.is_levi(l), l.mode, l.gen)
    }

    fn explicit_len(&self) -> usize {
        match self.top {
            TopSpaceModel::SymPower { .. } => self.sl.n() - 1,
            _ => 0,
        }
    }

    pub fn highest_key(&self) -> TopKey {
        vec![0; self.explicit_len()]
    }

    fn n_poly(&self) -> Poly {
        match &self.top {
            TopSpaceModel::SymPower { n: SymN::Symbolic, .. } => {
                Poly::var(&var_set(&["n"]), "n").unwrap()
            }
            TopSpaceModel::SymPower { n: SymN::Concrete(n), .. } => {
                Poly::scalar(int(i64::from(*n)))
            }
            _ => Poly::scalar(Rational::zero()),
        }
    }

    /// Full exponent vector of a symmetric-power monomial (implicit entry computed).
    fn exponents(&self, t: &TopKey, dir: Direction) -> Vec<Poly> {
        let s: u32 = t.iter().sum();
        let imp = &self.n_poly() - &Poly::scalar(int(i64::from(s)));
        let mut out: Vec<Poly> = t.iter().map(|&a| Poly::scalar(int(i64::from(a)))).collect();
        match dir {
            Direction::First => out.insert(0, imp),
            Direction::Last => out.push(imp),
        }
        out
    }

    /// Moves one unit of exponent from variable `from` to variable `to` (1-based).
    fn shift(&self, t: &TopKey, from: usize, to: usize, dir: Direction) -> Option<TopKey> {
        let idx = |v: usize| match dir {
            Direction::First => v.checked_sub(2),
            Direction::Last => (v < self.sl.n()).then(|| v - 1),
        };
        let mut out = t.clone();
        if let Some(i) = idx(from) {
            if out[i] == 0 {
                return None;
            }
            out[i] -= 1;
        }
        if let Some(j) = idx(to) {
            out[j] += 1;
        }
        Some(out)
    }

    /// Zero-mode action of a basis element on a top vector.
    pub fn top_action(&self, g: Gen, t: &TopKey) -> Vec<(TopKey, Poly)> {
        match &self.top {
            TopSpaceModel::Trivial => Vec::new(),
            TopSpaceModel::LoweredHW { weight, .. } => match g {
                Gen::H(i) => {
                    let c = weight[i as usize - 1].clone();
                    if c.is_zero() {
                        Vec::new()
                    } else {
                        vec![(t.clone(), Poly::scalar(c))]
                    }
                }
                _ => Vec::new(),
            },
            TopSpaceModel::SymPower { direction, .. } => {
                let dir = *direction;
                let ex = self.exponents(t, dir);
                let sign = match dir {
                    Direction::First => int(1),
                    Direction::Last => int(-1),
                };
                match g {
                    Gen::H(i) => {
                        let i = i as usize;
                        let c = (&ex[i - 1] - &ex[i]).scale(&sign);
                        if c.is_zero() {
                            Vec::new()
                        } else {
                            vec![(t.clone(), c)]
                        }
                    }
                    Gen::E(a, b) => {
                        let (a, b) = (a as usize, b as usize);
                        // First: x_a d_b.  Last: -y_b d_a.
                        let (from, to) = match dir {
                            Direction::First => (b, a),
                            Direction::Last => (a, b),
                        };
                        let c = ex[from - 1].scale(&sign);
                        if c.is_zero() {
                            return Vec::new();
                        }
                        match self.shift(t, from, to, dir) {
                            Some(t2) => vec![(t2, c)],
                            None => Vec::new(),
                        }
                    }
                }
            }
        }
    }

    /// x(m) applied to the normal-ordered basis vector `w ⊗ t`.
    fn apply_letter(&self, x: Letter, w: &[Letter], t: &TopKey) -> Terms {
        let one = || Poly::scalar(Rational::one());
        if w.is_empty() {
            if self.in_alphabet(x) {
                if self.is_levi(x) {
                    return Arc::new(Vec::new());
                }
                return Arc::new(vec![(vec![x], t.clone(), one())]);
            }
            if x.mode > 0 {
                return Arc::new(Vec::new());
            }
            return Arc::new(
                self.top_action(x.gen, t).into_iter().map(|(t2, c)| (Vec::new(), t2, c)).collect(),
            );
        }
        let y = w[0];
        if self.in_alphabet(x) && self.order_key(x) <= self.order_key(y) {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(x);
            v.extend_from_slice(w);
            return Arc::new(vec![(v, t.clone(), one())]);
        }
        let key = (x, w.to_vec(), t.clone());
        if let Some(r) = self.memo.borrow().get(&key) {
            return r.clone();
        }
        let rest = &w[1..];
        let mut acc: HashMap<(Word, TopKey), Poly> = HashMap::new();
        let mut push = |w: Word, t: TopKey, c: Poly| {
            let e = acc.entry((w, t)).or_insert_with(|| Poly::scalar(Rational::zero()));
            *e = &*e + &c;
        };
        // x y rest = y (x rest) + [x,y] rest + m (x|y) k delta rest
        for (w1, t1, c1) in self.apply_letter(x, rest, t).iter() {
            for (w2, t2, c2) in self.apply_letter(y, w1, t1).iter() {
                push(w2.clone(), t2.clone(), c1 * c2);
            }
        }
        let m2 = x.mode + y.mode;
        for (z, s) in self.sl.bracket_gens(x.gen, y.gen) {
            for (w3, t3, c3) in self.apply_letter(Letter::new(z, m2), rest, t).iter() {
                push(w3.clone(), t3.clone(), c3.scale(&int(s)));
            }
        }
        if m2 == 0 {
            let f = self.sl.form_gens(x.gen, y.gen);
            if f != 0 {
                let c = &self.k * int(i64::from(x.mode) * f);
                push(rest.to_vec(), t.clone(), Poly::scalar(c));
            }
        }
        let mut out: Vec<(Word, TopKey, Poly)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((w, t), c)| (w, t, c)).collect();
        out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let out = Arc::new(out);
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    pub fn act_letter(&self, x: Letter, v: &ModuleVector) -> Result<ModuleVector> {
        self.sl.check(x.gen)?;
        let mut out = ModuleVector::zero();
        for ((w, t), c) in &v.terms {
            for (w2, t2, c2) in self.apply_letter(x, w, t).iter() {
                out.add_term(w2.clone(), t2.clone(), c.try_mul(c2)?);
            }
        }
        Ok(out)
    }

    /// x(m) v for an arbitrary element x of sl(n).
    pub fn act(&self, x: &GElem, m: i32, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (g, c) in &x.0 {
            out = out.add(&self.act_letter(Letter::new(*g, m), v)?.scale(c));
        }
        Ok(out)
    }

    /// The top vector `t` with coefficient one.
    pub fn top_vector(&self, t: TopKey) -> ModuleVector {
        let mut v = ModuleVector::zero();
        v.add_term(Vec::new(), t, Poly::scalar(Rational::one()));
        v
    }

    pub fn highest(&self) -> ModuleVector {
        self.top_vector(self.highest_key())
    }

    /// Letters applied right to left: `letters[0] (letters[1] (... top))`.
    pub fn apply_word(&self, letters: &[Letter], top: &ModuleVector) -> Result<ModuleVector> {
        let mut v = top.clone();
        for &l in letters.iter().rev() {
            v = self.act_letter(l, &v)?;
        }
        Ok(v)
    }

    pub fn top_weight(&self, t: &TopKey) -> Weight {
        let r = self.sl.rank();
        match &self.top {
            TopSpaceModel::Trivial => self.sl.zero_weight(),
            TopSpaceModel::LoweredHW { weight, .. } => Weight::from_rationals(weight),
            TopSpaceModel::SymPower { direction, .. } => {
                let ex = self.exponents(t, *direction);
                let sign = match direction {
                    Direction::First => int(1),
                    Direction::Last => int(-1),
                };
                Weight((0..r).map(|l| (&ex[l] - &ex[l + 1]).scale(&sign)).collect())
            }
        }
    }

    /// Degree (minus the mode sum) and g-weight of a homogeneous vector.
    pub fn degree_and_weight(&self, v: &ModuleVector) -> Result<(Rational, Weight)> {
        let r = self.sl.rank();
        let mut found: Option<(i64, Weight)> = None;
        for (w, t) in v.terms.keys() {
            let deg: i64 = w.iter().map(|l| -i64::from(l.mode)).sum();
            let mut wt = self.top_weight(t);
            for l in w {
                wt = wt.add(&Weight::from_ints(&l.gen.weight(r)))?;
            }
            match &found {
                None => found = Some((deg, wt)),
                Some((d0, w0)) => {
                    if *d0 != deg || *w0 != wt {
                        return Err(Error::Inhomogeneous(format!(
                            "components (deg {d0}, weight {w0}) and (deg {deg}, weight {wt}) at {}",
                            render_letters(w)
                        )));
                    }
                }
            }
        }
        Ok(match found {
            Some((d, w)) => (int(d), w),
            None => (Rational::zero(), self.sl.zero_weight()),
        })
    }

    pub fn affine_weight(&self, v: &ModuleVector) -> Result<AffineWeight> {
        let (degree, finite) = self.degree_and_weight(v)?;
        Ok(AffineWeight { level: self.k.clone(), finite, degree })
    }

    fn render_top(&self, t: &TopKey) -> String {
        match &self.top {
            TopSpaceModel::Trivial => "1".into(),
            TopSpaceModel::LoweredHW { .. } => "v".into(),
            TopSpaceModel::SymPower { direction, .. } => {
                if t.iter().all(|&a| a == 0) {
                    return "v".into();
                }
                let (name, off) = match direction {
                    Direction::First => ("x", 2),
                    Direction::Last => ("y", 1),
                };
                let parts: Vec<String> = t
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(i, &a)| {
                        if a == 1 {
                            format!("{name}{}", i + off)
                        } else {
                            format!("{name}{}^{a}", i + off)
                        }
                    })
                    .collect();
                format!("v<{}>", parts.join(","))
            }
        }
    }

    /// One line per term, `+ (coef) * word top`.
    pub fn render(&self, v: &ModuleVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.terms
            .iter()
            .map(|((w, t), c)| {
                let word = render_letters(w);
                let sep = if word.is_empty() { "" } else { " " };
                format!("+ ({c}) * {word}{sep}{}", self.render_top(t))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Builds a vector from parsed term lines; coefficients may involve n.
    pub fn build(&self, terms: &[TermSpec]) -> Result<ModuleVector> {
        let vars = var_set(&["n"]);
        let mut out = ModuleVector::zero();
        for t in terms {
            let mut c = t.coef.to_poly(&vars)?;
            if let TopSpaceModel::SymPower { n: SymN::Concrete(n), .. } = self.top {
                let mut a = HashMap::new();
                a.insert("n".to_string(), Poly::scalar(int(i64::from(n))));
                c = c.eval(&a)?;
            } else if c.degree_in("n") == 0 {
                c = Poly::scalar(c.as_constant().unwrap());
            }
            let mut letters = Vec::new();
            for a in &t.atoms {
                let g = self.sl.check(Gen::from_parts(&a.name, &a.idx)?)?;
                let m = a.mode.ok_or_else(|| Error::Parse(format!("{g} without a mode")))?;
                let m = i32::try_from(m).map_err(|_| Error::Parse("mode out of range".into()))?;
                for _ in 0..a.pow {
                    letters.push(Letter::new(g, m));
                }
            }
            let v = self.apply_word(&letters, &self.highest())?;
            out = out.add(&v.scale(&c));
        }
        Ok(out)
    }
}

/// Affine simple roots with zero label: finite i with weight_i = 0, and node 0 when
/// k - (theta, weight) = 0.
pub fn zero_label_nodes(k: &Rational, weight: &[Rational]) -> BTreeSet<usize> {
    let mut s: BTreeSet<usize> =
        weight.iter().enumerate().filter(|(_, w)| w.is_zero()).map(|(i, _)| i + 1).collect();
    let sum: Rational = weight.iter().cloned().fold(Rational::zero(), |a, b| a + b);
    if (k - sum).is_zero() {
        s.insert(0);
    }
    s
}

/// Header of a module-vector file.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TopHeader {
    Vacuum,
    SymPower(Direction),
}

/// Splits a `.vec`/`.sg` file into its top header and term lines.
pub fn parse_vector_file(src: &str) -> Result<(TopHeader, Vec<TermSpec>)> {
    let mut header = None;
    let mut terms = Vec::new();
    for (no, line) in content_lines(src) {
        if let Some(rest) = line.strip_prefix("top") {
            let spec = rest.trim_start().strip_prefix('=').map(str::trim).unwrap_or("");
            header = Some(match spec {
                "vacuum" => TopHeader::Vacuum,
                "sympower w1" => TopHeader::SymPower(Direction::First),
                "sympower w3" | "sympower wlast" => TopHeader::SymPower(Direction::Last),
                other => return Err(Error::Parse(format!("line {no}: unknown top `{other}`"))),
            });
            continue;
        }
        let mut t = crate::text::parse_terms(line)
            .map_err(|e| Error::Parse(format!("line {no}: {e}")))?;
        terms.append(&mut t);
    }
    let header = header.ok_or_else(|| Error::Parse("missing `top =` header".into()))?;
    Ok((header, terms))
}

/// Singular-vector conditions for sl(n): e_i(0) for every simple root and f_theta(1).
pub fn standard_conditions(sl: &SlN) -> Vec<(String, Letter)> {
    let mut v: Vec<(String, Letter)> = (1..=sl.rank())
        .map(|i| {
            let g = sl.simple_e(i);
            (format!("{g}(0)"), Letter::new(g, 0))
        })
        .collect();
    let th = sl.theta_f();
    v.push((format!("{th}(1)"), Letter::new(th, 1)));
    v
}

/// Clears n from the coefficient ring when every coefficient is constant.
pub fn constant_coeffs(v: &ModuleVector) -> Option<BTreeMap<(Word, TopKey), Rational>> {
    v.terms.iter().map(|(k, c)| c.as_constant().map(|q| (k.clone(), q))).collect()
}

/// Integer value of a constant polynomial.
pub fn poly_to_i64(p: &Poly) -> Option<i64> {
    p.as_constant().as_ref().and_then(to_i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn s4() -> SlN {
        SlN::new(4).unwrap()
    }

    #[test]
    fn central_term() {
        let m = AffineModule::vacuum(s4(), rat(-5, 2));
        let v = m.apply_word(&[Letter::new(Gen::H(1), -1)], &m.highest()).unwrap();
        let r = m.act_letter(Letter::new(Gen::H(1), 1), &v).unwrap();
        assert_eq!(r, m.highest().scale(&Poly::scalar(int(-5))));
        let th = m.act_letter(Letter::new(s4().theta_f(), 1), &m.highest()).unwrap();
        assert!(th.is_zero());
    }

    #[test]
    fn sympower_actions() {
        let m = AffineModule::new(
            s4(),
            rat(-5, 2),
            TopSpaceModel::SymPower { n: SymN::Symbolic, direction: Direction::First },
        )
        .unwrap();
        let hw = m.highest();
        assert!(m.act_letter(Letter::new(Gen::e(1, 2), 0), &hw).unwrap().is_zero());
        let f = m.act_letter(Letter::new(Gen::f(1, 2), 0), &hw).unwrap();
        assert_eq!(m.render(&f), "+ (n) * v<x2>");
        let h = m.act_letter(Letter::new(Gen::H(1), 0), &f).unwrap();
        assert_eq!(m.render(&h), "+ (-2*n + n^2) * v<x2>");
        assert!(m.act_letter(Letter::new(Gen::f(2, 3), 0), &hw).unwrap().is_zero());
        let (d, w) = m.degree_and_weight(&f).unwrap();
        assert_eq!(d, int(0));
        assert_eq!(w.to_string(), "(-2 + n, 1, 0)");
    }

    #[test]
    fn dual_sympower_highest_weight() {
        let m = AffineModule::new(
            s4(),
            rat(-5, 2),
            TopSpaceModel::SymPower { n: SymN::Concrete(3), direction: Direction::Last },
        )
        .unwrap();
        let hw = m.highest();
        for i in 1..=3 {
            assert!(m.act_letter(Letter::new(s4().simple_e(i), 0), &hw).unwrap().is_zero());
        }
        assert_eq!(m.degree_and_weight(&hw).unwrap().1, Weight::from_ints(&[0, 0, 3]));
    }

    #[test]
    fn levi_letters_for_parabolic_tops() {
        let s5 = SlN::new(5).unwrap();
        let m = AffineModule::lowered_hw(s5, rat(-5, 2), vec![rat(-5, 2), int(0), int(0), int(0)])
            .unwrap();
        assert!(m.is_levi(Letter::new(Gen::f(2, 3), 0)));
        assert!(!m.is_levi(Letter::new(Gen::f(1, 2), 0)));
        assert!(m.is_levi(Letter::new(Gen::e(1, 5), -1)));
        assert!(!m.is_levi(Letter::new(Gen::e(2, 5), -1)));
    }
}
