//! Finite-dimensional sl(n) combinatorics: Weyl dimensions, Freudenthal multiplicities and
//! Klimyk tensor decompositions. Weights are integer vectors in fundamental coordinates.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;

use crate::error::{Error, Result};
use crate::lie::{SlN, Weight};
use crate::scalar::{int, to_i64, Poly, Rational};

pub type Label = Vec<i64>;

/// Irreducible label to multiplicity.
pub type Decomposition = BTreeMap<Label, u64>;

/// Formal character: weight to signed multiplicity.
pub type Character = BTreeMap<Label, i64>;

fn check_label(sl: &SlN, l: &[i64]) -> Result<()> {
    if l.len() != sl.rank() {
        return Err(Error::Usage(format!("label {l:?} for sl({})", sl.n())));
    }
    Ok(())
}

pub fn is_dominant(l: &[i64]) -> bool {
    l.iter().all(|&a| a >= 0)
}

fn require_dominant(sl: &SlN, l: &[i64]) -> Result<()> {
    check_label(sl, l)?;
    if !is_dominant(l) {
        return Err(Error::Usage(format!("{l:?} is not dominant integral")));
    }
    Ok(())
}

/// n times the inverse Cartan matrix, an integer matrix.
fn scaled_inv_cartan(sl: &SlN) -> Vec<Vec<i64>> {
    let n = sl.n() as i64;
    (1..=sl.rank())
        .map(|i| (1..=sl.rank()).map(|j| (i.min(j) as i64) * (n - i.max(j) as i64)).collect())
        .collect()
}

/// n (a|b) for integer weights.
fn form_n(g: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for (i, x) in a.iter().enumerate() {
        if *x != 0 {
            for (j, y) in b.iter().enumerate() {
                s += x * y * g[i][j];
            }
        }
    }
    s
}

/// (a|b) for integer weights.
pub fn form(sl: &SlN, a: &[i64], b: &[i64]) -> Rational {
    Rational::new(form_n(&scaled_inv_cartan(sl), a, b).into(), (sl.n() as i64).into())
}

/// Positive roots in fundamental coordinates.
pub fn positive_roots(sl: &SlN) -> Vec<Label> {
    sl.positive_roots().iter().map(|g| g.weight(sl.rank())).collect()
}

fn simple_root(sl: &SlN, i: usize) -> Label {
    (1..=sl.rank()).map(|j| sl.cartan(i, j)).collect()
}

pub fn weyl_dim(sl: &SlN, l: &[i64]) -> Result<u64> {
    require_dominant(sl, l)?;
    let mut num = Rational::one();
    let mut den = Rational::one();
    // For e_i - e_j: (l + rho | alpha) = sum over i <= m < j of (l_m + 1).
    for i in 0..sl.rank() {
        for j in i..sl.rank() {
            num *= int((i..=j).map(|m| l[m] + 1).sum());
            den *= int((j - i + 1) as i64);
        }
    }
    let d = num / den;
    to_i64(&d)
        .and_then(|x| u64::try_from(x).ok())
        .ok_or_else(|| Error::Consistency("non-integral dimension".into()))
}

/// Dominant conjugate and the parity of the reflections used.
pub fn dominant_conjugate(sl: &SlN, w: &[i64]) -> (Label, bool) {
    let mut w = w.to_vec();
    let mut odd = false;
    while let Some(i) = w.iter().position(|&a| a < 0) {
        let a = simple_root(sl, i + 1);
        let c = w[i];
        for (x, y) in w.iter_mut().zip(&a) {
            *x -= c * y;
        }
        odd = !odd;
    }
    (w, odd)
}

/// Simple-root coordinates of an integer weight, if they are integral.
fn root_coords(g: &[Vec<i64>], n: i64, w: &[i64]) -> Option<Vec<i64>> {
    g.iter()
        .map(|row| {
            let s: i64 = row.iter().zip(w).map(|(a, b)| a * b).sum();
            (s % n == 0).then_some(s / n)
        })
        .collect()
}

/// Weight multiplicities of V(l) by Freudenthal's recursion.
#[derive(Clone, Debug)]
pub struct Multiplicities {
    pub highest: Label,
    pub mult: BTreeMap<Label, u64>,
}

impl Multiplicities {
    pub fn get(&self, w: &[i64]) -> u64 {
        self.mult.get(w).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn character(&self) -> Character {
        self.mult.iter().map(|(w, m)| (w.clone(), *m as i64)).collect()
    }
}

fn is_weight_of(sl: &SlN, g: &[Vec<i64>], l: &[i64], w: &[i64]) -> bool {
    let (d, _) = dominant_conjugate(sl, w);
    let diff: Vec<i64> = l.iter().zip(&d).map(|(a, b)| a - b).collect();
    matches!(root_coords(g, sl.n() as i64, &diff), Some(c) if c.iter().all(|&x| x >= 0))
}

pub fn freudenthal(sl: &SlN, l: &[i64]) -> Result<Multiplicities> {
    require_dominant(sl, l)?;
    let g = scaled_inv_cartan(sl);
    let roots = positive_roots(sl);
    let shift = |w: &[i64]| -> Label { w.iter().map(|a| a + 1).collect() };
    let top = form_n(&g, &shift(l), &shift(l));
    let mut mult: HashMap<Label, u64> = HashMap::new();
    mult.insert(l.to_vec(), 1);
    let mut level = vec![l.to_vec()];
    while !level.is_empty() {
        let mut next: Vec<Label> = Vec::new();
        for w in &level {
            for i in 1..=sl.rank() {
                let a = simple_root(sl, i);
                let c: Label = w.iter().zip(&a).map(|(x, y)| x - y).collect();
                if !mult.contains_key(&c) && !next.contains(&c) && is_weight_of(sl, &g, l, &c) {
                    next.push(c);
                }
            }
        }
        next.sort();
        for mu in &next {
            let mut s = 0i64;
            for a in &roots {
                let mut j = 1;
                loop {
                    let v: Label = mu.iter().zip(a).map(|(x, y)| x + j * y).collect();
                    let Some(m) = mult.get(&v) else { break };
                    s += *m as i64 * form_n(&g, &v, a);
                    j += 1;
                }
            }
            // Both sides carry the factor n.
            let den = top - form_n(&g, &shift(mu), &shift(mu));
            if den <= 0 || (2 * s) % den != 0 || s < 0 {
                return Err(Error::Consistency(format!("Freudenthal recursion at {mu:?}")));
            }
            let m = (2 * s / den) as u64;
            mult.insert(mu.clone(), m);
        }
        level = next;
    }
    Ok(Multiplicities { highest: l.to_vec(), mult: mult.into_iter().filter(|(_, m)| *m > 0).collect() })
}

/// V(l) (x) V(m) by Klimyk's formula over the weights of V(m).
pub fn tensor_decompose(sl: &SlN, l: &[i64], m: &[i64]) -> Result<Decomposition> {
    tensor_decompose_with(sl, l, &freudenthal(sl, m)?)
}

/// Klimyk's formula with precomputed multiplicities of the second factor.
pub fn tensor_decompose_with(sl: &SlN, l: &[i64], mm: &Multiplicities) -> Result<Decomposition> {
    require_dominant(sl, l)?;
    let mut acc: BTreeMap<Label, i64> = BTreeMap::new();
    for (nu, c) in &mm.mult {
        let shifted: Label = l.iter().zip(nu).map(|(a, b)| a + b + 1).collect();
        let (d, odd) = dominant_conjugate(sl, &shifted);
        if d.contains(&0) {
            continue;
        }
        let label: Label = d.iter().map(|a| a - 1).collect();
        let s = if odd { -(*c as i64) } else { *c as i64 };
        *acc.entry(label).or_insert(0) += s;
    }
    let mut out = Decomposition::new();
    for (k, v) in acc {
        match v {
            0 => {}
            v if v > 0 => {
                out.insert(k, v as u64);
            }
            _ => return Err(Error::Consistency(format!("negative multiplicity at {k:?}"))),
        }
    }
    Ok(out)
}

pub fn decomposition_dim(sl: &SlN, d: &Decomposition) -> Result<u64> {
    let mut s = 0;
    for (l, m) in d {
        s += m * weyl_dim(sl, l)?;
    }
    Ok(s)
}

/// Delta_k(nu) - Delta_k(mu), symbolic weights allowed.
pub fn singular_degree(sl: &SlN, mu: &Weight, nu: &Weight, k: &Rational) -> Result<Poly> {
    sl.conformal_weight(nu, k)?.try_sub(&sl.conformal_weight(mu, k)?)
}

/// Character of V(l) from Gelfand-Tsetlin patterns; shares no code with `freudenthal`.
pub fn gt_character(sl: &SlN, l: &[i64]) -> Result<Character> {
    require_dominant(sl, l)?;
    let n = sl.n();
    let top: Vec<i64> = (0..n).map(|i| l[i.min(n - 1)..].iter().sum::<i64>() * i64::from(i < n - 1)).collect();
    let mut out = Character::new();
    let mut rows = vec![top];
    gt_rec(&mut rows, &mut out);
    Ok(out)
}

fn gt_rec(rows: &mut Vec<Vec<i64>>, out: &mut Character) {
    let last = rows.last().unwrap().clone();
    if last.len() == 1 {
        // eps-weight w_k = |row of length k| - |row of length k - 1|.
        let n = rows.len();
        let sums: Vec<i64> = rows.iter().rev().map(|r| r.iter().sum()).collect();
        let eps: Vec<i64> = (0..n).map(|k| sums[k] - if k == 0 { 0 } else { sums[k - 1] }).collect();
        let w: Label = (0..n - 1).map(|i| eps[i] - eps[i + 1]).collect();
        *out.entry(w).or_insert(0) += 1;
        return;
    }
    let len = last.len() - 1;
    let mut cur = vec![0i64; len];
    fn fill(i: usize, last: &[i64], cur: &mut [i64], rows: &mut Vec<Vec<i64>>, out: &mut Character) {
        if i == cur.len() {
            rows.push(cur.to_vec());
            gt_rec(rows, out);
            rows.pop();
            return;
        }
        for v in last[i + 1]..=last[i] {
            cur[i] = v;
            fill(i + 1, last, cur, rows, out);
        }
    }
    fill(0, &last, &mut cur, rows, out);
}

pub fn character_product(a: &Character, b: &Character) -> Character {
    product_where(a, b, |_| true)
}

fn product_where(a: &Character, b: &Character, keep: impl Fn(&[i64]) -> bool) -> Character {
    let mut out = Character::new();
    let mut w = Vec::new();
    for (x, m) in a {
        for (y, k) in b {
            w.clear();
            w.extend(x.iter().zip(y).map(|(p, q)| p + q));
            if keep(&w) {
                *out.entry(w.clone()).or_insert(0) += m * k;
            }
        }
    }
    out.retain(|_, m| *m != 0);
    out
}

/// Dominant part of the product; characters are Weyl invariant, so it determines the product.
pub fn dominant_product(a: &Character, b: &Character) -> Character {
    product_where(a, b, is_dominant)
}

/// Decomposes a character, given at least on its dominant weights, by removing the character
/// of a highest remaining weight until nothing is left.
pub fn strip_decompose(sl: &SlN, ch: &Character, cache: &mut HashMap<Label, Character>) -> Result<Decomposition> {
    let g = scaled_inv_cartan(sl);
    let height = |w: &[i64]| -> i64 { g.iter().map(|r| r.iter().zip(w).map(|(a, b)| a * b).sum::<i64>()).sum() };
    let mut ch: Character = ch.iter().filter(|(w, _)| is_dominant(w)).map(|(w, m)| (w.clone(), *m)).collect();
    let mut order: Vec<Label> = ch.keys().cloned().collect();
    // Stripping only lowers multiplicities below the stripped weight, so one pass suffices.
    order.sort_by_key(|w| std::cmp::Reverse(height(w)));
    let mut out = Decomposition::new();
    for w in order {
        let m = ch.get(&w).copied().unwrap_or(0);
        if m == 0 {
            continue;
        }
        if m < 0 {
            return Err(Error::Consistency(format!("virtual character at {w:?}")));
        }
        if !cache.contains_key(&w) {
            let full = gt_character(sl, &w)?;
            cache.insert(w.clone(), full.into_iter().filter(|(x, _)| is_dominant(x)).collect());
        }
        for (x, k) in &cache[&w] {
            let e = ch.entry(x.clone()).or_insert(0);
            *e -= m * k;
        }
        out.insert(w, m as u64);
    }
    if let Some((w, m)) = ch.iter().find(|(_, m)| **m != 0) {
        return Err(Error::Consistency(format!("residual multiplicity {m} at {w:?}")));
    }
    Ok(out)
}

/// Dominant weights of sl(n) with dimension at most `max_dim`.
pub fn labels_up_to_dim(sl: &SlN, max_dim: u64) -> Result<Vec<Label>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; sl.rank()];
    loop {
        if weyl_dim(sl, &cur)? <= max_dim {
            out.push(cur.clone());
            cur[0] += 1;
            continue;
        }
        // Carry: dimension is increasing in every coordinate.
        let Some(i) = cur.iter().position(|&a| a > 0) else { break };
        if i + 1 == cur.len() {
            break;
        }
        cur[i] = 0;
        cur[i + 1] += 1;
        if cur[i + 1..].iter().all(|&a| a == 0) {
            break;
        }
    }
    Ok(out)
}
