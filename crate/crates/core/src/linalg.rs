//! Exact rank computations over the rationals for sparse vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// Incremental row echelon form; `insert` reports whether the vector was independent.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<(K, SparseVec<K>)>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if let Some(c) = v.get(p).cloned() {
                for (k, x) in r {
                    let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
        v
    }

    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let v = self.reduce(v);
        let Some((p, lead)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Rational::one() / lead;
        let v: SparseVec<K> = v.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        for (_, r) in self.rows.iter_mut() {
            if let Some(c) = r.get(&p).cloned() {
                for (k, x) in &v {
                    let e = r.entry(k.clone()).or_insert_with(Rational::zero);
                    *e -= &c * x;
                }
                r.retain(|_, x| !x.is_zero());
            }
        }
        self.rows.push((p, v));
        true
    }
}

pub fn rank<K: Ord + Clone>(vs: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}
