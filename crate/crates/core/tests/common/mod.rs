//! Dense matrix representations of sl(n), built without the library's bracket or PBW code.

#![allow(dead_code)]

use kmv_core::data::{resolve_data_dir, DataSet};
use kmv_core::enveloping::UElement;
use kmv_core::lie::Gen;
use kmv_core::scalar::int;
use kmv_core::Rational;
use num_traits::Zero;

pub type Mat = Vec<Vec<Rational>>;

pub fn data() -> DataSet {
    DataSet::load(&resolve_data_dir(None)).expect("data directory")
}

pub fn zeros(d: usize) -> Mat {
    vec![vec![Rational::zero(); d]; d]
}

pub fn identity(d: usize) -> Mat {
    let mut m = zeros(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = int(1);
    }
    m
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut out = zeros(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn scale(a: &Mat, c: &Rational) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    add(&mul(a, b), &scale(&mul(b, a), &int(-1)))
}

/// Matrix of a generator in the defining representation of sl(n).
pub fn defining(n: usize, g: Gen) -> Mat {
    let mut m = zeros(n);
    match g {
        Gen::E(i, j) => m[i as usize - 1][j as usize - 1] = int(1),
        Gen::H(i) => {
            m[i as usize - 1][i as usize - 1] = int(1);
            m[i as usize][i as usize] = int(-1);
        }
    }
    m
}

/// A representation given by the matrices of all generators.
pub struct Rep {
    pub dim: usize,
    pub name: String,
    action: Box<dyn Fn(Gen) -> Mat>,
}

impl Rep {
    pub fn of(&self, g: Gen) -> Mat {
        (self.action)(g)
    }

    pub fn word(&self, w: &[Gen]) -> Mat {
        w.iter().fold(identity(self.dim), |m, &g| mul(&m, &self.of(g)))
    }

    pub fn element(&self, u: &UElement) -> Mat {
        let mut out = zeros(self.dim);
        for (w, c) in u.terms() {
            let c = c.as_constant().expect("numeric coefficient");
            out = add(&out, &scale(&self.word(w), &c));
        }
        out
    }

    /// Eigenvalues of H(1), ..., H(n-1) on the first basis vector.
    pub fn top_weight(&self, rank: usize) -> Vec<Rational> {
        (1..=rank as u8).map(|i| self.of(Gen::H(i))[0][0].clone()).collect()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in subsets(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut s = vec![first];
                s.extend(rest);
                out.push(s);
            }
        }
    }
    out
}

/// k-th exterior power of the defining representation; the first basis vector is e_1 ^ ... ^ e_k.
pub fn wedge(n: usize, k: usize) -> Rep {
    let basis = subsets(n, k);
    let dim = basis.len();
    let action = move |g: Gen| {
        let x = defining(n, g);
        let mut m = zeros(dim);
        for (col, s) in basis.iter().enumerate() {
            for p in 0..k {
                for a in 0..n {
                    if x[a][s[p]].is_zero() || (s.contains(&a) && a != s[p]) {
                        continue;
                    }
                    let mut t = s.clone();
                    t[p] = a;
                    let mut sign = 1;
                    for i in 0..k {
                        for j in i + 1..k {
                            if t[i] > t[j] {
                                sign = -sign;
                            }
                        }
                    }
                    t.sort();
                    let row = basis.iter().position(|b| *b == t).unwrap();
                    m[row][col] += &x[a][s[p]] * int(sign);
                }
            }
        }
        m
    };
    Rep { dim, name: format!("wedge^{k} C^{n}"), action: Box::new(action) }
}

/// Second symmetric power of the defining representation; the first basis vector is x_1^2.
pub fn sym2(n: usize) -> Rep {
    let basis: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let dim = basis.len();
    let action = move |g: Gen| {
        let x = defining(n, g);
        let mut m = zeros(dim);
        for (col, &(a, b)) in basis.iter().enumerate() {
            for (moved, other) in [(a, b), (b, a)] {
                for c in 0..n {
                    if x[c][moved].is_zero() {
                        continue;
                    }
                    let key = (c.min(other), c.max(other));
                    let row = basis.iter().position(|t| *t == key).unwrap();
                    m[row][col] += &x[c][moved];
                }
            }
        }
        m
    };
    Rep { dim, name: format!("Sym^2 C^{n}"), action: Box::new(action) }
}

/// Adjoint representation from matrix commutators, with E(1,n) as the first basis vector.
pub fn adjoint(n: usize) -> Rep {
    let mut basis: Vec<Gen> = vec![Gen::E(1, n as u8)];
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            if i != j && (i, j) != (1, n as u8) {
                basis.push(Gen::E(i, j));
            }
        }
    }
    basis.extend((1..n as u8).map(Gen::H));
    let dim = basis.len();
    let mats: Vec<Mat> = basis.iter().map(|&g| defining(n, g)).collect();
    let action = move |g: Gen| {
        let x = defining(n, g);
        let mut m = zeros(dim);
        for (col, b) in mats.iter().enumerate() {
            let c = commutator(&x, b);
            for (row, coeff) in decompose(n, &c) {
                m[basis.iter().position(|&t| t == row).unwrap()][col] = coeff;
            }
        }
        m
    };
    Rep { dim, name: format!("adjoint sl({n})"), action: Box::new(action) }
}

/// Coordinates of a traceless matrix in the E(i,j), H(i) basis.
pub fn decompose(n: usize, m: &Mat) -> Vec<(Gen, Rational)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && !m[i][j].is_zero() {
                out.push((Gen::E(i as u8 + 1, j as u8 + 1), m[i][j].clone()));
            }
        }
    }
    let mut partial = Rational::zero();
    for i in 0..n - 1 {
        partial += &m[i][i];
        if !partial.is_zero() {
            out.push((Gen::H(i as u8 + 1), partial.clone()));
        }
    }
    out
}

/// Representations of sl(n) whose first basis vector is a highest-weight vector.
pub fn highest_weight_reps(n: usize) -> Vec<Rep> {
    let mut v: Vec<Rep> = (1..n).map(|k| wedge(n, k)).collect();
    v.push(sym2(n));
    v.push(adjoint(n));
    v
}
