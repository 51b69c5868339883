//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Row-reduces a copy of `rows` and returns the pivot columns of its
/// reduced echelon form (their count is the rank).
pub fn pivot_columns(rows: &[Vec<Scalar>]) -> Vec<usize> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Scalar::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    pivot_columns(rows).len()
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.len();
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = Scalar::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= p * &f;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// Incrementally grows a set of linearly independent rational vectors.
#[derive(Debug, Clone, Default)]
pub struct IndependentSet {
    rows: Vec<(Vec<Scalar>, usize)>,
}

impl IndependentSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns `true` and stores `v` if it is independent of the stored vectors.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        for (row, pc) in &self.rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= r * &f;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = Scalar::one() / &v[p];
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                self.rows.push((v, p));
                true
            }
            None => false,
        }
    }
}
