//! Mixed volumes.
//!
//! [`mixed_volume`] uses the polarization formula
//! `V(K_1,…,K_n) = (1/n!) Σ_{∅≠S⊆[n]} (-1)^{n-|S|} V_n(Σ_{i∈S} K_i)`,
//! with repeated bodies grouped so that `K[m]` costs `m+1` sums instead of
//! `2^m`. [`mixed_volume_oracle`] recovers the same number by interpolating
//! the volume polynomial `λ ↦ V_n(Σ λ_i K_i)`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::linalg::{solve, IndependentSet};
use crate::polytope::Polytope;
use crate::scalar::{binomial, factorial, int, pow, Direction, Scalar};

/// Ordered argument list of a mixed volume; `with(K, m)` appends `K[m]`.
#[derive(Clone, Debug, Default)]
pub struct BodyTuple {
    bodies: Vec<Polytope>,
}

impl BodyTuple {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bodies(bodies: Vec<Polytope>) -> Self {
        BodyTuple { bodies }
    }

    /// Appends `m` copies of `k`.
    pub fn with(mut self, k: &Polytope, m: usize) -> Self {
        self.bodies.extend(std::iter::repeat_n(k.clone(), m));
        self
    }

    pub fn bodies(&self) -> &[Polytope] {
        &self.bodies
    }

    pub fn len(&self) -> usize {
        self.bodies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bodies.is_empty()
    }

    /// Checks the tuple and returns its dimension.
    pub fn validate(&self) -> Result<usize> {
        let n = self.bodies.first().ok_or(GeometryError::Empty)?.ambient_dim();
        if let Some(b) = self.bodies.iter().find(|b| b.ambient_dim() != n) {
            return Err(GeometryError::DimensionMismatch { expected: n, found: b.ambient_dim() });
        }
        if self.bodies.len() != n {
            return Err(GeometryError::Arity { expected: n, found: self.bodies.len() });
        }
        Ok(n)
    }
}

type SumKey = Vec<(usize, u32)>;

/// Polarization engine that shares Minkowski-sum volumes between calls.
///
/// Bodies are registered once (equal bodies share an id); the volume of
/// every `Σ c_i B_i` is cached under its sorted `(id, c_i)` key.
pub struct MixedVolumeEngine {
    n: usize,
    bodies: Vec<Polytope>,
    cache: Mutex<HashMap<SumKey, Scalar>>,
    sums: Mutex<HashMap<SumKey, Polytope>>,
}

impl MixedVolumeEngine {
    pub fn new(n: usize) -> Self {
        MixedVolumeEngine { n, bodies: Vec::new(), cache: Mutex::new(HashMap::new()), sums: Mutex::new(HashMap::new()) }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn register(&mut self, k: &Polytope) -> Result<usize> {
        if k.ambient_dim() != self.n {
            return Err(GeometryError::DimensionMismatch { expected: self.n, found: k.ambient_dim() });
        }
        if let Some(i) = self.bodies.iter().position(|b| b == k) {
            return Ok(i);
        }
        self.bodies.push(k.clone());
        Ok(self.bodies.len() - 1)
    }

    fn sum_volume(&self, key: &SumKey) -> Scalar {
        if let [(id, c)] = key.as_slice() {
            return self.bodies[*id].volume() * pow(&int(*c as i64), self.n);
        }
        self.sum_body(key).volume().clone()
    }

    /// `Σ c_i B_i`, built from the cached sum with one copy of the last body removed.
    fn sum_body(&self, key: &SumKey) -> Polytope {
        if let Some(p) = self.sums.lock().expect("sum lock").get(key) {
            return p.clone();
        }
        let (id, c) = *key.last().expect("non-empty key");
        let mut prev = key.clone();
        if c == 1 {
            prev.pop();
        } else {
            prev.last_mut().expect("non-empty key").1 -= 1;
        }
        let body = if prev.is_empty() {
            self.bodies[id].clone()
        } else {
            self.sum_body(&prev).minkowski_sum(&self.bodies[id]).expect("registered bodies share a dimension")
        };
        self.sums.lock().expect("sum lock").insert(key.clone(), body.clone());
        body
    }

    /// Mixed volume of the registered bodies `ids` (length `n`).
    pub fn mixed_volume(&self, ids: &[usize]) -> Result<Scalar> {
        let n = self.n;
        if ids.len() != n {
            return Err(GeometryError::Arity { expected: n, found: ids.len() });
        }
        let mut groups: Vec<(usize, u32)> = Vec::new();
        for &id in ids {
            match groups.iter_mut().find(|g| g.0 == id) {
                Some(g) => g.1 += 1,
                None => groups.push((id, 1)),
            }
        }
        groups.sort_unstable();
        if groups.len() == 1 {
            return Ok(self.bodies[groups[0].0].volume().clone());
        }

        // all count vectors 0 <= c_i <= m_i, not all zero
        let mut terms: Vec<(SumKey, Scalar)> = Vec::new();
        let mut counts = vec![0u32; groups.len()];
        loop {
            let mut i = 0;
            while i < counts.len() && counts[i] == groups[i].1 {
                counts[i] = 0;
                i += 1;
            }
            if i == counts.len() {
                break;
            }
            counts[i] += 1;
            let total: u32 = counts.iter().sum();
            let mut coef = Scalar::one();
            for (c, g) in counts.iter().zip(&groups) {
                coef *= Scalar::from_integer(binomial(g.1 as usize, *c as usize));
            }
            if (n as u32 - total) % 2 == 1 {
                coef = -coef;
            }
            let key: SumKey = groups.iter().zip(&counts).filter(|(_, &c)| c > 0).map(|(g, &c)| (g.0, c)).collect();
            terms.push((key, coef));
        }

        let missing: Vec<SumKey> = {
            let cache = self.cache.lock().expect("cache lock");
            terms.iter().filter(|(k, _)| !cache.contains_key(k)).map(|(k, _)| k.clone()).collect()
        };
        let computed: Vec<(SumKey, Scalar)> = missing
            .into_iter()
            .map(|k| {
                let v = self.sum_volume(&k);
                (k, v)
            })
            .collect();
        let mut cache = self.cache.lock().expect("cache lock");
        cache.extend(computed);
        let mut total = Scalar::zero();
        for (k, coef) in &terms {
            total += coef * &cache[k];
        }
        Ok(total / Scalar::from_integer(factorial(n)))
    }

    /// Registers the bodies and evaluates their mixed volume.
    pub fn evaluate(&mut self, bodies: &[&Polytope]) -> Result<Scalar> {
        let ids = bodies.iter().map(|b| self.register(b)).collect::<Result<Vec<_>>>()?;
        self.mixed_volume(&ids)
    }
}

/// Mixed volume by grouped polarization.
pub fn mixed_volume(t: &BodyTuple) -> Result<Scalar> {
    let n = t.validate()?;
    let mut engine = MixedVolumeEngine::new(n);
    let refs: Vec<&Polytope> = t.bodies().iter().collect();
    engine.evaluate(&refs)
}

/// Mixed volume of a slice of bodies (length must equal the dimension).
pub fn mixed_volume_of(bodies: &[&Polytope]) -> Result<Scalar> {
    let n = bodies.first().ok_or(GeometryError::Empty)?.ambient_dim();
    if bodies.len() != n {
        return Err(GeometryError::Arity { expected: n, found: bodies.len() });
    }
    MixedVolumeEngine::new(n).evaluate(bodies)
}

/// Exponent vectors `α` with `|α| = n` in `n` variables.
fn monomials(n: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(left - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, n, &mut Vec::new(), &mut out);
    out
}

/// Independent mixed volume: interpolates the homogeneous degree-`n`
/// polynomial `V_n(λ_1K_1+…+λ_nK_n)` on the grid `{1,…,n+1}^n` and reads
/// off the `λ_1⋯λ_n` coefficient, which equals `n!·V(K_1,…,K_n)`.
pub fn mixed_volume_oracle(t: &BodyTuple) -> Result<Scalar> {
    let n = t.validate()?;
    let mons = monomials(n);
    let target = mons.iter().position(|a| a.iter().all(|&x| x == 1)).expect("square-free monomial");
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(mons.len());
    let mut grid: Vec<Vec<i64>> = Vec::with_capacity(mons.len());
    let mut basis = IndependentSet::new();
    let mut lambda = vec![1i64; n];
    'search: loop {
        let row: Vec<Scalar> =
            mons.iter().map(|a| lambda.iter().zip(a).map(|(&l, &e)| pow(&int(l), e as usize)).product()).collect();
        if basis.insert(&row) {
            rows.push(row);
            grid.push(lambda.clone());
            if rows.len() == mons.len() {
                break;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                break 'search;
            }
            if lambda[i] <= n as i64 {
                lambda[i] += 1;
                break;
            }
            lambda[i] = 1;
            i += 1;
        }
    }
    assert_eq!(rows.len(), mons.len(), "grid of n+1 values per variable is unisolvent");
    let values: Vec<Scalar> = grid
        .par_iter()
        .map(|l| {
            let mut acc = t.bodies()[0].scale(&int(l[0]));
            for (b, &li) in t.bodies().iter().zip(l).skip(1) {
                acc = acc.minkowski_sum(&b.scale(&int(li))).expect("validated tuple");
            }
            acc.volume().clone()
        })
        .collect();
    let coeffs = solve(&rows, &values).expect("independent rows");
    Ok(&coeffs[target] / Scalar::from_integer(factorial(n)))
}

fn require_full(k: &Polytope) -> Result<()> {
    if k.is_full_dimensional() {
        Ok(())
    } else {
        Err(GeometryError::NotFullDimensional { dim: k.dim(), ambient: k.ambient_dim() })
    }
}

/// `V(K, L[n-1])^n - V_n(K)·V_n(L)^{n-1}`; nonnegative by Minkowski's first inequality.
pub fn minkowski_gap(k: &Polytope, l: &Polytope) -> Result<Scalar> {
    require_full(k)?;
    require_full(l)?;
    let n = k.ambient_dim();
    let mut bodies = vec![k];
    bodies.extend(std::iter::repeat_n(l, n - 1));
    let v = mixed_volume_of(&bodies)?;
    Ok(pow(&v, n) - k.volume() * pow(l.volume(), n - 1))
}

/// `V(K_1,K_2,C)^2 - V(K_1,K_1,C)·V(K_2,K_2,C)` with `C = rest`;
/// nonnegative by the Aleksandrov–Fenchel inequality.
pub fn af_gap(k1: &Polytope, k2: &Polytope, rest: &[&Polytope]) -> Result<Scalar> {
    let n = k1.ambient_dim();
    if rest.len() + 2 != n {
        return Err(GeometryError::Arity { expected: n - 2, found: rest.len() });
    }
    let mut engine = MixedVolumeEngine::new(n);
    let tuple = |a: &Polytope, b: &Polytope| {
        let mut v: Vec<Polytope> = vec![a.clone(), b.clone()];
        v.extend(rest.iter().map(|&c| c.clone()));
        v
    };
    let mut eval = |v: Vec<Polytope>| {
        let refs: Vec<&Polytope> = v.iter().collect();
        engine.evaluate(&refs)
    };
    let mixed = eval(tuple(k1, k2))?;
    let a = eval(tuple(k1, k1))?;
    let b = eval(tuple(k2, k2))?;
    Ok(&mixed * &mixed - a * b)
}

/// `(n-1)`-dimensional mixed volume of the projections of `bodies` onto
/// `w^⊥`, measured in the chart that drops coordinate `w.pivot()`.
pub fn chart_mixed_volume(bodies: &[&Polytope], w: &Direction) -> Result<Scalar> {
    let n = w.dim();
    if bodies.len() + 1 != n {
        return Err(GeometryError::Arity { expected: n - 1, found: bodies.len() });
    }
    let projected: Vec<Polytope> = bodies.iter().map(|b| b.project(w)).collect();
    let refs: Vec<&Polytope> = projected.iter().collect();
    mixed_volume_of(&refs)
}

/// `V(K_1^w,…,K_{n-1}^w)` in co-weight normalization (true value divided by `‖w‖`).
pub fn face_mixed_volume(bodies: &[&Polytope], w: &Direction) -> Result<Scalar> {
    let faces: Vec<Polytope> = bodies.iter().map(|b| b.face(w)).collect();
    let refs: Vec<&Polytope> = faces.iter().collect();
    Ok(chart_mixed_volume(&refs, w)? / w.pivot_abs())
}

/// Both sides of `V([0,w],K_2,…,K_n) = (‖w‖/n)·V(K_2|w^⊥,…,K_n|w^⊥)`, the
/// right side written as `‖w‖²·V_chart/(n·|w_j|)`.
pub fn projection_formula_sides(w: &Direction, rest: &[&Polytope]) -> Result<(Scalar, Scalar)> {
    let n = w.dim();
    let seg = crate::corpus::segment_to(w);
    let mut bodies = vec![&seg];
    bodies.extend_from_slice(rest);
    let lhs = mixed_volume_of(&bodies)?;
    let chart = chart_mixed_volume(rest, w)?;
    let rhs = chart * Scalar::from_integer(w.norm_sq()) / (int(n as i64) * w.pivot_abs());
    Ok((lhs, rhs))
}
