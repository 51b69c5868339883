//! Discrete measures on the sphere: surface area and mixed area measures of
//! polytopes, stored in co-weight normalization (mass divided by `‖w‖`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{GeometryError, Result};
use crate::mixed::face_mixed_volume;
use crate::polytope::Polytope;
use crate::scalar::{binomial, factorial, format_scalar, int, Direction, Scalar};

/// Finitely supported measure; atoms keyed by primitive directions.
#[derive(Clone, PartialEq, Eq)]
pub struct DiscreteSphereMeasure {
    n: usize,
    atoms: BTreeMap<Direction, Scalar>,
}

impl fmt::Debug for DiscreteSphereMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.atoms.iter().map(|(w, c)| (w.to_string(), format_scalar(c)))).finish()
    }
}

impl DiscreteSphereMeasure {
    pub fn zero(n: usize) -> Self {
        DiscreteSphereMeasure { n, atoms: BTreeMap::new() }
    }

    /// Builds a measure from `(direction, co-weight)` pairs, merging repeats
    /// and dropping exact zeros.
    pub fn from_atoms(n: usize, atoms: impl IntoIterator<Item = (Direction, Scalar)>) -> Result<Self> {
        let mut m = Self::zero(n);
        for (w, c) in atoms {
            if w.dim() != n {
                return Err(GeometryError::DimensionMismatch { expected: n, found: w.dim() });
            }
            m.add_atom(w, c);
        }
        m.check_nonnegative()?;
        Ok(m)
    }

    fn add_atom(&mut self, w: Direction, c: Scalar) {
        let v = self.atoms.remove(&w).unwrap_or_else(Scalar::zero) + c;
        if !v.is_zero() {
            self.atoms.insert(w, v);
        }
    }

    fn add_scaled(&mut self, other: &DiscreteSphereMeasure, coef: &Scalar) {
        for (w, c) in &other.atoms {
            self.add_atom(w.clone(), c * coef);
        }
    }

    fn check_nonnegative(&self) -> Result<()> {
        match self.atoms.iter().find(|(_, c)| c.is_negative()) {
            Some((w, c)) => Err(GeometryError::NegativeAtom(format!("{w} ↦ {}", format_scalar(c)))),
            None => Ok(()),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &BTreeMap<Direction, Scalar> {
        &self.atoms
    }

    /// Co-weight at `w` (zero off the support).
    pub fn get(&self, w: &Direction) -> Scalar {
        self.atoms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn support(&self) -> BTreeSet<Direction> {
        self.atoms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `λμ` for `λ >= 0`.
    pub fn scale(&self, lambda: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        out.add_scaled(self, lambda);
        out
    }

    /// `μ + ν`.
    pub fn add(&self, other: &DiscreteSphereMeasure) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    /// Total mass as `(co-weight, ‖w‖²)` pairs; the true mass of each atom is
    /// `co-weight·sqrt(‖w‖²)`.
    pub fn true_masses(&self) -> Vec<(Direction, Scalar, num_bigint::BigInt)> {
        self.atoms.iter().map(|(w, c)| (w.clone(), c.clone(), w.norm_sq())).collect()
    }
}

/// `S_P`: facet normals with facet co-weights; an `(n-1)`-dimensional body
/// gives atoms at `±w`, lower-dimensional bodies give the zero measure.
pub fn surface_area_measure(p: &Polytope) -> DiscreteSphereMeasure {
    let n = p.ambient_dim();
    let mut m = DiscreteSphereMeasure::zero(n);
    if p.is_full_dimensional() {
        for f in p.facets() {
            m.atoms.insert(f.normal.clone(), f.coweight.clone());
        }
    } else if let Some((w, c)) = p.flat_data() {
        if !c.is_zero() {
            m.atoms.insert(w.clone(), c.clone());
            m.atoms.insert(w.neg(), c.clone());
        }
    }
    m
}

/// `S(K_1,…,K_{n-1},·)` via the alternating sum
/// `(1/(n-1)!) Σ_{∅≠S} (-1)^{n-1-|S|} S_{Σ_{i∈S} K_i}`.
pub fn mixed_area_measure(bodies: &[&Polytope]) -> Result<DiscreteSphereMeasure> {
    let first = bodies.first().ok_or(GeometryError::Empty)?;
    let n = first.ambient_dim();
    if let Some(b) = bodies.iter().find(|b| b.ambient_dim() != n) {
        return Err(GeometryError::DimensionMismatch { expected: n, found: b.ambient_dim() });
    }
    if bodies.len() + 1 != n {
        return Err(GeometryError::Arity { expected: n - 1, found: bodies.len() });
    }
    let mut groups: Vec<(&Polytope, usize)> = Vec::new();
    for &b in bodies {
        match groups.iter_mut().find(|g| g.0 == b) {
            Some(g) => g.1 += 1,
            None => groups.push((b, 1)),
        }
    }
    if groups.len() == 1 {
        return Ok(surface_area_measure(groups[0].0));
    }
    let mut terms: Vec<(Vec<usize>, Scalar)> = Vec::new();
    let mut counts = vec![0usize; groups.len()];
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
        let total: usize = counts.iter().sum();
        let mut coef = Scalar::one();
        for (c, g) in counts.iter().zip(&groups) {
            coef *= Scalar::from_integer(binomial(g.1, *c));
        }
        if (n - 1 - total) % 2 == 1 {
            coef = -coef;
        }
        terms.push((counts.clone(), coef));
    }
    let parts: Vec<(DiscreteSphereMeasure, Scalar)> = terms
        .into_par_iter()
        .map(|(counts, coef)| {
            let mut acc: Option<Polytope> = None;
            for (c, g) in counts.iter().zip(&groups) {
                if *c == 0 {
                    continue;
                }
                let s = g.0.scale(&int(*c as i64));
                acc = Some(match acc {
                    None => s,
                    Some(a) => a.minkowski_sum(&s).expect("same dimension"),
                });
            }
            (surface_area_measure(&acc.expect("nonempty subset")), coef)
        })
        .collect();
    let mut out = DiscreteSphereMeasure::zero(n);
    for (m, coef) in &parts {
        out.add_scaled(m, coef);
    }
    let out = out.scale(&(Scalar::one() / Scalar::from_integer(factorial(n - 1))));
    out.check_nonnegative()?;
    Ok(out)
}

/// `(S(K_1,…,K_{n-1},{w}), V(K_1^w,…,K_{n-1}^w))`, both in co-weight normalization.
pub fn atom_check(bodies: &[&Polytope], w: &Direction) -> Result<(Scalar, Scalar)> {
    let mu = mixed_area_measure(bodies)?;
    Ok((mu.get(w), face_mixed_volume(bodies, w)?))
}

/// `(1/n) Σ_w h_L(w)·μ({w})`.
pub fn pairing(l: &Polytope, mu: &DiscreteSphereMeasure) -> Result<Scalar> {
    let n = mu.ambient_dim();
    if l.ambient_dim() != n {
        return Err(GeometryError::DimensionMismatch { expected: n, found: l.ambient_dim() });
    }
    let sum: Scalar = mu.atoms.iter().map(|(w, c)| l.support_value(w) * c).sum();
    Ok(sum / int(n as i64))
}

/// For discrete measures: `supp μ ⊆ supp ν`.
pub fn absolutely_continuous(mu: &DiscreteSphereMeasure, nu: &DiscreteSphereMeasure) -> Result<bool> {
    if mu.n != nu.n {
        return Err(GeometryError::DimensionMismatch { expected: nu.n, found: mu.n });
    }
    Ok(mu.atoms.keys().all(|w| nu.atoms.contains_key(w)))
}

/// `(S_{L+M}, Σ_{r=0}^{n-1} C(n-1,r) S(M[r], L[n-1-r], ·))`.
pub fn sum_expansion_sides(l: &Polytope, m: &Polytope) -> Result<(DiscreteSphereMeasure, DiscreteSphereMeasure)> {
    let n = l.ambient_dim();
    if m.ambient_dim() != n {
        return Err(GeometryError::DimensionMismatch { expected: n, found: m.ambient_dim() });
    }
    let direct = surface_area_measure(&l.minkowski_sum(m)?);
    let mut expansion = DiscreteSphereMeasure::zero(n);
    for r in 0..n {
        let mut bodies: Vec<&Polytope> = vec![m; r];
        bodies.extend(std::iter::repeat_n(l, n - 1 - r));
        let term = mixed_area_measure(&bodies)?;
        expansion.add_scaled(&term, &Scalar::from_integer(binomial(n - 1, r)));
    }
    Ok((direct, expansion))
}
