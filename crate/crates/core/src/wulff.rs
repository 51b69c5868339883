//! Wulff shapes and the perturbation bodies `K_t = W(h_K + t f)`.
//!
//! For a finitely supported `f` the Wulff shape over the whole sphere is
//! `K ∩ {⟨x,w⟩ <= h_K(w) + t f(w) : t f(w) < 0}`; relaxed directions do not
//! enlarge it. Continuous `f` is only handled approximately by
//! [`wulff_grid`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::halfspace::{intersect, intersect_double_description, Halfspace};
use crate::mixed::MixedVolumeEngine;
use crate::polytope::Polytope;
use crate::scalar::{approx, int, Direction, Scalar};

/// One-sided limit selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn sign(self) -> i64 {
        match self {
            Side::Left => -1,
            Side::Right => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "-" => Ok(Side::Left),
            "right" | "+" => Ok(Side::Right),
            _ => Err(GeometryError::Parse(format!("side must be left or right, got `{s}`"))),
        }
    }
}

/// Finite support data `w ↦ g(w)` for halfspaces `⟨x,w⟩ <= g(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSpec {
    n: usize,
    entries: BTreeMap<Direction, Scalar>,
}

impl SupportSpec {
    pub fn new(n: usize) -> Self {
        SupportSpec { n, entries: BTreeMap::new() }
    }

    /// Rejects repeated directions and dimension mismatches.
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = (Direction, Scalar)>) -> Result<Self> {
        let mut spec = Self::new(n);
        for (w, v) in entries {
            spec.insert(w, v)?;
        }
        Ok(spec)
    }

    /// Facet data of a full-dimensional polytope.
    pub fn of_polytope(k: &Polytope) -> Self {
        SupportSpec {
            n: k.ambient_dim(),
            entries: k.facets().iter().map(|f| (f.normal.clone(), f.offset.clone())).collect(),
        }
    }

    pub fn insert(&mut self, w: Direction, value: Scalar) -> Result<()> {
        if w.dim() != self.n {
            return Err(GeometryError::DimensionMismatch { expected: self.n, found: w.dim() });
        }
        if self.entries.contains_key(&w) {
            return Err(GeometryError::Invalid(format!("direction {w} listed twice")));
        }
        self.entries.insert(w, value);
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<Direction, Scalar> {
        &self.entries
    }

    pub fn halfspaces(&self) -> Vec<Halfspace> {
        self.entries.iter().map(|(w, v)| Halfspace { normal: w.clone(), offset: v.clone() }).collect()
    }

    /// `(1-λ)g_1 + λg_2` over the common direction set.
    pub fn combine(&self, other: &SupportSpec, lambda: &Scalar) -> Result<SupportSpec> {
        if self.entries.keys().ne(other.entries.keys()) {
            return Err(GeometryError::Invalid("specs must share their direction set".into()));
        }
        let mu = Scalar::one() - lambda;
        let entries = self
            .entries
            .iter()
            .zip(other.entries.values())
            .map(|((w, a), b)| (w.clone(), &mu * a + lambda * b))
            .collect();
        Ok(SupportSpec { n: self.n, entries })
    }
}

/// `W(g)` over the finite entry set.
pub fn wulff_shape(spec: &SupportSpec) -> Result<Polytope> {
    if spec.entries.is_empty() {
        return Err(GeometryError::Empty);
    }
    intersect(&spec.halfspaces(), spec.n)
}

/// Open interval of admissible `t`; `None` marks an infinite end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TRange {
    pub lo: Option<Scalar>,
    pub hi: Option<Scalar>,
}

impl TRange {
    pub fn contains(&self, t: &Scalar) -> bool {
        self.lo.as_ref().is_none_or(|lo| t > lo) && self.hi.as_ref().is_none_or(|hi| t < hi)
    }

    /// Distance from 0 to the end of the range on `side`.
    fn reach(&self, side: Side) -> Option<Scalar> {
        match side {
            Side::Left => self.lo.as_ref().map(|lo| -lo),
            Side::Right => self.hi.clone(),
        }
    }
}

/// Base body with the origin in its interior and a finitely supported `f`
/// (unnormalized: `f(w) = ‖w‖·f(u)`).
#[derive(Clone, Debug)]
pub struct PerturbationSpec {
    base: Polytope,
    f: BTreeMap<Direction, Scalar>,
    t_range: TRange,
}

impl PerturbationSpec {
    pub fn new(base: Polytope, f: BTreeMap<Direction, Scalar>) -> Result<Self> {
        let n = base.ambient_dim();
        if !base.is_full_dimensional() {
            return Err(GeometryError::NotFullDimensional { dim: base.dim(), ambient: n });
        }
        if base.facets().iter().any(|fc| !fc.offset.is_positive()) {
            return Err(GeometryError::OriginNotInterior);
        }
        if let Some(w) = f.keys().find(|w| w.dim() != n) {
            return Err(GeometryError::DimensionMismatch { expected: n, found: w.dim() });
        }
        let f: BTreeMap<Direction, Scalar> = f.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut lo: Option<Scalar> = None;
        let mut hi: Option<Scalar> = None;
        for (w, v) in &f {
            let bound = base.support_value(w) / v;
            if v.is_positive() {
                let b = -bound;
                lo = Some(lo.map_or(b.clone(), |l: Scalar| l.max(b)));
            } else {
                let b = -bound;
                hi = Some(hi.map_or(b.clone(), |h: Scalar| h.min(b)));
            }
        }
        Ok(PerturbationSpec { base, f, t_range: TRange { lo, hi } })
    }

    /// Translates `base` so its vertex centroid is the origin.
    pub fn centered(base: &Polytope, f: BTreeMap<Direction, Scalar>) -> Result<Self> {
        Self::new(crate::corpus::centered(base), f)
    }

    /// Narrows the admissible interval.
    pub fn with_t_range(mut self, lo: Option<Scalar>, hi: Option<Scalar>) -> Result<Self> {
        let lo = match (lo, self.t_range.lo.take()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (hi, self.t_range.hi.take()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if !(l.is_negative() && h.is_positive()) {
                return Err(GeometryError::OutOfRange("t range must contain 0".into()));
            }
        }
        self.t_range = TRange { lo, hi };
        Ok(self)
    }

    pub fn base(&self) -> &Polytope {
        &self.base
    }

    pub fn f(&self) -> &BTreeMap<Direction, Scalar> {
        &self.f
    }

    pub fn f_at(&self, w: &Direction) -> Scalar {
        self.f.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn t_range(&self) -> &TRange {
        &self.t_range
    }

    /// `f(w)` if `w` is tightened on `side`, else 0.
    fn tightened_value(&self, w: &Direction, side: Side) -> Scalar {
        let v = self.f_at(w);
        if (side == Side::Left && v.is_positive()) || (side == Side::Right && v.is_negative()) {
            v
        } else {
            Scalar::zero()
        }
    }

    /// `true` iff every direction of `supp f` is a facet normal of the base.
    pub fn supported_on_facets(&self) -> bool {
        self.f.keys().all(|w| self.base.facet(w).is_some())
    }
}

/// `K_t(f)`.
pub fn perturb(spec: &PerturbationSpec, t: &Scalar) -> Result<Polytope> {
    if !spec.t_range.contains(t) {
        return Err(GeometryError::OutOfRange(format!("t = {t} outside the admissible range")));
    }
    let k = &spec.base;
    let mut hs = k.halfspaces();
    let mut tightened = false;
    for (w, v) in &spec.f {
        let dt = t * v;
        if dt.is_negative() {
            hs.push(Halfspace { normal: w.clone(), offset: k.support_value(w) + dt });
            tightened = true;
        }
    }
    if !tightened {
        return Ok(k.clone());
    }
    intersect(&hs, k.ambient_dim())
}

/// Largest dyadic `t = ±T·2^{-k}` on `side` at which every facet normal `w`
/// of the base satisfies `h_{K_t}(w) = h_K(w) + t·f_tight(w)`. By concavity
/// in `t` the same identity then holds on the whole interval `[0, t]`.
pub fn certified_step(spec: &PerturbationSpec, side: Side) -> Result<Scalar> {
    let mut t = int(1);
    if let Some(r) = spec.t_range.reach(side) {
        while t >= r {
            t /= int(2);
        }
    }
    t *= int(side.sign());
    let normals = spec.base.facet_normals();
    for _ in 0..64 {
        let kt = perturb(spec, &t)?;
        let ok = kt.is_full_dimensional()
            && normals
                .iter()
                .all(|w| kt.support_value(w) == spec.base.support_value(w) + &t * spec.tightened_value(w, side));
        if ok {
            return Ok(t);
        }
        t /= int(2);
    }
    Err(GeometryError::Invalid("no certified step found".into()))
}

/// One-sided support derivative report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeReport {
    pub direction: Direction,
    pub side: Side,
    /// `(t, (h_{K_t}(u) - h_K(u))/t)` in the order evaluated.
    pub quotients: Vec<(Scalar, Scalar)>,
    /// Exact one-sided derivative when two consecutive quotients agree.
    pub exact: Option<Scalar>,
    /// The step at which the chord test certified exactness.
    pub certified_at: Option<Scalar>,
}

fn default_steps(spec: &PerturbationSpec, side: Side) -> Vec<Scalar> {
    let mut t = int(1);
    if let Some(r) = spec.t_range.reach(side) {
        while t >= r {
            t /= int(2);
        }
    }
    (0..16).map(|k| &t * int(side.sign()) / Scalar::from_integer(BigInt::from(1u64) << k)).collect()
}

/// One-sided difference quotients of `t ↦ h_{K_t}(u)` at `t = 0`.
///
/// `steps` must share the sign of `side` and decrease in magnitude; when
/// empty, dyadic steps inside the admissible range are used. Since the map
/// is concave, equal quotients at `t` and a smaller `t'` with `t'/t = 1/2`
/// certify the exact derivative.
pub fn support_derivative(
    spec: &PerturbationSpec,
    u: &Direction,
    side: Side,
    steps: &[Scalar],
) -> Result<DerivativeReport> {
    let steps: Vec<Scalar> = if steps.is_empty() { default_steps(spec, side) } else { steps.to_vec() };
    for t in &steps {
        if t.is_zero() || (t.is_positive() != (side == Side::Right)) {
            return Err(GeometryError::Invalid(format!("step {t} does not lie on the {side} side")));
        }
    }
    let h0 = spec.base.support_value(u);
    let mut quotients = Vec::with_capacity(steps.len());
    let mut exact = None;
    let mut certified_at = None;
    for t in &steps {
        let kt = perturb(spec, t)?;
        let q = (kt.support_value(u) - &h0) / t;
        if exact.is_none() {
            if let Some((tp, qp)) = quotients.last() {
                if *qp == q && &(tp / int(2)) == t {
                    exact = Some(q.clone());
                    certified_at = Some(tp.clone());
                }
            }
        }
        quotients.push((t.clone(), q));
    }
    Ok(DerivativeReport { direction: u.clone(), side, quotients, exact, certified_at })
}

/// How a one-sided volume derivative was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivativeMethod {
    /// `(1/n) Σ f·ω` over tightened facets, confirmed by polarization.
    Pairing,
    /// Chord test on exact polarization values.
    Chord,
    /// Uncertified difference quotient.
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeDerivative {
    pub side: Side,
    pub value: Scalar,
    pub exact: bool,
    pub method: DerivativeMethod,
    /// Step used for the polarization cross-check.
    pub step: Option<Scalar>,
}

fn mixed_with_base(engine: &mut MixedVolumeEngine, kt: &Polytope, k: &Polytope) -> Result<Scalar> {
    let n = k.ambient_dim();
    let mut bodies = vec![kt];
    bodies.extend(std::iter::repeat_n(k, n - 1));
    engine.evaluate(&bodies)
}

/// One-sided derivative of `t ↦ V(K_t, K[n-1])` at `t = 0`.
pub fn volume_mixed_derivative(spec: &PerturbationSpec, side: Side) -> Result<VolumeDerivative> {
    let k = &spec.base;
    let n = k.ambient_dim();
    let mut engine = MixedVolumeEngine::new(n);
    let v0 = k.volume().clone();
    if spec.supported_on_facets() {
        let sum: Scalar = k.facets().iter().map(|fc| spec.tightened_value(&fc.normal, side) * &fc.coweight).sum();
        let value = sum / int(n as i64);
        let t = certified_step(spec, side)?;
        let half = &t / int(2);
        for s in [&t, &half] {
            let vs = mixed_with_base(&mut engine, &perturb(spec, s)?, k)?;
            if vs - &v0 != s * &value {
                return Err(GeometryError::Invalid(format!(
                    "polarization disagrees with the pairing derivative at t = {s}"
                )));
            }
        }
        return Ok(VolumeDerivative { side, value, exact: true, method: DerivativeMethod::Pairing, step: Some(t) });
    }
    log::warn!("supp f is not contained in the facet normals; using difference quotients");
    let mut prev: Option<(Scalar, Scalar)> = None;
    for t in default_steps(spec, side) {
        let vt = mixed_with_base(&mut engine, &perturb(spec, &t)?, k)?;
        let q = (vt - &v0) / &t;
        if let Some((tp, qp)) = &prev {
            if *qp == q {
                return Ok(VolumeDerivative {
                    side,
                    value: q,
                    exact: true,
                    method: DerivativeMethod::Chord,
                    step: Some(tp.clone()),
                });
            }
        }
        prev = Some((t, q));
    }
    let (t, q) = prev.expect("nonempty step list");
    Ok(VolumeDerivative { side, value: q, exact: false, method: DerivativeMethod::Quotient, step: Some(t) })
}

/// Midpoint concavity summary of `t ↦ h_{K_t}(u)` over sample pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcavityReport {
    pub holds: bool,
    pub pairs: usize,
    pub strict_pairs: usize,
}

pub fn concavity_report(spec: &PerturbationSpec, u: &Direction, samples: &[Scalar]) -> Result<ConcavityReport> {
    let h = |t: &Scalar| -> Result<Scalar> { Ok(perturb(spec, t)?.support_value(u)) };
    let values: Vec<Scalar> = samples.iter().map(&h).collect::<Result<_>>()?;
    let mut report = ConcavityReport { holds: true, pairs: 0, strict_pairs: 0 };
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let mid = h(&((&samples[i] + &samples[j]) / int(2)))?;
            let chord = (&values[i] + &values[j]) / int(2);
            report.pairs += 1;
            if mid < chord {
                report.holds = false;
            } else if mid > chord {
                report.strict_pairs += 1;
            }
        }
    }
    Ok(report)
}

/// `true` iff midpoint concavity holds exactly at all sample pairs.
pub fn concavity_probe(spec: &PerturbationSpec, u: &Direction, samples: &[Scalar]) -> Result<bool> {
    Ok(concavity_report(spec, u, samples)?.holds)
}

/// Continuous cap bump `f(u) = height·max(0, 1 - θ(u,u_0)/ρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CapBump {
    pub center: Direction,
    pub radius: f64,
    pub height: Scalar,
}

const CAP_BITS: u32 = 40;

impl CapBump {
    /// `f(u)` in floating point for unit `u` along `w`.
    pub fn value_f64(&self, w: &Direction) -> f64 {
        let c: Vec<f64> = self.center.coords().iter().map(|&x| x as f64).collect();
        let x: Vec<f64> = w.coords().iter().map(|&x| x as f64).collect();
        let cos = c.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() / (self.center.norm() * w.norm());
        let theta = if w == &self.center { 0.0 } else { cos.clamp(-1.0, 1.0).acos() };
        approx(&self.height) * (1.0 - theta / self.radius).max(0.0)
    }

    /// Unnormalized `‖w‖·f(u)`, rounded to a multiple of `2^-40`; exact at
    /// the center when the center is a unit axis.
    pub fn unnormalized(&self, w: &Direction) -> Scalar {
        if w == &self.center && w.norm_sq() == BigInt::one() {
            return self.height.clone();
        }
        let v = self.value_f64(w) * w.norm();
        let scaled = (v * f64::from(2u32).powi(CAP_BITS as i32)).round();
        Scalar::new(BigInt::from(scaled.to_i128().unwrap_or(0)), BigInt::from(1u64) << CAP_BITS)
    }
}

/// Sphere sample: primitive vectors of max-norm `<= level` plus the facet
/// normals of a base body. Levels are nested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub directions: BTreeSet<Direction>,
    pub refinement_level: u32,
}

impl GridSpec {
    pub fn new(base: &Polytope, level: u32) -> Self {
        let n = base.ambient_dim();
        let l = level as i64;
        let mut directions: BTreeSet<Direction> = base.facet_normals().into_iter().collect();
        let mut v = vec![-l; n];
        loop {
            if v.iter().any(|&x| x != 0) {
                if let Ok(d) = Direction::new(v.clone()) {
                    if d.coords() == v.as_slice() {
                        directions.insert(d);
                    }
                }
            }
            let mut i = 0;
            while i < n && v[i] == l {
                v[i] = -l;
                i += 1;
            }
            if i == n {
                break;
            }
            v[i] += 1;
        }
        GridSpec { directions, refinement_level: level }
    }
}

/// Outer approximation of `W(h_K + t f_cap)` by the grid directions.
pub fn wulff_grid(k: &Polytope, cap: &CapBump, grid: &GridSpec, t: &Scalar) -> Result<Polytope> {
    let n = k.ambient_dim();
    if !k.is_full_dimensional() {
        return Err(GeometryError::NotFullDimensional { dim: k.dim(), ambient: n });
    }
    if let Some(w) = k.facet_normals().into_iter().find(|w| !grid.directions.contains(w)) {
        return Err(GeometryError::Invalid(format!("grid misses facet normal {w}")));
    }
    let mut first = Vec::new();
    let mut rest = Vec::new();
    for w in &grid.directions {
        let offset = k.support_value(w) + t * cap.unnormalized(w);
        let h = Halfspace { normal: w.clone(), offset };
        if k.facet(w).is_some() {
            first.push(h);
        } else {
            rest.push(h);
        }
    }
    first.extend(rest);
    if t.is_zero() {
        return Ok(k.clone());
    }
    intersect_double_description(&first, n)
}

/// `(h_{K_t}(u) - h_K(u))/t` under the grid approximation, in floating point.
pub fn grid_support_quotient(k: &Polytope, cap: &CapBump, grid: &GridSpec, u: &Direction, t: &Scalar) -> Result<f64> {
    let kt = wulff_grid(k, cap, grid, t)?;
    Ok(approx(&((kt.support_value(u) - k.support_value(u)) / t)))
}

/// `2^{-k}` as an exact scalar.
pub fn dyadic(k: u32) -> Scalar {
    Scalar::new(BigInt::one(), BigInt::from(1u64) << k)
}
