//! Exact evaluation of the Bezout-type inequalities and their isomorphic
//! variants, plus random certification, counterexample search and the
//! one-sided derivative probe for `F(t)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{axis_box, segment_to};
use crate::error::{GeometryError, Result};
use crate::linalg::rank;
use crate::measure::mixed_area_measure;
use crate::mixed::MixedVolumeEngine;
use crate::polytope::{convex_hull, Polytope};
use crate::scalar::{int, pow, rat, sub_points, Direction, Point, Scalar};
use crate::wulff::{perturb, support_derivative, volume_mixed_derivative, PerturbationSpec, Side};

/// Inequality families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InequalityForm {
    /// `V(L_1,…,L_n)V_n(K) <= V(L_1,K[n-1])V(L_2,…,L_n,K)`.
    BFull,
    /// `V(L_1,…,L_{n-1},K)V_n(K) <= V(L_1,K[n-1])V(L_2,…,L_{n-1},K,K)`.
    Main,
    /// `V(L_1,…,L_r,K[n-r])V_n(K)^{r-1} <= Π V(L_i,K[n-1])`.
    BezoutR(usize),
    /// `BFull` with constant `n`.
    IsoN,
    /// `Main` with constant `n`.
    IsoMainN,
    /// `Main` with constant `n-1`.
    IsoZonoid,
    /// `BezoutR(2)` with constant 2.
    Iso2,
}

impl InequalityForm {
    pub fn id(&self) -> &'static str {
        match self {
            InequalityForm::BFull => "b-full",
            InequalityForm::Main => "main",
            InequalityForm::BezoutR(_) => "bezout-r",
            InequalityForm::IsoN => "iso-n",
            InequalityForm::IsoMainN => "iso-main-n",
            InequalityForm::IsoZonoid => "iso-zonoid",
            InequalityForm::Iso2 => "iso-2",
        }
    }

    /// Parses an id; `r` is required for `bezout-r`.
    pub fn parse(id: &str, r: Option<usize>) -> Result<Self> {
        Ok(match id {
            "b-full" | "bfull" => InequalityForm::BFull,
            "main" => InequalityForm::Main,
            "bezout-r" | "bezout" => {
                InequalityForm::BezoutR(r.ok_or_else(|| GeometryError::Parse("bezout-r needs r".into()))?)
            }
            "iso-n" => InequalityForm::IsoN,
            "iso-main-n" => InequalityForm::IsoMainN,
            "iso-zonoid" => InequalityForm::IsoZonoid,
            "iso-2" => InequalityForm::Iso2,
            _ => return Err(GeometryError::Parse(format!("unknown inequality form `{id}`"))),
        })
    }

    pub fn constant(&self, n: usize) -> Scalar {
        match self {
            InequalityForm::BFull | InequalityForm::Main | InequalityForm::BezoutR(_) => int(1),
            InequalityForm::IsoN | InequalityForm::IsoMainN => int(n as i64),
            InequalityForm::IsoZonoid => int(n as i64 - 1),
            InequalityForm::Iso2 => int(2),
        }
    }

    /// Number of `L` bodies.
    pub fn arity(&self, n: usize) -> usize {
        match self {
            InequalityForm::BFull | InequalityForm::IsoN => n,
            InequalityForm::Main | InequalityForm::IsoMainN | InequalityForm::IsoZonoid => n - 1,
            InequalityForm::BezoutR(r) => *r,
            InequalityForm::Iso2 => 2,
        }
    }
}

impl fmt::Display for InequalityForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InequalityForm::BezoutR(r) => write!(f, "bezout-r(r={r})"),
            other => f.write_str(other.id()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HoldsStrict,
    Equality,
    Violated,
    IndeterminateZero,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::HoldsStrict => "holds_strict",
            Verdict::Equality => "equality",
            Verdict::Violated => "violated",
            Verdict::IndeterminateZero => "indeterminate_zero",
        }
    }

    fn of(lhs: &Scalar, rhs: &Scalar) -> Verdict {
        if rhs.is_zero() && lhs.is_zero() {
            Verdict::IndeterminateZero
        } else if lhs > rhs {
            Verdict::Violated
        } else if lhs == rhs {
            Verdict::Equality
        } else {
            Verdict::HoldsStrict
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "holds_strict" => Ok(Verdict::HoldsStrict),
            "equality" => Ok(Verdict::Equality),
            "violated" => Ok(Verdict::Violated),
            "indeterminate_zero" => Ok(Verdict::IndeterminateZero),
            _ => Err(GeometryError::Parse(format!("unknown verdict `{s}`"))),
        }
    }
}

/// One evaluated instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityReport {
    pub form: InequalityForm,
    pub n: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
    /// `lhs/rhs`; `None` when `rhs = 0`.
    pub ratio: Option<Scalar>,
    pub verdict: Verdict,
    pub ls: Vec<Polytope>,
    pub k: Polytope,
}

/// Evaluates `form` on `(L_1,…), K`.
pub fn evaluate(form: InequalityForm, ls: &[Polytope], k: &Polytope) -> Result<InequalityReport> {
    let mut engine = MixedVolumeEngine::new(k.ambient_dim());
    evaluate_with(&mut engine, form, ls, k)
}

/// [`evaluate`] with a caller-provided volume cache.
pub fn evaluate_with<'a>(
    engine: &mut MixedVolumeEngine,
    form: InequalityForm,
    ls: &'a [Polytope],
    k: &'a Polytope,
) -> Result<InequalityReport> {
    let n = k.ambient_dim();
    if engine.dim() != n {
        return Err(GeometryError::DimensionMismatch { expected: engine.dim(), found: n });
    }
    if let InequalityForm::BezoutR(r) = form {
        if r == 0 || r > n {
            return Err(GeometryError::OutOfRange(format!("r = {r} must lie in 1..={n}")));
        }
    }
    let arity = form.arity(n);
    if ls.len() != arity {
        return Err(GeometryError::Arity { expected: arity, found: ls.len() });
    }
    if let Some(l) = ls.iter().find(|l| l.ambient_dim() != n) {
        return Err(GeometryError::DimensionMismatch { expected: n, found: l.ambient_dim() });
    }
    let vk = k.volume().clone();
    let c = form.constant(n);
    let mut mv = |bodies: Vec<&Polytope>| engine.evaluate(&bodies);
    let pad = |v: Vec<&'a Polytope>, m: usize| -> Vec<&'a Polytope> {
        v.into_iter().chain(std::iter::repeat_n(k, m)).collect()
    };
    let (lhs, rhs) = match form {
        InequalityForm::BFull | InequalityForm::IsoN => {
            let all = mv(ls.iter().collect())?;
            let a = mv(pad(vec![&ls[0]], n - 1))?;
            let b = mv(pad(ls[1..].iter().collect(), 1))?;
            (all * &vk, c * a * b)
        }
        InequalityForm::Main | InequalityForm::IsoMainN | InequalityForm::IsoZonoid => {
            let all = mv(pad(ls.iter().collect(), 1))?;
            let a = mv(pad(vec![&ls[0]], n - 1))?;
            let b = mv(pad(ls[1..].iter().collect(), 2))?;
            (all * &vk, c * a * b)
        }
        InequalityForm::BezoutR(_) | InequalityForm::Iso2 => {
            let r = ls.len();
            let all = mv(pad(ls.iter().collect(), n - r))?;
            let mut prod = c;
            for l in ls {
                prod *= mv(pad(vec![l], n - 1))?;
            }
            (all * pow(&vk, r - 1), prod)
        }
    };
    let ratio = if rhs.is_zero() { None } else { Some(&lhs / &rhs) };
    let verdict = Verdict::of(&lhs, &rhs);
    Ok(InequalityReport { form, n, lhs, rhs, ratio, verdict, ls: ls.to_vec(), k: k.clone() })
}

/// Random full-dimensional polytope: 4–8 points (at least `n+1`) uniform
/// on the integer grid `[-h,h]^n`, resampled until full-dimensional.
pub fn random_polytope<R: Rng>(rng: &mut R, n: usize, h: i64) -> Polytope {
    loop {
        let count = rng.gen_range(4.max(n + 1)..=8.max(n + 1));
        let pts: Vec<Point> = (0..count).map(|_| (0..n).map(|_| int(rng.gen_range(-h..=h))).collect()).collect();
        if let Ok(p) = convex_hull(&pts, n) {
            if p.is_full_dimensional() {
                return p;
            }
        }
    }
}

/// Counts of verdicts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub holds_strict: usize,
    pub equality: usize,
    pub violated: usize,
    pub indeterminate_zero: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::HoldsStrict => self.holds_strict += 1,
            Verdict::Equality => self.equality += 1,
            Verdict::Violated => self.violated += 1,
            Verdict::IndeterminateZero => self.indeterminate_zero += 1,
        }
    }
}

/// One row of a certification batch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyRow {
    pub trial: usize,
    pub form: InequalityForm,
    pub lhs: Scalar,
    pub rhs: Scalar,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyReport {
    pub trials: usize,
    pub seed: u64,
    pub counts: VerdictCounts,
    pub rows: Vec<CertifyRow>,
}

/// Coordinate height of the random generator.
pub const RANDOM_HEIGHT: i64 = 4;

/// Evaluates `B_full` and `MAIN` on `trials` random tuples.
pub fn simplex_certify(k: &Polytope, trials: usize, seed: u64) -> Result<CertifyReport> {
    if trials == 0 {
        return Err(GeometryError::OutOfRange("trials must be positive".into()));
    }
    let n = k.ambient_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuples: Vec<Vec<Polytope>> =
        (0..trials).map(|_| (0..n).map(|_| random_polytope(&mut rng, n, RANDOM_HEIGHT)).collect()).collect();
    let per_trial: Vec<Vec<InequalityReport>> = tuples
        .par_iter()
        .map(|ls| {
            let mut engine = MixedVolumeEngine::new(n);
            [(InequalityForm::BFull, &ls[..]), (InequalityForm::Main, &ls[..n - 1])]
                .into_iter()
                .map(|(form, bodies)| evaluate_with(&mut engine, form, bodies, k))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut report = CertifyReport { trials, seed, counts: VerdictCounts::default(), rows: Vec::new() };
    for (trial, reports) in per_trial.into_iter().enumerate() {
        for r in reports {
            report.counts.add(r.verdict);
            report.rows.push(CertifyRow { trial, form: r.form, lhs: r.lhs, rhs: r.rhs, verdict: r.verdict });
        }
    }
    Ok(report)
}

/// Candidate families for [`counterexample_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Segments,
    Faces,
    Truncations,
    Boxes,
}

impl FromStr for Family {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "segments" => Ok(Family::Segments),
            "faces" => Ok(Family::Faces),
            "truncations" => Ok(Family::Truncations),
            "boxes" => Ok(Family::Boxes),
            _ => Err(GeometryError::Parse(format!("unknown family `{s}`"))),
        }
    }
}

/// Edges of a full-dimensional polytope as vertex index pairs.
fn edges(k: &Polytope) -> Vec<(usize, usize)> {
    let n = k.ambient_dim();
    let m = k.vertices().len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (fi, f) in k.facets().iter().enumerate() {
        for &v in &f.vertices {
            incident[v].push(fi);
        }
    }
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let common: Vec<Point> = incident[i]
                .iter()
                .filter(|f| incident[j].contains(f))
                .map(|&f| k.facets()[f].normal.to_scalars())
                .collect();
            if common.len() + 1 >= n && rank(&common) + 1 == n {
                out.push((i, j));
            }
        }
    }
    out
}

fn push_unique(pool: &mut Vec<Polytope>, p: Polytope) {
    if !pool.contains(&p) {
        pool.push(p);
    }
}

/// Segments `[0,v]` along facet normals, edge directions and axes.
fn segment_pool(k: &Polytope) -> Vec<Polytope> {
    let n = k.ambient_dim();
    let mut dirs: Vec<Direction> = Vec::new();
    let mut add = |d: Direction| {
        if !dirs.contains(&d) && !dirs.contains(&d.neg()) {
            dirs.push(d);
        }
    };
    for w in k.facet_normals() {
        add(w);
    }
    for (i, j) in edges(k) {
        if let Ok(d) = Direction::from_rational(&sub_points(&k.vertices()[j], &k.vertices()[i])) {
            add(d);
        }
    }
    for i in 0..n {
        add(Direction::axis(n, i));
    }
    dirs.iter().map(segment_to).collect()
}

/// Primitive sums of the facet normals at each vertex.
fn vertex_normals(k: &Polytope) -> Vec<Direction> {
    let n = k.ambient_dim();
    let mut out = Vec::new();
    for v in 0..k.vertices().len() {
        let mut sum = vec![Scalar::zero(); n];
        for f in k.facets().iter().filter(|f| f.vertices.contains(&v)) {
            for (s, x) in sum.iter_mut().zip(f.normal.coords()) {
                *s += int(*x);
            }
        }
        if let Ok(d) = Direction::from_rational(&sum) {
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    out
}

fn family_pool(k: &Polytope, family: Family) -> Vec<Polytope> {
    let n = k.ambient_dim();
    let mut pool = Vec::new();
    match family {
        Family::Segments => pool = segment_pool(k),
        Family::Faces => {
            for w in k.facet_normals() {
                push_unique(&mut pool, k.face(&w));
            }
            for (i, j) in edges(k) {
                let e = Polytope::segment(k.vertices()[i].clone(), k.vertices()[j].clone()).expect("edge");
                push_unique(&mut pool, e);
            }
        }
        Family::Truncations => {
            let mut dirs = k.facet_normals();
            dirs.extend(vertex_normals(k));
            for u in dirs {
                let width = k.support_value(&u) + k.support_value(&u.neg());
                for frac in [rat(1, 8), rat(1, 4), rat(1, 2), rat(3, 4)] {
                    if let Ok(t) = k.truncate(&u, &(&width * frac)) {
                        push_unique(&mut pool, t);
                    }
                }
            }
        }
        Family::Boxes => {
            for mask in 0..(1u32 << n) {
                let sides: Vec<Scalar> = (0..n).map(|i| int(1 + ((mask >> i) & 1) as i64)).collect();
                push_unique(&mut pool, axis_box(&sides));
            }
            for i in 0..n {
                let sides: Vec<Scalar> = (0..n).map(|j| if i == j { int(1) } else { rat(1, 4) }).collect();
                push_unique(&mut pool, axis_box(&sides));
            }
        }
    }
    pool
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// First violated instance in canonical order.
    pub report: Option<InequalityReport>,
    pub evaluations: usize,
}

/// Enumerates `L_1` from a segment pool and `L_2` from `family`, evaluating
/// `BEZOUT_R (r=2)` and `MAIN` (remaining slots filled with `K`) until the
/// first violation or until `budget` evaluations are spent. `None` is
/// inconclusive, never a certificate.
pub fn counterexample_search(k: &Polytope, family: Family, budget: usize) -> Result<SearchOutcome> {
    if !k.is_full_dimensional() {
        return Err(GeometryError::NotFullDimensional { dim: k.dim(), ambient: k.ambient_dim() });
    }
    let n = k.ambient_dim();
    let first = segment_pool(k);
    let second = family_pool(k, family);
    let mut engine = MixedVolumeEngine::new(n);
    let mut evaluations = 0;
    for l1 in &first {
        for l2 in &second {
            let main_ls: Vec<Polytope> = if n == 2 {
                vec![l1.clone()]
            } else {
                let mut v = vec![l1.clone(), l2.clone()];
                v.extend(std::iter::repeat_n(k.clone(), n - 3));
                v
            };
            let cands = [(InequalityForm::BezoutR(2), vec![l1.clone(), l2.clone()]), (InequalityForm::Main, main_ls)];
            for (form, ls) in cands {
                if evaluations >= budget {
                    return Ok(SearchOutcome { report: None, evaluations });
                }
                evaluations += 1;
                let r = evaluate_with(&mut engine, form, &ls, k)?;
                if r.verdict == Verdict::Violated {
                    return Ok(SearchOutcome { report: Some(r), evaluations });
                }
            }
        }
    }
    Ok(SearchOutcome { report: None, evaluations })
}

/// One-sided derivative of
/// `F(t) = V(K_t,M,K[n-2])V_n(K) - V(K_t,K[n-1])V(M,K[n-1])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub side: Side,
    /// `dF/dt` on `side`.
    pub derivative: Scalar,
    /// `d/dt V(K_t,M,K[n-2])` from exact support derivatives at the atoms of `S(M,K[n-2],·)`.
    pub mixed_term: Scalar,
    /// `d/dt V(K_t,K[n-1])`.
    pub volume_term: Scalar,
    /// `F` exceeds 0 on `side` near 0: right derivative `> 0` or left derivative `< 0`.
    pub violation_certified: bool,
}

/// Exact one-sided derivative of `F` at `t = 0`. `K` must contain the
/// origin in its interior and `supp f` must consist of facet normals.
pub fn derivative_probe(
    k: &Polytope,
    m: &Polytope,
    f: &BTreeMap<Direction, Scalar>,
    side: Side,
) -> Result<ProbeReport> {
    let n = k.ambient_dim();
    if m.ambient_dim() != n {
        return Err(GeometryError::DimensionMismatch { expected: n, found: m.ambient_dim() });
    }
    let spec = PerturbationSpec::new(k.clone(), f.clone())?;
    if !spec.supported_on_facets() {
        return Err(GeometryError::Invalid("supp f must consist of facet normals of K".into()));
    }
    let volume_term = volume_mixed_derivative(&spec, side)?.value;

    let mut args: Vec<&Polytope> = vec![m];
    args.extend(std::iter::repeat_n(k, n - 2));
    let mu = mixed_area_measure(&args)?;
    let mut mixed_term = Scalar::zero();
    for (w, c) in mu.atoms() {
        let d = support_derivative(&spec, w, side, &[])?;
        let exact = d
            .exact
            .ok_or_else(|| GeometryError::Invalid(format!("support derivative at {w} could not be certified")))?;
        mixed_term += exact * c;
    }
    mixed_term /= int(n as i64);

    // cross-check against polarization at a certified step
    let mut engine = MixedVolumeEngine::new(n);
    let mut bodies = vec![k, m];
    bodies.extend(std::iter::repeat_n(k, n - 2));
    let base = engine.evaluate(&bodies)?;
    let certified = crate::wulff::certified_step(&spec, side)?;
    let mut t = certified;
    let mut confirmed = false;
    for _ in 0..24 {
        let kt = perturb(&spec, &t)?;
        let mut b = vec![&kt, m];
        b.extend(std::iter::repeat_n(k, n - 2));
        if engine.evaluate(&b)? - &base == &t * &mixed_term {
            confirmed = true;
            break;
        }
        t /= int(2);
    }
    if !confirmed {
        return Err(GeometryError::Invalid("pairing derivative not confirmed by polarization".into()));
    }

    let mut vm = vec![m];
    vm.extend(std::iter::repeat_n(k, n - 1));
    let v_m = engine.evaluate(&vm)?;
    let derivative = &mixed_term * k.volume() - &volume_term * v_m;
    let violation_certified = match side {
        Side::Right => derivative.is_positive(),
        Side::Left => derivative.is_negative(),
    };
    Ok(ProbeReport { side, derivative, mixed_term, volume_term, violation_certified })
}

/// The two readings of the equality case listed for the constant-`(n-1)`
/// zonoid inequality, evaluated on `K = conv{[0,1]^{n-1}, e_n}`:
/// "a" takes `L_i = [0,e_i]` for `i <= n-2` and fills the last slot with
/// `K`; "b" takes `L_i = [0,e_i]` for all `i <= n-1`.
pub fn zonoid_equality_readings(n: usize) -> Result<Vec<(&'static str, InequalityReport)>> {
    if n < 3 {
        return Err(GeometryError::OutOfRange("zonoid readings need n >= 3".into()));
    }
    let k = crate::corpus::pyramid(n);
    let seg = |i: usize| crate::corpus::segment_axis(n, i);
    let mut a: Vec<Polytope> = (0..n - 2).map(seg).collect();
    a.push(k.clone());
    let b: Vec<Polytope> = (0..n - 1).map(seg).collect();
    Ok(vec![("a", evaluate(InequalityForm::IsoZonoid, &a, &k)?), ("b", evaluate(InequalityForm::IsoZonoid, &b, &k)?)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{centered, cube, pyramid, segment_axis, simplex};

    #[test]
    fn simplex_equality_instance() {
        let r = evaluate(InequalityForm::BFull, &[segment_axis(2, 0), segment_axis(2, 1)], &simplex(2)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (rat(1, 4), rat(1, 4)));
        assert_eq!(r.verdict, Verdict::Equality);
    }

    #[test]
    fn square_violation() {
        let r = evaluate(InequalityForm::BezoutR(2), &[segment_axis(2, 0), segment_axis(2, 1)], &cube(2)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (rat(1, 2), rat(1, 4)));
        assert_eq!(r.ratio, Some(int(2)));
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn isomorphic_equalities() {
        let s = |i| segment_axis(3, i);
        let r = evaluate(InequalityForm::IsoN, &[s(2), s(0), s(1)], &cube(3)).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (rat(1, 6), rat(1, 6)));
        let r = evaluate(InequalityForm::Iso2, &[s(0), s(1)], &pyramid(3)).unwrap();
        assert_eq!(r.ratio, Some(int(1)));
    }

    #[test]
    fn arity_mismatch() {
        let e = evaluate(InequalityForm::Main, &[cube(3)], &cube(3)).unwrap_err();
        assert_eq!(e, GeometryError::Arity { expected: 2, found: 1 });
        assert!(InequalityForm::parse("bezout-r", None).is_err());
    }

    #[test]
    fn zero_sides_are_flagged() {
        let flat = crate::corpus::segment_axis(2, 0);
        let r = evaluate(InequalityForm::BezoutR(1), std::slice::from_ref(&flat), &flat).unwrap();
        assert_eq!(r.verdict, Verdict::IndeterminateZero);
    }

    #[test]
    fn edges_of_cube() {
        assert_eq!(edges(&cube(3)).len(), 12);
        assert_eq!(edges(&crate::corpus::cross_polytope(3)).len(), 12);
    }

    #[test]
    fn certify_small() {
        let r = simplex_certify(&simplex(2), 10, 7).unwrap();
        assert_eq!(r.counts.violated, 0);
        assert_eq!(r.rows.len(), 20);
        assert_eq!(r, simplex_certify(&simplex(2), 10, 7).unwrap());
    }

    #[test]
    fn square_search() {
        let out = counterexample_search(&cube(2), Family::Segments, 1000).unwrap();
        assert_eq!(out.report.unwrap().verdict, Verdict::Violated);
    }

    #[test]
    fn probe_on_square() {
        let k = centered(&cube(2));
        let f: BTreeMap<Direction, Scalar> = [(Direction::axis(2, 0), int(1))].into_iter().collect();
        let p = derivative_probe(&k, &segment_axis(2, 1), &f, Side::Left).unwrap();
        assert_eq!(p.derivative, rat(1, 4));
        assert!(!p.violation_certified);
        let p = derivative_probe(&k, &segment_axis(2, 0), &f, Side::Left).unwrap();
        assert_eq!(p.derivative, rat(-1, 4));
        assert!(p.violation_certified);
        let p = derivative_probe(&k, &segment_axis(2, 0), &BTreeMap::new(), Side::Left).unwrap();
        assert_eq!(p.derivative, int(0));
    }
}
