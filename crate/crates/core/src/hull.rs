//! Integer beneath–beyond convex hull and boundary triangulation.
//!
//! Everything here works on full-dimensional, pairwise distinct, integer
//! points in `Z^d`. The kernels are generic over [`ExactInt`] so that the
//! common small-coordinate case runs on checked `i128` and falls back to
//! `BigInt` on the first overflow.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait ExactInt: Clone + Ord + std::hash::Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_bigint(x: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn sign(&self) -> i8;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_bigint(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> i8 {
        self.signum() as i8
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_bigint(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Option<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y)?)?;
    }
    Some(acc)
}

fn diff<T: ExactInt>(a: &[T], b: &[T]) -> Option<Vec<T>> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn det<T: ExactInt>(m: &[Vec<T>]) -> Option<T> {
    let k = m.len();
    match k {
        0 => return Some(T::one()),
        1 => return Some(m[0][0].clone()),
        2 => return m[0][0].mul(&m[1][1])?.sub(&m[0][1].mul(&m[1][0])?),
        3 => return det_cols(m, &[0, 1, 2]),
        _ => {}
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for i in 0..k - 1 {
        if a[i][i].sign() == 0 {
            match (i + 1..k).find(|&r| a[r][i].sign() != 0) {
                Some(r) => a.swap(i, r),
                None => return Some(T::zero()),
            }
            negate = !negate;
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let v = a[r][c].mul(&a[i][i])?.sub(&a[r][i].mul(&a[i][c])?)?;
                a[r][c] = v.div_exact(&prev);
            }
        }
        prev = a[i][i].clone();
    }
    let d = a[k - 1][k - 1].clone();
    if negate {
        d.neg()
    } else {
        Some(d)
    }
}

/// Determinant of the square submatrix of `rows` on columns `cols`.
fn det_cols<T: ExactInt>(rows: &[Vec<T>], cols: &[usize]) -> Option<T> {
    let e = |i: usize, j: usize| &rows[i][cols[j]];
    match cols.len() {
        1 => Some(e(0, 0).clone()),
        2 => e(0, 0).mul(e(1, 1))?.sub(&e(0, 1).mul(e(1, 0))?),
        3 => {
            let m0 = e(1, 1).mul(e(2, 2))?.sub(&e(1, 2).mul(e(2, 1))?)?;
            let m1 = e(1, 0).mul(e(2, 2))?.sub(&e(1, 2).mul(e(2, 0))?)?;
            let m2 = e(1, 0).mul(e(2, 1))?.sub(&e(1, 1).mul(e(2, 0))?)?;
            e(0, 0).mul(&m0)?.sub(&e(0, 1).mul(&m1)?)?.add(&e(0, 2).mul(&m2)?)
        }
        _ => {
            let m: Vec<Vec<T>> = rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
            det(&m)
        }
    }
}

/// Primitive normal of the hyperplane through `d` points in `Z^d`
/// (generalized cross product of the difference vectors).
fn hyperplane_normal<T: ExactInt>(pts: &[&Vec<T>]) -> Option<Vec<T>> {
    let d = pts[0].len();
    let rows: Vec<Vec<T>> = pts[1..].iter().map(|p| diff(p, pts[0])).collect::<Option<_>>()?;
    let mut normal = Vec::with_capacity(d);
    let mut cols: Vec<usize> = Vec::with_capacity(d);
    for col in 0..d {
        cols.clear();
        cols.extend((0..d).filter(|&j| j != col));
        let c = det_cols(&rows, &cols)?;
        normal.push(if col % 2 == 0 { c } else { c.neg()? });
    }
    Some(make_primitive(normal))
}

fn make_primitive<T: ExactInt>(v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.sign() == 0 {
        return v;
    }
    v.into_iter().map(|x| x.div_exact(&g)).collect()
}

/// Incremental rank test with fraction-free row reduction.
pub(crate) struct RowEchelon<T> {
    rows: Vec<(Vec<T>, usize)>,
}

impl<T: ExactInt> RowEchelon<T> {
    pub(crate) fn new() -> Self {
        RowEchelon { rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the stored rows. Returns `Some(true)`
    /// when the rank grew and `None` on overflow.
    pub(crate) fn insert(&mut self, v: &[T]) -> Option<bool> {
        let mut v = v.to_vec();
        for (row, pc) in &self.rows {
            if v[*pc].sign() != 0 {
                let a = row[*pc].clone();
                let b = v[*pc].clone();
                v = v.iter().zip(row).map(|(x, r)| x.mul(&a)?.sub(&r.mul(&b)?)).collect::<Option<_>>()?;
                v = make_primitive(v);
            }
        }
        match v.iter().position(|x| x.sign() != 0) {
            Some(p) => {
                self.rows.push((v, p));
                Some(true)
            }
            None => Some(false),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RawFacet<T> {
    /// Primitive outer normal.
    pub normal: Vec<T>,
    /// Sorted indices into the input point list.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct RawHull<T> {
    /// Sorted indices of the extreme points.
    pub vertices: Vec<usize>,
    pub facets: Vec<RawFacet<T>>,
}

struct SimplexFacet<T> {
    verts: Vec<usize>,
    normal: Vec<T>,
    offset: T,
    alive: bool,
}

/// Convex hull of full-dimensional distinct points. `None` means overflow.
pub(crate) fn hull<T: ExactInt>(pts: &[Vec<T>]) -> Option<RawHull<T>> {
    let d = pts[0].len();
    // initial simplex
    let mut ech = RowEchelon::new();
    let mut simplex = vec![0usize];
    for (i, p) in pts.iter().enumerate().skip(1) {
        if ech.insert(&diff(p, &pts[0])?)? {
            simplex.push(i);
            if simplex.len() == d + 1 {
                break;
            }
        }
    }
    assert_eq!(simplex.len(), d + 1, "hull input must be full-dimensional");

    // interior reference point, scaled by d+1
    let mut center = vec![T::zero(); d];
    for &i in &simplex {
        for (c, x) in center.iter_mut().zip(&pts[i]) {
            *c = c.add(x)?;
        }
    }
    let scale = T::from_bigint(&BigInt::from(d + 1))?;

    let make_facet = |verts: Vec<usize>| -> Option<SimplexFacet<T>> {
        let refs: Vec<&Vec<T>> = verts.iter().map(|&i| &pts[i]).collect();
        let mut normal = hyperplane_normal(&refs)?;
        let mut offset = dot(&normal, &pts[verts[0]])?;
        let side = dot(&normal, &center)?.sub(&offset.mul(&scale)?)?;
        debug_assert!(side.sign() != 0);
        if side.sign() > 0 {
            normal = normal.iter().map(|x| x.neg()).collect::<Option<_>>()?;
            offset = offset.neg()?;
        }
        Some(SimplexFacet { verts, normal, offset, alive: true })
    };

    let mut facets: Vec<SimplexFacet<T>> = Vec::new();
    for skip in 0..=d {
        let mut verts: Vec<usize> = simplex.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &i)| i).collect();
        verts.sort_unstable();
        facets.push(make_facet(verts)?);
    }

    let in_simplex: Vec<bool> = {
        let mut m = vec![false; pts.len()];
        for &i in &simplex {
            m[i] = true;
        }
        m
    };

    // farthest points first, so interior points are rejected without churn
    let mut order: Vec<(T, usize)> = Vec::with_capacity(pts.len());
    for (pi, p) in pts.iter().enumerate() {
        if in_simplex[pi] {
            continue;
        }
        let mut r2 = T::zero();
        for (x, c) in p.iter().zip(&center) {
            let dx = x.mul(&scale)?.sub(c)?;
            r2 = r2.add(&dx.mul(&dx)?)?;
        }
        order.push((r2, pi));
    }
    order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut visible = Vec::new();
    for (_, pi) in order {
        let p = &pts[pi];
        visible.clear();
        let mut strict = false;
        for (fi, f) in facets.iter().enumerate() {
            if !f.alive {
                continue;
            }
            let s = dot(&f.normal, p)?.sub(&f.offset)?.sign();
            if s > 0 {
                strict = true;
            }
            if s >= 0 {
                visible.push(fi);
            }
        }
        if !strict {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, u32> = HashMap::new();
        for &fi in &visible {
            let verts = &facets[fi].verts;
            for skip in 0..verts.len() {
                let ridge: Vec<usize> = verts.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, &v)| v).collect();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        for &fi in &visible {
            facets[fi].alive = false;
        }
        let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort_unstable();
        for mut ridge in horizon {
            ridge.push(pi);
            ridge.sort_unstable();
            facets.push(make_facet(ridge)?);
        }
        if facets.len() > 4 * facets.iter().filter(|f| f.alive).count() + 64 {
            facets.retain(|f| f.alive);
        }
    }

    // merge coplanar simplices into facets
    let mut groups: HashMap<Vec<T>, (T, Vec<usize>)> = HashMap::new();
    for f in facets.into_iter().filter(|f| f.alive) {
        let e = groups.entry(f.normal.clone()).or_insert_with(|| (f.offset.clone(), Vec::new()));
        e.1.extend(f.verts);
    }
    let mut merged: Vec<(Vec<T>, Vec<usize>)> = groups
        .into_iter()
        .map(|(n, (_, mut vs))| {
            vs.sort_unstable();
            vs.dedup();
            (n, vs)
        })
        .collect();
    merged.sort_by(|a, b| a.0.cmp(&b.0));

    // a point is a vertex iff the normals of the facets through it span R^d
    let mut candidates: Vec<usize> = merged.iter().flat_map(|(_, vs)| vs.iter().copied()).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let mut keep = vec![false; pts.len()];
    for &v in &candidates {
        let mut e = RowEchelon::new();
        for (n, vs) in &merged {
            if vs.binary_search(&v).is_ok() {
                e.insert(n)?;
                if e.rank() == d {
                    break;
                }
            }
        }
        keep[v] = e.rank() == d;
    }
    let vertices: Vec<usize> = candidates.into_iter().filter(|&v| keep[v]).collect();
    let facets = merged
        .into_iter()
        .map(|(normal, vs)| RawFacet { normal, vertices: vs.into_iter().filter(|&v| keep[v]).collect() })
        .collect();
    Some(RawHull { vertices, facets })
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset_sorted(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && intersect_sorted(a, b).len() == a.len()
}

/// Pulling triangulation of a `dim`-face given by its sorted vertex set.
/// Each face is coned from its smallest vertex over its own facets, which
/// are the maximal proper intersections with the polytope's facets.
fn triangulate_face(face: &[usize], dim: usize, facets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    if dim == 0 {
        return vec![vec![face[0]]];
    }
    if face.len() == dim + 1 {
        return vec![face.to_vec()];
    }
    let mut subs: Vec<Vec<usize>> =
        facets.iter().map(|f| intersect_sorted(face, f)).filter(|s| !s.is_empty() && s.len() < face.len()).collect();
    subs.sort();
    subs.dedup();
    let maximal: Vec<&Vec<usize>> =
        subs.iter().filter(|s| !subs.iter().any(|t| t.len() > s.len() && is_subset_sorted(s, t))).collect();
    let apex = face[0];
    let mut out = Vec::new();
    for sub in maximal {
        if sub.binary_search(&apex).is_ok() {
            continue;
        }
        for mut simplex in triangulate_face(sub, dim - 1, facets) {
            simplex.insert(0, apex);
            out.push(simplex);
        }
    }
    out
}

/// Volume and facet measures of a full-dimensional hull, all as integers:
/// `d! · vol`, and per facet `(d-1)! · Vol(facet projected along its normal's
/// pivot coordinate)`.
pub(crate) struct BoundaryMeasures {
    pub volume_times_fact: BigInt,
    pub facet_projected: Vec<BigInt>,
}

pub(crate) fn boundary_measures<T: ExactInt>(pts: &[Vec<T>], hull: &RawHull<T>) -> Option<BoundaryMeasures> {
    let d = pts[0].len();
    let facet_sets: Vec<Vec<usize>> = hull.facets.iter().map(|f| f.vertices.clone()).collect();
    let apex = hull.vertices[0];
    let mut volume = T::zero();
    let mut facet_projected = Vec::with_capacity(facet_sets.len());
    for (f, verts) in hull.facets.iter().zip(&facet_sets) {
        let pivot = f.normal.iter().position(|x| x.sign() != 0).expect("nonzero normal");
        let contains_apex = verts.binary_search(&apex).is_ok();
        let mut proj = T::zero();
        for simplex in triangulate_face(verts, d - 1, &facet_sets) {
            let base = &pts[simplex[0]];
            let rows: Vec<Vec<T>> = simplex[1..]
                .iter()
                .map(|&i| {
                    pts[i]
                        .iter()
                        .zip(base)
                        .enumerate()
                        .filter(|(j, _)| *j != pivot)
                        .map(|(_, (x, b))| x.sub(b))
                        .collect::<Option<Vec<T>>>()
                })
                .collect::<Option<_>>()?;
            let a = det(&rows)?;
            proj = if a.sign() < 0 { proj.sub(&a)? } else { proj.add(&a)? };
            if !contains_apex {
                let rows: Vec<Vec<T>> = simplex.iter().map(|&i| diff(&pts[i], &pts[apex])).collect::<Option<_>>()?;
                let v = det(&rows)?;
                volume = if v.sign() < 0 { volume.sub(&v)? } else { volume.add(&v)? };
            }
        }
        facet_projected.push(proj.to_bigint());
    }
    Some(BoundaryMeasures { volume_times_fact: volume.to_bigint(), facet_projected })
}

/// Runs `f` on `i128` coordinates when they fit and retries with `BigInt`
/// on overflow.
pub(crate) fn with_best_int<R>(
    pts: &[Vec<BigInt>],
    f_small: impl FnOnce(&[Vec<i128>]) -> Option<R>,
    f_big: impl FnOnce(&[Vec<BigInt>]) -> Option<R>,
) -> R {
    let small: Option<Vec<Vec<i128>>> =
        pts.iter().map(|p| p.iter().map(|x| x.to_i128().filter(|v| v.abs() < (1i128 << 40))).collect()).collect();
    if let Some(small) = small {
        if let Some(r) = f_small(&small) {
            return r;
        }
    }
    f_big(pts).expect("BigInt arithmetic does not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i128]]) -> Vec<Vec<i128>> {
        v.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn square_with_collinear_and_interior_points() {
        let p = pts(&[&[0, 0], &[0, 1], &[0, 2], &[1, 1], &[2, 0], &[2, 2], &[1, 0]]);
        let h = hull(&p).unwrap();
        assert_eq!(h.vertices, vec![0, 2, 4, 5]);
        assert_eq!(h.facets.len(), 4);
        let m = boundary_measures(&p, &h).unwrap();
        assert_eq!(m.volume_times_fact, BigInt::from(8));
    }

    #[test]
    fn cube_facets_are_merged() {
        let mut p = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    p.push(vec![x, y, z]);
                }
            }
        }
        let h = hull(&p).unwrap();
        assert_eq!(h.vertices.len(), 8);
        assert_eq!(h.facets.len(), 6);
        assert!(h.facets.iter().all(|f| f.vertices.len() == 4));
        let m = boundary_measures(&p, &h).unwrap();
        assert_eq!(m.volume_times_fact, BigInt::from(6));
        assert!(m.facet_projected.iter().all(|a| *a == BigInt::from(2)));
    }

    #[test]
    fn det_small() {
        let m = vec![vec![2i128, 0, 1], vec![1, 3, 2], vec![1, 1, 0]];
        assert_eq!(det(&m), Some(-6));
        let s = vec![vec![2i128, 0, 1], vec![1, 3, 2], vec![1, 1, 1]];
        assert_eq!(det(&s), Some(0));
    }

    #[test]
    fn overflow_is_reported() {
        let big = i128::MAX / 2;
        let p = pts(&[&[0, 0], &[big, 0], &[0, big]]);
        assert!(hull(&p).is_none());
    }
}
