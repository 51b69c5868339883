//! Halfspace intersection (H- to V-representation).
//!
//! Two exact routes share one entry point. When every offset is positive the
//! origin is interior and the vertices are read off the facets of the polar
//! point set's hull. Otherwise a double description pass over the
//! homogenized cone enumerates its extreme rays.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{GeometryError, Result};
use crate::linalg::{solve, IndependentSet};
use crate::polytope::{convex_hull, Polytope};
use crate::scalar::{common_denominator, dot, Direction, Point, Scalar};

/// `{x : ⟨x, normal⟩ <= offset}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Direction,
    pub offset: Scalar,
}

/// `true` iff the normals positively span `R^n`, i.e. every nonempty
/// intersection of the halfspaces is bounded.
pub fn normals_positively_span(normals: &[Direction], n: usize) -> bool {
    let pts: Vec<Point> = normals.iter().map(|w| w.to_scalars()).collect();
    match convex_hull(&pts, n) {
        Ok(q) => q.is_full_dimensional() && q.facets().iter().all(|f| f.offset.is_positive()),
        Err(_) => false,
    }
}

/// Exact intersection of finitely many halfspaces in `R^n`.
///
/// Returns [`GeometryError::Unbounded`] whenever the normals fail to
/// positively span `R^n` (regardless of feasibility) and
/// [`GeometryError::Infeasible`] for an empty bounded intersection. The
/// result may be lower-dimensional.
pub fn intersect(hs: &[Halfspace], n: usize) -> Result<Polytope> {
    if hs.is_empty() {
        return Err(GeometryError::Unbounded);
    }
    if let Some(h) = hs.iter().find(|h| h.normal.dim() != n) {
        return Err(GeometryError::DimensionMismatch { expected: n, found: h.normal.dim() });
    }
    let normals: Vec<Direction> = hs.iter().map(|h| h.normal.clone()).collect();
    if !normals_positively_span(&normals, n) {
        return Err(GeometryError::Unbounded);
    }
    if hs.iter().all(|h| h.offset.is_positive()) {
        intersect_polar(hs, n)
    } else {
        intersect_double_description(hs, n)
    }
}

/// Polar route; requires all offsets positive and bounded input.
pub fn intersect_polar(hs: &[Halfspace], n: usize) -> Result<Polytope> {
    let dual: Vec<Point> =
        hs.iter().map(|h| h.normal.to_scalars().into_iter().map(|x| x / &h.offset).collect()).collect();
    let q = convex_hull(&dual, n)?;
    if !q.is_full_dimensional() || q.facets().iter().any(|f| !f.offset.is_positive()) {
        return Err(GeometryError::Unbounded);
    }
    let vertices: Vec<Point> =
        q.facets().iter().map(|f| f.normal.to_scalars().into_iter().map(|x| x / &f.offset).collect()).collect();
    convex_hull(&vertices, n)
}

struct Ray {
    coords: Vec<Scalar>,
    zeros: Vec<usize>,
}

fn primitive(v: Vec<Scalar>) -> Vec<Scalar> {
    let den = common_denominator(&v);
    let d = Scalar::from_integer(den);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &d).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
    if g.is_zero() {
        return v;
    }
    ints.into_iter().map(|x| Scalar::from_integer(x / &g)).collect()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Double description route on `{(x, τ) : ⟨w_i, x⟩ - b_i τ <= 0, -τ <= 0}`.
/// Assumes the normals positively span `R^n`, so the cone is pointed and
/// every extreme ray has `τ > 0`.
pub fn intersect_double_description(hs: &[Halfspace], n: usize) -> Result<Polytope> {
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(hs.len() + 1);
    let mut tau = vec![Scalar::zero(); n + 1];
    tau[n] = Scalar::from_integer((-1).into());
    rows.push(tau);
    for h in hs {
        let mut r = h.normal.to_scalars();
        r.push(-h.offset.clone());
        rows.push(r);
    }

    let mut basis = IndependentSet::new();
    let mut initial = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if basis.insert(r) {
            initial.push(i);
            if initial.len() == n + 1 {
                break;
            }
        }
    }
    if initial.len() < n + 1 {
        return Err(GeometryError::Unbounded);
    }
    let a_init: Vec<Vec<Scalar>> = initial.iter().map(|&i| rows[i].clone()).collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut rhs = vec![Scalar::zero(); n + 1];
        rhs[j] = Scalar::from_integer((-1).into());
        let r = solve(&a_init, &rhs).expect("independent rows");
        let zeros: Vec<usize> = initial.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &i)| i).collect();
        rays.push(Ray { coords: primitive(r), zeros });
    }

    let cone_dim = n + 1;
    for (k, row) in rows.iter().enumerate() {
        if initial.contains(&k) {
            continue;
        }
        let values: Vec<Scalar> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = intersect_sorted(&rays[p].zeros, &rays[q].zeros);
                if common.len() + 2 < cone_dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(i, r)| i != p && i != q && is_subset(&common, &r.zeros));
                if blocked {
                    continue;
                }
                let (vp, vq) = (&values[p], &values[q]);
                let coords: Vec<Scalar> =
                    rays[q].coords.iter().zip(&rays[p].coords).map(|(xq, xp)| xq * vp - xp * vq).collect();
                let mut zeros = common;
                zeros.push(k);
                zeros.sort_unstable();
                next.push(Ray { coords: primitive(coords), zeros });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                r.zeros.push(k);
                r.zeros.sort_unstable();
                next.push(r);
            } else if values[i].is_negative() {
                next.push(r);
            }
        }
        rays = next;
        if rays.is_empty() {
            return Err(GeometryError::Infeasible);
        }
    }

    let vertices: Vec<Point> = rays
        .iter()
        .filter(|r| r.coords[n].is_positive())
        .map(|r| r.coords[..n].iter().map(|x| x / &r.coords[n]).collect())
        .collect();
    if vertices.is_empty() {
        return Err(GeometryError::Infeasible);
    }
    convex_hull(&vertices, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::{int, point, rat};

    fn hs(w: &[i64], b: Scalar) -> Halfspace {
        Halfspace { normal: Direction::new(w.to_vec()).unwrap(), offset: b }
    }

    /// Brute-force vertex enumeration over all n-subsets of constraints.
    fn brute_force(hs: &[Halfspace], n: usize) -> Option<Polytope> {
        fn subsets(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..m {
                cur.push(i);
                subsets(m, k, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        subsets(hs.len(), n, 0, &mut Vec::new(), &mut all);
        let mut verts = Vec::new();
        for s in all {
            let a: Vec<Vec<Scalar>> = s.iter().map(|&i| hs[i].normal.to_scalars()).collect();
            let b: Vec<Scalar> = s.iter().map(|&i| hs[i].offset.clone()).collect();
            if let Some(x) = solve(&a, &b) {
                if hs.iter().all(|h| h.normal.dot(&x) <= h.offset) {
                    verts.push(x);
                }
            }
        }
        if verts.is_empty() {
            None
        } else {
            Some(convex_hull(&verts, n).unwrap())
        }
    }

    #[test]
    fn square_from_facets() {
        let q = corpus::cube(2);
        assert_eq!(intersect(&q.halfspaces(), 2).unwrap(), q);
    }

    #[test]
    fn redundant_constraint_is_dropped() {
        let mut h = corpus::cube(2).halfspaces();
        h.push(hs(&[1, 1], int(5)));
        assert_eq!(intersect(&h, 2).unwrap(), corpus::cube(2));
    }

    #[test]
    fn parallel_pair_is_unbounded() {
        let h = vec![hs(&[1, 0], int(1)), hs(&[-1, 0], int(1))];
        assert_eq!(intersect(&h, 2).unwrap_err(), GeometryError::Unbounded);
    }

    #[test]
    fn infeasible_and_lower_dimensional() {
        let mut h = vec![hs(&[1, 0], int(-1)), hs(&[-1, 0], int(-1)), hs(&[0, 1], int(1)), hs(&[0, -1], int(1))];
        assert_eq!(intersect(&h, 2).unwrap_err(), GeometryError::Infeasible);
        h[0].offset = int(0);
        h[1].offset = int(0);
        let seg = intersect(&h, 2).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices(), &[point(&[0, -1]), point(&[0, 1])]);
    }

    #[test]
    fn polar_and_double_description_agree() {
        let oct = corpus::cross_polytope(3);
        let mut h = oct.halfspaces();
        h.push(hs(&[1, 1, 0], rat(1, 2)));
        h.push(hs(&[0, -1, 2], rat(2, 3)));
        let a = intersect_polar(&h, 3).unwrap();
        let b = intersect_double_description(&h, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, brute_force(&h, 3).unwrap());
    }

    #[test]
    fn off_origin_polytopes_use_double_description() {
        let c = corpus::cube(3).translate(&point(&[5, 5, 5]));
        let mut h = c.halfspaces();
        h.push(hs(&[1, 1, 1], rat(35, 2)));
        let p = intersect(&h, 3).unwrap();
        assert_eq!(p, brute_force(&h, 3).unwrap());
        assert_eq!(p.vertices().len(), 10);
    }
}
