//! Exact rational polytopes in dual representation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{GeometryError, Result};
use crate::halfspace::{intersect, Halfspace};
use crate::hull::{self, boundary_measures, with_best_int};
use crate::linalg::{pivot_columns, IndependentSet};
use crate::scalar::{
    add_points, common_denominator, dot, factorial, int, pow, scale_point, sub_points, Direction, Point, Scalar,
};

/// A facet with its primitive outer normal `w`, offset `h_P(w)` and
/// co-weight `Vol_{n-1}(F)/‖w‖`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Direction,
    pub offset: Scalar,
    pub coweight: Scalar,
    /// Indices into [`Polytope::vertices`].
    pub vertices: Vec<usize>,
}

/// Convex polytope given by its extreme points (lexicographically sorted)
/// together with derived facet data.
#[derive(Clone)]
pub struct Polytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    volume: Scalar,
    /// For `dim == n-1`: primitive normal of the affine hull and
    /// `Vol_{n-1}/‖w‖`.
    flat: Option<(Direction, Scalar)>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("n", &self.ambient_dim)
            .field("dim", &self.dim)
            .field(
                "vertices",
                &self
                    .vertices
                    .iter()
                    .map(|v| v.iter().map(crate::scalar::format_scalar).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Coordinates of `points` (relative to `origin`) as integers after
/// restricting to `chart` and multiplying by a common denominator.
fn integer_chart(points: &[Point], chart: &[usize]) -> (Vec<Vec<BigInt>>, BigInt) {
    let scale = common_denominator(points.iter().flat_map(|p| chart.iter().map(move |&c| &p[c])));
    let s = Scalar::from_integer(scale.clone());
    let ints = points.iter().map(|p| chart.iter().map(|&c| (&p[c] * &s).to_integer()).collect()).collect();
    (ints, scale)
}

/// Generalized cross product of `n-1` rational vectors in `Q^n`.
fn cross_normal(rows: &[Point]) -> Result<Direction> {
    let n = rows[0].len();
    let den = common_denominator(rows.iter().flatten());
    let d = Scalar::from_integer(den);
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| (x * &d).to_integer()).collect()).collect();
    let mut normal = Vec::with_capacity(n);
    for col in 0..n {
        let minor: Vec<Vec<BigInt>> = ints
            .iter()
            .map(|r| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
            .collect();
        let c = hull::det(&minor).expect("BigInt");
        normal.push(if col % 2 == 0 { c } else { -c });
    }
    Direction::from_bigints(&normal)
}

fn lex_sorted(mut points: Vec<Point>) -> Vec<Point> {
    points.sort();
    points.dedup();
    points
}

/// Convex hull of a nonempty rational point set in `R^n`.
pub fn convex_hull(points: &[Point], n: usize) -> Result<Polytope> {
    if points.is_empty() {
        return Err(GeometryError::Empty);
    }
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(GeometryError::DimensionMismatch { expected: n, found: p.len() });
    }
    Polytope::build(lex_sorted(points.to_vec()), n)
}

impl Polytope {
    fn build(points: Vec<Point>, n: usize) -> Result<Self> {
        // affine hull
        let base = points[0].clone();
        let mut basis = IndependentSet::new();
        let mut dirs = Vec::new();
        for p in &points[1..] {
            let v = sub_points(p, &base);
            if basis.insert(&v) {
                dirs.push(v);
                if dirs.len() == n {
                    break;
                }
            }
        }
        let dim = dirs.len();
        if dim == 0 {
            return Ok(Polytope {
                ambient_dim: n,
                dim: 0,
                vertices: points,
                facets: Vec::new(),
                volume: Scalar::zero(),
                flat: None,
            });
        }
        let chart = pivot_columns(&dirs);
        let (ints, scale) = integer_chart(&points, &chart);
        let raw = with_best_int(
            &ints,
            |p| {
                let h = hull::hull(p)?;
                let m = if dim == n { Some(boundary_measures(p, &h)?) } else { None };
                Some((
                    h.vertices,
                    h.facets
                        .into_iter()
                        .map(|f| (f.normal.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), f.vertices))
                        .collect::<Vec<_>>(),
                    m,
                ))
            },
            |p| {
                let h = hull::hull(p)?;
                let m = if dim == n { Some(boundary_measures(p, &h)?) } else { None };
                Some((h.vertices, h.facets.into_iter().map(|f| (f.normal, f.vertices)).collect(), m))
            },
        );
        let (vertex_ids, raw_facets, measures) = raw;
        let mut position = vec![usize::MAX; points.len()];
        for (k, &i) in vertex_ids.iter().enumerate() {
            position[i] = k;
        }
        let vertices: Vec<Point> = vertex_ids.iter().map(|&i| points[i].clone()).collect();

        if dim < n {
            let flat = if dim + 1 == n {
                let mut w = cross_normal(&dirs)?;
                if w.coords()[w.pivot()] < 0 {
                    w = w.neg();
                }
                let j = w.pivot();
                let dropped: Vec<Point> = vertices
                    .iter()
                    .map(|v| v.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let shadow = convex_hull(&dropped, n - 1)?;
                let coweight = shadow.volume() / w.pivot_abs();
                Some((w, coweight))
            } else {
                None
            };
            return Ok(Polytope { ambient_dim: n, dim, vertices, facets: Vec::new(), volume: Scalar::zero(), flat });
        }

        let measures = measures.expect("full-dimensional hull has measures");
        let s = Scalar::from_integer(scale);
        let volume = Scalar::from_integer(measures.volume_times_fact) / Scalar::from_integer(factorial(n)) / pow(&s, n);
        let facet_den = Scalar::from_integer(factorial(n - 1)) * pow(&s, n - 1);
        let mut facets = Vec::with_capacity(raw_facets.len());
        for ((normal, ids), projected) in raw_facets.into_iter().zip(measures.facet_projected) {
            let normal = Direction::from_bigints(&normal)?;
            let ids: Vec<usize> = ids.into_iter().map(|i| position[i]).collect();
            let offset = normal.dot(&vertices[ids[0]]);
            let coweight = Scalar::from_integer(projected) / &facet_den / normal.pivot_abs();
            facets.push(Facet { normal, offset, coweight, vertices: ids });
        }
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        Ok(Polytope { ambient_dim: n, dim, vertices, facets, volume, flat: None })
    }

    /// Single point.
    pub fn point(p: Point) -> Self {
        let n = p.len();
        Polytope { ambient_dim: n, dim: 0, vertices: vec![p], facets: Vec::new(), volume: Scalar::zero(), flat: None }
    }

    /// Segment `[a, b]`.
    pub fn segment(a: Point, b: Point) -> Result<Self> {
        let n = a.len();
        convex_hull(&[a, b], n)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_normals(&self) -> Vec<Direction> {
        self.facets.iter().map(|f| f.normal.clone()).collect()
    }

    pub fn facet(&self, w: &Direction) -> Option<&Facet> {
        self.facets.binary_search_by(|f| f.normal.cmp(w)).ok().map(|i| &self.facets[i])
    }

    /// Normal of the affine hull and `Vol_{n-1}/‖w‖` for `(n-1)`-dimensional polytopes.
    pub fn flat_data(&self) -> Option<&(Direction, Scalar)> {
        self.flat.as_ref()
    }

    /// Exact `n`-dimensional volume (zero when lower-dimensional).
    pub fn volume(&self) -> &Scalar {
        &self.volume
    }

    /// `h_P(w) = max ⟨v, w⟩` at the unnormalized representative `w`.
    pub fn support_value(&self, w: &Direction) -> Scalar {
        self.vertices.iter().map(|v| w.dot(v)).max().expect("nonempty polytope")
    }

    /// Support value at an arbitrary rational vector.
    pub fn support_at(&self, w: &[Scalar]) -> Scalar {
        self.vertices.iter().map(|v| dot(v, w)).max().expect("nonempty polytope")
    }

    /// Exposed face `P^w`.
    pub fn face(&self, w: &Direction) -> Polytope {
        let h = self.support_value(w);
        let pts: Vec<Point> = self.vertices.iter().filter(|v| w.dot(v) == h).cloned().collect();
        Polytope::build(pts, self.ambient_dim).expect("subset of vertices")
    }

    /// Orthogonal projection onto `w^⊥`, written in the chart that drops the
    /// smallest coordinate index `j` with `w_j != 0`.
    pub fn project(&self, w: &Direction) -> Polytope {
        let pts: Vec<Point> = self.vertices.iter().map(|v| project_point(v, w)).collect();
        convex_hull(&pts, self.ambient_dim - 1).expect("projection of a nonempty set")
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient_dim != other.ambient_dim {
            return Err(GeometryError::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(add_points(a, b));
            }
        }
        Polytope::build(lex_sorted(pts), self.ambient_dim)
    }

    /// `P + a`.
    pub fn translate(&self, a: &[Scalar]) -> Polytope {
        let mut out = self.clone();
        for v in out.vertices.iter_mut() {
            *v = add_points(v, a);
        }
        for f in out.facets.iter_mut() {
            f.offset += f.normal.dot(a);
        }
        out
    }

    /// `λP` for `λ >= 0`.
    pub fn scale(&self, lambda: &Scalar) -> Polytope {
        assert!(!lambda.is_negative(), "scale factor must be nonnegative");
        let n = self.ambient_dim;
        if lambda.is_zero() {
            return Polytope::point(vec![Scalar::zero(); n]);
        }
        let mut out = self.clone();
        for v in out.vertices.iter_mut() {
            *v = scale_point(v, lambda);
        }
        let area_factor = pow(lambda, n - 1);
        for f in out.facets.iter_mut() {
            f.offset *= lambda;
            f.coweight *= &area_factor;
        }
        out.volume *= pow(lambda, n);
        if let Some((_, c)) = out.flat.as_mut() {
            *c *= &area_factor;
        }
        out
    }

    /// Image under `x ↦ A x + b` (A given row-major). The map need not be invertible.
    pub fn affine_image(&self, a: &[Vec<Scalar>], b: &[Scalar]) -> Result<Polytope> {
        let pts: Vec<Point> =
            self.vertices.iter().map(|v| a.iter().zip(b).map(|(row, bi)| dot(row, v) + bi).collect()).collect();
        convex_hull(&pts, a.len())
    }

    /// Average of the vertices; an interior point when full-dimensional.
    pub fn vertex_centroid(&self) -> Point {
        let k = int(self.vertices.len() as i64);
        let mut c = vec![Scalar::zero(); self.ambient_dim];
        for v in &self.vertices {
            c = add_points(&c, v);
        }
        c.iter().map(|x| x / &k).collect()
    }

    /// `true` iff `x ∈ P`.
    pub fn contains_point(&self, x: &[Scalar]) -> bool {
        if self.is_full_dimensional() {
            return self.facets.iter().all(|f| f.normal.dot(x) <= f.offset);
        }
        let mut pts = self.vertices.clone();
        pts.push(x.to_vec());
        convex_hull(&pts, self.ambient_dim).map(|h| h.vertices == self.vertices).unwrap_or(false)
    }

    /// `true` iff `other ⊆ self`.
    pub fn contains(&self, other: &Polytope) -> bool {
        if self.is_full_dimensional() {
            other.vertices.iter().all(|v| self.contains_point(v))
        } else {
            let mut pts = self.vertices.clone();
            pts.extend(other.vertices.iter().cloned());
            convex_hull(&pts, self.ambient_dim).map(|h| h == *self).unwrap_or(false)
        }
    }

    /// Halfspace description of a full-dimensional polytope.
    pub fn halfspaces(&self) -> Vec<Halfspace> {
        self.facets.iter().map(|f| Halfspace { normal: f.normal.clone(), offset: f.offset.clone() }).collect()
    }

    /// `{x ∈ K : ⟨x,u⟩ <= h_K(u) - ε}`.
    pub fn truncate(&self, u: &Direction, eps: &Scalar) -> Result<Polytope> {
        if eps.is_negative() {
            return Err(GeometryError::Invalid("truncation depth must be nonnegative".into()));
        }
        if !self.is_full_dimensional() {
            return Err(GeometryError::NotFullDimensional { dim: self.dim, ambient: self.ambient_dim });
        }
        if eps.is_zero() {
            return Ok(self.clone());
        }
        let mut hs = self.halfspaces();
        hs.push(Halfspace { normal: u.clone(), offset: self.support_value(u) - eps });
        match intersect(&hs, self.ambient_dim) {
            Ok(p) if p.is_full_dimensional() => Ok(p),
            Ok(_) | Err(GeometryError::Infeasible) => Err(GeometryError::EmptyInterior),
            Err(e) => Err(e),
        }
    }

    /// `true` iff `other = λ·self + a` for some `λ > 0` and translation `a`.
    pub fn is_homothetic(&self, other: &Polytope) -> bool {
        if self.ambient_dim != other.ambient_dim || self.dim != other.dim || self.vertices.len() != other.vertices.len()
        {
            return false;
        }
        let p0 = &self.vertices[0];
        let q0 = &other.vertices[0];
        let mut lambda = None;
        for k in 0..self.ambient_dim {
            let wp = width(&self.vertices, k);
            let wq = width(&other.vertices, k);
            match (wp.is_zero(), wq.is_zero()) {
                (true, true) => continue,
                (false, false) => {
                    lambda = Some(wq / wp);
                    break;
                }
                _ => return false,
            }
        }
        let lambda = lambda.unwrap_or_else(Scalar::one);
        self.vertices
            .iter()
            .zip(&other.vertices)
            .all(|(p, q)| scale_point(&sub_points(p, p0), &lambda) == sub_points(q, q0))
    }
}

fn width(pts: &[Point], k: usize) -> Scalar {
    let max = pts.iter().map(|p| &p[k]).max().expect("nonempty");
    let min = pts.iter().map(|p| &p[k]).min().expect("nonempty");
    max - min
}

/// `x - (⟨x,w⟩/⟨w,w⟩) w` with coordinate `w.pivot()` dropped.
pub fn project_point(x: &[Scalar], w: &Direction) -> Point {
    let ws = w.to_scalars();
    let t = w.dot(x) / Scalar::from_integer(w.norm_sq());
    let j = w.pivot();
    x.iter().zip(&ws).enumerate().filter(|(k, _)| *k != j).map(|(_, (xi, wi))| xi - &t * wi).collect()
}

/// Drops coordinate `j` (the chart used for faces lying in a hyperplane).
pub fn drop_coordinate(x: &[Scalar], j: usize) -> Point {
    x.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::scalar::{point, rat};

    fn q2() -> Polytope {
        corpus::cube(2)
    }

    #[test]
    fn interior_point_removed() {
        let p = convex_hull(&[point(&[0, 0]), point(&[1, 0]), point(&[0, 1]), vec![rat(1, 4), rat(1, 4)]], 2).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p, corpus::simplex(2));
    }

    #[test]
    fn cube_center_removed() {
        let mut pts = corpus::cube(3).vertices().to_vec();
        pts.push(vec![rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert_eq!(convex_hull(&pts, 3).unwrap().vertices().len(), 8);
    }

    #[test]
    fn flat_input_has_lower_dimension() {
        let p = convex_hull(&[point(&[0, 0, 0]), point(&[1, 0, 0]), point(&[0, 1, 0])], 3).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.facets().is_empty());
        assert_eq!(*p.volume(), Scalar::zero());
        let (w, c) = p.flat_data().unwrap();
        assert_eq!(w.coords(), &[0, 0, 1]);
        assert_eq!(*c, rat(1, 2));
    }

    #[test]
    fn dimension_mismatch() {
        let e = convex_hull(&[point(&[0, 0]), point(&[1, 0, 0])], 2).unwrap_err();
        assert!(matches!(e, GeometryError::DimensionMismatch { .. }));
    }

    #[test]
    fn support_values() {
        let w = Direction::new(vec![1, 1]).unwrap();
        assert_eq!(q2().support_value(&w), int(2));
        assert_eq!(corpus::simplex(2).support_value(&w), int(1));
        assert_eq!(corpus::cube(3).support_value(&Direction::new(vec![1, -1, 0]).unwrap()), int(1));
    }

    #[test]
    fn faces() {
        let e = q2().face(&Direction::axis(2, 0));
        assert_eq!(e.vertices(), &[point(&[1, 0]), point(&[1, 1])]);
        let hyp = corpus::simplex(2).face(&Direction::new(vec![1, 1]).unwrap());
        assert_eq!(hyp.vertices(), &[point(&[0, 1]), point(&[1, 0])]);
        let v = corpus::cube(3).face(&Direction::new(vec![1, 1, 1]).unwrap());
        assert_eq!(v.vertices(), &[point(&[1, 1, 1])]);
        assert_eq!(v.dim(), 0);
    }

    #[test]
    fn projections() {
        assert_eq!(corpus::cube(3).project(&Direction::axis(3, 2)), q2());
        let s = corpus::simplex(2).project(&Direction::axis(2, 1));
        assert_eq!(s.dim(), 1);
        assert_eq!(*s.volume(), int(1));
        let seg = corpus::segment_axis(2, 0).project(&Direction::axis(2, 0));
        assert_eq!(seg.dim(), 0);
    }

    #[test]
    fn minkowski_sums() {
        let s = corpus::segment_axis(2, 0).minkowski_sum(&corpus::segment_axis(2, 1)).unwrap();
        assert_eq!(s, q2());
        assert_eq!(q2().minkowski_sum(&q2()).unwrap(), q2().scale(&int(2)));
        let d = corpus::simplex(2);
        let hex = d
            .minkowski_sum(
                &d.scale(&int(1))
                    .affine_image(&[vec![int(-1), int(0)], vec![int(0), int(-1)]], &[int(0), int(0)])
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(hex.vertices().len(), 6);
        assert_eq!(*hex.volume(), int(3));
    }

    #[test]
    fn volumes() {
        assert_eq!(*corpus::cube(3).volume(), int(1));
        assert_eq!(*corpus::simplex(3).volume(), rat(1, 6));
        assert_eq!(*corpus::simplex(4).volume(), rat(1, 24));
        assert_eq!(*corpus::cross_polytope(3).volume(), rat(4, 3));
    }

    #[test]
    fn facet_coweights() {
        let d = corpus::simplex(2);
        let cw: Vec<(Vec<i64>, Scalar)> =
            d.facets().iter().map(|f| (f.normal.coords().to_vec(), f.coweight.clone())).collect();
        assert_eq!(cw, vec![(vec![-1, 0], int(1)), (vec![0, -1], int(1)), (vec![1, 1], int(1))]);
        let t = corpus::simplex(3);
        let slanted = t.facet(&Direction::new(vec![1, 1, 1]).unwrap()).unwrap();
        // area √3/2 divided by ‖(1,1,1)‖ = √3
        assert_eq!(slanted.coweight, rat(1, 2));
    }

    #[test]
    fn truncations() {
        let t = q2().truncate(&Direction::axis(2, 0), &rat(1, 2)).unwrap();
        assert_eq!(
            t,
            convex_hull(&[point(&[0, 0]), vec![rat(1, 2), int(0)], point(&[0, 1]), vec![rat(1, 2), int(1)]], 2)
                .unwrap()
        );
        assert_eq!(q2().truncate(&Direction::axis(2, 0), &int(0)).unwrap(), q2());
        let d = corpus::simplex(2);
        let half = d.truncate(&Direction::new(vec![1, 1]).unwrap(), &rat(1, 2)).unwrap();
        assert_eq!(half, d.scale(&rat(1, 2)));
        assert_eq!(q2().truncate(&Direction::axis(2, 0), &int(1)).unwrap_err(), GeometryError::EmptyInterior);
    }

    #[test]
    fn homothety() {
        let k = corpus::simplex(2);
        assert!(k.is_homothetic(&k.translate(&[rat(3, 7), int(-2)])));
        assert!(k.is_homothetic(&k.scale(&int(2)).translate(&point(&[3, 5]))));
        assert!(!k.is_homothetic(&q2()));
        let r = convex_hull(&[point(&[0, 0]), point(&[2, 0]), point(&[0, 1]), point(&[2, 1])], 2).unwrap();
        assert!(!r.is_homothetic(&q2()));
    }

    #[test]
    fn affine_hull_in_rational_chart() {
        // a tilted triangle in R^3 with irrational-free area data
        let p = convex_hull(&[point(&[0, 0, 0]), point(&[1, 0, 1]), point(&[0, 1, 1])], 3).unwrap();
        let (w, c) = p.flat_data().unwrap();
        assert_eq!(w.coords(), &[1, 1, -1]);
        // area √3/2 over ‖w‖ = √3
        assert_eq!(*c, rat(1, 2));
    }
}
