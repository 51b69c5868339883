//! Weak decomposability of polytopes: facet moves, witnesses and the
//! homothety chain `S(M[r], K[n-1-r], ·) = λ^r S_K`.

use num_traits::{Signed, Zero};

use crate::error::{GeometryError, Result};
use crate::halfspace::{intersect, Halfspace};
use crate::measure::{absolutely_continuous, mixed_area_measure, surface_area_measure, DiscreteSphereMeasure};
use crate::mixed::mixed_volume_of;
use crate::polytope::Polytope;
use crate::scalar::{int, pow, Direction, Scalar};

/// Result of moving one facet hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetMove {
    pub body: Polytope,
    /// `true` iff the moved body has exactly the facet normals of `K`.
    pub normals_preserved: bool,
}

/// `K` with the offset at facet normal `w` changed from `h_K(w)` to
/// `h_K(w) + ε` (unnormalized: the hyperplane moves by `ε/‖w‖`).
pub fn facet_move(k: &Polytope, w: &Direction, eps: &Scalar) -> Result<FacetMove> {
    if !k.is_full_dimensional() {
        return Err(GeometryError::NotFullDimensional { dim: k.dim(), ambient: k.ambient_dim() });
    }
    if k.facet(w).is_none() {
        return Err(GeometryError::NotFacetNormal(w.to_string()));
    }
    if eps.is_zero() {
        return Ok(FacetMove { body: k.clone(), normals_preserved: true });
    }
    let hs: Vec<Halfspace> = k
        .facets()
        .iter()
        .map(|f| Halfspace {
            normal: f.normal.clone(),
            offset: if &f.normal == w { &f.offset + eps } else { f.offset.clone() },
        })
        .collect();
    let body = intersect(&hs, k.ambient_dim())?;
    let normals_preserved = body.is_full_dimensional() && body.facet_normals() == k.facet_normals();
    Ok(FacetMove { body, normals_preserved })
}

/// Width of `K` along `w` in the unnormalized convention.
fn width(k: &Polytope, w: &Direction) -> Scalar {
    k.support_value(w) + k.support_value(&w.neg())
}

/// Largest `width·2^{-j}` (outward move) at which the facet normals of `K`
/// are preserved; `None` if none of the first 64 halvings works.
pub fn survival_bound(k: &Polytope, w: &Direction) -> Result<Option<Scalar>> {
    let mut eps = width(k, w);
    for _ in 0..64 {
        if facet_move(k, w, &eps)?.normals_preserved {
            return Ok(Some(eps));
        }
        eps /= int(2);
    }
    Ok(None)
}

/// `{bound/4, bound/2, bound}`.
pub fn default_epsilons(k: &Polytope, w: &Direction) -> Result<Vec<Scalar>> {
    Ok(match survival_bound(k, w)? {
        Some(b) => vec![&b / int(4), &b / int(2), b],
        None => Vec::new(),
    })
}

/// A candidate `M` with its two verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub mover: Polytope,
    /// `None` when `M` was supplied directly rather than by a facet move.
    pub moved_facet: Option<Direction>,
    pub epsilon: Option<Scalar>,
    /// `S_{K+M} ≪ S_K`.
    pub absolutely_continuous: bool,
    /// `M` homothetic to `K`.
    pub homothetic: bool,
    pub sum_measure: DiscreteSphereMeasure,
    pub base_measure: DiscreteSphereMeasure,
}

impl Witness {
    pub fn is_valid(&self) -> bool {
        self.absolutely_continuous && !self.homothetic
    }
}

/// Evaluates the weak-decomposability conditions for a given `M`.
pub fn check_witness(k: &Polytope, m: &Polytope) -> Result<Witness> {
    let sum_measure = surface_area_measure(&k.minkowski_sum(m)?);
    let base_measure = surface_area_measure(k);
    Ok(Witness {
        mover: m.clone(),
        moved_facet: None,
        epsilon: None,
        absolutely_continuous: absolutely_continuous(&sum_measure, &base_measure)?,
        homothetic: k.is_homothetic(m),
        sum_measure,
        base_measure,
    })
}

/// Outcome of a facet-move sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<Witness>,
    pub candidates: usize,
    pub homothetic: usize,
    pub not_continuous: usize,
}

/// Sweeps single-facet moves in facet order and returns the first valid
/// witness. `eps_list` overrides the per-facet defaults.
pub fn weak_witness_search(k: &Polytope, eps_list: Option<&[Scalar]>) -> Result<WitnessSearch> {
    if !k.is_full_dimensional() {
        return Err(GeometryError::NotFullDimensional { dim: k.dim(), ambient: k.ambient_dim() });
    }
    let mut out = WitnessSearch { witness: None, candidates: 0, homothetic: 0, not_continuous: 0 };
    for w in k.facet_normals() {
        let eps = match eps_list {
            Some(l) => l.to_vec(),
            None => default_epsilons(k, &w)?,
        };
        for e in eps {
            let moved = match facet_move(k, &w, &e) {
                Ok(m) => m,
                Err(GeometryError::Infeasible) | Err(GeometryError::EmptyInterior) => continue,
                Err(err) => return Err(err),
            };
            if !moved.body.is_full_dimensional() {
                continue;
            }
            out.candidates += 1;
            let mut wit = check_witness(k, &moved.body)?;
            wit.moved_facet = Some(w.clone());
            wit.epsilon = Some(e);
            if wit.homothetic {
                out.homothetic += 1;
            }
            if !wit.absolutely_continuous {
                out.not_continuous += 1;
            }
            if wit.is_valid() {
                out.witness = Some(wit);
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Both sides of the homothety chain, plus `λ = V(M,K[n-1])/V_n(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub lhs: DiscreteSphereMeasure,
    pub rhs: DiscreteSphereMeasure,
    pub lambda: Scalar,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `(S(M[r], K[n-1-r], ·), λ^r S_K)`.
pub fn homothet_chain_check(k: &Polytope, m: &Polytope, r: usize) -> Result<ChainCheck> {
    let n = k.ambient_dim();
    if r >= n {
        return Err(GeometryError::OutOfRange(format!("r = {r} must be at most n-1 = {}", n - 1)));
    }
    if !k.volume().is_positive() {
        return Err(GeometryError::NotFullDimensional { dim: k.dim(), ambient: n });
    }
    let mut bodies = vec![m];
    bodies.extend(std::iter::repeat_n(k, n - 1));
    let lambda = mixed_volume_of(&bodies)? / k.volume();
    let mut args: Vec<&Polytope> = vec![m; r];
    args.extend(std::iter::repeat_n(k, n - 1 - r));
    let lhs = mixed_area_measure(&args)?;
    let rhs = surface_area_measure(k).scale(&pow(&lambda, r));
    Ok(ChainCheck { lhs, rhs, lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{axis_box, cube, prism3, simplex};
    use crate::scalar::{point, rat};

    #[test]
    fn moving_a_cube_facet() {
        let q = cube(3);
        let m = facet_move(&q, &Direction::axis(3, 2), &rat(1, 3)).unwrap();
        assert_eq!(m.body, axis_box(&[int(1), int(1), rat(4, 3)]));
        assert!(m.normals_preserved);
        assert_eq!(facet_move(&q, &Direction::axis(3, 2), &int(0)).unwrap().body, q);
        assert!(matches!(
            facet_move(&q, &Direction::new(vec![1, 1, 0]).unwrap(), &int(1)),
            Err(GeometryError::NotFacetNormal(_))
        ));
    }

    #[test]
    fn simplex_moves_are_homothets() {
        let d = simplex(3);
        for w in d.facet_normals() {
            for e in default_epsilons(&d, &w).unwrap() {
                assert!(d.is_homothetic(&facet_move(&d, &w, &e).unwrap().body));
            }
        }
        let s = weak_witness_search(&d, None).unwrap();
        assert!(s.witness.is_none());
        assert_eq!(s.homothetic, s.candidates);
    }

    #[test]
    fn witnesses_for_non_simplices() {
        for k in [cube(3), prism3(), cube(2)] {
            let s = weak_witness_search(&k, None).unwrap();
            assert!(s.witness.unwrap().is_valid());
        }
    }

    #[test]
    fn decomposable_body_is_weakly_decomposable() {
        let l = simplex(2);
        let m = Polytope::segment(point(&[0, 0]), point(&[1, 0])).unwrap();
        let k = l.minkowski_sum(&m).unwrap();
        let w = check_witness(&k, &m).unwrap();
        assert!(w.is_valid());
    }

    #[test]
    fn chain_for_homothets() {
        let k = prism3();
        let m = k.scale(&int(2)).translate(&point(&[1, -2, 3]));
        for r in 0..3 {
            let c = homothet_chain_check(&k, &m, r).unwrap();
            assert_eq!(c.lambda, int(2));
            assert!(c.holds(), "r = {r}");
        }
        let c = homothet_chain_check(&k, &k, 0).unwrap();
        assert_eq!(c.lhs, surface_area_measure(&k));
    }
}
