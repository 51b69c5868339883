//! Named bodies used throughout the test suite and the CLI.

use crate::error::{GeometryError, Result};
use crate::polytope::{convex_hull, Polytope};
use crate::scalar::{int, point, rat, Direction, Point, Scalar};

use num_traits::Zero;

/// Standard simplex `conv{0, e_1, …, e_n}`.
pub fn simplex(n: usize) -> Polytope {
    let mut pts = vec![vec![Scalar::zero(); n]];
    for i in 0..n {
        pts.push(unit(n, i));
    }
    convex_hull(&pts, n).expect("simplex")
}

/// Unit cube `[0,1]^n`.
pub fn cube(n: usize) -> Polytope {
    let pts: Vec<Point> = (0..1u32 << n).map(|mask| (0..n).map(|i| int(((mask >> i) & 1) as i64)).collect()).collect();
    convex_hull(&pts, n).expect("cube")
}

/// Box `[0,a_1] × … × [0,a_n]`.
pub fn axis_box(sides: &[Scalar]) -> Polytope {
    let n = sides.len();
    let pts: Vec<Point> = (0..1u32 << n)
        .map(|mask| (0..n).map(|i| if (mask >> i) & 1 == 1 { sides[i].clone() } else { Scalar::zero() }).collect())
        .collect();
    convex_hull(&pts, n).expect("box")
}

/// Cross-polytope `conv{±e_i}`.
pub fn cross_polytope(n: usize) -> Polytope {
    let mut pts = Vec::new();
    for i in 0..n {
        let e = unit(n, i);
        pts.push(e.iter().map(|x| -x).collect());
        pts.push(e);
    }
    convex_hull(&pts, n).expect("cross-polytope")
}

/// Segment `[0, e_i]` in `R^n`.
pub fn segment_axis(n: usize, i: usize) -> Polytope {
    Polytope::segment(vec![Scalar::zero(); n], unit(n, i)).expect("segment")
}

/// Segment `[0, w]`.
pub fn segment_to(w: &Direction) -> Polytope {
    Polytope::segment(vec![Scalar::zero(); w.dim()], w.to_scalars()).expect("segment")
}

/// Triangular prism `Δ_2 × [0,1]`.
pub fn prism3() -> Polytope {
    let mut pts = Vec::new();
    for z in 0..2 {
        pts.push(point(&[0, 0, z]));
        pts.push(point(&[1, 0, z]));
        pts.push(point(&[0, 1, z]));
    }
    convex_hull(&pts, 3).expect("prism")
}

/// Pyramid `conv{[0,1]^{n-1} × {0}, e_n}`.
pub fn pyramid(n: usize) -> Polytope {
    let mut pts: Vec<Point> = cube(n - 1)
        .vertices()
        .iter()
        .map(|v| {
            let mut p = v.clone();
            p.push(Scalar::zero());
            p
        })
        .collect();
    pts.push(unit(n, n - 1));
    convex_hull(&pts, n).expect("pyramid")
}

/// `conv{[0,1]^2 × {0}, e_3, …, e_n}`.
pub fn square_pyramid_multi(n: usize) -> Polytope {
    let mut pts: Vec<Point> = cube(2)
        .vertices()
        .iter()
        .map(|v| {
            let mut p = v.clone();
            p.resize(n, Scalar::zero());
            p
        })
        .collect();
    for i in 2..n {
        pts.push(unit(n, i));
    }
    convex_hull(&pts, n).expect("pyramid")
}

/// `2Δ_3 ∩ {x_1 <= 3/2}`: a simplex with one vertex cut off.
pub fn truncated_simplex3() -> Polytope {
    simplex(3).scale(&int(2)).truncate(&Direction::axis(3, 0), &rat(1, 2)).expect("truncation")
}

/// Centrally symmetric hexagon `Δ_2 + (-Δ_2)`.
pub fn hexagon() -> Polytope {
    let d = simplex(2);
    let neg = convex_hull(&[point(&[0, 0]), point(&[-1, 0]), point(&[0, -1])], 2).expect("triangle");
    d.minkowski_sum(&neg).expect("sum")
}

/// `K` translated so its vertex centroid is the origin.
pub fn centered(k: &Polytope) -> Polytope {
    let c: Vec<Scalar> = k.vertex_centroid().iter().map(|x| -x).collect();
    k.translate(&c)
}

/// `conv{0, e_1, e_2}` translated so the origin is its centroid.
pub fn centered_triangle() -> Polytope {
    centered(&simplex(2))
}

fn unit(n: usize, i: usize) -> Point {
    let mut e = vec![Scalar::zero(); n];
    e[i] = int(1);
    e
}

fn parse_dim(s: &str) -> Option<usize> {
    s.parse().ok().filter(|&n| (1..=8).contains(&n))
}

/// Built-in body names.
pub fn names() -> Vec<&'static str> {
    vec![
        "simplex-<n>",
        "cube-<n>",
        "cross-<n>",
        "pyramid-<n>",
        "square-pyramid-<n>",
        "seg-<axis>-<n>",
        "square",
        "octahedron",
        "prism-3",
        "truncated-simplex-3",
        "hexagon",
        "seg-x",
        "seg-y",
        "seg-z",
    ]
}

/// Resolves a built-in corpus name.
pub fn by_name(name: &str) -> Result<Polytope> {
    let unknown = || GeometryError::Invalid(format!("unknown corpus body `{name}`"));
    let body = match name {
        "square" => cube(2),
        "octahedron" => cross_polytope(3),
        "prism-3" => prism3(),
        "truncated-simplex-3" => truncated_simplex3(),
        "hexagon" => hexagon(),
        "seg-x" => segment_axis(2, 0),
        "seg-y" => segment_axis(2, 1),
        "seg-z" => segment_axis(3, 2),
        _ => {
            if let Some(rest) = name.strip_prefix("seg-") {
                let (axis, n) = rest.split_once('-').ok_or_else(unknown)?;
                let n = parse_dim(n).ok_or_else(unknown)?;
                let i = match axis {
                    "x" => 0,
                    "y" => 1,
                    "z" => 2,
                    "w" => 3,
                    _ => axis
                        .strip_prefix('e')
                        .and_then(|k| k.parse::<usize>().ok())
                        .and_then(|k| k.checked_sub(1))
                        .ok_or_else(unknown)?,
                };
                if i >= n {
                    return Err(unknown());
                }
                segment_axis(n, i)
            } else if let Some(n) = name.strip_prefix("simplex-").and_then(parse_dim) {
                simplex(n)
            } else if let Some(n) = name.strip_prefix("cube-").and_then(parse_dim) {
                cube(n)
            } else if let Some(n) = name.strip_prefix("cross-").and_then(parse_dim) {
                cross_polytope(n)
            } else if let Some(n) = name.strip_prefix("square-pyramid-").and_then(parse_dim).filter(|&n| n >= 3) {
                square_pyramid_multi(n)
            } else if let Some(n) = name.strip_prefix("pyramid-").and_then(parse_dim).filter(|&n| n >= 2) {
                pyramid(n)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(body)
}

/// Full-dimensional corpus bodies in dimensions 2 and 3.
pub fn standard_bodies() -> Vec<(&'static str, Polytope)> {
    vec![
        ("simplex-2", simplex(2)),
        ("square", cube(2)),
        ("hexagon", hexagon()),
        ("cross-2", cross_polytope(2)),
        ("simplex-3", simplex(3)),
        ("cube-3", cube(3)),
        ("octahedron", cross_polytope(3)),
        ("prism-3", prism3()),
        ("pyramid-3", pyramid(3)),
        ("truncated-simplex-3", truncated_simplex3()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_bodies() {
        assert_eq!(by_name("simplex-2").unwrap().vertices(), &[point(&[0, 0]), point(&[0, 1]), point(&[1, 0])]);
        let p = by_name("pyramid-3").unwrap();
        assert_eq!(p.vertices().len(), 5);
        assert_eq!(*p.volume(), rat(1, 3));
        assert_eq!(*by_name("cube-4").unwrap().volume(), int(1));
        assert_eq!(by_name("seg-z-3").unwrap(), segment_axis(3, 2));
        assert!(by_name("dodecahedron").is_err());
        assert!(by_name("seg-z-2").is_err());
    }

    #[test]
    fn truncated_simplex_shape() {
        let t = truncated_simplex3();
        assert_eq!(t.vertices().len(), 6);
        assert_eq!(t.facets().len(), 5);
        // 8/6 minus the cut-off corner simplex of edge 1/2
        assert_eq!(*t.volume(), rat(4, 3) - rat(1, 48));
    }
}
