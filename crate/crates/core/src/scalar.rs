//! Exact scalars, rational points and primitive integer directions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};

/// Exact rational number. Always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

/// A point of `Q^n`.
pub type Point = Vec<Scalar>;

/// `p/q` as a [`Scalar`].
pub fn rat(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(p))
}

pub fn point(coords: &[i64]) -> Point {
    coords.iter().map(|&c| int(c)).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add_points(a: &[Scalar], b: &[Scalar]) -> Point {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_points(a: &[Scalar], b: &[Scalar]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_point(a: &[Scalar], s: &Scalar) -> Point {
    a.iter().map(|x| x * s).collect()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let value = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| GeometryError::Parse(s.to_string()))?;
            let q: BigInt = q.trim().parse().map_err(|_| GeometryError::Parse(s.to_string()))?;
            if q.is_zero() {
                return Err(GeometryError::Parse(s.to_string()));
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(t.parse().map_err(|_| GeometryError::Parse(s.to_string()))?),
    };
    Ok(value)
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal approximation for display only.
pub fn approx(x: &Scalar) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // very large parts: shift both by the same power of two
        let bits = x.numer().bits().max(x.denom().bits()).saturating_sub(900);
        let n = (x.numer() >> bits).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() >> bits).to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

/// Integer `n!`.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub(crate) fn pow(x: &Scalar, e: usize) -> Scalar {
    num_traits::pow(x.clone(), e)
}

/// Canonical representative of the ray `{λw : λ > 0}`: a nonzero integer
/// vector with coprime coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Direction(Vec<i64>);

impl Direction {
    /// Normalizes `coords` by the gcd of its entries.
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        let g = coords.iter().fold(0i64, |g, &c| g.gcd(&c));
        if g == 0 {
            return Err(GeometryError::ZeroDirection);
        }
        Ok(Direction(coords.into_iter().map(|c| c / g).collect()))
    }

    /// Coordinate axis `e_i` in `R^n` (0-based `i`).
    pub fn axis(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        Direction(c)
    }

    /// Primitive direction of a nonzero rational vector.
    pub fn from_rational(v: &[Scalar]) -> Result<Self> {
        let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
        Self::from_bigints(&ints)
    }

    pub fn from_bigints(v: &[BigInt]) -> Result<Self> {
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        v.iter().map(|x| (x / &g).to_i64().ok_or(GeometryError::Overflow)).collect::<Result<Vec<_>>>().map(Direction)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_scalars(&self) -> Point {
        self.0.iter().map(|&c| int(c)).collect()
    }

    pub fn neg(&self) -> Self {
        Direction(self.0.iter().map(|c| -c).collect())
    }

    /// `‖w‖²`, an integer.
    pub fn norm_sq(&self) -> BigInt {
        self.0.iter().map(|&c| BigInt::from(c) * c).sum()
    }

    /// Euclidean length for display.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|&c| (c as f64) * (c as f64)).sum::<f64>().sqrt()
    }

    pub fn dot(&self, x: &[Scalar]) -> Scalar {
        self.0.iter().zip(x).filter(|(c, _)| **c != 0).fold(Scalar::zero(), |acc, (&c, v)| acc + v * BigInt::from(c))
    }

    /// Smallest index `j` with `w_j != 0`; the coordinate dropped by charts of `w^⊥`.
    pub fn pivot(&self) -> usize {
        self.0.iter().position(|&c| c != 0).expect("direction is nonzero")
    }

    pub(crate) fn pivot_abs(&self) -> Scalar {
        int(self.0[self.pivot()].abs())
    }

    pub fn is_negative_of(&self, other: &Direction) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == -b)
    }
}

impl TryFrom<Vec<i64>> for Direction {
    type Error = GeometryError;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Direction::new(v)
    }
}

impl From<Direction> for Vec<i64> {
    fn from(d: Direction) -> Self {
        d.0
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Lowest common multiple of all denominators.
pub(crate) fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}
