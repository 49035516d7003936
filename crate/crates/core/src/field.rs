//! Scalar fields for the exact linear algebra.
//!
//! Everything in the mathematical core is generic over [`Field`]. Two
//! implementations ship: arbitrary-precision rationals (the working field)
//! and the prime fields `GF(p)` used by the brute-force submodule oracle.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;

/// Exact rational scalar.
pub type Rational = BigRational;

pub trait Field:
    Clone
    + Debug
    + Display
    + Eq
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Characteristic of the field (0 for the rationals).
    fn characteristic() -> u64;

    fn from_i64(v: i64) -> Self;

    /// Image of a rational number, or `None` when the denominator is not
    /// invertible in this field.
    fn from_rational(q: &Rational) -> Option<Self>;

    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Every element of the field that is an eigenvalue of the square matrix
    /// `m`. Only eigenvalues lying in the field itself are reported.
    fn eigenvalues_in_field(m: &Matrix<Self>) -> Vec<Self>;
}

impl Field for Rational {
    fn characteristic() -> u64 {
        0
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }

    fn eigenvalues_in_field(m: &Matrix<Self>) -> Vec<Self> {
        rational_eigenvalues(m)
    }
}

/// Rational eigenvalues of a rational matrix.
///
/// After clearing denominators the characteristic polynomial is monic with
/// integer coefficients, so every rational root is an integer bounded by the
/// maximal absolute row sum. Matrices whose bound exceeds `EIGEN_SEARCH_LIMIT`
/// report no eigenvalues.
fn rational_eigenvalues(m: &Matrix<Rational>) -> Vec<Rational> {
    const EIGEN_SEARCH_LIMIT: i64 = 20_000;
    assert_eq!(m.rows(), m.cols(), "eigenvalues of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let mut denom = BigInt::one();
    for x in m.entries() {
        denom = denom.lcm(x.denom());
    }
    let scale = BigRational::from_integer(denom.clone());
    let scaled = m.map(|x| x.clone() * scale.clone());
    let bound = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| scaled[(r, c)].abs())
                .fold(BigRational::zero(), |a, b| a + b)
        })
        .max()
        .unwrap_or_else(BigRational::zero);
    let bound = match bound.ceil().to_integer().to_i64() {
        Some(b) if b <= EIGEN_SEARCH_LIMIT => b,
        _ => return Vec::new(),
    };
    let charpoly = characteristic_polynomial(&scaled);
    (-bound..=bound)
        .filter(|&k| {
            let x = BigRational::from_integer(BigInt::from(k));
            eval_poly(&charpoly, &x).is_zero()
        })
        .map(|k| BigRational::new(BigInt::from(k), denom.clone()))
        .collect()
}

/// Coefficients `c_0..c_n` of `det(xI - m)` (lowest degree first), by the
/// Faddeev-LeVerrier recursion. Valid in characteristic 0.
pub fn characteristic_polynomial(m: &Matrix<Rational>) -> Vec<Rational> {
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &aux;
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        aux = next;
        let prod = m * &aux;
        let trace = (0..n).fold(Rational::zero(), |acc, i| acc + prod[(i, i)].clone());
        coeffs[n - k] = -trace / Rational::from_i64(k as i64);
    }
    coeffs
}

fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// The prime field with `P` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf<const P: u64>(u64);

impl<const P: u64> Gf<P> {
    pub fn new(v: i64) -> Self {
        Gf(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// All field elements in increasing order of representative.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(Gf)
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1 % P;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Gf(acc)
    }
}

impl<const P: u64> Debug for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Zero for Gf<P> {
    fn zero() -> Self {
        Gf(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Gf<P> {
    fn one() -> Self {
        Gf(1 % P)
    }
}

impl<const P: u64> Add for Gf<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gf((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gf((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gf(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf((P - self.0) % P)
    }
}

impl<const P: u64> Div for Gf<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in GF({P})");
        self * rhs.pow(P - 2)
    }
}

impl<const P: u64> Field for Gf<P> {
    fn characteristic() -> u64 {
        P
    }

    fn from_i64(v: i64) -> Self {
        Gf::new(v)
    }

    fn from_rational(q: &Rational) -> Option<Self> {
        let p = BigInt::from(P);
        let num = q.numer().mod_floor(&p).to_u64()?;
        let den = q.denom().mod_floor(&p).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(Gf(num) / Gf(den))
    }

    fn eigenvalues_in_field(m: &Matrix<Self>) -> Vec<Self> {
        let n = m.rows();
        Self::elements()
            .filter(|&lambda| {
                let shifted = m - &Matrix::identity(n).scale(&lambda);
                shifted.rank() < n
            })
            .collect()
    }
}

/// Returns true when `p` is prime.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses `"p/q"`, `"-p/q"` or an integer literal.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

/// Converts an integral rational to `i64`.
pub fn rational_to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}
