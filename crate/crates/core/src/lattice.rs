//! Exact integers, rationals and lattice vectors for `N` and its dual `M`.
//!
//! Everything here is arbitrary precision. Rationals come from
//! `num-rational` and are kept in lowest terms with a positive denominator
//! at construction, so equality is structural.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Int = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: &Int) -> Rational {
    Rational::from_integer(v.clone())
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Validation(format!("not an exact rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n.trim().parse().map_err(|_| bad())?;
        let d: Int = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Validation(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole: Int = match whole.trim() {
            "" | "-" | "+" => Int::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(Int::from(10), frac.len());
        let frac: Int = frac.parse().map_err(|_| bad())?;
        let mag = whole.abs() * &scale + frac;
        let numer = if negative { -mag } else { mag };
        return Ok(Rational::new(numer, scale));
    }
    let n: Int = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// A vector in `N` or `M` (the ambient rank is the length).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVec(#[serde(with = "crate::serde_int::vec")] pub Vec<Int>);

impl LatticeVec {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVec(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVec(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LatticeVec(vec![Int::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Int::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Int) -> LatticeVec {
        LatticeVec(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(rat_int).collect()
    }

    fn check_dim(&self, other: &LatticeVec) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LatticeVec) -> Result<LatticeVec> {
        self.check_dim(other)?;
        Ok(LatticeVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &LatticeVec) -> Result<LatticeVec> {
        self.check_dim(other)?;
        Ok(LatticeVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Add for &LatticeVec {
    type Output = LatticeVec;
    fn add(self, rhs: &LatticeVec) -> LatticeVec {
        self.try_add(rhs).expect("lattice vectors of equal rank")
    }
}

impl Sub for &LatticeVec {
    type Output = LatticeVec;
    fn sub(self, rhs: &LatticeVec) -> LatticeVec {
        self.try_sub(rhs).expect("lattice vectors of equal rank")
    }
}

impl Neg for &LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// The dual pairing `<u, v>` of `u` in `M` with `v` in `N`.
pub fn pairing(u: &LatticeVec, v: &LatticeVec) -> Result<Int> {
    u.check_dim(v)?;
    Ok(u.0.iter().zip(&v.0).map(|(a, b)| a * b).sum())
}

/// Divides out the gcd of the entries. Keeps the direction (and sign).
pub fn primitive(v: &LatticeVec) -> Result<LatticeVec> {
    let g = v.0.iter().fold(Int::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return Err(Error::Degenerate("primitive generator of the zero vector".into()));
    }
    Ok(LatticeVec(v.0.iter().map(|c| c / &g).collect()))
}

/// Returns `a` with `diff = a * m`.
pub fn divide_along(diff: &LatticeVec, m: &LatticeVec) -> Result<Int> {
    diff.check_dim(m)?;
    let pivot = m
        .0
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::Degenerate("modulus direction is zero".into()))?;
    let (a, rem) = diff.0[pivot].div_rem(&m.0[pivot]);
    if !rem.is_zero() || diff.0.iter().zip(&m.0).any(|(d, mi)| *d != &a * mi) {
        return Err(Error::Pairing(format!("{diff} is not an integer multiple of {m}")));
    }
    Ok(a)
}

/// A character modulo a primitive direction.
#[derive(Clone, Debug)]
pub struct ResidueClass {
    pub representative: LatticeVec,
    pub modulus_direction: LatticeVec,
}

impl ResidueClass {
    pub fn new(representative: LatticeVec, modulus_direction: LatticeVec) -> Result<Self> {
        representative.check_dim(&modulus_direction)?;
        let modulus_direction = primitive(&modulus_direction)?;
        Ok(ResidueClass { representative, modulus_direction })
    }

    pub fn contains(&self, u: &LatticeVec) -> bool {
        u.try_sub(&self.representative)
            .and_then(|d| divide_along(&d, &self.modulus_direction))
            .is_ok()
    }
}

impl PartialEq for ResidueClass {
    fn eq(&self, other: &Self) -> bool {
        let same_modulus = self.modulus_direction == other.modulus_direction
            || self.modulus_direction == -&other.modulus_direction;
        same_modulus && self.contains(&other.representative)
    }
}

/// Solves `A x = b` over the rationals for square invertible `A`.
/// Returns `None` if `A` is singular.
pub(crate) fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// For a lattice basis `rays` of `N`, the dual basis of `M`: row `i`
/// pairs to 1 with `rays[i]` and to 0 with the others.
pub fn dual_basis(rays: &[&LatticeVec]) -> Result<Vec<LatticeVec>> {
    let n = rays.len();
    if rays.iter().any(|r| r.dim() != n) {
        return Err(Error::Dimension { expected: n, found: rays[0].dim() });
    }
    // Row i of the dual is column i of inverse(R) where R has rays as rows.
    let r: Vec<Vec<Rational>> = rays.iter().map(|v| v.to_rational()).collect();
    let mut dual = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        let x = solve_square(&r, &e)
            .ok_or_else(|| Error::Validation("cone rays are linearly dependent".into()))?;
        let coords = x
            .into_iter()
            .map(|q| {
                if q.is_integer() {
                    Ok(q.to_integer())
                } else {
                    Err(Error::Validation("cone is not smooth (rays do not span N)".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        dual.push(LatticeVec(coords));
    }
    Ok(dual)
}

pub(crate) fn int_to_i64(v: &Int) -> Option<i64> {
    v.to_i64()
}
