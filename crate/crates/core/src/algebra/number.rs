use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// Highest Cayley-Dickson level handled by the crate (the sedenions).
pub const MAX_LEVEL: u8 = 4;

/// An element of the Cayley-Dickson algebra of level `n`, i.e. a real vector of
/// length `2^n` with the doubled product.
#[derive(Clone, PartialEq)]
pub struct HypercomplexNumber {
    level: u8,
    coeffs: Vec<f64>,
}

impl HypercomplexNumber {
    pub fn new(level: u8, coeffs: Vec<f64>) -> Result<Self> {
        if level > MAX_LEVEL {
            return Err(Error::UnsupportedLevel(level));
        }
        let expected = 1usize << level;
        if coeffs.len() != expected {
            return Err(Error::BadLength {
                level,
                len: coeffs.len(),
                expected,
            });
        }
        Ok(Self { level, coeffs })
    }

    pub fn zero(level: u8) -> Self {
        Self {
            level,
            coeffs: vec![0.0; 1 << level],
        }
    }

    pub fn one(level: u8) -> Self {
        Self::basis(level, 0)
    }

    pub fn real(level: u8, r: f64) -> Self {
        let mut x = Self::zero(level);
        x.coeffs[0] = r;
        x
    }

    /// The basis element `e_index`. Panics if `index >= 2^level`.
    pub fn basis(level: u8, index: usize) -> Self {
        let mut x = Self::zero(level);
        x.coeffs[index] = 1.0;
        x
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Product by the doubling formula
    /// `(x1, x2)(y1, y2) = (x1 y1 - conj(y2) x2, y2 x1 + x2 conj(y1))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(Self {
            level: self.level,
            coeffs: cd_mul(&self.coeffs, &other.coeffs),
        })
    }

    pub fn conj(&self) -> Self {
        Self {
            level: self.level,
            coeffs: cd_conj(&self.coeffs),
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sq();
        if n2 == 0.0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn re(&self) -> f64 {
        self.coeffs[0]
    }

    /// `(Re x, Im x)` with `Re x = (x + conj x)/2`, `Im x = (x - conj x)/2`.
    pub fn re_im(&self) -> (f64, Self) {
        let c = self.conj();
        let re = 0.5 * (self.coeffs[0] + c.coeffs[0]);
        let im = self
            .coeffs
            .iter()
            .zip(&c.coeffs)
            .map(|(a, b)| 0.5 * (a - b))
            .collect();
        (
            re,
            Self {
                level: self.level,
                coeffs: im,
            },
        )
    }

    /// The monomorphism `x -> (x, 0)` iterated up to `target_level`.
    pub fn embed(&self, target_level: u8) -> Result<Self> {
        if target_level < self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: target_level,
            });
        }
        if target_level > MAX_LEVEL {
            return Err(Error::UnsupportedLevel(target_level));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(1 << target_level, 0.0);
        Ok(Self {
            level: target_level,
            coeffs,
        })
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn dist(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Debug for HypercomplexNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}{:?}", self.level, self.coeffs)
    }
}

impl Add for &HypercomplexNumber {
    type Output = HypercomplexNumber;
    fn add(self, rhs: Self) -> HypercomplexNumber {
        assert_eq!(self.level, rhs.level, "level mismatch in addition");
        HypercomplexNumber {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &HypercomplexNumber {
    type Output = HypercomplexNumber;
    fn sub(self, rhs: Self) -> HypercomplexNumber {
        assert_eq!(self.level, rhs.level, "level mismatch in subtraction");
        HypercomplexNumber {
            level: self.level,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &HypercomplexNumber {
    type Output = HypercomplexNumber;
    fn neg(self) -> HypercomplexNumber {
        self.scale(-1.0)
    }
}

/// Recursive conjugation `conj(x1, x2) = (conj x1, -x2)`; identity on reals.
pub fn cd_conj(x: &[f64]) -> Vec<f64> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = cd_conj(&x[..h]);
    out.extend(x[h..].iter().map(|c| -c));
    out
}

/// Recursive Cayley-Dickson product on raw coefficient slices of equal
/// power-of-two length.
pub fn cd_mul(x: &[f64], y: &[f64]) -> Vec<f64> {
    debug_assert_eq!(x.len(), y.len());
    if x.len() == 1 {
        return vec![x[0] * y[0]];
    }
    let h = x.len() / 2;
    let (x1, x2) = x.split_at(h);
    let (y1, y2) = y.split_at(h);
    let a = cd_mul(x1, y1);
    let b = cd_mul(&cd_conj(y2), x2);
    let c = cd_mul(y2, x1);
    let d = cd_mul(x2, &cd_conj(y1));
    let mut out = Vec::with_capacity(x.len());
    out.extend(a.iter().zip(&b).map(|(p, q)| p - q));
    out.extend(c.iter().zip(&d).map(|(p, q)| p + q));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oct(i: usize) -> HypercomplexNumber {
        HypercomplexNumber::basis(3, i)
    }

    #[test]
    fn basis_products_from_the_table() {
        assert_eq!(oct(1).mul(&oct(2)).unwrap(), oct(3));
        assert_eq!(oct(4).mul(&oct(5)).unwrap(), oct(1));
        assert_eq!(oct(2).mul(&oct(1)).unwrap(), -&oct(3));
    }

    #[test]
    fn level_mismatch_is_rejected() {
        let err = oct(1).mul(&HypercomplexNumber::basis(2, 1)).unwrap_err();
        assert_eq!(err, Error::LevelMismatch { left: 3, right: 2 });
    }

    #[test]
    fn conjugation_of_basis() {
        assert_eq!(oct(3).conj(), -&oct(3));
        assert_eq!(HypercomplexNumber::one(3).conj(), HypercomplexNumber::one(3));
        let r = HypercomplexNumber::real(0, 2.5);
        assert_eq!(r.conj(), r);
    }

    #[test]
    fn norm_inverse_and_split() {
        assert_eq!(oct(5).norm(), 1.0);
        let x = oct(1).scale(2.0);
        assert_eq!(x.inverse().unwrap(), oct(1).scale(-0.5));
        assert_eq!(HypercomplexNumber::zero(3).inverse(), Err(Error::ZeroInverse));
        let y = HypercomplexNumber::new(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let (re, im) = y.re_im();
        assert_eq!(re, 1.0);
        assert_eq!(im.coeffs(), &[0.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn embedding() {
        let i = HypercomplexNumber::basis(1, 1);
        assert_eq!(i.embed(3).unwrap(), oct(1));
        let one = HypercomplexNumber::one(0).embed(4).unwrap();
        assert_eq!(one, HypercomplexNumber::one(4));
        assert!(oct(1).embed(2).is_err());
    }

    #[test]
    fn constructor_validates_length() {
        assert!(HypercomplexNumber::new(3, vec![0.0; 7]).is_err());
        assert!(HypercomplexNumber::new(5, vec![0.0; 32]).is_err());
    }
}
