//! Second-order forward-mode differentiation.
//!
//! Charts are written once, generically over [`Scalar`]. Evaluating them on
//! `f64` gives points; evaluating on [`Jet`] gives exact first and second
//! partial derivatives alongside.

use std::ops::{Add, Mul, Neg, Sub};

/// Maximum number of independent variables a [`Jet`] tracks.
pub const MAX_VARS: usize = 6;

pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    fn constant(c: f64) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
    fn value(self) -> f64;
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn value(self) -> f64 {
        self
    }
}

/// Value, gradient and Hessian with respect to up to [`MAX_VARS`] variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub g: [f64; MAX_VARS],
    pub h: [[f64; MAX_VARS]; MAX_VARS],
}

impl Jet {
    pub fn constant(c: f64) -> Self {
        Self {
            v: c,
            g: [0.0; MAX_VARS],
            h: [[0.0; MAX_VARS]; MAX_VARS],
        }
    }

    /// The independent variable number `index` at `value`.
    pub fn variable(value: f64, index: usize) -> Self {
        let mut j = Self::constant(value);
        j.g[index] = 1.0;
        j
    }

    pub fn variables(u: &[f64]) -> Vec<Jet> {
        assert!(u.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        u.iter()
            .enumerate()
            .map(|(i, &x)| Jet::variable(x, i))
            .collect()
    }

    /// `f(self)` given `f`, `f'`, `f''` at the value.
    fn chain(self, f: f64, df: f64, d2f: f64) -> Self {
        let mut out = Self::constant(f);
        for i in 0..MAX_VARS {
            out.g[i] = df * self.g[i];
            for j in 0..MAX_VARS {
                out.h[i][j] = df * self.h[i][j] + d2f * self.g[i] * self.g[j];
            }
        }
        out
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        self.v += rhs.v;
        for i in 0..MAX_VARS {
            self.g[i] += rhs.g[i];
            for j in 0..MAX_VARS {
                self.h[i][j] += rhs.h[i][j];
            }
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self * -1.0
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut out = Jet::constant(self.v * rhs.v);
        for i in 0..MAX_VARS {
            out.g[i] = self.g[i] * rhs.v + self.v * rhs.g[i];
            for j in 0..MAX_VARS {
                out.h[i][j] = self.h[i][j] * rhs.v
                    + self.g[i] * rhs.g[j]
                    + self.g[j] * rhs.g[i]
                    + self.v * rhs.h[i][j];
            }
        }
        out
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.v += rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, rhs: f64) -> Jet {
        self.v *= rhs;
        for i in 0..MAX_VARS {
            self.g[i] *= rhs;
            for j in 0..MAX_VARS {
                self.h[i][j] *= rhs;
            }
        }
        self
    }
}

impl Scalar for Jet {
    fn constant(c: f64) -> Self {
        Jet::constant(c)
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }
    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.v))
    }
    fn value(self) -> f64 {
        self.v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_and_trig() {
        // f(x, y) = sin(x) * y^2 at (0.7, 1.3)
        let v = Jet::variables(&[0.7, 1.3]);
        let f = v[0].sin() * v[1] * v[1];
        let (x, y) = (0.7f64, 1.3f64);
        assert!((f.v - x.sin() * y * y).abs() < 1e-15);
        assert!((f.g[0] - x.cos() * y * y).abs() < 1e-15);
        assert!((f.g[1] - 2.0 * x.sin() * y).abs() < 1e-15);
        assert!((f.h[0][0] + x.sin() * y * y).abs() < 1e-15);
        assert!((f.h[0][1] - 2.0 * x.cos() * y).abs() < 1e-15);
        assert_eq!(f.h[0][1], f.h[1][0]);
        assert!((f.h[1][1] - 2.0 * x.sin()).abs() < 1e-15);
    }

    #[test]
    fn sqrt_derivatives() {
        let x = Jet::variable(2.0, 0);
        let r = (x * x + 5.0).sqrt(); // sqrt(x^2 + 5) at x = 2 -> 3
        assert!((r.v - 3.0).abs() < 1e-15);
        assert!((r.g[0] - 2.0 / 3.0).abs() < 1e-15);
        // d2/dx2 = 5 / (x^2 + 5)^{3/2} = 5/27
        assert!((r.h[0][0] - 5.0 / 27.0).abs() < 1e-15);
    }
}
