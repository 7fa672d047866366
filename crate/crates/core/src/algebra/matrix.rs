use std::fmt::Write as _;

use super::number::HypercomplexNumber;
use super::octonion::{self, Octonion};
use crate::error::{Error, Result};

/// A real 8x8 matrix, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix8 {
    pub entries: [[f64; 8]; 8],
}

impl Matrix8 {
    pub fn zeros() -> Self {
        Self {
            entries: [[0.0; 8]; 8],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..8 {
            m.entries[k][k] = 1.0;
        }
        m
    }

    pub fn from_columns(cols: &[Octonion; 8]) -> Self {
        let mut m = Self::zeros();
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.entries[i][j] = *v;
            }
        }
        m
    }

    pub fn apply(&self, y: &Octonion) -> Octonion {
        std::array::from_fn(|i| octonion::dot(&self.entries[i], y))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros();
        for i in 0..8 {
            for j in 0..8 {
                t.entries[j][i] = self.entries[i][j];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..8 {
            for j in 0..8 {
                m.entries[i][j] = (0..8).map(|k| self.entries[i][k] * other.entries[k][j]).sum();
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = *self;
        for i in 0..8 {
            for j in 0..8 {
                m.entries[i][j] += other.entries[i][j];
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.entries.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// `max |M + M^T|`
    pub fn skew_defect(&self) -> f64 {
        self.add(&self.transpose()).max_abs()
    }

    /// `max |M^T M - I|`
    pub fn orthogonality_defect(&self) -> f64 {
        self.transpose()
            .matmul(self)
            .add(&Self::identity().scale(-1.0))
            .max_abs()
    }

    /// Exact conversion for matrices whose entries are all integers.
    pub fn to_integer(&self) -> Option<IntMatrix8> {
        let mut m = [[0i32; 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let v = self.entries[i][j];
                if v.fract() != 0.0 || v.abs() > i32::MAX as f64 {
                    return None;
                }
                m[i][j] = v as i32;
            }
        }
        Some(IntMatrix8(m))
    }

    /// Row-major CSV, eight rows of eight values, no header.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for row in &self.entries {
            let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            let _ = writeln!(s, "{}", line.join(","));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut m = Self::zeros();
        let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if rows.len() != 8 {
            return Err(Error::Parse {
                line: rows.len().min(8) + 1,
                message: format!("expected 8 rows, found {}", rows.len()),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            let vals: Vec<&str> = row.split(',').map(str::trim).collect();
            if vals.len() != 8 {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected 8 columns, found {}", vals.len()),
                });
            }
            for (j, v) in vals.iter().enumerate() {
                m.entries[i][j] = v.parse().map_err(|e| Error::Parse {
                    line: i + 1,
                    message: format!("bad number `{v}`: {e}"),
                })?;
            }
        }
        Ok(m)
    }
}

/// Integer 8x8 matrix for exact identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntMatrix8(pub [[i32; 8]; 8]);

impl IntMatrix8 {
    pub fn identity() -> Self {
        let mut m = [[0; 8]; 8];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = 1;
        }
        Self(m)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut m = [[0; 8]; 8];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..8).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Self(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0; 8]; 8];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.0[j][i];
            }
        }
        Self(m)
    }
}

fn as_octonion(x: &HypercomplexNumber) -> Result<Octonion> {
    if x.level() != 3 {
        return Err(Error::LevelMismatch {
            left: x.level(),
            right: 3,
        });
    }
    let mut o = [0.0; 8];
    o.copy_from_slice(x.coeffs());
    Ok(o)
}

/// The matrix of `y -> x y`: column `j` is `x e_j`.
pub fn left_mul_matrix(x: &HypercomplexNumber) -> Result<Matrix8> {
    Ok(left_mul_matrix_oct(&as_octonion(x)?))
}

/// The matrix of `y -> y x`: column `j` is `e_j x`.
pub fn right_mul_matrix(x: &HypercomplexNumber) -> Result<Matrix8> {
    Ok(right_mul_matrix_oct(&as_octonion(x)?))
}

pub fn left_mul_matrix_oct(x: &Octonion) -> Matrix8 {
    let cols = std::array::from_fn(|j| octonion::mul(x, &octonion::basis(j)));
    Matrix8::from_columns(&cols)
}

pub fn right_mul_matrix_oct(x: &Octonion) -> Matrix8 {
    let cols = std::array::from_fn(|j| octonion::mul(&octonion::basis(j), x));
    Matrix8::from_columns(&cols)
}

/// The left multiplication matrix written out entry by entry in terms of
/// `x0..x7`, independent of the structure table.
pub fn displayed_left_matrix(x: &Octonion) -> Matrix8 {
    let [x0, x1, x2, x3, x4, x5, x6, x7] = *x;
    Matrix8 {
        entries: [
            [x0, -x1, -x2, -x3, -x4, -x5, -x6, -x7],
            [x1, x0, -x3, x2, -x5, x4, x7, -x6],
            [x2, x3, x0, -x1, -x6, -x7, x4, x5],
            [x3, -x2, x1, x0, -x7, x6, -x5, x4],
            [x4, x5, x6, x7, x0, -x1, -x2, -x3],
            [x5, -x4, x7, -x6, x1, x0, x3, -x2],
            [x6, -x7, -x4, x5, x2, -x3, x0, x1],
            [x7, x6, -x5, -x4, x3, x2, -x1, x0],
        ],
    }
}
