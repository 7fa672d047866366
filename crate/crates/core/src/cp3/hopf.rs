//! The circle action `x -> e^{i t} x` on `S^7`, averaging of vector fields over
//! it, and the invariant fields `W_v`.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::matrix::{left_mul_matrix_oct, IntMatrix8};
use crate::algebra::octonion::{self, Octonion};
use crate::error::{Error, Result};
use crate::s7::fields::VectorFieldSpec;

/// `hopf_act`: `e^{i theta} x`.
pub fn hopf_act(theta: f64, x: &Octonion) -> Octonion {
    octonion::mul(&octonion::exp_i(theta), x)
}

/// Uniform trapezoid rule on `[0, 2 pi)` with `node_count` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub node_count: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { node_count: 64 }
    }
}

impl QuadratureSpec {
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count < 8 || !node_count.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "quadrature needs an even node count >= 8, got {node_count}"
            )));
        }
        Ok(Self { node_count })
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.node_count).map(move |k| TAU * k as f64 / self.node_count as f64)
    }
}

/// `hopf_symmetrize`: `X^h(x) = (1/2 pi) int e^{-i t} X(e^{i t} x) dt`.
pub fn hopf_symmetrize(field: &VectorFieldSpec, quad: QuadratureSpec) -> VectorFieldSpec {
    let inner = field.clone();
    let label = format!("symmetrized({:?})", field.kind());
    VectorFieldSpec::custom(label, move |x| {
        let mut acc = [0.0; 8];
        for t in quad.nodes() {
            let y = inner.eval(&hopf_act(t, x));
            acc = octonion::add(&acc, &hopf_act(-t, &y));
        }
        octonion::scale(&acc, 1.0 / quad.node_count as f64)
    })
}

/// `max |X(e^{i t} x) - e^{i t} X(x)|` over the given angles.
pub fn hopf_invariance_defect(field: &VectorFieldSpec, x: &Octonion, angles: &[f64]) -> f64 {
    let fx = field.eval(x);
    angles
        .iter()
        .map(|&t| {
            let a = field.eval(&hopf_act(t, x));
            let b = hopf_act(t, &fx);
            octonion::norm(&octonion::sub(&a, &b))
        })
        .fold(0.0, f64::max)
}

/// `W_v(x) = (x v - i((i x) v)) / 2`.
pub fn w_value(v: &Octonion, x: &Octonion) -> Octonion {
    let xv = octonion::mul(x, v);
    let ixv = octonion::mul(&octonion::mul(&octonion::I, x), v);
    let iixv = octonion::mul(&octonion::I, &ixv);
    octonion::scale(&octonion::sub(&xv, &iixv), 0.5)
}

/// `w_field`: requires `v` tangent to `S^7` at `1`, i.e. imaginary.
pub fn w_field(v: Octonion) -> Result<VectorFieldSpec> {
    if v[0].abs() > 1e-12 * octonion::norm(&v).max(1.0) {
        return Err(Error::NotTangent(v[0]));
    }
    Ok(VectorFieldSpec::w_field(v))
}

/// The six fields `W_{e_2}, ..., W_{e_7}` at `x`.
pub fn w_basis(x: &Octonion) -> [Octonion; 6] {
    std::array::from_fn(|n| w_value(&octonion::basis(n + 2), x))
}

/// Gram matrix of `W_{e_2..e_7}` at a point and its comparison with
/// `(a0^2 + a1^2)^4`.
#[derive(Debug, Clone, PartialEq)]
pub struct WGram {
    pub gram: DMatrix<f64>,
    pub det: f64,
    pub predicted: f64,
    /// `|det - predicted| / max(predicted, tiny)`; absolute when `predicted = 0`.
    pub rel_err: f64,
    /// `max_n |<W_{e_1}(x), W_{e_n}(x)>|` for `n = 2..7`.
    pub x0_orthogonality: f64,
    /// `max_n |<i x, W_{e_n}(x)>|`, the fibre components of the six fields.
    /// Nonzero in general: `W_{e_1}(x) = x i`, which is not the fibre
    /// direction `i x` of the left action.
    pub fibre_component: f64,
}

/// `w_gram`.
pub fn w_gram(x: &Octonion) -> Result<WGram> {
    let n = octonion::norm(x);
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnit(n));
    }
    let w = w_basis(x);
    let gram = DMatrix::from_fn(6, 6, |i, j| octonion::dot(&w[i], &w[j]));
    let det = gram.determinant();
    let predicted = (x[0] * x[0] + x[1] * x[1]).powi(4);
    let rel_err = if predicted > 0.0 {
        (det - predicted).abs() / predicted
    } else {
        (det - predicted).abs()
    };
    let max_dot = |a: &Octonion| w.iter().map(|v| octonion::dot(a, v).abs()).fold(0.0, f64::max);
    Ok(WGram {
        gram,
        det,
        predicted,
        rel_err,
        x0_orthogonality: max_dot(&w_value(&octonion::I, x)),
        fibre_component: max_dot(&octonion::mul(&octonion::I, x)),
    })
}

/// CSV with columns `a0,a1,det,predicted,rel_err`, one row per point.
pub fn gram_scan_csv(points: &[Octonion]) -> Result<String> {
    let mut s = String::from("a0,a1,det,predicted,rel_err\n");
    for x in points {
        let g = w_gram(x)?;
        let _ = writeln!(s, "{},{},{},{},{}", x[0], x[1], g.det, g.predicted, g.rel_err);
    }
    Ok(s)
}

/// The block rotation `diag(J, J, J, J)` with `J = [[0, 1], [-1, 0]]`.
pub fn block_rotation() -> IntMatrix8 {
    let mut m = [[0; 8]; 8];
    for k in 0..4 {
        m[2 * k][2 * k + 1] = 1;
        m[2 * k + 1][2 * k] = -1;
    }
    IntMatrix8(m)
}

/// The permutation swapping `0 <-> 1`, `2 <-> 3`, `4 <-> 5` and fixing `6`, `7`.
pub fn pair_swap() -> IntMatrix8 {
    let perm = [1, 0, 3, 2, 5, 4, 6, 7];
    let mut m = [[0; 8]; 8];
    for (i, &j) in perm.iter().enumerate() {
        m[i][j] = 1;
    }
    IntMatrix8(m)
}

/// Left multiplication by `i` as an exact integer matrix.
pub fn left_i_matrix() -> IntMatrix8 {
    left_mul_matrix_oct(&octonion::I)
        .to_integer()
        .expect("left multiplication by a basis element is integral")
}

/// Whether `(i) = A X0 A^{-1}` holds exactly, with `A` the pair swap (its own
/// inverse and transpose) and `X0` the block rotation.
pub fn left_i_is_conjugate_rotation() -> bool {
    let a = pair_swap();
    a.matmul(&a.transpose()) == IntMatrix8::identity()
        && a.matmul(&block_rotation()).matmul(&a.transpose()) == left_i_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(v: [f64; 8]) -> Octonion {
        octonion::normalize(&v)
    }

    const X: [f64; 8] = [0.3, -0.2, 0.5, 0.1, -0.6, 0.2, 0.4, -0.2];

    #[test]
    fn action_basics() {
        let x = unit(X);
        assert_eq!(hopf_act(0.0, &x), x);
        let y = hopf_act(std::f64::consts::PI, &x);
        for k in 0..8 {
            assert!((y[k] + x[k]).abs() < 1e-15);
        }
        let a = hopf_act(0.4, &hopf_act(1.3, &x));
        let b = hopf_act(1.7, &x);
        for k in 0..8 {
            assert!((a[k] - b[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn w_of_e1_coordinates() {
        let x = unit(X);
        let a = x;
        let w = w_value(&octonion::I, &x);
        let expected = [-a[1], a[0], a[3], -a[2], a[5], -a[4], -a[7], a[6]];
        let xi = octonion::mul(&x, &octonion::I);
        for k in 0..8 {
            assert!((w[k] - expected[k]).abs() < 1e-15);
            assert!((w[k] - xi[k]).abs() < 1e-15);
        }
        let v = octonion::basis(5);
        assert_eq!(w_value(&v, &octonion::ONE), v);
    }

    #[test]
    fn w_fields_are_equivariant_but_not_horizontal() {
        let x = unit(X);
        for n in 1..8 {
            let f = VectorFieldSpec::w_field(octonion::basis(n));
            assert!(hopf_invariance_defect(&f, &x, &[0.3, 1.9, 4.0]) < 1e-14);
        }
        let g = w_gram(&x).unwrap();
        assert!(g.fibre_component > 0.1);
    }

    #[test]
    fn gram_identity_at_special_points() {
        let g = w_gram(&octonion::ONE).unwrap();
        assert!((&g.gram - DMatrix::identity(6, 6)).amax() < 1e-15);
        let g = w_gram(&unit([0.0, 0.0, 1.0, 2.0, 0.0, 0.0, 1.0, 0.0])).unwrap();
        assert!(g.det.abs() < 1e-14);
        let g = w_gram(&unit(X)).unwrap();
        assert!(g.rel_err < 1e-10 && g.x0_orthogonality < 1e-14);
    }

    #[test]
    fn conjugation_lemma() {
        assert!(left_i_is_conjugate_rotation());
    }

    #[test]
    fn symmetrization_of_right_multiplication() {
        let v = octonion::basis(3);
        let rv = VectorFieldSpec::custom("x v", move |x| octonion::mul(x, &v));
        let h = hopf_symmetrize(&rv, QuadratureSpec::default());
        let x = unit(X);
        let a = h.eval(&x);
        let b = w_value(&v, &x);
        for k in 0..8 {
            assert!((a[k] - b[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn quadrature_validation() {
        assert!(QuadratureSpec::new(6).is_err());
        assert!(QuadratureSpec::new(9).is_err());
        assert!(QuadratureSpec::new(8).is_ok());
        assert!(w_field(octonion::ONE).is_err());
    }
}
