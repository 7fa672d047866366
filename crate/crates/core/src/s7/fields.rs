//! Tangent vector fields on `S^7` and the translation `x^{-1} w` to the
//! identity.

use std::fmt;
use std::sync::Arc;

use crate::algebra::matrix::{left_mul_matrix_oct, right_mul_matrix_oct, Matrix8};
use crate::algebra::octonion::{self, Octonion};
use crate::cp3::hopf::w_value;
use crate::error::{Error, Result};

/// Tolerance on `|x| = 1` for points of `S^7` handed to field operations.
pub const POINT_TOL: f64 = 1e-10;
/// Tolerance on `<w, x> = 0` for tangent vectors.
pub const TANGENT_TOL: f64 = 1e-12;

fn check_unit(x: &Octonion) -> Result<()> {
    let n = octonion::norm(x);
    if (n - 1.0).abs() > POINT_TOL {
        return Err(Error::NotUnit(n));
    }
    Ok(())
}

fn check_tangent(x: &Octonion, w: &Octonion) -> Result<()> {
    let d = octonion::dot(w, x);
    if d.abs() > TANGENT_TOL * octonion::norm(w).max(1.0) {
        return Err(Error::NotTangent(d));
    }
    Ok(())
}

/// `translate_to_identity`: `x^{-1} w`, carrying `T_x S^7` isometrically onto
/// the imaginary octonions.
pub fn translate_to_identity(x: &Octonion, w: &Octonion) -> Result<Octonion> {
    check_unit(x)?;
    check_tangent(x, w)?;
    Ok(octonion::mul(&octonion::conj(x), w))
}

/// What a [`VectorFieldSpec`] was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldKind {
    /// `x -> x (x0^{-1} v)`.
    Translational { v: Octonion, x0: Octonion },
    /// `x -> M x` for a skew matrix `M`.
    Hopf { matrix: Matrix8 },
    /// `x -> (x v - i((i x) v)) / 2`.
    WField { v: Octonion },
    Custom { label: String },
}

type Evaluator = Arc<dyn Fn(&Octonion) -> Octonion + Send + Sync>;

/// A vector field on `S^7` that can be evaluated point-wise.
#[derive(Clone)]
pub struct VectorFieldSpec {
    kind: FieldKind,
    eval: Evaluator,
}

impl fmt::Debug for VectorFieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorFieldSpec")
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

impl VectorFieldSpec {
    /// `translational_field`: the right-translation field through `x0` with
    /// value `v` there.
    pub fn translational(v: Octonion, x0: Octonion) -> Result<Self> {
        check_unit(&x0)?;
        check_tangent(&x0, &v)?;
        let c = octonion::mul(&octonion::conj(&x0), &v);
        Ok(Self {
            kind: FieldKind::Translational { v, x0 },
            eval: Arc::new(move |x| octonion::mul(x, &c)),
        })
    }

    /// A linear field `x -> M x`. `M` must be skew so that the field is
    /// tangent to `S^7`.
    pub fn hopf(matrix: Matrix8) -> Result<Self> {
        let skew = matrix.skew_defect();
        if skew > 1e-12 * matrix.max_abs().max(1.0) {
            return Err(Error::NotTangent(skew));
        }
        Ok(Self {
            kind: FieldKind::Hopf { matrix },
            eval: Arc::new(move |x| matrix.apply(x)),
        })
    }

    /// `w_field`.
    pub fn w_field(v: Octonion) -> Self {
        Self {
            kind: FieldKind::WField { v },
            eval: Arc::new(move |x| w_value(&v, x)),
        }
    }

    pub fn custom<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&Octonion) -> Octonion + Send + Sync + 'static,
    {
        Self {
            kind: FieldKind::Custom {
                label: label.into(),
            },
            eval: Arc::new(f),
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn eval(&self, x: &Octonion) -> Octonion {
        (self.eval)(x)
    }

    /// The generating matrix of a linear field.
    pub fn matrix(&self) -> Option<Matrix8> {
        match &self.kind {
            FieldKind::Translational { v, x0 } => {
                let c = octonion::mul(&octonion::conj(x0), v);
                Some(right_mul_matrix_oct(&c))
            }
            FieldKind::Hopf { matrix } => Some(*matrix),
            FieldKind::WField { v } => {
                // W_v = (R_v - L_i R_v L_i) / 2
                let r = right_mul_matrix_oct(v);
                let l = left_mul_matrix_oct(&octonion::I);
                Some(r.add(&l.matmul(&r).matmul(&l).scale(-1.0)).scale(0.5))
            }
            FieldKind::Custom { .. } => None,
        }
    }

    /// `|<field(x), x>|`.
    pub fn tangency_defect(&self, x: &Octonion) -> f64 {
        octonion::dot(&self.eval(x), x).abs()
    }
}

/// `translational_field`.
pub fn translational_field(v: Octonion, x0: Octonion) -> Result<VectorFieldSpec> {
    VectorFieldSpec::translational(v, x0)
}

/// Outcome of [`is_hopf_multiple`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfVerdict {
    pub is_hopf: bool,
    /// `|M|_F / sqrt(8)`, the norm of `v` for `M = R_v`.
    pub scale: f64,
    /// `max |N + N^T|` for `N = M / scale`.
    pub skew_defect: f64,
    /// `max |N^2 + I|`.
    pub square_defect: f64,
}

/// Whether `matrix` is a multiple of a Hopf field matrix: `N = matrix / scale`
/// is skew with `N^2 = -I`.
pub fn is_hopf_multiple(matrix: &Matrix8) -> Result<HopfVerdict> {
    let scale = matrix.frobenius() / 8f64.sqrt();
    if scale == 0.0 {
        return Err(Error::ZeroField);
    }
    let n = matrix.scale(1.0 / scale);
    let skew_defect = n.skew_defect();
    let square_defect = n.matmul(&n).add(&Matrix8::identity()).max_abs();
    Ok(HopfVerdict {
        is_hopf: skew_defect <= 1e-10 && square_defect <= 1e-10,
        scale,
        skew_defect,
        square_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(v: [f64; 8]) -> Octonion {
        octonion::normalize(&v)
    }

    #[test]
    fn identity_translation() {
        let w = [0.0, 0.3, -1.0, 0.0, 2.0, 0.0, 0.5, 0.1];
        assert_eq!(translate_to_identity(&octonion::ONE, &w).unwrap(), w);
    }

    #[test]
    fn rejects_non_tangent() {
        let x = unit([1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            translate_to_identity(&x, &x),
            Err(Error::NotTangent(_))
        ));
        assert!(matches!(
            translate_to_identity(&[2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], &octonion::I),
            Err(Error::NotUnit(_))
        ));
    }

    #[test]
    fn translational_value_at_base() {
        let x0 = unit([0.5, -1.0, 0.3, 0.2, 0.0, 1.1, -0.4, 0.7]);
        let raw = [0.1, 0.7, -0.2, 0.9, 1.0, -0.3, 0.0, 0.4];
        let v = octonion::axpy(&raw, -octonion::dot(&raw, &x0), &x0);
        let f = translational_field(v, x0).unwrap();
        let got = f.eval(&x0);
        for k in 0..8 {
            assert!((got[k] - v[k]).abs() < 1e-13);
        }
        let m = f.matrix().unwrap();
        assert!(m.skew_defect() < 1e-13);
    }

    #[test]
    fn hopf_multiples() {
        let r1 = right_mul_matrix_oct(&octonion::I);
        let v = is_hopf_multiple(&r1).unwrap();
        assert!(v.is_hopf && (v.scale - 1.0).abs() < 1e-15);
        let r3 = right_mul_matrix_oct(&octonion::scale(&octonion::basis(3), 2.0));
        let v = is_hopf_multiple(&r3).unwrap();
        assert!(v.is_hopf && (v.scale - 2.0).abs() < 1e-15);
        assert!(!is_hopf_multiple(&Matrix8::identity()).unwrap().is_hopf);
        assert_eq!(is_hopf_multiple(&Matrix8::zeros()), Err(Error::ZeroField));
    }

    #[test]
    fn w_field_matrix_matches_evaluator() {
        let v = [0.0, 0.2, -0.5, 1.0, 0.3, 0.0, 0.7, -0.1];
        let f = VectorFieldSpec::w_field(v);
        let m = f.matrix().unwrap();
        let x = unit([0.3, 0.1, -0.7, 0.2, 0.5, 0.9, -0.2, 0.4]);
        let a = m.apply(&x);
        let b = f.eval(&x);
        for k in 0..8 {
            assert!((a[k] - b[k]).abs() < 1e-14);
        }
        assert!(f.tangency_defect(&x) < 1e-14);
    }

    #[test]
    fn hopf_constructor_requires_skew() {
        assert!(VectorFieldSpec::hopf(Matrix8::identity()).is_err());
        let f = VectorFieldSpec::hopf(left_mul_matrix_oct(&octonion::I)).unwrap();
        assert_eq!(f.eval(&octonion::ONE), octonion::I);
    }
}
