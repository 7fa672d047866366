//! Geometry of hypersurfaces of `CP^3` computed on unit lifts to `S^7`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::hopf::{hopf_act, w_basis, w_gram};
use crate::algebra::octonion::{self, Octonion};
use crate::error::{Error, Result};
use crate::geometry::chart::{Chart, ChartDerivatives, ParamRange, ParametricMap};
use crate::geometry::frame::{frame_normal, grad_h_at, shape_at, Ambient, MetricData, TangentFrame};
use crate::geometry::stencil::StencilSpec;
use crate::jet::Scalar;
use crate::s7::gauss::{LaplacianTerms, SignVariant};

/// Default lower bound on `a0^2 + a1^2` away from the singular set.
pub const DEFAULT_DELTA: f64 = 0.1;

/// A vector at a representative `x` of a point of `CP^3`, orthogonal to `x`
/// and to the fibre direction `i x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorizontalVector {
    pub base: Octonion,
    pub vec: Octonion,
}

impl HorizontalVector {
    /// `max(|<vec, x>|, |<vec, i x>|)`.
    pub fn horizontality_defect(&self) -> f64 {
        let ix = octonion::mul(&octonion::I, &self.base);
        octonion::dot(&self.vec, &self.base)
            .abs()
            .max(octonion::dot(&self.vec, &ix).abs())
    }
}

fn check_unit(x: &Octonion) -> Result<()> {
    let n = octonion::norm(x);
    if (n - 1.0).abs() > 1e-10 {
        return Err(Error::NotUnit(n));
    }
    Ok(())
}

/// `cp3_horizontal_project`: removes the components of `w` along `x` and `i x`.
pub fn cp3_horizontal_project(x: &Octonion, w: &Octonion) -> Result<HorizontalVector> {
    check_unit(x)?;
    let ix = octonion::mul(&octonion::I, x);
    let mut v = octonion::axpy(w, -octonion::dot(w, x), x);
    v = octonion::axpy(&v, -octonion::dot(&v, &ix), &ix);
    Ok(HorizontalVector { base: *x, vec: v })
}

/// Fails inside the band `a0^2 + a1^2 < delta`, where `Z_1..Z_6` degenerate;
/// equivalently where their Gram determinant drops below `delta^4`.
pub fn singular_set_guard(x: &Octonion, delta: f64) -> Result<()> {
    let s = x[0] * x[0] + x[1] * x[1];
    let det = w_gram(x)?.det;
    if s < delta || det < delta.powi(4) {
        return Err(Error::SingularSet { value: s, delta });
    }
    Ok(())
}

/// `z_field`: `Z_n` at the representative `x`, `n` in `1..=6`, the horizontal
/// part of `W_{e_{n+1}}(x)`.
pub fn z_field(n: usize, x: &Octonion) -> Result<HorizontalVector> {
    if !(1..=6).contains(&n) {
        return Err(Error::Config(format!("Z index must be in 1..=6, got {n}")));
    }
    cp3_horizontal_project(x, &w_basis(x)[n - 1])
}

/// All six `Z_n` at `x`.
pub fn z_frame(x: &Octonion) -> Result<[Octonion; 6]> {
    check_unit(x)?;
    let w = w_basis(x);
    let mut out = [[0.0; 8]; 6];
    for (o, v) in out.iter_mut().zip(&w) {
        *o = cp3_horizontal_project(x, v)?.vec;
    }
    Ok(out)
}

fn gram(z: &[Octonion; 6]) -> DMatrix<f64> {
    DMatrix::from_fn(6, 6, |i, j| octonion::dot(&z[i], &z[j]))
}

/// Gram matrix of `Z_1..Z_6` at `x`.
pub fn z_gram(x: &Octonion) -> Result<DMatrix<f64>> {
    Ok(gram(&z_frame(x)?))
}

/// The two readings of `Z_v` for `v` in `R^6`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZvComparison {
    /// `v_1 Z_1 + ... + v_6 Z_6`.
    pub combination: Octonion,
    /// The horizontal `w` with `(<w, Z_1>, ..., <w, Z_6>) = v`, i.e. the
    /// combination with coefficients `G^{-1} v`.
    pub inverse: Octonion,
    /// `|combination - inverse|`.
    pub difference: f64,
    /// `max |G - I|` for the Gram matrix `G` of `Z_1..Z_6`.
    pub gram_deviation: f64,
}

/// Evaluates both definitions of `Z_v` at `x`.
pub fn z_v(v: &[f64; 6], x: &Octonion, delta: f64) -> Result<ZvComparison> {
    singular_set_guard(x, delta)?;
    let z = z_frame(x)?;
    let g = gram(&z);
    let combine = |c: &[f64]| {
        c.iter()
            .zip(&z)
            .fold([0.0; 8], |acc, (k, zn)| octonion::axpy(&acc, *k, zn))
    };
    let combination = combine(v);
    let coeffs = g
        .clone()
        .cholesky()
        .ok_or(Error::SingularSet {
            value: x[0] * x[0] + x[1] * x[1],
            delta,
        })?
        .solve(&DVector::from_column_slice(v));
    let inverse = combine(coeffs.as_slice());
    Ok(ZvComparison {
        difference: octonion::norm(&octonion::sub(&combination, &inverse)),
        gram_deviation: (&g - DMatrix::identity(6, 6)).amax(),
        combination,
        inverse,
    })
}

/// `(<w, Z_1(x)>, ..., <w, Z_6(x)>)`.
pub fn cp3_translate(x: &Octonion, w: &Octonion) -> [f64; 6] {
    let z = w_basis(x);
    std::array::from_fn(|n| octonion::dot(w, &z[n]))
}

/// Gauss map of a `CP^3` hypersurface at one lift point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cp3Gauss {
    /// `(<nu, Z_1>, ..., <nu, Z_6>)`.
    pub raw: [f64; 6],
    /// Coefficients of `nu` in the basis `Z_1..Z_6`: `G^{-1} raw`.
    pub corrected: [f64; 6],
    pub gram_det: f64,
    pub normal: Octonion,
}

/// `cp3_gauss_map` at `u` of a lift chart.
pub fn cp3_gauss_map(chart: &dyn Chart, u: &[f64], spec: &StencilSpec, delta: f64) -> Result<Cp3Gauss> {
    let frame = TangentFrame::build(chart, u, spec, Ambient::ProjectiveLift, false)?;
    singular_set_guard(&frame.x, delta)?;
    let normal = frame_normal(&frame, &chart.normal_reference(u))?;
    cp3_gauss_from(&frame.x, &normal)
}

/// The `CP^3` Gauss map for a representative `x` and horizontal unit normal.
pub fn cp3_gauss_from(x: &Octonion, normal: &Octonion) -> Result<Cp3Gauss> {
    let raw = cp3_translate(x, normal);
    let g = gram(&z_frame(x)?);
    let gram_det = g.determinant();
    let corrected = g
        .cholesky()
        .map(|c| c.solve(&DVector::from_column_slice(&raw)))
        .map(|v| std::array::from_fn(|k| v[k]))
        .unwrap_or([f64::NAN; 6]);
    Ok(Cp3Gauss {
        raw,
        corrected,
        gram_det,
        normal: *normal,
    })
}

/// All terms of the `CP^3` Laplacian identity at `u`: `gamma` is the raw Gauss
/// map, the gradient term is the translated gradient of `H`, with coefficient
/// 5 and constant 8.
pub fn cp3_laplacian_terms(
    chart: &dyn Chart,
    u: &[f64],
    spec: &StencilSpec,
    delta: f64,
) -> Result<LaplacianTerms> {
    if chart.dim() != 5 {
        return Err(Error::ChartDimension {
            expected: 5,
            found: chart.dim(),
        });
    }
    let (frame, shape) = shape_at(chart, u, spec, Ambient::ProjectiveLift)?;
    singular_set_guard(&frame.x, delta)?;
    let gamma = cp3_translate(&frame.x, &shape.normal);
    let grad = grad_h_at(chart, &frame, spec)?;
    let gradient = cp3_translate(&frame.x, &grad.vector);
    let metric = MetricData::from_frame(chart, frame, spec)?;
    let f = |w: &[f64]| Ok(cp3_gauss_map(chart, w, spec, delta)?.raw.to_vec());
    let laplacian = metric.laplacian_of(chart, &f, spec)?;
    Ok(LaplacianTerms {
        u: u.to_vec(),
        gamma: gamma.to_vec(),
        laplacian,
        gradient: gradient.to_vec(),
        mean_curvature: shape.mean_curvature,
        a_norm_sq: shape.a_norm_sq,
        grad_h_norm: grad.norm,
        gradient_coeff: 5.0,
        ricci: 8.0,
    })
}

/// A lift chart composed with a constant rotation `x -> e^{i theta} x`: the
/// same `CP^3` hypersurface through other representatives.
pub struct HopfRotated<'a> {
    pub inner: &'a dyn Chart,
    pub theta: f64,
}

impl Chart for HopfRotated<'_> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn params(&self) -> &[ParamRange] {
        self.inner.params()
    }
    fn point(&self, u: &[f64]) -> Octonion {
        hopf_act(self.theta, &self.inner.point(u))
    }
    fn analytic(&self, u: &[f64]) -> Option<ChartDerivatives> {
        let d = self.inner.analytic(u)?;
        let r = |v: &Octonion| hopf_act(self.theta, v);
        Some(ChartDerivatives {
            x: r(&d.x),
            d1: d.d1.iter().map(r).collect(),
            d2: d.d2.iter().map(|row| row.iter().map(r).collect()).collect(),
        })
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        hopf_act(self.theta, &self.inner.normal_reference(u))
    }
    fn label(&self) -> String {
        format!("{} (rotated by {})", self.inner.label(), self.theta)
    }
    fn sample_box(&self) -> Vec<ParamRange> {
        self.inner.sample_box()
    }
}

/// A lift with a parameter-dependent phase `e^{i (theta0 + <slopes, u>)} f(u)`.
/// Differs from the inner lift by a non-constant gauge.
pub struct PhaseShifted<M> {
    pub inner: M,
    pub theta0: f64,
    pub slopes: Vec<f64>,
}

impl<M: ParametricMap> ParametricMap for PhaseShifted<M> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn params(&self) -> &[ParamRange] {
        self.inner.params()
    }
    fn eval<S: Scalar>(&self, u: &[S]) -> [S; 8] {
        let theta = self
            .slopes
            .iter()
            .zip(u)
            .fold(S::constant(self.theta0), |acc, (c, v)| acc + *v * *c);
        let f = self.inner.eval(u);
        let (c, s) = (theta.cos(), theta.sin());
        // i f, from the integer matrix of left multiplication by e1
        let l = crate::cp3::hopf::left_i_matrix();
        std::array::from_fn(|r| {
            let mut acc = f[r] * c;
            for (k, &m) in l.0[r].iter().enumerate() {
                if m != 0 {
                    acc = acc + f[k] * s * m as f64;
                }
            }
            acc
        })
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        let theta = self.theta0 + self.slopes.iter().zip(u).map(|(c, v)| c * v).sum::<f64>();
        hopf_act(theta, &self.inner.normal_reference(u))
    }
    fn label(&self) -> String {
        format!("{} (phase shifted)", self.inner.label())
    }
}

/// Largest differences of `gamma`, `H` and `|A|^2` between a lift and its
/// rotations by the given angles, over the sample points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeReport {
    pub gamma: f64,
    pub mean_curvature: f64,
    pub a_norm_sq: f64,
}

impl GaugeReport {
    pub fn max(&self) -> f64 {
        self.gamma.max(self.mean_curvature).max(self.a_norm_sq)
    }
}

/// Checks by sampling the circle action that the `CP^3` quantities computed
/// from a lift do not depend on the representative.
pub fn lift_gauge_defect(
    chart: &dyn Chart,
    samples: &[Vec<f64>],
    angles: &[f64],
    spec: &StencilSpec,
) -> Result<GaugeReport> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut rep = GaugeReport {
        gamma: 0.0,
        mean_curvature: 0.0,
        a_norm_sq: 0.0,
    };
    for u in samples {
        let (f0, s0) = shape_at(chart, u, spec, Ambient::ProjectiveLift)?;
        let g0 = cp3_translate(&f0.x, &s0.normal);
        for &t in angles {
            let rotated = HopfRotated { inner: chart, theta: t };
            let (f1, s1) = shape_at(&rotated, u, spec, Ambient::ProjectiveLift)?;
            let g1 = cp3_translate(&f1.x, &s1.normal);
            let dg = g0.iter().zip(&g1).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            rep.gamma = rep.gamma.max(dg);
            rep.mean_curvature = rep.mean_curvature.max((s0.mean_curvature - s1.mean_curvature).abs());
            rep.a_norm_sq = rep.a_norm_sq.max((s0.a_norm_sq - s1.a_norm_sq).abs());
        }
    }
    Ok(rep)
}

/// Largest change of either residual variant of the `CP^3` identity when the
/// lift is rotated by the given angles.
pub fn residual_gauge_defect(
    chart: &dyn Chart,
    samples: &[Vec<f64>],
    angles: &[f64],
    spec: &StencilSpec,
    delta: f64,
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut worst = 0.0f64;
    for u in samples {
        let t0 = cp3_laplacian_terms(chart, u, spec, delta)?;
        for &t in angles {
            let rotated = HopfRotated { inner: chart, theta: t };
            let t1 = cp3_laplacian_terms(&rotated, u, spec, delta)?;
            for v in SignVariant::BOTH {
                let d = t0
                    .residual(v)
                    .iter()
                    .zip(t1.residual(v))
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                worst = worst.max(d);
            }
        }
    }
    Ok(worst)
}

/// Fails with [`Error::NotHopfInvariant`] when [`lift_gauge_defect`] exceeds `tol`.
pub fn check_lift_invariance(
    chart: &dyn Chart,
    samples: &[Vec<f64>],
    spec: &StencilSpec,
    tol: f64,
) -> Result<GaugeReport> {
    let angles = [0.7, 2.1, 4.4];
    let rep = lift_gauge_defect(chart, samples, &angles, spec)?;
    if !(rep.max() <= tol) {
        return Err(Error::NotHopfInvariant(format!(
            "quantities change by {:e} under the circle action (tolerance {tol:e})",
            rep.max()
        )));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog::ProductTorusLift;

    const U: [f64; 5] = [0.5, 1.0, 1.2, 2.0, 3.0];

    #[test]
    fn projection_kills_vertical_and_radial() {
        let x = octonion::normalize(&[0.3, 0.5, -0.2, 0.1, 0.7, 0.0, -0.4, 0.2]);
        let ix = octonion::mul(&octonion::I, &x);
        for w in [x, ix] {
            let p = cp3_horizontal_project(&x, &w).unwrap();
            assert!(octonion::norm(&p.vec) < 1e-15);
        }
        let w = [0.1, -0.4, 0.9, 0.3, 0.0, 0.5, 0.2, -0.7];
        let p = cp3_horizontal_project(&x, &w).unwrap();
        assert!(p.horizontality_defect() < 1e-15);
        let q = cp3_horizontal_project(&x, &p.vec).unwrap();
        assert!(octonion::norm(&octonion::sub(&p.vec, &q.vec)) < 1e-14);
    }

    #[test]
    fn z_at_identity_is_standard() {
        for n in 1..=6 {
            assert_eq!(z_field(n, &octonion::ONE).unwrap().vec, octonion::basis(n + 1));
        }
        assert!(z_field(0, &octonion::ONE).is_err());
        let g = cp3_gauss_from(&octonion::ONE, &octonion::basis(2)).unwrap();
        assert_eq!(g.raw, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn z_v_readings_agree_at_identity_only() {
        let v = [1.0, -0.5, 0.2, 0.0, 0.3, 0.8];
        let a = z_v(&v, &octonion::ONE, 0.1).unwrap();
        assert!(a.difference < 1e-15 && a.gram_deviation == 0.0);
        let x = octonion::normalize(&[0.5, 0.3, 0.4, -0.2, 0.6, 0.1, -0.3, 0.2]);
        let b = z_v(&v, &x, 0.1).unwrap();
        assert!(b.difference > 1e-3);
        let back = cp3_translate(&x, &b.inverse);
        for k in 0..6 {
            assert!((back[k] - v[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_band_is_rejected() {
        let x = octonion::normalize(&[0.1, 0.1, 0.5, 0.5, 0.5, 0.5, 0.0, 0.0]);
        assert!(matches!(
            singular_set_guard(&x, 0.1),
            Err(Error::SingularSet { .. })
        ));
        assert!(singular_set_guard(&octonion::ONE, 0.1).is_ok());
    }

    #[test]
    fn torus_lift_curvature() {
        let c = ProductTorusLift::new(0.6, 0.1).unwrap();
        let (_, s) = shape_at(&c, &U, &StencilSpec::default(), Ambient::ProjectiveLift).unwrap();
        // 5 H = 6 H_torus = 3 (a/b - b/a)
        let (a, b) = (0.6, 0.8);
        let expected = 3.0 * (a / b - b / a) / 5.0;
        assert!((s.mean_curvature.abs() - f64::abs(expected)).abs() < 1e-12, "{}", s.mean_curvature);
    }

    #[test]
    fn gauge_invariance() {
        let c = ProductTorusLift::new(0.6, 0.1).unwrap();
        let spec = StencilSpec::default();
        let rep = check_lift_invariance(&c, &[U.to_vec()], &spec, 1e-10).unwrap();
        assert!(rep.max() < 1e-10);
        let shifted = PhaseShifted {
            inner: c.clone(),
            theta0: 0.3,
            slopes: vec![0.2, -0.1, 0.05, 0.0, 0.4],
        };
        let (_, s0) = shape_at(&c, &U, &spec, Ambient::ProjectiveLift).unwrap();
        let (_, s1) = shape_at(&shifted, &U, &spec, Ambient::ProjectiveLift).unwrap();
        assert!((s0.mean_curvature - s1.mean_curvature).abs() < 1e-12);
        assert!((s0.a_norm_sq - s1.a_norm_sq).abs() < 1e-12);
    }

    #[test]
    fn laplacian_terms_are_finite() {
        let c = ProductTorusLift::new(0.6, 0.1).unwrap();
        let t = cp3_laplacian_terms(&c, &U, &StencilSpec::default(), 0.1).unwrap();
        let neg = t.residual_norm(SignVariant::Negative);
        let pos = t.residual_norm(SignVariant::Positive);
        assert!(neg.is_finite() && pos.is_finite());
        assert!(t.grad_h_norm < 1e-6);
    }
}
