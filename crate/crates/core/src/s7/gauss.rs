//! The Gauss map `x^{-1} eta(x)` of a hypersurface of `S^7` and the residual
//! of its Laplacian identity.

use serde::{Deserialize, Serialize};

use crate::algebra::octonion::{self, Octonion};
use crate::error::{Error, Result};
use crate::geometry::chart::Chart;
use crate::geometry::frame::{frame_normal, grad_h_at, shape_at, Ambient, MetricData, TangentFrame};
use crate::geometry::stencil::StencilSpec;

/// Sign convention of a Laplacian identity `Lap gamma = s (c Gamma(grad H) +
/// (r + |A|^2) gamma)`: `Negative` is `s = -1`, `Positive` is `s = +1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVariant {
    Negative,
    Positive,
}

impl SignVariant {
    pub fn sign(self) -> f64 {
        match self {
            SignVariant::Negative => -1.0,
            SignVariant::Positive => 1.0,
        }
    }

    pub const BOTH: [SignVariant; 2] = [SignVariant::Negative, SignVariant::Positive];
}

/// Gauss map from a chart point and its unit normal.
pub fn gauss_from(x: &Octonion, normal: &Octonion) -> Octonion {
    octonion::mul(&octonion::conj(x), normal)
}

/// `gauss_map`: `gamma(u) = x(u)^{-1} eta(u)`, a unit imaginary octonion.
pub fn gauss_map(chart: &dyn Chart, u: &[f64], spec: &StencilSpec) -> Result<Octonion> {
    let frame = TangentFrame::build(chart, u, spec, Ambient::Sphere, false)?;
    let eta = frame_normal(&frame, &chart.normal_reference(u))?;
    Ok(gauss_from(&frame.x, &eta))
}

/// The terms of a Gauss-map Laplacian identity at one point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaplacianTerms {
    pub u: Vec<f64>,
    pub gamma: Vec<f64>,
    /// Componentwise Laplace-Beltrami of `gamma`.
    pub laplacian: Vec<f64>,
    /// The translated gradient of the mean curvature.
    pub gradient: Vec<f64>,
    pub mean_curvature: f64,
    pub a_norm_sq: f64,
    pub grad_h_norm: f64,
    /// Coefficient of the gradient term.
    pub gradient_coeff: f64,
    /// Constant added to `|A|^2` in the zeroth-order term.
    pub ricci: f64,
}

impl LaplacianTerms {
    /// `Lap gamma - s (c Gamma(grad H) + (r + |A|^2) gamma)`.
    pub fn residual(&self, variant: SignVariant) -> Vec<f64> {
        let s = variant.sign();
        let z = self.ricci + self.a_norm_sq;
        self.laplacian
            .iter()
            .zip(&self.gradient)
            .zip(&self.gamma)
            .map(|((l, g), y)| l - s * (self.gradient_coeff * g + z * y))
            .collect()
    }

    pub fn residual_norm(&self, variant: SignVariant) -> f64 {
        norm(&self.residual(variant))
    }

    /// `|Lap gamma - <Lap gamma, gamma> gamma|`, the tangential part of the
    /// Laplacian for a sphere-valued `gamma`.
    pub fn tangential_defect(&self) -> f64 {
        let g2: f64 = self.gamma.iter().map(|v| v * v).sum();
        let p: f64 = self.laplacian.iter().zip(&self.gamma).map(|(a, b)| a * b).sum::<f64>() / g2;
        norm(
            &self
                .laplacian
                .iter()
                .zip(&self.gamma)
                .map(|(l, y)| l - p * y)
                .collect::<Vec<_>>(),
        )
    }

    /// `|c Gamma(grad H)|`.
    pub fn gradient_term_norm(&self) -> f64 {
        self.gradient_coeff * norm(&self.gradient)
    }

    pub fn record(&self, variant: SignVariant) -> PointRecord {
        PointRecord {
            u: self.u.clone(),
            residual: self.residual_norm(variant),
            mean_curvature: self.mean_curvature,
            a_norm_sq: self.a_norm_sq,
            grad_h_norm: self.grad_h_norm,
            defect: self.tangential_defect(),
        }
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Per-point entry of a residual report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub u: Vec<f64>,
    pub residual: f64,
    #[serde(rename = "H")]
    pub mean_curvature: f64,
    #[serde(rename = "A_norm_sq")]
    pub a_norm_sq: f64,
    #[serde(rename = "gradH_norm")]
    pub grad_h_norm: f64,
    pub defect: f64,
}

/// All terms of the `S^7` identity
/// `Lap gamma = -6 Gamma(grad H) - (6 + |A|^2) gamma` at `u`.
pub fn s7_laplacian_terms(chart: &dyn Chart, u: &[f64], spec: &StencilSpec) -> Result<LaplacianTerms> {
    if chart.dim() != 6 {
        return Err(Error::ChartDimension {
            expected: 6,
            found: chart.dim(),
        });
    }
    let (frame, shape) = shape_at(chart, u, spec, Ambient::Sphere)?;
    let gamma = gauss_from(&frame.x, &shape.normal);
    let grad = grad_h_at(chart, &frame, spec)?;
    let gradient = gauss_from(&frame.x, &grad.vector);
    let metric = MetricData::from_frame(chart, frame, spec)?;
    let f = |w: &[f64]| Ok(gauss_map(chart, w, spec)?.to_vec());
    let laplacian = metric.laplacian_of(chart, &f, spec)?;
    Ok(LaplacianTerms {
        u: u.to_vec(),
        gamma: gamma.to_vec(),
        laplacian,
        gradient: gradient.to_vec(),
        mean_curvature: shape.mean_curvature,
        a_norm_sq: shape.a_norm_sq,
        grad_h_norm: grad.norm,
        gradient_coeff: 6.0,
        ricci: 6.0,
    })
}

/// `gauss_laplacian_residual`: the record of
/// `|Lap gamma + 6 Gamma(grad H) + (6 + |A|^2) gamma|` at `u`.
pub fn gauss_laplacian_residual(chart: &dyn Chart, u: &[f64], spec: &StencilSpec) -> Result<PointRecord> {
    Ok(s7_laplacian_terms(chart, u, spec)?.record(SignVariant::Negative))
}

/// `harmonicity_defect`: the largest tangential part of `Lap gamma` over the
/// sample points.
pub fn harmonicity_defect(chart: &dyn Chart, samples: &[Vec<f64>], spec: &StencilSpec) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    samples.iter().try_fold(0.0f64, |acc, u| {
        Ok(acc.max(s7_laplacian_terms(chart, u, spec)?.tangential_defect()))
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::geometry::catalog::{GeodesicSphere, PerturbedSphere, ProductTorus};
    use crate::geometry::chart::Flipped;

    const U: [f64; 6] = [1.1, 0.9, 1.7, 1.3, 2.0, 0.6];

    #[test]
    fn gauss_map_is_unit_imaginary() {
        let spec = StencilSpec::default();
        for c in [
            Box::new(GeodesicSphere::new(1.0)) as Box<dyn Chart>,
            Box::new(ProductTorus::new(2, 4, 0.4).unwrap()),
        ] {
            let g = gauss_map(c.as_ref(), &U, &spec).unwrap();
            assert!(g[0].abs() < 1e-13);
            assert!((octonion::norm(&g) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn equator_anchor() {
        let t = s7_laplacian_terms(&GeodesicSphere::equator(), &U, &StencilSpec::default()).unwrap();
        // Lap gamma = -6 gamma on the totally geodesic equator
        for (l, g) in t.laplacian.iter().zip(&t.gamma) {
            assert!((l + 6.0 * g).abs() < 1e-4);
        }
        assert!(t.residual_norm(SignVariant::Negative) < 1e-4);
        assert!(t.residual_norm(SignVariant::Positive) > 1.0);
    }

    #[test]
    fn geodesic_sphere_residual_small() {
        let c = GeodesicSphere::new(PI / 3.0);
        let t = s7_laplacian_terms(&c, &U, &StencilSpec::default()).unwrap();
        assert!((t.a_norm_sq - 2.0).abs() < 1e-12);
        assert!(t.residual_norm(SignVariant::Negative) < 1e-4);
        assert!(t.tangential_defect() < 1e-4);
    }

    #[test]
    fn orientation_does_not_change_residual() {
        let c = ProductTorus::new(3, 3, 0.6).unwrap();
        let spec = StencilSpec::default();
        let a = s7_laplacian_terms(&c, &U, &spec).unwrap();
        let b = s7_laplacian_terms(&Flipped(c), &U, &spec).unwrap();
        assert!((a.mean_curvature + b.mean_curvature).abs() < 1e-12);
        assert!(b.residual_norm(SignVariant::Negative) < 1e-4);
    }

    #[test]
    fn perturbed_sphere_has_gradient_term() {
        let c = PerturbedSphere::new(PI / 3.0, 0.05, 1).unwrap();
        let t = s7_laplacian_terms(&c, &U, &StencilSpec::default()).unwrap();
        assert!(t.grad_h_norm > 1e-3);
        assert!(t.residual_norm(SignVariant::Negative) < 1e-4);
        assert!(t.tangential_defect() > 10.0 * t.residual_norm(SignVariant::Negative));
    }

    #[test]
    fn empty_samples() {
        assert_eq!(
            harmonicity_defect(&GeodesicSphere::equator(), &[], &StencilSpec::default()),
            Err(Error::EmptySamples)
        );
    }
}
