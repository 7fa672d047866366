//! Point-wise extrinsic geometry: tangent frame, unit normal, shape operator,
//! gradient of the mean curvature and the Laplace-Beltrami operator.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::chart::Chart;
use super::stencil::{chart_derivatives, Differences, Stencil, StencilSpec};
use crate::algebra::octonion::{self, Octonion};
use crate::error::{Error, Result};

/// Tolerance on `|x| = 1` for chart points.
pub const UNIT_TOL: f64 = 1e-10;
/// Smallest admissible singular value of the chart Jacobian.
pub const RANK_TOL: f64 = 1e-8;

/// The space the chart's hypersurface lives in.
///
/// `ProjectiveLift` charts are unit lifts `f: U -> S^7` of hypersurfaces of
/// `CP^3 = S^7 / S^1`, where the circle acts by left multiplication with
/// `e^{i t}`. Their geometry is computed on horizontal parts: tangents and
/// normal are taken orthogonal to the fibre direction `i f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ambient {
    Sphere,
    ProjectiveLift,
}

impl Ambient {
    /// Parameter count of a hypersurface chart.
    pub fn hypersurface_dim(self) -> usize {
        match self {
            Ambient::Sphere => 6,
            Ambient::ProjectiveLift => 5,
        }
    }
}

/// Chart partials and the induced metric at one parameter point.
#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub u: Vec<f64>,
    pub x: Octonion,
    /// Raw chart partials `d x / d u_i`.
    pub partials: Vec<Octonion>,
    /// Tangent vectors representing the coordinate fields: the partials on
    /// `S^7`, their horizontal parts for projective lifts.
    pub tangents: Vec<Octonion>,
    /// Fibre components `<d_i x, i x>` of the partials (zero on `S^7`).
    pub vertical: Vec<f64>,
    pub second: Option<Vec<Vec<Octonion>>>,
    pub g: DMatrix<f64>,
    pub g_inv: DMatrix<f64>,
    pub ambient: Ambient,
    pub analytic: bool,
}

impl TangentFrame {
    pub fn build(
        chart: &dyn Chart,
        u: &[f64],
        spec: &StencilSpec,
        ambient: Ambient,
        second: bool,
    ) -> Result<Self> {
        spec.validate()?;
        let analytic = chart.analytic(u).is_some();
        let d = chart_derivatives(chart, u, spec, second)?;
        let norm = octonion::norm(&d.x);
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit(norm));
        }
        let n = d.d1.len();
        let (tangents, vertical) = match ambient {
            Ambient::Sphere => (d.d1.clone(), vec![0.0; n]),
            Ambient::ProjectiveLift => {
                let ix = octonion::mul(&octonion::I, &d.x);
                let alpha: Vec<f64> = d.d1.iter().map(|p| octonion::dot(p, &ix)).collect();
                let t = d
                    .d1
                    .iter()
                    .zip(&alpha)
                    .map(|(p, a)| octonion::axpy(p, -a, &ix))
                    .collect();
                (t, alpha)
            }
        };
        let g = DMatrix::from_fn(n, n, |i, j| octonion::dot(&tangents[i], &tangents[j]));
        let eig = SymmetricEigen::new(g.clone());
        let lambda_min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        let sigma_min = lambda_min.max(0.0).sqrt();
        if !(sigma_min > RANK_TOL) {
            return Err(Error::DegenerateChart {
                u: u.to_vec(),
                sigma_min,
            });
        }
        let g_inv = invert_spd(&g).ok_or(Error::DegenerateChart {
            u: u.to_vec(),
            sigma_min,
        })?;
        Ok(Self {
            u: u.to_vec(),
            x: d.x,
            partials: d.d1,
            tangents,
            vertical,
            second: if second { Some(d.d2) } else { None },
            g,
            g_inv,
            ambient,
            analytic,
        })
    }

    pub fn dim(&self) -> usize {
        self.partials.len()
    }

    /// Pushes chart-coordinate components forward to a vector in `R^8`.
    pub fn push_forward(&self, coords: &[f64]) -> Octonion {
        let mut v = [0.0; 8];
        for (c, t) in coords.iter().zip(&self.tangents) {
            v = octonion::axpy(&v, *c, t);
        }
        v
    }

    /// First-kind Christoffel symbols `[i][j][l]` from exact second partials.
    fn christoffel_from_second(&self) -> Option<Vec<Vec<Vec<f64>>>> {
        let d2 = self.second.as_ref()?;
        let n = self.dim();
        let ix_partials: Vec<Octonion> = self
            .partials
            .iter()
            .map(|p| octonion::mul(&octonion::I, p))
            .collect();
        let i_tangents: Vec<Octonion> = self
            .tangents
            .iter()
            .map(|t| octonion::mul(&octonion::I, t))
            .collect();
        let mut out = vec![vec![vec![0.0; n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let t = &self.tangents[l];
                    let mut v = octonion::dot(&d2[i][j], t);
                    if self.ambient == Ambient::ProjectiveLift {
                        v -= self.vertical[j] * octonion::dot(&ix_partials[i], t);
                        v -= self.vertical[i] * octonion::dot(&i_tangents[j], t);
                    }
                    out[i][j][l] = v;
                }
            }
        }
        Some(out)
    }
}

/// `chart_tangent_frame`: partials and metric of a hypersurface of `S^7`.
pub fn chart_tangent_frame(
    chart: &dyn Chart,
    u: &[f64],
    spec: &StencilSpec,
) -> Result<TangentFrame> {
    TangentFrame::build(chart, u, spec, Ambient::Sphere, false)
}

fn invert_spd(g: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let inv = g.clone().cholesky()?.inverse();
    Some((&inv + inv.transpose()) * 0.5)
}

/// Orthonormalizes `vs` in place by modified Gram-Schmidt, applied twice.
fn orthonormalize(vs: &[Octonion]) -> Vec<Octonion> {
    let mut q: Vec<Octonion> = Vec::with_capacity(vs.len());
    for v in vs {
        let mut w = *v;
        for _ in 0..2 {
            for b in &q {
                w = octonion::axpy(&w, -octonion::dot(&w, b), b);
            }
        }
        let n = octonion::norm(&w);
        if n > 1e-12 {
            q.push(octonion::scale(&w, 1.0 / n));
        }
    }
    q
}

/// The unit normal of the hypersurface at the frame's point, tangent to `S^7`
/// (and horizontal for lifts), oriented so that `<normal, reference> > 0`.
pub fn frame_normal(frame: &TangentFrame, reference: &Octonion) -> Result<Octonion> {
    let expected = frame.ambient.hypersurface_dim();
    if frame.dim() != expected {
        return Err(Error::ChartDimension {
            expected,
            found: frame.dim(),
        });
    }
    let mut constraints = vec![frame.x];
    if frame.ambient == Ambient::ProjectiveLift {
        constraints.push(octonion::mul(&octonion::I, &frame.x));
    }
    constraints.extend_from_slice(&frame.tangents);
    let q = orthonormalize(&constraints);
    if q.len() != 7 {
        return Err(Error::DegenerateChart {
            u: frame.u.clone(),
            sigma_min: 0.0,
        });
    }
    // The complement is one-dimensional; take the basis vector with the
    // largest residual to avoid cancellation.
    let mut best = [0.0; 8];
    let mut best_norm = -1.0;
    for k in 0..8 {
        let mut w = octonion::basis(k);
        for _ in 0..2 {
            for b in &q {
                w = octonion::axpy(&w, -octonion::dot(&w, b), b);
            }
        }
        let n = octonion::norm(&w);
        if n > best_norm {
            best_norm = n;
            best = w;
        }
    }
    let normal = octonion::scale(&best, 1.0 / best_norm);
    let r_norm = octonion::norm(reference);
    let s = octonion::dot(&normal, reference);
    if !(s.abs() > 1e-8 * r_norm.max(f64::MIN_POSITIVE)) {
        return Err(Error::AmbiguousNormal(s.abs()));
    }
    Ok(if s > 0.0 {
        normal
    } else {
        octonion::scale(&normal, -1.0)
    })
}

/// `unit_normal` of a hypersurface chart of `S^7`.
pub fn unit_normal(chart: &dyn Chart, u: &[f64], spec: &StencilSpec) -> Result<Octonion> {
    let frame = chart_tangent_frame(chart, u, spec)?;
    frame_normal(&frame, &chart.normal_reference(u))
}

/// First and second fundamental forms and the curvature invariants derived
/// from them at one point.
#[derive(Debug, Clone)]
pub struct ShapeData {
    pub normal: Octonion,
    pub g: DMatrix<f64>,
    pub g_inv: DMatrix<f64>,
    pub h: DMatrix<f64>,
    /// Shape operator `g^{-1} h`.
    pub s: DMatrix<f64>,
    /// Averaged mean curvature `trace(S) / dim`.
    pub mean_curvature: f64,
    pub a_norm_sq: f64,
    /// Eigenvalues of `S`, ascending.
    pub principal_curvatures: Vec<f64>,
}

impl ShapeData {
    pub fn from_frame(frame: &TangentFrame, normal: Octonion) -> Result<Self> {
        let d2 = frame.second.as_ref().ok_or_else(|| {
            Error::InvalidStencil("shape data needs second partials".into())
        })?;
        let n = frame.dim();
        let h = match frame.ambient {
            Ambient::Sphere => DMatrix::from_fn(n, n, |i, j| octonion::dot(&d2[i][j], &normal)),
            Ambient::ProjectiveLift => {
                let inu: Vec<f64> = frame
                    .partials
                    .iter()
                    .map(|p| octonion::dot(&octonion::mul(&octonion::I, p), &normal))
                    .collect();
                DMatrix::from_fn(n, n, |i, j| {
                    octonion::dot(&d2[i][j], &normal)
                        - frame.vertical[j] * inu[i]
                        - frame.vertical[i] * inu[j]
                })
            }
        };
        let h = (&h + h.transpose()) * 0.5;
        let s = &frame.g_inv * &h;
        let mean_curvature = s.trace() / n as f64;
        let a_norm_sq = (&s * &s).trace();
        let l = frame
            .g
            .clone()
            .cholesky()
            .ok_or_else(|| Error::DegenerateChart {
                u: frame.u.clone(),
                sigma_min: 0.0,
            })?
            .l();
        let l_inv = l
            .try_inverse()
            .ok_or_else(|| Error::DegenerateChart {
                u: frame.u.clone(),
                sigma_min: 0.0,
            })?;
        let sym = &l_inv * &h * l_inv.transpose();
        let sym = (&sym + sym.transpose()) * 0.5;
        let mut principal_curvatures: Vec<f64> =
            SymmetricEigen::new(sym).eigenvalues.iter().cloned().collect();
        principal_curvatures.sort_by(f64::total_cmp);
        Ok(Self {
            normal,
            g: frame.g.clone(),
            g_inv: frame.g_inv.clone(),
            h,
            s,
            mean_curvature,
            a_norm_sq,
            principal_curvatures,
        })
    }

    /// `max |g S - (g S)^T|`; zero up to rounding since `g S = h`.
    pub fn self_adjoint_defect(&self) -> f64 {
        let gs = &self.g * &self.s;
        (&gs - gs.transpose()).amax()
    }
}

/// Second-order frame, normal and shape data at `u`.
pub fn shape_at(
    chart: &dyn Chart,
    u: &[f64],
    spec: &StencilSpec,
    ambient: Ambient,
) -> Result<(TangentFrame, ShapeData)> {
    let frame = TangentFrame::build(chart, u, spec, ambient, true)?;
    let normal = frame_normal(&frame, &chart.normal_reference(u))?;
    let shape = ShapeData::from_frame(&frame, normal)?;
    Ok((frame, shape))
}

/// `shape_data` of a hypersurface chart of `S^7`.
pub fn shape_data(chart: &dyn Chart, u: &[f64], spec: &StencilSpec) -> Result<ShapeData> {
    Ok(shape_at(chart, u, spec, Ambient::Sphere)?.1)
}

/// Gradient of the mean curvature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradH {
    /// Components in chart coordinates, `g^{-1} dH`.
    pub coords: Vec<f64>,
    /// The same vector in `R^8`.
    pub vector: Octonion,
    pub norm: f64,
    /// Coordinate partials `dH / du_i`.
    pub differential: Vec<f64>,
}

/// Gradient of `H` at the frame's point, differencing `H` with the outer step.
pub fn grad_h_at(
    chart: &dyn Chart,
    frame: &TangentFrame,
    spec: &StencilSpec,
) -> Result<GradH> {
    let step = spec.outer_step(frame.analytic);
    let stencil = Stencil::new(*spec, step, chart.params());
    let ambient = frame.ambient;
    let f = |w: &[f64]| -> Result<Vec<f64>> {
        Ok(vec![shape_at(chart, w, spec, ambient)?.1.mean_curvature])
    };
    let dh: Vec<f64> = stencil
        .gradient(&f, &frame.u)?
        .into_iter()
        .map(|v| v[0])
        .collect();
    let coords: Vec<f64> = (&frame.g_inv * DVector::from_column_slice(&dh))
        .iter()
        .cloned()
        .collect();
    let norm = dh
        .iter()
        .zip(&coords)
        .map(|(a, b)| a * b)
        .sum::<f64>()
        .max(0.0)
        .sqrt();
    Ok(GradH {
        vector: frame.push_forward(&coords),
        coords,
        norm,
        differential: dh,
    })
}

/// `grad_H` of a hypersurface chart of `S^7`.
pub fn grad_h(chart: &dyn Chart, u: &[f64], spec: &StencilSpec) -> Result<GradH> {
    let frame = TangentFrame::build(chart, u, spec, Ambient::Sphere, false)?;
    grad_h_at(chart, &frame, spec)
}

/// Metric quantities needed by the Laplace-Beltrami operator at one point.
#[derive(Debug, Clone)]
pub struct MetricData {
    pub frame: TangentFrame,
    /// `g^{ij} Gamma^k_{ij}` for each `k`.
    pub christoffel_trace: Vec<f64>,
}

impl MetricData {
    /// Uses exact second partials for the Christoffel symbols when the chart
    /// has them, otherwise differences the metric with the outer step.
    pub fn new(
        chart: &dyn Chart,
        u: &[f64],
        spec: &StencilSpec,
        ambient: Ambient,
    ) -> Result<Self> {
        let analytic = chart.analytic(u).is_some();
        let frame = TangentFrame::build(chart, u, spec, ambient, analytic)?;
        Self::from_frame(chart, frame, spec)
    }

    pub fn from_frame(chart: &dyn Chart, frame: TangentFrame, spec: &StencilSpec) -> Result<Self> {
        let n = frame.dim();
        let first_kind = match (frame.analytic, frame.christoffel_from_second()) {
            (true, Some(c)) => c,
            _ => {
                let stencil = Stencil::new(*spec, spec.outer_step(frame.analytic), chart.params());
                let ambient = frame.ambient;
                let f = |w: &[f64]| -> Result<Vec<f64>> {
                    let fr = TangentFrame::build(chart, w, spec, ambient, false)?;
                    Ok(fr.g.iter().cloned().collect())
                };
                // dg[k][i + n j] = d_k g_ij (column-major flattening)
                let dg = stencil.gradient(&f, &frame.u)?;
                let mut c = vec![vec![vec![0.0; n]; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        for l in 0..n {
                            c[i][j][l] = 0.5
                                * (dg[i][j + n * l] + dg[j][i + n * l] - dg[l][i + n * j]);
                        }
                    }
                }
                c
            }
        };
        let gi = &frame.g_inv;
        let mut christoffel_trace = vec![0.0; n];
        for (k, ck) in christoffel_trace.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    for l in 0..n {
                        acc += gi[(i, j)] * gi[(k, l)] * first_kind[i][j][l];
                    }
                }
            }
            *ck = acc;
        }
        Ok(Self {
            frame,
            christoffel_trace,
        })
    }

    /// `g^{ij} d_i d_j f - g^{ij} Gamma^k_{ij} d_k f`, componentwise.
    pub fn laplacian(&self, d: &Differences) -> Vec<f64> {
        let n = self.frame.dim();
        let gi = &self.frame.g_inv;
        (0..d.value.len())
            .map(|c| {
                let mut acc = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        acc += gi[(i, j)] * d.d2[i][j][c];
                    }
                    acc -= self.christoffel_trace[i] * d.d1[i][c];
                }
                acc
            })
            .collect()
    }

    /// Laplace-Beltrami of a vector-valued function of the chart parameters,
    /// differenced with the outer step.
    pub fn laplacian_of<F>(&self, chart: &dyn Chart, f: &F, spec: &StencilSpec) -> Result<Vec<f64>>
    where
        F: Fn(&[f64]) -> Result<Vec<f64>>,
    {
        let stencil = Stencil::new(*spec, spec.outer_step(self.frame.analytic), chart.params());
        let d = stencil.differences(f, &self.frame.u)?;
        Ok(self.laplacian(&d))
    }
}

/// `laplace_beltrami`: the Laplace-Beltrami operator (negative spectrum) of a
/// scalar function of the chart parameters, with the metric induced from `R^8`.
pub fn laplace_beltrami<F>(chart: &dyn Chart, u: &[f64], f: F, spec: &StencilSpec) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let m = MetricData::new(chart, u, spec, Ambient::Sphere)?;
    let lifted = |w: &[f64]| Ok(vec![f(w)]);
    Ok(m.laplacian_of(chart, &lifted, spec)?[0])
}

/// One row of a shape-data dump.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeSample {
    pub u: Vec<f64>,
    pub mean_curvature: f64,
    pub a_norm_sq: f64,
    pub grad_h_norm: f64,
}

/// CSV with columns `u0..u{n-1},H,A_norm_sq,gradH_norm`.
pub fn shape_samples_csv(rows: &[ShapeSample]) -> String {
    let mut s = String::new();
    let n = rows.first().map_or(0, |r| r.u.len());
    let mut header: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
    header.extend(["H", "A_norm_sq", "gradH_norm"].map(String::from));
    let _ = writeln!(s, "{}", header.join(","));
    for r in rows {
        let mut cols: Vec<String> = r.u.iter().map(|v| format!("{v}")).collect();
        cols.push(format!("{}", r.mean_curvature));
        cols.push(format!("{}", r.a_norm_sq));
        cols.push(format!("{}", r.grad_h_norm));
        let _ = writeln!(s, "{}", cols.join(","));
    }
    s
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::geometry::catalog::{FlatTorus, GeodesicSphere, ProductTorus};
    use crate::geometry::chart::{Flipped, NumericOnly};

    const U: [f64; 6] = [1.1, 0.9, 1.7, 1.3, 2.0, 0.6];

    #[test]
    fn equator_is_totally_geodesic() {
        let s = shape_data(&GeodesicSphere::equator(), &U, &StencilSpec::default()).unwrap();
        assert!(s.mean_curvature.abs() < 1e-14);
        assert!(s.a_norm_sq < 1e-14);
    }

    #[test]
    fn geodesic_sphere_is_umbilic() {
        let t0 = PI / 3.0;
        let c = GeodesicSphere::new(t0);
        let s = shape_data(&c, &U, &StencilSpec::default()).unwrap();
        let k = 1.0 / t0.tan();
        assert!((s.mean_curvature - k).abs() < 1e-12);
        assert!((s.a_norm_sq - 2.0).abs() < 1e-12);
        for p in &s.principal_curvatures {
            assert!((p - k).abs() < 1e-12);
        }
        assert!(s.self_adjoint_defect() < 1e-12);
    }

    #[test]
    fn normal_is_orthogonal_and_oriented() {
        let c = GeodesicSphere::new(1.0);
        let spec = StencilSpec::default();
        let frame = chart_tangent_frame(&c, &U, &spec).unwrap();
        let eta = unit_normal(&c, &U, &spec).unwrap();
        assert!(octonion::dot(&eta, &frame.x).abs() < 1e-12);
        for t in &frame.partials {
            assert!(octonion::dot(&eta, t).abs() < 1e-12);
        }
        assert!((octonion::norm(&eta) - 1.0).abs() < 1e-14);
        // points towards 1
        assert!(eta[0] > 0.0);
    }

    #[test]
    fn flipping_negates_curvature_only() {
        let spec = StencilSpec::default();
        let c = ProductTorus::new(3, 3, 0.6).unwrap();
        let a = shape_data(&c, &U, &spec).unwrap();
        let b = shape_data(&Flipped(c), &U, &spec).unwrap();
        assert!((a.mean_curvature + b.mean_curvature).abs() < 1e-13);
        assert!((a.a_norm_sq - b.a_norm_sq).abs() < 1e-12);
        assert_eq!(a.g, b.g);
    }

    #[test]
    fn numeric_partials_track_exact_ones() {
        let spec = StencilSpec::default();
        let c = ProductTorus::new(3, 3, 0.6).unwrap();
        let a = shape_data(&c, &U, &spec).unwrap();
        let b = shape_data(&NumericOnly(c), &U, &spec).unwrap();
        assert!((a.mean_curvature - b.mean_curvature).abs() < 1e-5);
        assert!((a.a_norm_sq - b.a_norm_sq).abs() < 1e-4);
    }

    #[test]
    fn cmc_gradient_vanishes() {
        let spec = StencilSpec::default();
        let g = grad_h(&ProductTorus::new(3, 3, 0.6).unwrap(), &U, &spec).unwrap();
        assert!(g.norm < 1e-6, "{}", g.norm);
    }

    #[test]
    fn flat_torus_fourier_mode() {
        let spec = StencilSpec::default();
        let u = [0.4, 1.0, 2.5, 5.0];
        let lap = laplace_beltrami(&FlatTorus::default(), &u, |w| (3.0 * w[1]).sin(), &spec).unwrap();
        // radius 1/2 circles: d/ds = 2 d/du
        let expected = -36.0 * (3.0f64).sin();
        assert!((lap - expected).abs() < 1e-3, "{lap} vs {expected}");
    }

    #[test]
    fn out_of_domain_stencil() {
        let mut u = U;
        u[0] = 1e-4;
        let err = laplace_beltrami(&GeodesicSphere::equator(), &u, |_| 1.0, &StencilSpec::default());
        assert!(matches!(err, Err(Error::StencilOutOfDomain { .. })));
    }

    #[test]
    fn csv_dump() {
        let rows = vec![ShapeSample {
            u: vec![0.5, 1.0],
            mean_curvature: 0.25,
            a_norm_sq: 2.0,
            grad_h_norm: 0.0,
        }];
        let csv = shape_samples_csv(&rows);
        assert_eq!(csv, "u0,u1,H,A_norm_sq,gradH_norm\n0.5,1,0.25,2,0\n");
    }
}
