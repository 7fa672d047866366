use crate::algebra::octonion::Octonion;
use crate::jet::{Jet, Scalar};

/// Coordinate range of one chart parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRange {
    pub lo: f64,
    pub hi: f64,
    pub periodic: bool,
}

impl ParamRange {
    pub const fn open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            periodic: false,
        }
    }

    pub const fn periodic(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            periodic: true,
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Maps `t` back into `[lo, hi)` for periodic parameters.
    pub fn wrap(&self, t: f64) -> f64 {
        if self.periodic {
            self.lo + (t - self.lo).rem_euclid(self.width())
        } else {
            t
        }
    }
}

/// A chart value together with its first and second partial derivatives.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartDerivatives {
    pub x: Octonion,
    /// `d1[i] = d x / d u_i`
    pub d1: Vec<Octonion>,
    /// `d2[i][j] = d^2 x / d u_i d u_j`, symmetric.
    pub d2: Vec<Vec<Octonion>>,
}

/// A smooth parametrization `u -> x(u)` of a patch of the unit sphere of `R^8`.
///
/// For hypersurfaces of `S^7` the chart has 6 parameters. Hypersurfaces of
/// `CP^3` are handed over as a 5-parameter unit lift. Charts with fewer
/// parameters are accepted by the operations that only need a metric
/// (e.g. the Laplace-Beltrami operator).
pub trait Chart: Send + Sync {
    fn dim(&self) -> usize;

    fn params(&self) -> &[ParamRange];

    fn point(&self, u: &[f64]) -> Octonion;

    /// Exact partial derivatives, when the chart can provide them.
    fn analytic(&self, _u: &[f64]) -> Option<ChartDerivatives> {
        None
    }

    /// A vector `r` fixing the orientation: the unit normal is chosen with
    /// `<normal, r> > 0`.
    fn normal_reference(&self, u: &[f64]) -> Octonion;

    fn label(&self) -> String;

    /// The box that sample points are drawn from: the middle half of every
    /// bounded parameter range and the full period of periodic ones.
    fn sample_box(&self) -> Vec<ParamRange> {
        self.params()
            .iter()
            .map(|p| {
                if p.periodic {
                    *p
                } else {
                    let q = p.width() / 4.0;
                    ParamRange::open(p.lo + q, p.hi - q)
                }
            })
            .collect()
    }
}

impl Chart for Box<dyn Chart> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn params(&self) -> &[ParamRange] {
        (**self).params()
    }
    fn point(&self, u: &[f64]) -> Octonion {
        (**self).point(u)
    }
    fn analytic(&self, u: &[f64]) -> Option<ChartDerivatives> {
        (**self).analytic(u)
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        (**self).normal_reference(u)
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn sample_box(&self) -> Vec<ParamRange> {
        (**self).sample_box()
    }
}

/// A chart written once over any [`Scalar`], which yields exact derivatives by
/// forward-mode differentiation.
pub trait ParametricMap: Send + Sync {
    fn dim(&self) -> usize;
    fn params(&self) -> &[ParamRange];
    fn eval<S: Scalar>(&self, u: &[S]) -> [S; 8];
    fn normal_reference(&self, u: &[f64]) -> Octonion;
    fn label(&self) -> String;
}

impl<M: ParametricMap> Chart for M {
    fn dim(&self) -> usize {
        ParametricMap::dim(self)
    }

    fn params(&self) -> &[ParamRange] {
        ParametricMap::params(self)
    }

    fn point(&self, u: &[f64]) -> Octonion {
        self.eval(u)
    }

    fn analytic(&self, u: &[f64]) -> Option<ChartDerivatives> {
        let n = ParametricMap::dim(self);
        let jets = self.eval(&Jet::variables(u));
        let x = jets.map(|j| j.v);
        let d1 = (0..n).map(|i| jets.map(|j| j.g[i])).collect();
        let d2 = (0..n)
            .map(|i| (0..n).map(|k| jets.map(|j| j.h[i][k])).collect())
            .collect();
        Some(ChartDerivatives { x, d1, d2 })
    }

    fn normal_reference(&self, u: &[f64]) -> Octonion {
        ParametricMap::normal_reference(self, u)
    }

    fn label(&self) -> String {
        ParametricMap::label(self)
    }
}

/// Hides the analytic derivatives of a chart so that every partial is taken by
/// finite differences.
pub struct NumericOnly<C>(pub C);

impl<C: Chart> Chart for NumericOnly<C> {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn params(&self) -> &[ParamRange] {
        self.0.params()
    }
    fn point(&self, u: &[f64]) -> Octonion {
        self.0.point(u)
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        self.0.normal_reference(u)
    }
    fn label(&self) -> String {
        format!("{} (numeric)", self.0.label())
    }
    fn sample_box(&self) -> Vec<ParamRange> {
        self.0.sample_box()
    }
}

/// The same chart with the opposite normal orientation.
pub struct Flipped<C>(pub C);

impl<C: Chart> Chart for Flipped<C> {
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn params(&self) -> &[ParamRange] {
        self.0.params()
    }
    fn point(&self, u: &[f64]) -> Octonion {
        self.0.point(u)
    }
    fn analytic(&self, u: &[f64]) -> Option<ChartDerivatives> {
        self.0.analytic(u)
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        self.0.normal_reference(u).map(|v| -v)
    }
    fn label(&self) -> String {
        format!("{} (flipped)", self.0.label())
    }
    fn sample_box(&self) -> Vec<ParamRange> {
        self.0.sample_box()
    }
}

/// Affine reparametrization `u = center + Q v` of an inner chart, with `Q`
/// given row-major. Parameters of the new chart are unbounded.
pub struct Reparametrized<M> {
    pub inner: M,
    pub center: Vec<f64>,
    pub q: Vec<Vec<f64>>,
    params: Vec<ParamRange>,
}

impl<M: ParametricMap> Reparametrized<M> {
    pub fn new(inner: M, center: Vec<f64>, q: Vec<Vec<f64>>) -> Self {
        let n = ParametricMap::dim(&inner);
        assert_eq!(center.len(), n);
        assert!(q.len() == n && q.iter().all(|r| r.len() == n));
        Self {
            inner,
            center,
            q,
            params: vec![ParamRange::open(f64::NEG_INFINITY, f64::INFINITY); n],
        }
    }

    /// The inner-chart parameters of the point with new parameters `v`.
    pub fn inner_coords(&self, v: &[f64]) -> Vec<f64> {
        self.center
            .iter()
            .zip(&self.q)
            .map(|(c, row)| c + row.iter().zip(v).map(|(a, b)| a * b).sum::<f64>())
            .collect()
    }
}

impl<M: ParametricMap> ParametricMap for Reparametrized<M> {
    fn dim(&self) -> usize {
        self.center.len()
    }
    fn params(&self) -> &[ParamRange] {
        &self.params
    }
    fn eval<S: Scalar>(&self, v: &[S]) -> [S; 8] {
        let u: Vec<S> = self
            .center
            .iter()
            .zip(&self.q)
            .map(|(c, row)| {
                row.iter()
                    .zip(v)
                    .fold(S::constant(*c), |acc, (a, b)| acc + *b * *a)
            })
            .collect();
        self.inner.eval(&u)
    }
    fn normal_reference(&self, v: &[f64]) -> Octonion {
        self.inner.normal_reference(&self.inner_coords(v))
    }
    fn label(&self) -> String {
        format!("{} (reparametrized)", self.inner.label())
    }
}
