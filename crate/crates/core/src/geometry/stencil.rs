//! Central finite differences on chart parameters.

use serde::{Deserialize, Serialize};

use super::chart::{Chart, ChartDerivatives, ParamRange};
use crate::algebra::octonion::Octonion;
use crate::error::{Error, Result};

/// Step size and order of the central differences.
///
/// Partials of the chart itself use `h_step`. Differences of derived
/// quantities (mean curvature, Gauss map, metric) use `h_step` when the chart
/// has exact partials and `nesting_factor * h_step` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StencilSpec {
    pub h_step: f64,
    pub order: u8,
    pub nesting_factor: f64,
}

impl Default for StencilSpec {
    fn default() -> Self {
        Self {
            h_step: 1e-3,
            order: 2,
            nesting_factor: 10.0,
        }
    }
}

const FIRST_2: &[(i32, f64)] = &[(-1, -0.5), (1, 0.5)];
const SECOND_2: &[(i32, f64)] = &[(-1, 1.0), (0, -2.0), (1, 1.0)];
const FIRST_4: &[(i32, f64)] = &[
    (-2, 1.0 / 12.0),
    (-1, -2.0 / 3.0),
    (1, 2.0 / 3.0),
    (2, -1.0 / 12.0),
];
const SECOND_4: &[(i32, f64)] = &[
    (-2, -1.0 / 12.0),
    (-1, 4.0 / 3.0),
    (0, -2.5),
    (1, 4.0 / 3.0),
    (2, -1.0 / 12.0),
];

impl StencilSpec {
    pub fn new(h_step: f64, order: u8, nesting_factor: f64) -> Result<Self> {
        let s = Self {
            h_step,
            order,
            nesting_factor,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_step(self, h_step: f64) -> Self {
        Self { h_step, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h_step > 0.0 && self.h_step.is_finite()) {
            return Err(Error::InvalidStencil(format!(
                "step must be positive, got {}",
                self.h_step
            )));
        }
        if self.order != 2 && self.order != 4 {
            return Err(Error::InvalidStencil(format!(
                "order must be 2 or 4, got {}",
                self.order
            )));
        }
        if !(self.nesting_factor >= 1.0 && self.nesting_factor.is_finite()) {
            return Err(Error::InvalidStencil(format!(
                "nesting factor must be >= 1, got {}",
                self.nesting_factor
            )));
        }
        Ok(())
    }

    /// Step for differences of quantities that are themselves computed from
    /// chart partials.
    pub fn outer_step(&self, analytic: bool) -> f64 {
        if analytic {
            self.h_step
        } else {
            self.h_step * self.nesting_factor
        }
    }

    /// `(offset, weight)` pairs of the first-derivative stencil, unscaled.
    pub fn first_weights(&self) -> &'static [(i32, f64)] {
        if self.order == 4 {
            FIRST_4
        } else {
            FIRST_2
        }
    }

    /// `(offset, weight)` pairs of the second-derivative stencil, unscaled.
    pub fn second_weights(&self) -> &'static [(i32, f64)] {
        if self.order == 4 {
            SECOND_4
        } else {
            SECOND_2
        }
    }

    fn reach(&self) -> i32 {
        if self.order == 4 {
            2
        } else {
            1
        }
    }
}

/// A stencil of fixed step laid over a parameter box.
#[derive(Debug, Clone, Copy)]
pub struct Stencil<'a> {
    pub spec: StencilSpec,
    pub step: f64,
    pub params: &'a [ParamRange],
}

/// Value, gradient and Hessian of a vector-valued function of the parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Differences {
    pub value: Vec<f64>,
    pub d1: Vec<Vec<f64>>,
    pub d2: Vec<Vec<Vec<f64>>>,
}

impl<'a> Stencil<'a> {
    pub fn new(spec: StencilSpec, step: f64, params: &'a [ParamRange]) -> Self {
        Self { spec, step, params }
    }

    /// Checks that every stencil node around `u` lies in the domain.
    pub fn check(&self, u: &[f64]) -> Result<()> {
        let reach = self.spec.reach() as f64 * self.step;
        for (i, (p, &v)) in self.params.iter().zip(u).enumerate() {
            if !v.is_finite() {
                return Err(Error::StencilOutOfDomain { param: i, value: v });
            }
            if !p.periodic && (v - reach <= p.lo || v + reach >= p.hi) {
                return Err(Error::StencilOutOfDomain { param: i, value: v });
            }
        }
        Ok(())
    }

    fn node(&self, u: &[f64], shifts: &[(usize, i32)]) -> Vec<f64> {
        let mut w = u.to_vec();
        for &(i, k) in shifts {
            w[i] = self.params[i].wrap(w[i] + k as f64 * self.step);
        }
        w
    }

    /// First partial in parameter `i`.
    pub fn d1<F>(&self, f: &F, u: &[f64], i: usize) -> Result<Vec<f64>>
    where
        F: Fn(&[f64]) -> Result<Vec<f64>>,
    {
        let mut acc: Option<Vec<f64>> = None;
        for &(k, w) in self.spec.first_weights() {
            let v = f(&self.node(u, &[(i, k)]))?;
            accumulate(&mut acc, &v, w / self.step);
        }
        Ok(acc.unwrap_or_default())
    }

    /// Value, all first partials and all second partials at `u`.
    pub fn differences<F>(&self, f: &F, u: &[f64]) -> Result<Differences>
    where
        F: Fn(&[f64]) -> Result<Vec<f64>>,
    {
        self.check(u)?;
        let n = u.len();
        let h = self.step;
        let value = f(u)?;
        let mut d1 = Vec::with_capacity(n);
        let mut d2 = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            let mut first: Option<Vec<f64>> = None;
            let mut second: Option<Vec<f64>> = None;
            for &(k, w) in self.spec.second_weights() {
                let v = if k == 0 {
                    value.clone()
                } else {
                    f(&self.node(u, &[(i, k)]))?
                };
                accumulate(&mut second, &v, w / (h * h));
                if let Some(&(_, w1)) = self.spec.first_weights().iter().find(|(o, _)| *o == k) {
                    accumulate(&mut first, &v, w1 / h);
                }
            }
            d1.push(first.unwrap_or_else(|| vec![0.0; value.len()]));
            d2[i][i] = second.unwrap_or_else(|| vec![0.0; value.len()]);
        }
        let fw = self.spec.first_weights();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut mixed: Option<Vec<f64>> = None;
                for &(ki, wi) in fw {
                    for &(kj, wj) in fw {
                        let v = f(&self.node(u, &[(i, ki), (j, kj)]))?;
                        accumulate(&mut mixed, &v, wi * wj / (h * h));
                    }
                }
                let m = mixed.unwrap_or_else(|| vec![0.0; value.len()]);
                d2[j][i] = m.clone();
                d2[i][j] = m;
            }
        }
        Ok(Differences { value, d1, d2 })
    }

    /// First partials only.
    pub fn gradient<F>(&self, f: &F, u: &[f64]) -> Result<Vec<Vec<f64>>>
    where
        F: Fn(&[f64]) -> Result<Vec<f64>>,
    {
        self.check(u)?;
        (0..u.len()).map(|i| self.d1(f, u, i)).collect()
    }
}

fn accumulate(acc: &mut Option<Vec<f64>>, v: &[f64], w: f64) {
    match acc {
        Some(a) => {
            for (x, y) in a.iter_mut().zip(v) {
                *x += w * y;
            }
        }
        None => *acc = Some(v.iter().map(|y| w * y).collect()),
    }
}

fn to_oct(v: &[f64]) -> Octonion {
    let mut o = [0.0; 8];
    o.copy_from_slice(&v[..8]);
    o
}

/// Partials of the chart map: exact when the chart supplies them, otherwise
/// central differences with step `h_step`. Second partials are skipped when
/// `second` is false.
pub fn chart_derivatives(
    chart: &dyn Chart,
    u: &[f64],
    spec: &StencilSpec,
    second: bool,
) -> Result<ChartDerivatives> {
    if u.len() != chart.dim() {
        return Err(Error::ChartDimension {
            expected: chart.dim(),
            found: u.len(),
        });
    }
    if let Some(d) = chart.analytic(u) {
        return Ok(d);
    }
    let stencil = Stencil::new(*spec, spec.h_step, chart.params());
    let f = |w: &[f64]| Ok(chart.point(w).to_vec());
    if second {
        let d = stencil.differences(&f, u)?;
        Ok(ChartDerivatives {
            x: to_oct(&d.value),
            d1: d.d1.iter().map(|v| to_oct(v)).collect(),
            d2: d
                .d2
                .iter()
                .map(|row| row.iter().map(|v| to_oct(v)).collect())
                .collect(),
        })
    } else {
        let d1 = stencil.gradient(&f, u)?;
        Ok(ChartDerivatives {
            x: chart.point(u),
            d1: d1.iter().map(|v| to_oct(v)).collect(),
            d2: Vec::new(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(u: &[f64]) -> Result<Vec<f64>> {
        // x^3 y + sin(y)
        Ok(vec![u[0].powi(3) * u[1] + u[1].sin()])
    }

    #[test]
    fn validates() {
        assert!(StencilSpec::new(0.0, 2, 10.0).is_err());
        assert!(StencilSpec::new(1e-3, 3, 10.0).is_err());
        assert!(StencilSpec::new(1e-3, 4, 0.5).is_err());
        assert!(StencilSpec::new(1e-3, 4, 1.0).is_ok());
    }

    #[test]
    fn second_order_accuracy() {
        let params = [ParamRange::open(-5.0, 5.0); 2];
        let (x, y) = (0.7, 0.4);
        let exact_xy = 3.0 * x * x;
        let exact_yy = -f64::sin(y);
        let mut errs = Vec::new();
        for h in [1e-2, 5e-3] {
            let s = Stencil::new(StencilSpec::default(), h, &params);
            let d = s.differences(&poly, &[x, y]).unwrap();
            errs.push((d.d2[0][1][0] - exact_xy).abs() + (d.d2[1][1][0] - exact_yy).abs());
            assert!((d.d1[0][0] - 3.0 * x * x * y).abs() < 1e-3);
        }
        let ratio = errs[0] / errs[1];
        assert!(ratio > 3.5 && ratio < 4.5, "ratio {ratio}");
    }

    #[test]
    fn fourth_order_accuracy() {
        let params = [ParamRange::open(-5.0, 5.0); 2];
        let spec = StencilSpec::new(1e-2, 4, 1.0).unwrap();
        let s = Stencil::new(spec, 1e-2, &params);
        let d = s.differences(&poly, &[0.7, 0.4]).unwrap();
        assert!((d.d1[1][0] - (0.343 + 0.4f64.cos())).abs() < 1e-8);
        assert!((d.d2[0][0][0] - 6.0 * 0.7 * 0.4).abs() < 1e-7);
    }

    #[test]
    fn domain_checks_and_wrapping() {
        let params = [ParamRange::open(0.0, 1.0), ParamRange::periodic(0.0, 1.0)];
        let s = Stencil::new(StencilSpec::default(), 1e-2, &params);
        assert!(s.check(&[0.5, 0.0]).is_ok());
        assert!(matches!(
            s.check(&[0.005, 0.5]),
            Err(Error::StencilOutOfDomain { param: 0, .. })
        ));
        let node = s.node(&[0.5, 0.995], &[(1, 1)]);
        assert!((node[1] - 0.005).abs() < 1e-15);
    }
}
