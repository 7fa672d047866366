//! Convergence of the Laplacian residuals under step refinement.

use rayon::prelude::*;
use serde::Serialize;

use super::suites::{pick_variant, variant_maxima, CP3_RESIDUAL_TOL, S7_RESIDUAL_TOL};
use super::{Aggregates, Bound, Check, ResidualReport, ScenarioConfig, Suite};
use crate::cp3::lift::{check_lift_invariance, cp3_laplacian_terms, GaugeReport};
use crate::error::{Error, Result};
use crate::geometry::sampling::halton_points;
use crate::s7::gauss::{s7_laplacian_terms, LaplacianTerms, SignVariant};

/// Minimum fitted order for the `S^7` identity.
pub const S7_MIN_ORDER: f64 = 1.8;
/// Minimum fitted order for the converging `CP^3` variant.
pub const CP3_MIN_ORDER: f64 = 1.5;
/// Steps above this are reported as truncation-dominated.
pub const COARSE_STEP: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub h: f64,
    /// Largest residual over the samples, per variant (`negative`, `positive`).
    pub max_residual: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log residual` against `log h`, per variant.
    pub fitted_order: [f64; 2],
}

/// Least-squares slope of `log y` against `log x`.
pub fn fitted_order(h: &[f64], residual: &[f64]) -> f64 {
    let n = h.len() as f64;
    let lx: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = residual.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn validate_steps(steps: &[f64]) -> Result<()> {
    if steps.len() < 3 {
        return Err(Error::Config(format!(
            "a convergence study needs at least 3 steps, got {}",
            steps.len()
        )));
    }
    if steps.iter().any(|h| !(h.is_finite() && *h > 0.0)) || steps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Config("steps must be positive and strictly decreasing".into()));
    }
    Ok(())
}

/// `convergence_study`: reruns the `s7` or `cp3` residual at each step and
/// fits the order. Per-point records in the report come from the finest step.
pub fn convergence_study(cfg: &ScenarioConfig, steps: &[f64]) -> Result<ResidualReport> {
    validate_steps(steps)?;
    cfg.validate()?;
    if !matches!(cfg.suite, Suite::S7 | Suite::Cp3) {
        return Err(Error::Config(format!(
            "convergence studies apply to the s7 and cp3 suites, not `{}`",
            cfg.suite
        )));
    }
    let chart = cfg.chart.build()?;
    let chart = chart.as_ref();
    let pts = halton_points(&chart.sample_box(), cfg.points, cfg.seed)?;
    let mut r = ResidualReport::new(cfg.clone());
    if cfg.suite == Suite::Cp3 {
        let few = &pts[..pts.len().min(3)];
        let g: GaugeReport = check_lift_invariance(chart, few, &cfg.stencil, 1e-10)?;
        r.observe("gauge_max", g.max());
    }

    let mut rows = Vec::with_capacity(steps.len());
    let mut finest: Vec<LaplacianTerms> = Vec::new();
    for &h in steps {
        if h > COARSE_STEP {
            r.warnings.push(format!("step {h} is coarse; residuals are truncation-dominated"));
        }
        let spec = cfg.stencil.with_step(h);
        let terms: Vec<LaplacianTerms> = pts
            .par_iter()
            .map(|u| match cfg.suite {
                Suite::Cp3 => cp3_laplacian_terms(chart, u, &spec, cfg.delta),
                _ => s7_laplacian_terms(chart, u, &spec),
            })
            .collect::<Result<_>>()?;
        rows.push(ConvergenceRow {
            h,
            max_residual: variant_maxima(&terms),
        });
        finest = terms;
    }

    let hs: Vec<f64> = rows.iter().map(|r| r.h).collect();
    let order: [f64; 2] = std::array::from_fn(|k| {
        let res: Vec<f64> = rows.iter().map(|r| r.max_residual[k]).collect();
        fitted_order(&hs, &res)
    });
    for (k, v) in SignVariant::BOTH.iter().enumerate() {
        if rows.windows(2).any(|w| w[1].max_residual[k] > w[0].max_residual[k]) {
            r.warnings.push(format!("{v:?} residual is not monotone under refinement"));
        }
    }
    let last = rows.last().expect("at least 3 rows").max_residual;

    let variant = match cfg.suite {
        Suite::S7 => {
            let k = 0;
            r.check(Check::at_least("fitted_order", order[k], S7_MIN_ORDER));
            r.check(Check::at_most("finest_residual", last[k], S7_RESIDUAL_TOL));
            SignVariant::Negative
        }
        _ => {
            let converging: Vec<usize> = (0..2)
                .filter(|&k| order[k] >= CP3_MIN_ORDER && last[k] <= CP3_RESIDUAL_TOL)
                .collect();
            r.check(Check::new(
                "variants_converging",
                converging.len() as f64,
                Bound::Equals(1.0),
            ));
            let (_, small) = pick_variant(last, CP3_RESIDUAL_TOL);
            match converging.as_slice() {
                [k] => SignVariant::BOTH[*k],
                _ => small.unwrap_or(SignVariant::Negative),
            }
        }
    };
    let k = SignVariant::BOTH.iter().position(|v| *v == variant).unwrap_or(0);
    r.points = finest.iter().map(|t| t.record(variant)).collect();
    r.aggregates = Aggregates {
        conv_order: Some(order[k]),
        ..Aggregates::from_records(&r.points, Some(variant))
    };
    r.convergence = Some(ConvergenceTable {
        rows,
        fitted_order: order,
    });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::catalog::ChartId;

    #[test]
    fn slope_of_power_law() {
        let h = [1e-2, 5e-3, 2.5e-3];
        let r: Vec<f64> = h.iter().map(|v| 3.0 * v * v).collect();
        assert!((fitted_order(&h, &r) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn step_validation() {
        let cfg = ScenarioConfig::for_suite(Suite::S7);
        assert!(convergence_study(&cfg, &[1e-2, 5e-3]).is_err());
        assert!(convergence_study(&cfg, &[1e-2, 2e-2, 5e-3]).is_err());
        assert!(convergence_study(&ScenarioConfig::for_suite(Suite::Hopf), &[3e-2, 2e-2, 1e-2]).is_err());
    }

    #[test]
    fn equator_study_and_coarse_warning() {
        let mut cfg = ScenarioConfig::for_suite(Suite::S7);
        cfg.points = 3;
        let r = convergence_study(&cfg, &[1e-2, 5e-3, 2.5e-3]).unwrap();
        assert!(r.passed, "{}", r.summary());
        assert!(r.aggregates.conv_order.unwrap() > 1.8);
        cfg.chart = ChartId::GeodesicSphere { t0: 1.0 };
        let r = convergence_study(&cfg, &[0.3, 0.2, 0.1]).unwrap();
        assert!(r.warnings.iter().any(|w| w.contains("coarse")));
    }
}
