//! Sign and containment statistics of Gauss-map samples against hyperplanes of
//! the imaginary octonions.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::algebra::octonion::{self, Octonion};
use crate::error::{Error, Result};

/// Samples with `<gamma, v> >= -CONTAINMENT_TOL` count as lying in the closed
/// half-space of `v`.
pub const CONTAINMENT_TOL: f64 = 1e-8;
/// Samples with `|<gamma, v>| <= EQUATOR_TOL` count as lying on the equator of `v`.
pub const EQUATOR_TOL: f64 = 1e-6;

/// `k <= 7` independent unit normals in `Im O` with a sign each.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthantSpec {
    normals: Vec<Octonion>,
    signs: Vec<i8>,
}

impl OrthantSpec {
    /// Normals are given as imaginary octonions (`v[0] = 0`) of unit length.
    pub fn new(normals: Vec<Octonion>, signs: Vec<i8>) -> Result<Self> {
        if normals.is_empty() || normals.len() > 7 || normals.len() != signs.len() {
            return Err(Error::Config(format!(
                "orthant needs 1..=7 normals with one sign each, got {} normals and {} signs",
                normals.len(),
                signs.len()
            )));
        }
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::Config(format!("orthant sign must be +1 or -1, got {s}")));
        }
        for v in &normals {
            if v[0] != 0.0 {
                return Err(Error::Config("orthant normals must be imaginary".into()));
            }
            let n = octonion::norm(v);
            if (n - 1.0).abs() > 1e-12 {
                return Err(Error::NotUnit(n));
            }
        }
        let k = normals.len();
        let m = DMatrix::from_fn(7, k, |r, c| normals[c][r + 1]);
        let sigma_min = m
            .singular_values()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if !(sigma_min > 1e-10) {
            return Err(Error::DependentNormals(sigma_min));
        }
        Ok(Self { normals, signs })
    }

    /// Coordinate hyperplanes `e_1..e_k`, all with sign `+1`.
    pub fn coordinate(k: usize) -> Result<Self> {
        Self::new(
            (1..=k.min(7)).map(octonion::basis).collect(),
            vec![1; k.min(7)],
        )
    }

    pub fn normals(&self) -> &[Octonion] {
        &self.normals
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// Range of `<gamma, v>` over the samples for one normal `v`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalStats {
    pub min: f64,
    pub max: f64,
    pub max_abs: f64,
    /// The samples lie in the closed half-space of the declared sign.
    pub in_half_space: bool,
    pub on_equator: bool,
    /// First sample outside the declared half-space.
    pub violating_sample: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthantReport {
    pub per_normal: Vec<NormalStats>,
    pub contained_in_orthant: bool,
    pub contained_in_equators: bool,
    /// `(sample, normal)` of the first violation of orthant containment.
    pub first_violation: Option<(usize, usize)>,
}

/// `orthant_containment`.
pub fn orthant_containment(samples: &[Octonion], spec: &OrthantSpec) -> Result<OrthantReport> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    let per_normal: Vec<NormalStats> = spec
        .normals
        .iter()
        .zip(&spec.signs)
        .map(|(v, &s)| {
            let mut st = NormalStats {
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
                max_abs: 0.0,
                in_half_space: true,
                on_equator: true,
                violating_sample: None,
            };
            for (k, g) in samples.iter().enumerate() {
                let p = octonion::dot(g, v);
                st.min = st.min.min(p);
                st.max = st.max.max(p);
                st.max_abs = st.max_abs.max(p.abs());
                if s as f64 * p < -CONTAINMENT_TOL && st.violating_sample.is_none() {
                    st.violating_sample = Some(k);
                    st.in_half_space = false;
                }
            }
            st.on_equator = st.max_abs <= EQUATOR_TOL;
            st
        })
        .collect();
    let first_violation = per_normal
        .iter()
        .enumerate()
        .filter_map(|(j, st)| st.violating_sample.map(|k| (k, j)))
        .min();
    Ok(OrthantReport {
        contained_in_orthant: per_normal.iter().all(|s| s.in_half_space),
        contained_in_equators: per_normal.iter().all(|s| s.on_equator),
        per_normal,
        first_violation,
    })
}

/// For one direction: whether the samples lie in its closed hemisphere and,
/// if so, whether they also lie on its equator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HemisphereCheck {
    pub direction: Octonion,
    pub min: f64,
    pub max_abs: f64,
    pub in_hemisphere: bool,
    pub on_equator: bool,
}

impl HemisphereCheck {
    /// The implication "in the closed hemisphere => on the equator".
    pub fn holds(&self) -> bool {
        !self.in_hemisphere || self.on_equator
    }
}

/// Runs [`HemisphereCheck`] for every direction.
pub fn hemisphere_checks(samples: &[Octonion], directions: &[Octonion]) -> Result<Vec<HemisphereCheck>> {
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    Ok(directions
        .iter()
        .map(|v| {
            let (min, max_abs) = samples.iter().fold((f64::INFINITY, 0.0f64), |(lo, m), g| {
                let p = octonion::dot(g, v);
                (lo.min(p), m.max(p.abs()))
            });
            HemisphereCheck {
                direction: *v,
                min,
                max_abs,
                in_hemisphere: min >= -CONTAINMENT_TOL,
                on_equator: max_abs <= EQUATOR_TOL,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(v: [f64; 7]) -> Octonion {
        octonion::normalize(&octonion::from_im7(&v))
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            OrthantSpec::new(vec![octonion::I, octonion::I], vec![1, 1]),
            Err(Error::DependentNormals(_))
        ));
        assert!(OrthantSpec::new(vec![octonion::ONE], vec![1]).is_err());
        assert!(OrthantSpec::new(vec![octonion::I], vec![2]).is_err());
        assert!(OrthantSpec::new(vec![], vec![]).is_err());
    }

    #[test]
    fn contained_cloud() {
        let samples = vec![
            im([1.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0]),
            im([0.2, 0.1, 0.0, 1.0, 0.0, 0.0, 0.0]),
        ];
        let r = orthant_containment(&samples, &OrthantSpec::coordinate(2).unwrap()).unwrap();
        assert!(r.contained_in_orthant);
        assert!(!r.contained_in_equators);
    }

    #[test]
    fn violating_sample_reported() {
        let samples = vec![
            im([1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            im([1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        ];
        let r = orthant_containment(&samples, &OrthantSpec::coordinate(2).unwrap()).unwrap();
        assert!(!r.contained_in_orthant);
        assert_eq!(r.first_violation, Some((1, 1)));
    }

    #[test]
    fn hemisphere_implication() {
        let samples = vec![
            im([0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
            im([0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]),
        ];
        let c = hemisphere_checks(&samples, &[octonion::I, octonion::basis(2)]).unwrap();
        assert!(c[0].in_hemisphere && c[0].on_equator && c[0].holds());
        assert!(c[1].in_hemisphere && !c[1].on_equator && !c[1].holds());
    }
}
