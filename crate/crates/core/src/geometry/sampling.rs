//! Deterministic low-discrepancy sample points in a chart's parameter box.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chart::ParamRange;
use crate::error::{Error, Result};

const PRIMES: [u32; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Radical inverse of `index` in base `b`.
fn radical_inverse(mut index: u64, b: u32) -> f64 {
    let inv = 1.0 / b as f64;
    let mut f = inv;
    let mut r = 0.0;
    while index > 0 {
        r += f * (index % b as u64) as f64;
        index /= b as u64;
        f *= inv;
    }
    r
}

/// `count` Halton points in `boxes`, rotated modulo 1 by a seeded random shift
/// so that different seeds give different but equally uniform clouds.
pub fn halton_points(boxes: &[ParamRange], count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if boxes.len() > PRIMES.len() {
        return Err(Error::Config(format!(
            "at most {} parameters can be sampled",
            PRIMES.len()
        )));
    }
    if let Some(p) = boxes.iter().find(|p| !(p.lo.is_finite() && p.hi.is_finite() && p.hi > p.lo)) {
        return Err(Error::Config(format!(
            "cannot sample from parameter range [{}, {}]",
            p.lo, p.hi
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shift: Vec<f64> = boxes.iter().map(|_| rng.random_range(0.0..1.0)).collect();
    Ok((1..=count as u64)
        .map(|k| {
            boxes
                .iter()
                .zip(PRIMES)
                .zip(&shift)
                .map(|((p, b), s)| {
                    let t = (radical_inverse(k, b) + s).fract();
                    p.lo + t * p.width()
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_inverse_base_two() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 2), 0.25);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert!((radical_inverse(5, 3) - (2.0 / 3.0 + 1.0 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn points_stay_in_box_and_repeat() {
        let boxes = [ParamRange::open(1.0, 2.0), ParamRange::periodic(0.0, 6.0)];
        let a = halton_points(&boxes, 500, 7).unwrap();
        let b = halton_points(&boxes, 500, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, halton_points(&boxes, 500, 8).unwrap());
        for p in &a {
            assert!(p[0] >= 1.0 && p[0] < 2.0);
            assert!(p[1] >= 0.0 && p[1] < 6.0);
        }
        let mean: f64 = a.iter().map(|p| p[0]).sum::<f64>() / 500.0;
        assert!((mean - 1.5).abs() < 0.01);
    }

    #[test]
    fn rejects_unbounded() {
        let boxes = [ParamRange::open(f64::NEG_INFINITY, 0.0)];
        assert!(halton_points(&boxes, 3, 0).is_err());
    }
}
