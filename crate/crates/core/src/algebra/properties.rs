//! Property probes for the Cayley-Dickson tower: which algebraic laws survive
//! at each level, with witnesses when they fail.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::number::{HypercomplexNumber, MAX_LEVEL};
use super::table::generate_mult_table;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraProperty {
    Commutative,
    Associative,
    Normed,
    Division,
}

impl std::str::FromStr for AlgebraProperty {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "commutative" => Ok(Self::Commutative),
            "associative" => Ok(Self::Associative),
            "normed" => Ok(Self::Normed),
            "division" => Ok(Self::Division),
            _ => Err(Error::Config(format!("unknown property `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Counterexample {
    /// Two elements violating the law (non-commuting, norm-breaking or zero-dividing).
    Pair(HypercomplexNumber, HypercomplexNumber),
    /// Three elements with `(xy)z != x(yz)`.
    Triple(HypercomplexNumber, HypercomplexNumber, HypercomplexNumber),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

impl PropertyVerdict {
    fn holds() -> Self {
        Self {
            holds: true,
            counterexample: None,
        }
    }

    fn fails(c: Counterexample) -> Self {
        Self {
            holds: false,
            counterexample: Some(c),
        }
    }
}

/// Number of random samples used to confirm a basis-level verdict.
const RANDOM_CONFIRMATIONS: usize = 1000;
const RANDOM_SEED: u64 = 0x0c7a_u64;
const REL_TOL: f64 = 1e-12;

fn random_element(rng: &mut ChaCha8Rng, level: u8) -> HypercomplexNumber {
    let coeffs = (0..1usize << level)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    HypercomplexNumber::new(level, coeffs).expect("length matches level")
}

/// Decides whether the algebra at `level` has the given property. The verdict
/// comes from an exhaustive basis-level scan (or the zero-divisor search),
/// confirmed on seeded random elements.
pub fn check_property(level: u8, property: AlgebraProperty) -> Result<PropertyVerdict> {
    if level > MAX_LEVEL {
        return Err(Error::UnsupportedLevel(level));
    }
    let n = 1usize << level;
    let table = generate_mult_table(level)?;
    let prod = |i: usize, j: usize| table[i * n + j];
    let e = |i: usize| HypercomplexNumber::basis(level, i);
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED ^ level as u64);

    match property {
        AlgebraProperty::Commutative => {
            for i in 0..n {
                for j in 0..n {
                    if prod(i, j) != swap(prod(j, i)) {
                        return Ok(PropertyVerdict::fails(Counterexample::Pair(e(i), e(j))));
                    }
                }
            }
            for _ in 0..RANDOM_CONFIRMATIONS {
                let (x, y) = (random_element(&mut rng, level), random_element(&mut rng, level));
                let d = x.mul(&y)?.dist(&y.mul(&x)?);
                if d > REL_TOL * x.norm() * y.norm() {
                    return Ok(PropertyVerdict::fails(Counterexample::Pair(x, y)));
                }
            }
            Ok(PropertyVerdict::holds())
        }
        AlgebraProperty::Associative => {
            // The associator is trilinear, so vanishing on basis triples is exact.
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let ij = prod(i, j);
                        let left = prod(ij.k, k);
                        let jk = prod(j, k);
                        let right = prod(i, jk.k);
                        let ls = ij.sign * left.sign;
                        let rs = jk.sign * right.sign;
                        if left.k != right.k || ls != rs {
                            return Ok(PropertyVerdict::fails(Counterexample::Triple(
                                e(i),
                                e(j),
                                e(k),
                            )));
                        }
                    }
                }
            }
            for _ in 0..RANDOM_CONFIRMATIONS {
                let x = random_element(&mut rng, level);
                let y = random_element(&mut rng, level);
                let z = random_element(&mut rng, level);
                let d = x.mul(&y)?.mul(&z)?.dist(&x.mul(&y.mul(&z)?)?);
                if d > REL_TOL * x.norm() * y.norm() * z.norm() {
                    return Ok(PropertyVerdict::fails(Counterexample::Triple(x, y, z)));
                }
            }
            Ok(PropertyVerdict::holds())
        }
        AlgebraProperty::Normed | AlgebraProperty::Division => {
            // A zero divisor breaks both laws at once.
            if let ZeroDivisorSearch::Found { x, y, .. } = find_zero_divisor(level)? {
                return Ok(PropertyVerdict::fails(Counterexample::Pair(x, y)));
            }
            for _ in 0..RANDOM_CONFIRMATIONS {
                let (x, y) = (random_element(&mut rng, level), random_element(&mut rng, level));
                let nxy = x.mul(&y)?.norm();
                let expected = x.norm() * y.norm();
                if (nxy - expected).abs() > REL_TOL * expected {
                    return Ok(PropertyVerdict::fails(Counterexample::Pair(x, y)));
                }
            }
            Ok(PropertyVerdict::holds())
        }
    }
}

fn swap(p: super::table::BasisProduct) -> super::table::BasisProduct {
    super::table::BasisProduct {
        i: p.j,
        j: p.i,
        ..p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ZeroDivisorSearch {
    Found {
        x: HypercomplexNumber,
        y: HypercomplexNumber,
        product_norm: f64,
    },
    NotFound {
        candidates: usize,
    },
}

/// Scans unit pairs `(e_i + s e_j)/sqrt 2 * (e_k + t e_l)/sqrt 2` for a zero
/// product. The overall sign of each factor is irrelevant, so the first
/// coefficient of each factor is fixed to `+1`.
pub fn find_zero_divisor(level: u8) -> Result<ZeroDivisorSearch> {
    if level > MAX_LEVEL {
        return Err(Error::UnsupportedLevel(level));
    }
    let n = 1usize << level;
    let table = generate_mult_table(level)?;
    let prod = |i: usize, j: usize| table[i * n + j];
    let mut candidates = 0usize;
    let pairs: Vec<(usize, usize, i32)> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| [(i, j, 1), (i, j, -1)]))
        .collect();
    let mut acc = vec![0i32; n];
    for &(i, j, s) in &pairs {
        for &(k, l, t) in &pairs {
            candidates += 1;
            acc.iter_mut().for_each(|a| *a = 0);
            for (a, b, c) in [(i, k, 1), (i, l, t), (j, k, s), (j, l, s * t)] {
                let p = prod(a, b);
                acc[p.k] += c * p.sign as i32;
            }
            if acc.iter().all(|&a| a == 0) {
                let r = std::f64::consts::FRAC_1_SQRT_2;
                let mut x = HypercomplexNumber::zero(level).into_coeffs();
                x[i] = r;
                x[j] = s as f64 * r;
                let mut y = HypercomplexNumber::zero(level).into_coeffs();
                y[k] = r;
                y[l] = t as f64 * r;
                let x = HypercomplexNumber::new(level, x)?;
                let y = HypercomplexNumber::new(level, y)?;
                let product_norm = x.mul(&y)?.norm();
                return Ok(ZeroDivisorSearch::Found { x, y, product_norm });
            }
        }
    }
    Ok(ZeroDivisorSearch::NotFound { candidates })
}

/// Largest violation of `a(bx) = (ab)x` and `(xa)b = x(ab)` for complex `a, b`
/// embedded at the level of `x`.
pub fn complex_associativity_defect(
    a: &HypercomplexNumber,
    b: &HypercomplexNumber,
    x: &HypercomplexNumber,
) -> Result<f64> {
    if a.level() > 1 || b.level() > 1 {
        return Err(Error::LevelMismatch {
            left: a.level().max(b.level()),
            right: 1,
        });
    }
    let a = a.embed(x.level())?;
    let b = b.embed(x.level())?;
    let ab = a.mul(&b)?;
    let left = a.mul(&b.mul(x)?)?.dist(&ab.mul(x)?);
    let right = x.mul(&a)?.mul(&b)?.dist(&x.mul(&ab)?);
    Ok(left.max(right))
}

/// Checks both identities of the complex-associativity lemma to `1e-13`
/// relative to `|a||b||x|`.
pub fn complex_associativity_check(
    a: &HypercomplexNumber,
    b: &HypercomplexNumber,
    x: &HypercomplexNumber,
) -> Result<bool> {
    let d = complex_associativity_defect(a, b, x)?;
    let scale = (a.norm() * b.norm() * x.norm()).max(f64::MIN_POSITIVE);
    Ok(d <= 1e-13 * scale.max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternions_associate_octonions_do_not() {
        assert!(check_property(2, AlgebraProperty::Associative).unwrap().holds);
        let v = check_property(3, AlgebraProperty::Associative).unwrap();
        assert!(!v.holds);
        match v.counterexample {
            Some(Counterexample::Triple(x, y, z)) => {
                let l = x.mul(&y).unwrap().mul(&z).unwrap();
                let r = x.mul(&y.mul(&z).unwrap()).unwrap();
                assert_ne!(l, r);
                // basis witness
                for w in [&x, &y, &z] {
                    assert_eq!(w.norm(), 1.0);
                    assert_eq!(w.coeffs().iter().filter(|c| **c != 0.0).count(), 1);
                }
            }
            other => panic!("expected a triple, got {other:?}"),
        }
    }

    #[test]
    fn commutativity_by_level() {
        assert!(check_property(0, AlgebraProperty::Commutative).unwrap().holds);
        assert!(check_property(1, AlgebraProperty::Commutative).unwrap().holds);
        assert!(!check_property(2, AlgebraProperty::Commutative).unwrap().holds);
    }

    #[test]
    fn division_boundary() {
        for level in 0..=3 {
            assert!(check_property(level, AlgebraProperty::Division).unwrap().holds);
            assert!(check_property(level, AlgebraProperty::Normed).unwrap().holds);
        }
        let v = check_property(4, AlgebraProperty::Division).unwrap();
        assert!(!v.holds);
        assert!(matches!(v.counterexample, Some(Counterexample::Pair(..))));
    }

    #[test]
    fn zero_divisor_search() {
        match find_zero_divisor(4).unwrap() {
            ZeroDivisorSearch::Found { x, y, product_norm } => {
                assert!((x.norm() - 1.0).abs() < 1e-15);
                assert!((y.norm() - 1.0).abs() < 1e-15);
                assert!(product_norm <= 1e-12);
                assert!(x.mul(&y).unwrap().norm() <= 1e-12);
            }
            other => panic!("no zero divisor found: {other:?}"),
        }
        assert!(matches!(
            find_zero_divisor(3).unwrap(),
            ZeroDivisorSearch::NotFound { .. }
        ));
    }

    #[test]
    fn complex_associativity() {
        let i = HypercomplexNumber::basis(1, 1);
        let x = HypercomplexNumber::new(3, vec![0.1, -0.7, 0.4, 0.2, 0.9, -0.3, 0.5, 0.8]).unwrap();
        assert!(complex_associativity_check(&i, &i, &x).unwrap());
        let ie = i.embed(3).unwrap();
        let iix = ie.mul(&ie.mul(&x).unwrap()).unwrap();
        assert!(iix.dist(&-&x) < 1e-15);
        let one = HypercomplexNumber::one(1);
        assert!(complex_associativity_check(&one, &i, &x).unwrap());
        // quaternion units are not in C and need not associate
        let j = HypercomplexNumber::basis(2, 2);
        assert!(complex_associativity_defect(&j, &i, &x).is_err());
    }
}
