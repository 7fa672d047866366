//! Built-in charts, addressable by name and parameters.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::chart::{Chart, ParamRange, ParametricMap};
use crate::algebra::octonion::Octonion;
use crate::error::{Error, Result};
use crate::jet::Scalar;

/// Hyperspherical coordinates of `S^n` from `n` angles:
/// `(cos p1, sin p1 cos p2, ..., sin p1..sin p_{n-1} cos p_n, sin p1..sin p_n)`.
pub fn hypersphere<S: Scalar>(angles: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(angles.len() + 1);
    let mut prod = S::constant(1.0);
    for &a in angles {
        out.push(prod * a.cos());
        prod = prod * a.sin();
    }
    out.push(prod);
    out
}

/// Parameter ranges of [`hypersphere`] with `n` angles: the last is periodic.
pub fn hypersphere_params(n: usize) -> Vec<ParamRange> {
    let mut p = vec![ParamRange::open(0.0, PI); n.saturating_sub(1)];
    if n > 0 {
        p.push(ParamRange::periodic(0.0, TAU));
    }
    p
}

fn constant_oct<S: Scalar>() -> [S; 8] {
    [S::constant(0.0); 8]
}

/// The geodesic sphere `x = cos t0 + sin t0 w(u)` about `1`, with `w` running
/// over the unit imaginary octonions. At `t0 = pi/2` this is the totally
/// geodesic equator. The normal is oriented towards `1` (inward).
#[derive(Debug, Clone)]
pub struct GeodesicSphere {
    cos_t0: f64,
    sin_t0: f64,
    t0: f64,
    params: Vec<ParamRange>,
}

impl GeodesicSphere {
    pub fn new(t0: f64) -> Self {
        Self {
            cos_t0: t0.cos(),
            sin_t0: t0.sin(),
            t0,
            params: hypersphere_params(6),
        }
    }

    /// The equator `Re x = 0`, with exact coefficients.
    pub fn equator() -> Self {
        Self {
            cos_t0: 0.0,
            sin_t0: 1.0,
            t0: FRAC_PI_2,
            params: hypersphere_params(6),
        }
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }
}

impl ParametricMap for GeodesicSphere {
    fn dim(&self) -> usize {
        6
    }
    fn params(&self) -> &[ParamRange] {
        &self.params
    }
    fn eval<S: Scalar>(&self, u: &[S]) -> [S; 8] {
        let w = hypersphere(u);
        let mut x = constant_oct::<S>();
        x[0] = S::constant(self.cos_t0);
        for k in 0..7 {
            x[k + 1] = w[k] * self.sin_t0;
        }
        x
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        let w = hypersphere(u);
        let mut r = [0.0; 8];
        r[0] = self.sin_t0;
        for k in 0..7 {
            r[k + 1] = -self.cos_t0 * w[k];
        }
        r
    }
    fn label(&self) -> String {
        if self.cos_t0 == 0.0 {
            "equator".into()
        } else {
            format!("geodesic_sphere({})", self.t0)
        }
    }
}

/// `S^p(a) x S^q(b)` with `a^2 + b^2 = 1`, `p + q = 6`, the first factor in the
/// coordinates `0..=p` and the second in `p+1..8`.
#[derive(Debug, Clone)]
pub struct ProductTorus {
    p: usize,
    q: usize,
    a: f64,
    b: f64,
    params: Vec<ParamRange>,
}

impl ProductTorus {
    pub fn new(p: usize, q: usize, a: f64) -> Result<Self> {
        if p == 0 || q == 0 || p + q != 6 {
            return Err(Error::Config(format!(
                "product torus needs p, q >= 1 with p + q = 6, got ({p}, {q})"
            )));
        }
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Config(format!("radius a = {a} outside (0, 1)")));
        }
        let mut params = hypersphere_params(p);
        params.extend(hypersphere_params(q));
        Ok(Self {
            p,
            q,
            a,
            b: (1.0 - a * a).sqrt(),
            params,
        })
    }

    pub fn radii(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn factors(&self) -> (usize, usize) {
        (self.p, self.q)
    }
}

impl ParametricMap for ProductTorus {
    fn dim(&self) -> usize {
        6
    }
    fn params(&self) -> &[ParamRange] {
        &self.params
    }
    fn eval<S: Scalar>(&self, u: &[S]) -> [S; 8] {
        let s = hypersphere(&u[..self.p]);
        let t = hypersphere(&u[self.p..]);
        let mut x = constant_oct::<S>();
        for (k, v) in s.into_iter().enumerate() {
            x[k] = v * self.a;
        }
        for (k, v) in t.into_iter().enumerate() {
            x[self.p + 1 + k] = v * self.b;
        }
        x
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        let s = hypersphere(&u[..self.p]);
        let t = hypersphere(&u[self.p..]);
        let mut r = [0.0; 8];
        for (k, v) in s.into_iter().enumerate() {
            r[k] = self.b * v;
        }
        for (k, v) in t.into_iter().enumerate() {
            r[self.p + 1 + k] = -self.a * v;
        }
        r
    }
    fn label(&self) -> String {
        format!("product_torus({},{},{})", self.p, self.q, self.a)
    }
}

/// Geodesic sphere with a varying latitude `t(u) = t0 + eps cos(mode u1)`.
/// Rotationally symmetric and, for `eps != 0`, not of constant mean curvature.
#[derive(Debug, Clone)]
pub struct PerturbedSphere {
    t0: f64,
    eps: f64,
    mode: u32,
    params: Vec<ParamRange>,
}

impl PerturbedSphere {
    pub fn new(t0: f64, eps: f64, mode: u32) -> Result<Self> {
        if !(eps.abs() < t0.min(PI - t0)) {
            return Err(Error::Config(format!(
                "perturbation eps = {eps} pushes the latitude out of (0, pi) around t0 = {t0}"
            )));
        }
        if mode == 0 {
            return Err(Error::Config("perturbation mode must be >= 1".into()));
        }
        Ok(Self {
            t0,
            eps,
            mode,
            params: hypersphere_params(6),
        })
    }

    pub fn latitude(&self, u1: f64) -> f64 {
        self.t0 + self.eps * (self.mode as f64 * u1).cos()
    }

    pub fn parameters(&self) -> (f64, f64, u32) {
        (self.t0, self.eps, self.mode)
    }
}

impl ParametricMap for PerturbedSphere {
    fn dim(&self) -> usize {
        6
    }
    fn params(&self) -> &[ParamRange] {
        &self.params
    }
    fn eval<S: Scalar>(&self, u: &[S]) -> [S; 8] {
        let t = (u[0] * self.mode as f64).cos() * self.eps + self.t0;
        let (c, s) = (t.cos(), t.sin());
        let w = hypersphere(u);
        let mut x = constant_oct::<S>();
        x[0] = c;
        for k in 0..7 {
            x[k + 1] = w[k] * s;
        }
        x
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        let t = self.latitude(u[0]);
        let w = hypersphere(u);
        let mut r = [0.0; 8];
        r[0] = t.sin();
        for k in 0..7 {
            r[k + 1] = -t.cos() * w[k];
        }
        r
    }
    fn label(&self) -> String {
        format!(
            "perturbed_sphere({},{},{})",
            self.t0, self.eps, self.mode
        )
    }
}

/// The flat torus `(1/2)(cos u1, sin u1, ..., cos u4, sin u4)` in `S^7`.
/// A codimension-3 test surface for metric-only operations.
#[derive(Debug, Clone)]
pub struct FlatTorus {
    params: Vec<ParamRange>,
}

impl Default for FlatTorus {
    fn default() -> Self {
        Self {
            params: vec![ParamRange::periodic(0.0, TAU); 4],
        }
    }
}

impl ParametricMap for FlatTorus {
    fn dim(&self) -> usize {
        4
    }
    fn params(&self) -> &[ParamRange] {
        &self.params
    }
    fn eval<S: Scalar>(&self, u: &[S]) -> [S; 8] {
        let mut x = constant_oct::<S>();
        for k in 0..4 {
            x[2 * k] = u[k].cos() * 0.5;
            x[2 * k + 1] = u[k].sin() * 0.5;
        }
        x
    }
    fn normal_reference(&self, _u: &[f64]) -> Octonion {
        [0.0; 8]
    }
    fn label(&self) -> String {
        "flat_torus".into()
    }
}

/// A 5-parameter section of `S^3(a) x S^3(b)` transverse to the Hopf fibres,
/// describing a hypersurface of `CP^3`. The first factor is gauge-fixed to
/// `sigma = cos(al) + sin(al)(cos(be) j + sin(be) k)`; the second is a full
/// hyperspherical `S^3`. The range of `al` keeps `a0^2 + a1^2 >= delta`.
#[derive(Debug, Clone)]
pub struct ProductTorusLift {
    a: f64,
    b: f64,
    delta: f64,
    params: Vec<ParamRange>,
}

impl ProductTorusLift {
    pub fn new(a: f64, delta: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Config(format!("radius a = {a} outside (0, 1)")));
        }
        if !(delta > 0.0 && delta < a * a) {
            return Err(Error::Config(format!(
                "singular-set margin delta = {delta} must lie in (0, a^2 = {})",
                a * a
            )));
        }
        let alpha_max = ((delta.sqrt()) / a).acos();
        let mut params = vec![
            ParamRange::open(0.0, alpha_max),
            ParamRange::periodic(0.0, TAU),
        ];
        params.extend(hypersphere_params(3));
        Ok(Self {
            a,
            b: (1.0 - a * a).sqrt(),
            delta,
            params,
        })
    }

    pub fn radii(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

impl ParametricMap for ProductTorusLift {
    fn dim(&self) -> usize {
        5
    }
    fn params(&self) -> &[ParamRange] {
        &self.params
    }
    fn eval<S: Scalar>(&self, u: &[S]) -> [S; 8] {
        let (al, be) = (u[0], u[1]);
        let t = hypersphere(&u[2..]);
        let mut x = constant_oct::<S>();
        x[0] = al.cos() * self.a;
        x[2] = al.sin() * be.cos() * self.a;
        x[3] = al.sin() * be.sin() * self.a;
        for (k, v) in t.into_iter().enumerate() {
            x[4 + k] = v * self.b;
        }
        x
    }
    fn normal_reference(&self, u: &[f64]) -> Octonion {
        let x = self.eval(u);
        let (a, b) = (self.a, self.b);
        std::array::from_fn(|k| if k < 4 { x[k] * b / a } else { -x[k] * a / b })
    }
    fn label(&self) -> String {
        format!("product_torus_lift({},{})", self.a, self.delta)
    }
}

/// Identifier of a catalog chart with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum ChartId {
    Equator,
    GeodesicSphere { t0: f64 },
    ProductTorus { p: usize, q: usize, a: f64 },
    PerturbedSphere { t0: f64, eps: f64, mode: u32 },
    ProductTorusLift { a: f64, delta: f64 },
    FlatTorus,
}

impl ChartId {
    pub fn build(&self) -> Result<Box<dyn Chart>> {
        Ok(match *self {
            ChartId::Equator => Box::new(GeodesicSphere::equator()),
            ChartId::GeodesicSphere { t0 } => {
                if !(t0 > 0.0 && t0 < PI) {
                    return Err(Error::Config(format!("t0 = {t0} outside (0, pi)")));
                }
                Box::new(GeodesicSphere::new(t0))
            }
            ChartId::ProductTorus { p, q, a } => Box::new(ProductTorus::new(p, q, a)?),
            ChartId::PerturbedSphere { t0, eps, mode } => {
                Box::new(PerturbedSphere::new(t0, eps, mode)?)
            }
            ChartId::ProductTorusLift { a, delta } => Box::new(ProductTorusLift::new(a, delta)?),
            ChartId::FlatTorus => Box::new(FlatTorus::default()),
        })
    }

    /// Whether the catalog surface has constant mean curvature.
    pub fn is_cmc(&self) -> bool {
        match self {
            ChartId::PerturbedSphere { eps, .. } => *eps == 0.0,
            ChartId::FlatTorus => false,
            _ => true,
        }
    }

    /// Whether the chart is a lift of a hypersurface of `CP^3`.
    pub fn is_cp3_lift(&self) -> bool {
        matches!(self, ChartId::ProductTorusLift { .. })
    }

    /// Builds an identifier from a bare chart name and named parameters, with
    /// catalog defaults for anything missing.
    pub fn from_parts(name: &str, get: impl Fn(&str) -> Option<f64>) -> Result<Self> {
        let num = |key: &str, default: f64| get(key).unwrap_or(default);
        let int = |key: &str, default: usize| -> Result<usize> {
            let v = num(key, default as f64);
            if v.fract() != 0.0 || !(0.0..=64.0).contains(&v) {
                return Err(Error::Config(format!("`{key}` must be a small non-negative integer")));
            }
            Ok(v as usize)
        };
        Ok(match name {
            "equator" => ChartId::Equator,
            "geodesic_sphere" => ChartId::GeodesicSphere {
                t0: num("t0", PI / 3.0),
            },
            "product_torus" => ChartId::ProductTorus {
                p: int("p", 3)?,
                q: int("q", 3)?,
                a: num("a", 0.6),
            },
            "perturbed_sphere" => ChartId::PerturbedSphere {
                t0: num("t0", PI / 3.0),
                eps: num("eps", 0.05),
                mode: int("mode", 1)? as u32,
            },
            "product_torus_lift" => ChartId::ProductTorusLift {
                a: num("a", 0.6),
                delta: num("delta", 0.1),
            },
            "flat_torus" => ChartId::FlatTorus,
            other => return Err(Error::UnknownChart(other.to_string())),
        })
    }
}

impl fmt::Display for ChartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartId::Equator => write!(f, "equator"),
            ChartId::GeodesicSphere { t0 } => write!(f, "geodesic_sphere({t0})"),
            ChartId::ProductTorus { p, q, a } => write!(f, "product_torus({p},{q},{a})"),
            ChartId::PerturbedSphere { t0, eps, mode } => {
                write!(f, "perturbed_sphere({t0},{eps},{mode})")
            }
            ChartId::ProductTorusLift { a, delta } => write!(f, "product_torus_lift({a},{delta})"),
            ChartId::FlatTorus => write!(f, "flat_torus"),
        }
    }
}

/// Parses `name` or `name(arg, ...)`, e.g. `product_torus(3,3,0.6)`.
/// Numeric arguments also accept `pi` and `pi/<n>`.
impl FromStr for ChartId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(open) => {
                let inner = s[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownChart(s.to_string()))?;
                let args = if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner
                        .split(',')
                        .map(|a| parse_number(a.trim()))
                        .collect::<Result<Vec<f64>>>()?
                };
                (s[..open].trim(), args)
            }
            None => (s, Vec::new()),
        };
        let keys: &[&str] = match name {
            "equator" | "flat_torus" => &[],
            "geodesic_sphere" => &["t0"],
            "product_torus" => &["p", "q", "a"],
            "perturbed_sphere" => &["t0", "eps", "mode"],
            "product_torus_lift" => &["a", "delta"],
            other => return Err(Error::UnknownChart(other.to_string())),
        };
        if args.len() > keys.len() {
            return Err(Error::Config(format!(
                "`{name}` takes at most {} arguments, got {}",
                keys.len(),
                args.len()
            )));
        }
        ChartId::from_parts(name, |key| {
            keys.iter().position(|k| *k == key).and_then(|i| args.get(i).copied())
        })
    }
}

/// Parses a float, also accepting `pi`, `pi/<n>` and `<m>pi/<n>`-free forms
/// such as `2*pi/3`.
pub fn parse_number(s: &str) -> Result<f64> {
    let bad = || Error::Config(format!("cannot parse number `{s}`"));
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim().parse::<f64>().map_err(|_| bad())?)),
        None => (s, None),
    };
    let num = match num.strip_suffix("pi") {
        Some(prefix) => {
            let prefix = prefix.trim().trim_end_matches('*').trim();
            let m = if prefix.is_empty() {
                1.0
            } else {
                prefix.parse::<f64>().map_err(|_| bad())?
            };
            m * PI
        }
        None => return Err(bad()),
    };
    let v = match den {
        Some(d) if d != 0.0 => num / d,
        Some(_) => return Err(bad()),
        None => num,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersphere_is_unit() {
        let w = hypersphere(&[0.3, 1.1, 2.0, 0.7, 1.9, 4.0]);
        let n: f64 = w.iter().map(|v| v * v).sum();
        assert!((n - 1.0).abs() < 1e-15);
        assert_eq!(w.len(), 7);
    }

    #[test]
    fn catalog_points_are_unit() {
        let u6 = [0.9, 1.2, 2.1, 1.4, 0.8, 5.0];
        for id in [
            "equator",
            "geodesic_sphere(pi/3)",
            "product_torus(3,3,0.6)",
            "product_torus(2,4,0.3)",
            "perturbed_sphere(pi/3,0.05,1)",
        ] {
            let c = id.parse::<ChartId>().unwrap().build().unwrap();
            let x = c.point(&u6);
            let n: f64 = x.iter().map(|v| v * v).sum();
            assert!((n - 1.0).abs() < 1e-14, "{id}");
        }
        let lift = ProductTorusLift::new(0.6, 0.1).unwrap();
        let x = Chart::point(&lift, &[0.5, 1.0, 1.2, 2.0, 3.0]);
        let n: f64 = x.iter().map(|v| v * v).sum();
        assert!((n - 1.0).abs() < 1e-14);
        assert!(x[0] * x[0] + x[1] * x[1] >= 0.1);
    }

    #[test]
    fn parse_chart_ids() {
        assert_eq!("equator".parse::<ChartId>().unwrap(), ChartId::Equator);
        assert_eq!(
            "product_torus(3, 3, 0.6)".parse::<ChartId>().unwrap(),
            ChartId::ProductTorus { p: 3, q: 3, a: 0.6 }
        );
        match "geodesic_sphere(pi/3)".parse::<ChartId>().unwrap() {
            ChartId::GeodesicSphere { t0 } => assert!((t0 - PI / 3.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert!("nonsense".parse::<ChartId>().is_err());
        assert!("equator(1)".parse::<ChartId>().is_err());
        assert!("geodesic_sphere(1".parse::<ChartId>().is_err());
        assert!("product_torus(3,3.5,0.6)".parse::<ChartId>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for id in [
            ChartId::Equator,
            ChartId::GeodesicSphere { t0: 1.25 },
            ChartId::ProductTorus { p: 2, q: 4, a: 0.5 },
            ChartId::PerturbedSphere { t0: 1.0, eps: 0.05, mode: 2 },
            ChartId::ProductTorusLift { a: 0.6, delta: 0.1 },
        ] {
            assert_eq!(id.to_string().parse::<ChartId>().unwrap(), id);
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(ChartId::ProductTorus { p: 3, q: 4, a: 0.5 }.build().is_err());
        assert!(ChartId::GeodesicSphere { t0: 4.0 }.build().is_err());
        assert!(ChartId::PerturbedSphere { t0: 0.1, eps: 0.2, mode: 1 }.build().is_err());
        assert!(ChartId::ProductTorusLift { a: 0.2, delta: 0.1 }.build().is_err());
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_number("1e-3").unwrap(), 1e-3);
        assert!((parse_number("2*pi/3").unwrap() - 2.0 * PI / 3.0).abs() < 1e-15);
        assert!((parse_number("pi").unwrap() - PI).abs() < 1e-15);
        assert!(parse_number("pi/0").is_err());
        assert!(parse_number("inf").is_err());
        assert!(parse_number("").is_err());
    }
}
