//! Fixed-size octonion arithmetic on `[f64; 8]`.
//!
//! This is the fast path used by the geometry code. Products go through a
//! structure-constant table generated once from the recursive product, and the
//! two routes are cross-checked in the tests.

use std::sync::OnceLock;

use super::number::cd_mul;
use super::table::generate_mult_table;

pub type Octonion = [f64; 8];

pub const ONE: Octonion = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
/// `e1`, the complex unit `i` under the standard embedding of C.
pub const I: Octonion = [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];

/// `(k, sign)` for `e_i e_j`, indexed `[i][j]`.
fn structure() -> &'static [[(usize, f64); 8]; 8] {
    static TABLE: OnceLock<[[(usize, f64); 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0usize, 0.0f64); 8]; 8];
        for e in generate_mult_table(3).expect("level 3 is supported") {
            t[e.i][e.j] = (e.k, e.sign as f64);
        }
        t
    })
}

pub fn basis(i: usize) -> Octonion {
    let mut e = [0.0; 8];
    e[i] = 1.0;
    e
}

pub fn mul(a: &Octonion, b: &Octonion) -> Octonion {
    let t = structure();
    let mut c = [0.0; 8];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let (k, s) = t[i][j];
            c[k] += s * ai * bj;
        }
    }
    c
}

/// Product through the literal doubling recursion.
pub fn mul_recursive(a: &Octonion, b: &Octonion) -> Octonion {
    let v = cd_mul(a, b);
    let mut c = [0.0; 8];
    c.copy_from_slice(&v);
    c
}

pub fn conj(a: &Octonion) -> Octonion {
    let mut c = a.map(|x| -x);
    c[0] = a[0];
    c
}

pub fn dot(a: &Octonion, b: &Octonion) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &Octonion) -> f64 {
    dot(a, a).sqrt()
}

pub fn add(a: &Octonion, b: &Octonion) -> Octonion {
    std::array::from_fn(|k| a[k] + b[k])
}

pub fn sub(a: &Octonion, b: &Octonion) -> Octonion {
    std::array::from_fn(|k| a[k] - b[k])
}

pub fn scale(a: &Octonion, s: f64) -> Octonion {
    a.map(|x| x * s)
}

/// `a + s b`
pub fn axpy(a: &Octonion, s: f64, b: &Octonion) -> Octonion {
    std::array::from_fn(|k| a[k] + s * b[k])
}

/// `conj(a) / |a|^2`; `None` for zero.
pub fn inverse(a: &Octonion) -> Option<Octonion> {
    let n2 = dot(a, a);
    (n2 != 0.0).then(|| scale(&conj(a), 1.0 / n2))
}

pub fn normalize(a: &Octonion) -> Octonion {
    scale(a, 1.0 / norm(a))
}

/// `e^{i theta} = cos(theta) + sin(theta) e1`.
pub fn exp_i(theta: f64) -> Octonion {
    let mut e = [0.0; 8];
    e[0] = theta.cos();
    e[1] = theta.sin();
    e
}

/// Imaginary part as a vector of `R^7` (coefficients of `e1..e7`).
pub fn im7(a: &Octonion) -> [f64; 7] {
    std::array::from_fn(|k| a[k + 1])
}

pub fn from_im7(v: &[f64; 7]) -> Octonion {
    let mut a = [0.0; 8];
    a[1..].copy_from_slice(v);
    a
}
