//! Cayley-Dickson algebras: the recursive product at every level, the octonion
//! multiplication table and matrix representations, and property probes.

pub mod matrix;
pub mod number;
pub mod octonion;
pub mod properties;
pub mod table;

pub use matrix::{left_mul_matrix, right_mul_matrix, IntMatrix8, Matrix8};
pub use number::{HypercomplexNumber, MAX_LEVEL};
pub use properties::{
    check_property, complex_associativity_check, find_zero_divisor, AlgebraProperty,
    Counterexample, PropertyVerdict, ZeroDivisorSearch,
};
pub use table::{generate_mult_table, BasisProduct};
