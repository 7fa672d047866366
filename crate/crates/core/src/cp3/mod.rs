//! The circle action on `S^7`, the invariant fields `W_v` and the Gauss map of
//! hypersurfaces of `CP^3`.

pub mod hopf;
pub mod lift;

pub use hopf::{
    gram_scan_csv, hopf_act, hopf_symmetrize, left_i_is_conjugate_rotation, w_field, w_gram,
    QuadratureSpec, WGram,
};
pub use lift::{
    cp3_gauss_map, cp3_horizontal_project, cp3_laplacian_terms, check_lift_invariance, z_field,
    z_v, Cp3Gauss, HopfRotated, HorizontalVector, PhaseShifted, DEFAULT_DELTA,
};
