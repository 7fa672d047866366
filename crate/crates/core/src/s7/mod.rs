//! Vector fields on `S^7`, the octonionic Gauss map of hypersurfaces and the
//! checks built on it.

pub mod fields;
pub mod gauss;
pub mod orthant;
pub mod topology;

pub use fields::{
    is_hopf_multiple, translate_to_identity, translational_field, FieldKind, HopfVerdict,
    VectorFieldSpec,
};
pub use gauss::{
    gauss_laplacian_residual, gauss_map, harmonicity_defect, s7_laplacian_terms, LaplacianTerms,
    PointRecord, SignVariant,
};
pub use orthant::{hemisphere_checks, orthant_containment, HemisphereCheck, OrthantReport, OrthantSpec};
pub use topology::SimplicialComplex;
