//! Extrinsic geometry of chart-parametrized hypersurfaces of `S^7`, and of
//! `CP^3` through unit lifts.

pub mod catalog;
pub mod chart;
pub mod frame;
pub mod sampling;
pub mod stencil;

pub use catalog::ChartId;
pub use chart::{Chart, ChartDerivatives, Flipped, NumericOnly, ParamRange, ParametricMap, Reparametrized};
pub use frame::{
    chart_tangent_frame, grad_h, laplace_beltrami, shape_data, unit_normal, Ambient, GradH,
    MetricData, ShapeData, ShapeSample, TangentFrame,
};
pub use stencil::StencilSpec;
