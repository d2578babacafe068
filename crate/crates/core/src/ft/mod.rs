//! Fourier transforms of constant density over polygons and polyhedra.
//!
//! All transforms use the forward convention `∫ e^{+i q·r}`. Area and volume
//! integrals are reduced to boundary sums with the divergence theorem: a
//! polygon becomes a sum over its edges, and a closed mesh becomes a sum over
//! facets, each facet itself an in-plane polygon transform.

mod analytic;
mod kernel;
mod planar;
mod volume;

pub use analytic::{ft_prism, ft_sphere_analytic};
pub use kernel::{interval_transform, sinc};
pub use planar::{ft_polygon_2d, ft_rectangle, ft_segment_2d};
pub use volume::{
    ft_facet, ft_facet_branch, ft_mesh, FacetBranch, FacetDecomposition, MeshTransform,
};

use crate::geometry::GeometryError;

/// `|q|` at or below `ZERO_Q_RELATIVE / bounding_diagonal` is treated as
/// `q = 0` and the enclosed measure is returned.
pub const ZERO_Q_RELATIVE: f64 = 1e-12;

/// A facet whose in-plane wave-vector component satisfies
/// `|q_perp| <= PERP_Q_RELATIVE * |q|` is evaluated with the area limit.
pub const PERP_Q_RELATIVE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FtError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("wave vector is zero; the per-element transform has no limit there")]
    ZeroWaveVector,
    #[error("shape dimensions must be positive")]
    InvalidDimensions,
}
