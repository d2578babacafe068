//! Vector math, the polygon and surface-mesh data model, and the measure
//! operations (area, volume, normals) the transforms are checked against.

mod mesh;
mod polygon;
mod validate;
mod vec;

pub use mesh::{facet_area, facet_normal, mesh_volume, Facet, SurfaceMesh};
pub use polygon::{polygon_area, segment_normal_2d, Polygon2D};
pub use validate::{validate_mesh, NonPlanarFacet, ValidationReport};
pub use vec::{Vec2, Vec3};

/// Segments shorter than this (absolute coordinates) are treated as degenerate.
pub const DEGENERATE_SEGMENT_LENGTH: f64 = 1e-14;

/// Planarity tolerance as a fraction of the mesh bounding-box diagonal.
pub const PLANARITY_RELATIVE_TOLERANCE: f64 = 1e-9;

/// First-three-vertex triangles whose normalized cross product falls below
/// this are collinear.
pub const COLLINEAR_SINE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("degenerate segment: endpoints closer than {DEGENERATE_SEGMENT_LENGTH}")]
    DegenerateSegment,
    #[error("facet {facet} is degenerate (first three vertices collinear or coincident)")]
    DegenerateFacet { facet: usize },
    #[error("mesh is not watertight: {open_edges} open and {inconsistent_edges} inconsistently oriented edges")]
    OpenMesh {
        open_edges: usize,
        inconsistent_edges: usize,
    },
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("facet {facet} has fewer than 3 vertices")]
    ShortFacet { facet: usize },
    #[error("facet {facet} references vertex {index}, but the mesh has {vertex_count} vertices")]
    IndexOutOfRange {
        facet: usize,
        index: usize,
        vertex_count: usize,
    },
    #[error("facet {facet} repeats vertex {index} on consecutive corners")]
    RepeatedVertex { facet: usize, index: usize },
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
}
