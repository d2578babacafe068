use crate::geometry::SurfaceMesh;

use super::parse_surfacemesh;

/// Union of two unit spheres centered at `x = ±0.6`, as meshed by netgen:
/// 83 points and 160 triangles. The last point is not referenced by any
/// element.
pub const TWO_SPHERES_SURFACEMESH: &str = include_str!("../../data/two_spheres.surfacemesh");

pub fn two_spheres() -> SurfaceMesh {
    parse_surfacemesh(TWO_SPHERES_SURFACEMESH).expect("embedded fixture parses")
}
