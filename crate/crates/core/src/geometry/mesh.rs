use super::validate::edge_defects;
use super::{GeometryError, Vec3, COLLINEAR_SINE_TOLERANCE, DEGENERATE_SEGMENT_LENGTH};

/// One planar polygon of a surface mesh: zero-based indices into the vertex
/// table, counter-clockwise when seen from outside the enclosed volume.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Facet(Vec<usize>);

impl Facet {
    pub fn new(indices: Vec<usize>) -> Self {
        Facet(indices)
    }

    pub fn triangle(a: usize, b: usize, c: usize) -> Self {
        Facet(vec![a, b, c])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Directed edges `(from, to)` in winding order, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    pub fn reversed(&self) -> Facet {
        let mut idx = self.0.clone();
        idx.reverse();
        Facet(idx)
    }
}

/// Vertex table plus facet table describing the closed boundary of a volume.
///
/// Construction guarantees finite coordinates, in-range indices, at least
/// three corners per facet, and no repeated consecutive corner. Closure and
/// orientation are checked separately by [`super::validate_mesh`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SurfaceMesh {
    vertices: Vec<Vec3>,
    facets: Vec<Facet>,
}

impl SurfaceMesh {
    pub fn new(vertices: Vec<Vec3>, facets: Vec<Facet>) -> Result<Self, GeometryError> {
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite(i));
        }
        for (fi, facet) in facets.iter().enumerate() {
            if facet.len() < 3 {
                return Err(GeometryError::ShortFacet { facet: fi });
            }
            if let Some(&index) = facet.indices().iter().find(|&&i| i >= vertices.len()) {
                return Err(GeometryError::IndexOutOfRange {
                    facet: fi,
                    index,
                    vertex_count: vertices.len(),
                });
            }
            if let Some((a, _)) = facet.edges().find(|(a, b)| a == b) {
                return Err(GeometryError::RepeatedVertex {
                    facet: fi,
                    index: a,
                });
            }
        }
        Ok(Self { vertices, facets })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Corner positions of facet `facet` in winding order.
    pub fn facet_points(&self, facet: usize) -> impl Iterator<Item = Vec3> + '_ {
        self.facets[facet]
            .indices()
            .iter()
            .map(|&i| self.vertices[i])
    }

    /// `(min, max)` corners of the axis-aligned bounding box, `None` when
    /// there are no vertices.
    pub fn bounding_box(&self) -> Option<(Vec3, Vec3)> {
        let first = *self.vertices.first()?;
        Some(
            self.vertices
                .iter()
                .fold((first, first), |(lo, hi), &v| (lo.min(v), hi.max(v))),
        )
    }

    pub fn bounding_diagonal(&self) -> f64 {
        self.bounding_box().map_or(0.0, |(lo, hi)| (hi - lo).norm())
    }

    /// Volume-weighted centroid of the enclosed region. Falls back to the
    /// bounding-box center when the enclosed volume is zero.
    pub fn centroid(&self) -> Vec3 {
        let origin = self.reference_point();
        let mut moment = Vec3::ZERO;
        let mut volume = 0.0;
        for_each_fan_tetra(self, origin, |a, b, c| {
            let v = a.dot(b.cross(c)) / 6.0;
            volume += v;
            moment += (a + b + c) * (v / 4.0);
        });
        if volume == 0.0 {
            return origin;
        }
        origin + moment / volume
    }

    /// Interior fixed point used to keep fan sums well conditioned under
    /// large translations.
    pub(crate) fn reference_point(&self) -> Vec3 {
        self.bounding_box()
            .map_or(Vec3::ZERO, |(lo, hi)| (lo + hi) * 0.5)
    }

    pub fn translated(&self, t: Vec3) -> SurfaceMesh {
        self.map_vertices(|v| v + t)
    }

    /// Uniform scale by `s` about `center`.
    pub fn scaled_about(&self, center: Vec3, s: f64) -> SurfaceMesh {
        self.map_vertices(|v| center + (v - center) * s)
    }

    /// Applies the row-major 3x3 matrix `m` to every vertex.
    pub fn transformed(&self, m: &[[f64; 3]; 3]) -> SurfaceMesh {
        self.map_vertices(|v| {
            Vec3::new(
                m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
            )
        })
    }

    /// Same surface with every facet winding reversed (normals flipped).
    pub fn reversed(&self) -> SurfaceMesh {
        SurfaceMesh {
            vertices: self.vertices.clone(),
            facets: self.facets.iter().map(Facet::reversed).collect(),
        }
    }

    /// Disjoint union: `other`'s vertices are appended and its facets
    /// re-indexed.
    pub fn merged(&self, other: &SurfaceMesh) -> SurfaceMesh {
        let offset = self.vertices.len();
        let mut vertices = self.vertices.clone();
        vertices.extend_from_slice(&other.vertices);
        let mut facets = self.facets.clone();
        facets.extend(
            other
                .facets
                .iter()
                .map(|f| Facet(f.indices().iter().map(|i| i + offset).collect())),
        );
        SurfaceMesh { vertices, facets }
    }

    fn map_vertices(&self, f: impl Fn(Vec3) -> Vec3) -> SurfaceMesh {
        SurfaceMesh {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            facets: self.facets.clone(),
        }
    }
}

/// Calls `f(a, b, c)` for every fan triangle of every facet, with corner
/// positions taken relative to `origin`.
fn for_each_fan_tetra(mesh: &SurfaceMesh, origin: Vec3, mut f: impl FnMut(Vec3, Vec3, Vec3)) {
    for facet in mesh.facets() {
        let idx = facet.indices();
        let p0 = mesh.vertices[idx[0]] - origin;
        for w in idx[1..].windows(2) {
            f(
                p0,
                mesh.vertices[w[0]] - origin,
                mesh.vertices[w[1]] - origin,
            );
        }
    }
}

/// Outward unit normal of facet `facet`, from the cross product of its first
/// two edges.
pub fn facet_normal(mesh: &SurfaceMesh, facet: usize) -> Result<Vec3, GeometryError> {
    let mut pts = mesh.facet_points(facet);
    let (p0, p1, p2) = (pts.next(), pts.next(), pts.next());
    let (Some(p0), Some(p1), Some(p2)) = (p0, p1, p2) else {
        return Err(GeometryError::DegenerateFacet { facet });
    };
    let (e1, e2) = (p1 - p0, p2 - p0);
    let (l1, l2) = (e1.norm(), e2.norm());
    let c = e1.cross(e2);
    let cn = c.norm();
    if l1 < DEGENERATE_SEGMENT_LENGTH
        || l2 < DEGENERATE_SEGMENT_LENGTH
        || cn.is_nan()
        || cn <= COLLINEAR_SINE_TOLERANCE * l1 * l2
    {
        return Err(GeometryError::DegenerateFacet { facet });
    }
    Ok(c / cn)
}

/// Area of a planar facet, from the magnitude of its fan vector area.
pub fn facet_area(mesh: &SurfaceMesh, facet: usize) -> Result<f64, GeometryError> {
    facet_normal(mesh, facet)?;
    Ok(0.5 * facet_vector_area2(mesh, facet).norm())
}

/// Twice the vector area of a facet (sum of fan cross products).
pub(crate) fn facet_vector_area2(mesh: &SurfaceMesh, facet: usize) -> Vec3 {
    let idx = mesh.facets[facet].indices();
    let p0 = mesh.vertices[idx[0]];
    idx[1..].windows(2).fold(Vec3::ZERO, |acc, w| {
        acc + (mesh.vertices[w[0]] - p0).cross(mesh.vertices[w[1]] - p0)
    })
}

/// Signed enclosed volume; positive for outward-oriented meshes.
///
/// Fails with [`GeometryError::OpenMesh`] unless every edge is shared by
/// exactly two facets traversing it in opposite directions.
pub fn mesh_volume(mesh: &SurfaceMesh) -> Result<f64, GeometryError> {
    let (open, inconsistent) = edge_defects(mesh);
    if !open.is_empty() || !inconsistent.is_empty() {
        return Err(GeometryError::OpenMesh {
            open_edges: open.len(),
            inconsistent_edges: inconsistent.len(),
        });
    }
    Ok(signed_volume(mesh))
}

/// Fan-sum volume without the closure check.
pub(crate) fn signed_volume(mesh: &SurfaceMesh) -> f64 {
    let mut total = 0.0;
    for_each_fan_tetra(mesh, mesh.reference_point(), |a, b, c| {
        total += a.dot(b.cross(c));
    });
    total / 6.0
}
