//! Canonical closed test meshes.

use std::collections::HashMap;
use std::f64::consts::PI;

use super::MeshIoError;
use crate::geometry::{mesh_volume, Facet, SurfaceMesh, Vec3};

pub const MAX_SUBDIVISION_LEVEL: u32 = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// Cube `[0,edge]^3`.
    Cube { edge: f64 },
    /// Box `[0,a] x [0,b] x [0,c]`.
    Prism { a: f64, b: f64, c: f64 },
    /// Subdivided icosahedron inscribed in a sphere about the origin;
    /// `20 * 4^level` triangles.
    Icosphere { radius: f64, level: u32 },
    /// Latitude/longitude sphere about the origin with `4(level+1)` stacks
    /// and `8(level+1)` slices; band quads are split into triangles.
    UvSphere { radius: f64, level: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub shape: Shape,
    /// Rescale uniformly about the centroid so the enclosed volume equals this.
    pub volume_match: Option<f64>,
}

impl GeneratorSpec {
    pub fn cube(edge: f64) -> Self {
        Shape::Cube { edge }.into()
    }

    pub fn prism(a: f64, b: f64, c: f64) -> Self {
        Shape::Prism { a, b, c }.into()
    }

    pub fn icosphere(radius: f64, level: u32) -> Self {
        Shape::Icosphere { radius, level }.into()
    }

    pub fn uvsphere(radius: f64, level: u32) -> Self {
        Shape::UvSphere { radius, level }.into()
    }

    pub fn with_volume(mut self, volume: f64) -> Self {
        self.volume_match = Some(volume);
        self
    }

    fn check(&self) -> Result<(), MeshIoError> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        let ok = match self.shape {
            Shape::Cube { edge } => positive(edge),
            Shape::Prism { a, b, c } => positive(a) && positive(b) && positive(c),
            Shape::Icosphere { radius, level } | Shape::UvSphere { radius, level } => {
                positive(radius) && level <= MAX_SUBDIVISION_LEVEL
            }
        };
        if !ok || self.volume_match.is_some_and(|v| !positive(v)) {
            return Err(MeshIoError::InvalidSpec(format!("{self:?}")));
        }
        Ok(())
    }
}

impl From<Shape> for GeneratorSpec {
    fn from(shape: Shape) -> Self {
        Self {
            shape,
            volume_match: None,
        }
    }
}

/// Builds a watertight, outward-oriented mesh for `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<SurfaceMesh, MeshIoError> {
    spec.check()?;
    let (vertices, facets) = match spec.shape {
        Shape::Cube { edge } => boxed(edge, edge, edge),
        Shape::Prism { a, b, c } => boxed(a, b, c),
        Shape::Icosphere { radius, level } => icosphere(radius, level),
        Shape::UvSphere { radius, level } => uvsphere(radius, level),
    };
    let mesh = SurfaceMesh::new(vertices, facets)?;
    match spec.volume_match {
        None => Ok(mesh),
        Some(target) => match_volume(&mesh, target),
    }
}

/// Uniformly rescales `mesh` about its centroid so its volume is `target`.
pub fn match_volume(mesh: &SurfaceMesh, target: f64) -> Result<SurfaceMesh, MeshIoError> {
    let volume = mesh_volume(mesh)?;
    if volume.is_nan() || volume <= 0.0 {
        return Err(MeshIoError::InvalidSpec(format!(
            "cannot match volume of a mesh with volume {volume}"
        )));
    }
    let s = (target / volume).cbrt();
    Ok(mesh.scaled_about(mesh.centroid(), s))
}

fn boxed(a: f64, b: f64, c: f64) -> (Vec<Vec3>, Vec<Facet>) {
    // corner i sits at (bit0 * a, bit1 * b, bit2 * c)
    let vertices = (0..8)
        .map(|i| {
            Vec3::new(
                if i & 1 != 0 { a } else { 0.0 },
                if i & 2 != 0 { b } else { 0.0 },
                if i & 4 != 0 { c } else { 0.0 },
            )
        })
        .collect();
    const QUADS: [[usize; 4]; 6] = [
        [0, 2, 3, 1], // z = 0
        [4, 5, 7, 6], // z = c
        [0, 1, 5, 4], // y = 0
        [2, 6, 7, 3], // y = b
        [0, 4, 6, 2], // x = 0
        [1, 3, 7, 5], // x = a
    ];
    let facets = QUADS
        .iter()
        .flat_map(|q| {
            [
                Facet::triangle(q[0], q[1], q[2]),
                Facet::triangle(q[0], q[2], q[3]),
            ]
        })
        .collect();
    (vertices, facets)
}

fn icosphere(radius: f64, level: u32) -> (Vec<Vec3>, Vec<Facet>) {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<Vec3> = [
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ]
    .iter()
    .map(|&p| on_sphere(Vec3::from(p), radius))
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..level {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<Vec3>| {
            *midpoints.entry((a.min(b), a.max(b))).or_insert_with(|| {
                vertices.push(on_sphere((vertices[a] + vertices[b]) * 0.5, radius));
                vertices.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for &[a, b, c] in &faces {
            let ab = midpoint(a, b, &mut vertices);
            let bc = midpoint(b, c, &mut vertices);
            let ca = midpoint(c, a, &mut vertices);
            next.extend_from_slice(&[[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }

    let facets = faces
        .iter()
        .map(|f| Facet::triangle(f[0], f[1], f[2]))
        .collect();
    (vertices, facets)
}

fn on_sphere(p: Vec3, radius: f64) -> Vec3 {
    p * (radius / p.norm())
}

fn uvsphere(radius: f64, level: u32) -> (Vec<Vec3>, Vec<Facet>) {
    let stacks = 4 * (level as usize + 1);
    let slices = 8 * (level as usize + 1);
    let mut vertices = vec![Vec3::new(0.0, 0.0, radius)];
    for i in 1..stacks {
        let theta = PI * i as f64 / stacks as f64;
        let (st, ct) = theta.sin_cos();
        for j in 0..slices {
            let phi = 2.0 * PI * j as f64 / slices as f64;
            let (sp, cp) = phi.sin_cos();
            vertices.push(Vec3::new(radius * st * cp, radius * st * sp, radius * ct));
        }
    }
    let south = vertices.len();
    vertices.push(Vec3::new(0.0, 0.0, -radius));

    let ring = |i: usize, j: usize| 1 + (i - 1) * slices + j % slices;
    let mut facets = Vec::new();
    for j in 0..slices {
        facets.push(Facet::triangle(0, ring(1, j), ring(1, j + 1)));
    }
    for i in 1..stacks - 1 {
        for j in 0..slices {
            let (u0, u1) = (ring(i, j), ring(i, j + 1));
            let (l0, l1) = (ring(i + 1, j), ring(i + 1, j + 1));
            facets.push(Facet::triangle(u0, l0, l1));
            facets.push(Facet::triangle(u0, l1, u1));
        }
    }
    for j in 0..slices {
        facets.push(Facet::triangle(
            south,
            ring(stacks - 1, j + 1),
            ring(stacks - 1, j),
        ));
    }
    (vertices, facets)
}
