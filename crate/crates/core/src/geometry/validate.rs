use std::collections::HashMap;
use std::fmt;

use super::mesh::signed_volume;
use super::{facet_normal, SurfaceMesh, PLANARITY_RELATIVE_TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct NonPlanarFacet {
    pub facet: usize,
    /// Largest distance of a corner from the plane of the first three corners.
    pub deviation: f64,
}

/// Findings of [`validate_mesh`]. Empty lists mean no problem of that kind.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    /// Directed edges `(a, b)` whose reverse `(b, a)` appears in no facet.
    pub open_edges: Vec<(usize, usize)>,
    /// Directed edges traversed by more than one facet in the same direction.
    pub inconsistent_edges: Vec<(usize, usize)>,
    pub non_planar_facets: Vec<NonPlanarFacet>,
    pub degenerate_facets: Vec<usize>,
    /// Enclosed signed volume, only computed for closed meshes.
    pub volume: Option<f64>,
    pub planarity_tolerance: f64,
}

impl ValidationReport {
    pub fn is_watertight(&self) -> bool {
        self.open_edges.is_empty() && self.inconsistent_edges.is_empty()
    }

    pub fn has_negative_volume(&self) -> bool {
        self.volume.is_some_and(|v| v <= 0.0)
    }

    pub fn is_clean(&self) -> bool {
        self.is_watertight()
            && self.non_planar_facets.is_empty()
            && self.degenerate_facets.is_empty()
            && !self.has_negative_volume()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "watertight={}", self.is_watertight())?;
        writeln!(f, "open_edges={}", self.open_edges.len())?;
        for (a, b) in &self.open_edges {
            writeln!(f, "  open {a} {b}")?;
        }
        writeln!(f, "inconsistent_edges={}", self.inconsistent_edges.len())?;
        for (a, b) in &self.inconsistent_edges {
            writeln!(f, "  inconsistent {a} {b}")?;
        }
        writeln!(f, "non_planar_facets={}", self.non_planar_facets.len())?;
        for np in &self.non_planar_facets {
            writeln!(f, "  facet {} deviation {}", np.facet, np.deviation)?;
        }
        writeln!(f, "degenerate_facets={}", self.degenerate_facets.len())?;
        for i in &self.degenerate_facets {
            writeln!(f, "  facet {i}")?;
        }
        match self.volume {
            Some(v) => writeln!(f, "volume={v}")?,
            None => writeln!(f, "volume=undefined")?,
        }
        write!(f, "clean={}", self.is_clean())
    }
}

type EdgeList = Vec<(usize, usize)>;

/// Directed-edge bookkeeping shared with [`super::mesh_volume`]. Returns
/// `(open, inconsistent)` edges, each sorted.
pub(crate) fn edge_defects(mesh: &SurfaceMesh) -> (EdgeList, EdgeList) {
    let mut directed: HashMap<(usize, usize), u32> = HashMap::new();
    for facet in mesh.facets() {
        for e in facet.edges() {
            *directed.entry(e).or_default() += 1;
        }
    }
    let mut open = Vec::new();
    let mut inconsistent = Vec::new();
    for (&(a, b), &count) in &directed {
        if count > 1 {
            inconsistent.push((a, b));
        }
        if !directed.contains_key(&(b, a)) {
            open.push((a, b));
        }
    }
    open.sort_unstable();
    inconsistent.sort_unstable();
    (open, inconsistent)
}

/// Checks closure, orientation, facet planarity, and degeneracy.
///
/// Planarity is measured against the plane through each facet's first three
/// corners, with tolerance `1e-9` times the bounding-box diagonal.
pub fn validate_mesh(mesh: &SurfaceMesh) -> ValidationReport {
    let (open_edges, inconsistent_edges) = edge_defects(mesh);
    let tol = PLANARITY_RELATIVE_TOLERANCE * mesh.bounding_diagonal();

    let mut non_planar_facets = Vec::new();
    let mut degenerate_facets = Vec::new();
    for (i, facet) in mesh.facets().iter().enumerate() {
        let n = match facet_normal(mesh, i) {
            Ok(n) => n,
            Err(_) => {
                degenerate_facets.push(i);
                continue;
            }
        };
        if facet.len() > 3 {
            let p0 = mesh.vertices()[facet.indices()[0]];
            let deviation = mesh
                .facet_points(i)
                .skip(3)
                .map(|p| n.dot(p - p0).abs())
                .fold(0.0, f64::max);
            if deviation > tol {
                non_planar_facets.push(NonPlanarFacet {
                    facet: i,
                    deviation,
                });
            }
        }
    }

    let volume =
        (open_edges.is_empty() && inconsistent_edges.is_empty()).then(|| signed_volume(mesh));

    ValidationReport {
        open_edges,
        inconsistent_edges,
        non_planar_facets,
        degenerate_facets,
        volume,
        planarity_tolerance: tol,
    }
}
