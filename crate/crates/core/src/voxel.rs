//! Rectilinear voxelization of closed meshes and the exact transform of the
//! resulting set of boxes. This is the gridded baseline the polyhedral
//! transform is compared against.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::ft::ft_prism;
use crate::geometry::{mesh_volume, GeometryError, SurfaceMesh, Vec3};

/// A ray passing closer than this to a projected edge or vertex counts as
/// grazing and is recast from a shifted origin.
const GRAZING_DISTANCE: f64 = 1e-12;
/// Shift applied per retry, as a fraction of the pitch.
const JITTER_FRACTION: f64 = 1e-7;
const MAX_JITTER_ATTEMPTS: usize = 16;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VoxelError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("voxel pitch must be positive and finite, got {0}")]
    InvalidPitch(f64),
    #[error("occupancy has {found} cells but dims {dims:?} need {expected}")]
    OccupancyLength {
        dims: [usize; 3],
        expected: usize,
        found: usize,
    },
    #[error("could not find a non-grazing ray for row ({iy}, {iz})")]
    Grazing { iy: usize, iz: usize },
}

/// Cubic cells of edge `pitch`; cell `(ix, iy, iz)` spans
/// `origin + [ix, ix+1] x [iy, iy+1] x [iz, iz+1] * pitch`.
/// Cells are stored with `ix` varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct VoxelGrid {
    pitch: f64,
    origin: Vec3,
    dims: [usize; 3],
    occupancy: Vec<bool>,
}

impl VoxelGrid {
    pub fn new(
        pitch: f64,
        origin: Vec3,
        dims: [usize; 3],
        occupancy: Vec<bool>,
    ) -> Result<Self, VoxelError> {
        if !(pitch > 0.0 && pitch.is_finite()) {
            return Err(VoxelError::InvalidPitch(pitch));
        }
        let expected = dims[0] * dims[1] * dims[2];
        if occupancy.len() != expected {
            return Err(VoxelError::OccupancyLength {
                dims,
                expected,
                found: occupancy.len(),
            });
        }
        Ok(Self {
            pitch,
            origin,
            dims,
            occupancy,
        })
    }

    pub fn pitch(&self) -> f64 {
        self.pitch
    }

    pub fn origin(&self) -> Vec3 {
        self.origin
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn occupancy(&self) -> &[bool] {
        &self.occupancy
    }

    pub fn is_occupied(&self, ix: usize, iy: usize, iz: usize) -> bool {
        self.occupancy[ix + self.dims[0] * (iy + self.dims[1] * iz)]
    }

    pub fn occupied_count(&self) -> usize {
        self.occupancy.iter().filter(|&&o| o).count()
    }

    /// Occupied cell indices in ascending storage order.
    pub fn occupied_cells(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let [nx, ny, _] = self.dims;
        self.occupancy
            .iter()
            .enumerate()
            .filter(|(_, &o)| o)
            .map(move |(k, _)| [k % nx, (k / nx) % ny, k / (nx * ny)])
    }

    pub fn cell_corner(&self, [ix, iy, iz]: [usize; 3]) -> Vec3 {
        self.origin + Vec3::new(ix as f64, iy as f64, iz as f64) * self.pitch
    }

    pub fn cell_center(&self, cell: [usize; 3]) -> Vec3 {
        self.cell_corner(cell) + Vec3::new(0.5, 0.5, 0.5) * self.pitch
    }

    /// One `ix iy iz` line per occupied cell.
    pub fn occupancy_text(&self) -> String {
        let mut out = String::new();
        for [ix, iy, iz] in self.occupied_cells() {
            let _ = writeln!(out, "{ix} {iy} {iz}");
        }
        out
    }
}

/// Projected triangle used by the row ray caster.
struct RayTriangle {
    p: [Vec3; 3],
    lo: (f64, f64),
    hi: (f64, f64),
}

enum RowHits {
    Crossings(Vec<f64>),
    Grazing,
}

impl RayTriangle {
    fn new(p: [Vec3; 3]) -> Self {
        let lo = (
            p[0].y.min(p[1].y).min(p[2].y),
            p[0].z.min(p[1].z).min(p[2].z),
        );
        let hi = (
            p[0].y.max(p[1].y).max(p[2].y),
            p[0].z.max(p[1].z).max(p[2].z),
        );
        Self { p, lo, hi }
    }
}

/// Distance from `(y, z)` to the segment `a-b` in the yz projection.
fn segment_distance(y: f64, z: f64, a: Vec3, b: Vec3) -> f64 {
    let (dy, dz) = (b.y - a.y, b.z - a.z);
    let (py, pz) = (y - a.y, z - a.z);
    let len2 = dy * dy + dz * dz;
    let t = if len2 > 0.0 {
        ((py * dy + pz * dz) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (ey, ez) = (py - t * dy, pz - t * dz);
    (ey * ey + ez * ez).sqrt()
}

/// x-coordinates where the line `{(x, y, z) : x ∈ R}` crosses the surface.
fn row_crossings(tris: &[RayTriangle], y: f64, z: f64) -> RowHits {
    let mut xs = Vec::new();
    for t in tris {
        if y < t.lo.0 - GRAZING_DISTANCE
            || y > t.hi.0 + GRAZING_DISTANCE
            || z < t.lo.1 - GRAZING_DISTANCE
            || z > t.hi.1 + GRAZING_DISTANCE
        {
            continue;
        }
        let [a, b, c] = t.p;
        if segment_distance(y, z, a, b) < GRAZING_DISTANCE
            || segment_distance(y, z, b, c) < GRAZING_DISTANCE
            || segment_distance(y, z, c, a) < GRAZING_DISTANCE
        {
            return RowHits::Grazing;
        }
        // signed sub-areas opposite each corner in the yz projection
        let w = |p: Vec3, q: Vec3| (q.y - p.y) * (z - p.z) - (q.z - p.z) * (y - p.y);
        let (wa, wb, wc) = (w(b, c), w(c, a), w(a, b));
        let total = wa + wb + wc;
        if total == 0.0 {
            continue;
        }
        let inside = (wa > 0.0 && wb > 0.0 && wc > 0.0) || (wa < 0.0 && wb < 0.0 && wc < 0.0);
        if inside {
            xs.push((wa * a.x + wb * b.x + wc * c.x) / total);
        }
    }
    xs.sort_by(f64::total_cmp);
    RowHits::Crossings(xs)
}

/// Occupancy of a closed mesh on a grid of cubes of edge `pitch`.
///
/// The grid is centered on the mesh's volume centroid with an even number
/// of cells per axis, so cell centers sit at half-pitch offsets from the
/// centroid, and it covers the bounding box. A cell is occupied when its
/// center is inside the mesh by crossing parity of a ray along +x. Rows of
/// cells are processed in parallel; results do not depend on scheduling.
pub fn voxelize(mesh: &SurfaceMesh, pitch: f64) -> Result<VoxelGrid, VoxelError> {
    if !(pitch > 0.0 && pitch.is_finite()) {
        return Err(VoxelError::InvalidPitch(pitch));
    }
    mesh_volume(mesh)?;

    let (lo, hi) = mesh.bounding_box().unwrap_or((Vec3::ZERO, Vec3::ZERO));
    let center = mesh.centroid();
    let half_cells = |c: f64, l: f64, h: f64| (((c - l).max(h - c) / pitch).ceil() as usize).max(1);
    let half = [
        half_cells(center.x, lo.x, hi.x),
        half_cells(center.y, lo.y, hi.y),
        half_cells(center.z, lo.z, hi.z),
    ];
    let dims = [2 * half[0], 2 * half[1], 2 * half[2]];
    let origin = center - Vec3::new(half[0] as f64, half[1] as f64, half[2] as f64) * pitch;

    let tris: Vec<RayTriangle> = mesh
        .facets()
        .iter()
        .flat_map(|f| {
            let idx = f.indices();
            let v = mesh.vertices();
            idx[1..]
                .windows(2)
                .map(move |w| RayTriangle::new([v[idx[0]], v[w[0]], v[w[1]]]))
        })
        .collect();

    let [nx, ny, nz] = dims;
    let rows: Vec<Vec<bool>> = (0..ny * nz)
        .into_par_iter()
        .map(|row| {
            let (iy, iz) = (row % ny, row / ny);
            let y0 = origin.y + (iy as f64 + 0.5) * pitch;
            let z0 = origin.z + (iz as f64 + 0.5) * pitch;
            // unequal y/z shifts so that rays on a 45-degree diagonal move off it
            let step = JITTER_FRACTION * pitch;
            let golden = 0.5 * (1.0 + 5f64.sqrt());
            let mut attempt = 0;
            let xs = loop {
                let k = attempt as f64;
                match row_crossings(&tris, y0 + k * step, z0 + k * golden * step) {
                    RowHits::Crossings(xs) => break xs,
                    RowHits::Grazing if attempt < MAX_JITTER_ATTEMPTS => attempt += 1,
                    RowHits::Grazing => return Err(VoxelError::Grazing { iy, iz }),
                }
            };
            Ok((0..nx)
                .map(|ix| {
                    let x = origin.x + (ix as f64 + 0.5) * pitch;
                    let beyond = xs.len() - xs.partition_point(|&cx| cx <= x);
                    beyond % 2 == 1
                })
                .collect())
        })
        .collect::<Result<_, VoxelError>>()?;

    VoxelGrid::new(pitch, origin, dims, rows.concat())
}

/// Exact transform of the occupied cells:
/// `Σ_cells e^{i q·corner} · ft_prism(q, d, d, d)`, summed in ascending
/// cell order.
pub fn voxel_ft(grid: &VoxelGrid, q: Vec3) -> Complex64 {
    let d = grid.pitch;
    let cell = ft_prism(q, d, d, d).expect("pitch is validated on construction");
    let phases = grid
        .occupied_cells()
        .fold(Complex64::new(0.0, 0.0), |acc, c| {
            let (s, co) = q.dot(grid.cell_corner(c)).sin_cos();
            acc + Complex64::new(co, s)
        });
    phases * cell
}
