use num_complex::Complex64;

use super::kernel::{cis, cis_minus_one, contour_area_excess, contour_area_integral};
use super::{FtError, PERP_Q_RELATIVE, ZERO_Q_RELATIVE};
use crate::geometry::{facet_area, facet_normal, mesh_volume, SurfaceMesh, Vec3};

/// Split of a wave vector against a facet normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FacetDecomposition {
    pub normal: Vec3,
    /// Component of `q` along the normal.
    pub q_par: f64,
    /// `q - q_par * normal`, lying in the facet plane.
    pub q_perp: Vec3,
    /// Plane offset `normal · r0`.
    pub r_par: f64,
}

impl FacetDecomposition {
    pub fn new(q: Vec3, normal: Vec3, point_on_plane: Vec3) -> Self {
        let q_par = q.dot(normal);
        Self {
            normal,
            q_par,
            q_perp: q - normal * q_par,
            r_par: normal.dot(point_on_plane),
        }
    }
}

/// Which evaluation route [`ft_facet_branch`] takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FacetBranch {
    /// Contour sum unless `|q_perp| <= 1e-9 |q|`, then the area limit.
    Auto,
    /// Always the contour sum (requires `q_perp != 0`).
    Contour,
    /// Always the `q_perp -> 0` limit `area * e^{i q·r0}`.
    Area,
}

/// Facet geometry cached for repeated evaluation.
#[derive(Debug, Clone)]
struct PreparedFacet {
    corners: Vec<Vec3>,
    normal: Vec3,
    area: f64,
}

impl PreparedFacet {
    fn new(mesh: &SurfaceMesh, facet: usize) -> Result<Self, FtError> {
        Ok(Self {
            corners: mesh.facet_points(facet).collect(),
            normal: facet_normal(mesh, facet)?,
            area: facet_area(mesh, facet)?,
        })
    }

    /// `(-i q_par / |q|^2) · e^{i q·r0} · ∫_A e^{i q_perp·(r - r0)} dA`.
    fn eval(&self, q: Vec3, q2: f64, branch: FacetBranch) -> Complex64 {
        let r0 = self.corners[0];
        let q_par = q.dot(self.normal);
        if q_par == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let q_perp = q - self.normal * q_par;
        let use_area = match branch {
            FacetBranch::Auto => q_perp.norm_squared() <= PERP_Q_RELATIVE * PERP_Q_RELATIVE * q2,
            FacetBranch::Contour => false,
            FacetBranch::Area => true,
        };
        let in_plane = if use_area {
            Complex64::new(self.area, 0.0)
        } else {
            let n = self.normal;
            contour_area_integral(q_perp, r0, &self.corners, |d| d.cross(n))
        };
        let prefactor = cis(q.dot(r0)) * Complex64::new(0.0, -q_par / q2);
        prefactor * in_plane
    }

    /// The facet term measured from `center` with its constant part removed:
    /// `(-i q_par / |q|^2) · (e^{i q·(r0 - center)} ∫_A e^{i q_perp·(r - r0)} dA - area)`.
    ///
    /// The removed parts `-i q_par area / |q|^2` sum to zero over a closed
    /// surface, yet each is of order `1/|q|`; dropping them keeps every term
    /// bounded as `q -> 0`.
    fn eval_centered(&self, q: Vec3, q2: f64, center: Vec3) -> Complex64 {
        let r0 = self.corners[0];
        let q_par = q.dot(self.normal);
        if q_par == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let q_perp = q - self.normal * q_par;
        let excess = if q_perp.norm_squared() <= PERP_Q_RELATIVE * PERP_Q_RELATIVE * q2 {
            Complex64::new(0.0, 0.0)
        } else {
            let n = self.normal;
            contour_area_excess(q_perp, r0, &self.corners, |d| d.cross(n))
        };
        let in_plane = excess + self.area;
        let shifted = cis_minus_one(q.dot(r0 - center)) * in_plane + excess;
        Complex64::new(0.0, -q_par / q2) * shifted
    }
}

/// Surface integral of `F·n` over one facet, where `F = -i q e^{i q·r} / |q|^2`
/// has divergence `e^{i q·r}`. Summed over a closed mesh this is the volume
/// transform.
pub fn ft_facet(q: Vec3, mesh: &SurfaceMesh, facet: usize) -> Result<Complex64, FtError> {
    ft_facet_branch(q, mesh, facet, FacetBranch::Auto)
}

/// [`ft_facet`] with the evaluation route pinned, for checking that the
/// contour sum and the in-plane `q -> 0` limit agree.
pub fn ft_facet_branch(
    q: Vec3,
    mesh: &SurfaceMesh,
    facet: usize,
    branch: FacetBranch,
) -> Result<Complex64, FtError> {
    let q2 = q.norm_squared();
    if q2 == 0.0 {
        return Err(FtError::ZeroWaveVector);
    }
    Ok(PreparedFacet::new(mesh, facet)?.eval(q, q2, branch))
}

/// Volume transform of a closed mesh, with per-facet geometry precomputed
/// so it can be evaluated at many wave vectors. Shareable across threads.
#[derive(Debug, Clone)]
pub struct MeshTransform {
    facets: Vec<PreparedFacet>,
    volume: f64,
    zero_q: f64,
    center: Vec3,
}

impl MeshTransform {
    /// Fails if the mesh is not watertight or has a degenerate facet.
    pub fn new(mesh: &SurfaceMesh) -> Result<Self, FtError> {
        let volume = mesh_volume(mesh)?;
        let facets = (0..mesh.facets().len())
            .map(|i| PreparedFacet::new(mesh, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            facets,
            volume,
            zero_q: ZERO_Q_RELATIVE / mesh.bounding_diagonal(),
            center: mesh.reference_point(),
        })
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// `∫_V e^{i q·r} dV`. Facets are summed in index order and edges in
    /// winding order, so results are reproducible bit for bit. Phases are
    /// taken about the bounding-box center, and the relative accuracy holds
    /// all the way down to the `q = 0` cutoff.
    pub fn eval(&self, q: Vec3) -> Complex64 {
        let q2 = q.norm_squared();
        if q2.sqrt() <= self.zero_q {
            return Complex64::new(self.volume, 0.0);
        }
        let sum = self.facets.iter().fold(Complex64::new(0.0, 0.0), |acc, f| {
            acc + f.eval_centered(q, q2, self.center)
        });
        cis(q.dot(self.center)) * sum
    }
}

/// One-shot volume transform. Prefer [`MeshTransform`] for many `q`.
pub fn ft_mesh(q: Vec3, mesh: &SurfaceMesh) -> Result<Complex64, FtError> {
    Ok(MeshTransform::new(mesh)?.eval(q))
}
