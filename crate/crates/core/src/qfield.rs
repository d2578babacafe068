//! Rectilinear wave-vector grids and batch evaluation of a transform over
//! them.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::ft::{ft_prism, ft_sphere_analytic, FtError, MeshTransform};
use crate::geometry::Vec3;
use crate::voxel::{voxel_ft, VoxelGrid};

/// Below this magnitude a reference value is left out of the relative error.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FieldError {
    #[error("invalid axis spec {spec:?}: {reason}")]
    InvalidAxis { spec: String, reason: &'static str },
    #[error("at q = ({}, {}, {}): {source}", q.x, q.y, q.z)]
    Backend { q: Vec3, source: FtError },
    #[error("non-finite transform value at q = ({}, {}, {})", q.x, q.y, q.z)]
    NonFinite { q: Vec3 },
    #[error("fields are sampled on different grids")]
    GridMismatch,
    #[error("field has {found} values but its grid has {expected} points")]
    LengthMismatch { expected: usize, found: usize },
}

/// Inclusive linear sampling of one axis: `count` points from `start` to
/// `stop`. A count of one is the single value `start`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self, FieldError> {
        let spec = || format!("{start}:{stop}:{count}");
        if count == 0 {
            return Err(FieldError::InvalidAxis {
                spec: spec(),
                reason: "count must be at least 1",
            });
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err(FieldError::InvalidAxis {
                spec: spec(),
                reason: "bounds must be finite",
            });
        }
        if count > 1 && start > stop {
            return Err(FieldError::InvalidAxis {
                spec: spec(),
                reason: "start must not exceed stop",
            });
        }
        Ok(Self { start, stop, count })
    }

    pub fn single(value: f64) -> Self {
        Self {
            start: value,
            stop: value,
            count: 1,
        }
    }

    /// The `i`-th sample. Computed as a weighted average of the endpoints so
    /// that a grid symmetric about zero yields exact negatives.
    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 || i == 0 {
            return self.start;
        }
        if i == self.count - 1 {
            return self.stop;
        }
        let last = (self.count - 1) as f64;
        let i = i as f64;
        (self.start * (last - i) + self.stop * i) / last
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(|i| self.value(i))
    }
}

impl FromStr for AxisSpec {
    type Err = FieldError;

    /// Parses `START:STOP:COUNT`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason| FieldError::InvalidAxis {
            spec: s.to_string(),
            reason,
        };
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(bad("expected START:STOP:COUNT"));
        };
        let start: f64 = start
            .trim()
            .parse()
            .map_err(|_| bad("START is not a number"))?;
        let stop: f64 = stop
            .trim()
            .parse()
            .map_err(|_| bad("STOP is not a number"))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| bad("COUNT is not a non-negative integer"))?;
        AxisSpec::new(start, stop, count)
    }
}

impl fmt::Display for AxisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

/// Tensor-product grid of wave vectors, enumerated with `qx` fastest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QGrid {
    pub x: AxisSpec,
    pub y: AxisSpec,
    pub z: AxisSpec,
}

impl QGrid {
    pub fn new(x: AxisSpec, y: AxisSpec, z: AxisSpec) -> Self {
        Self { x, y, z }
    }

    pub fn len(&self) -> usize {
        self.x.count * self.y.count * self.z.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, k: usize) -> Vec3 {
        let (nx, ny) = (self.x.count, self.y.count);
        Vec3::new(
            self.x.value(k % nx),
            self.y.value((k / nx) % ny),
            self.z.value(k / (nx * ny)),
        )
    }

    pub fn points(&self) -> impl Iterator<Item = Vec3> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }
}

/// Transform values on a [`QGrid`], stored in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct FTField {
    grid: QGrid,
    values: Vec<Complex64>,
}

impl FTField {
    pub fn new(grid: QGrid, values: Vec<Complex64>) -> Result<Self, FieldError> {
        if values.len() != grid.len() {
            return Err(FieldError::LengthMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &QGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn samples(&self) -> impl Iterator<Item = (Vec3, Complex64)> + '_ {
        self.grid.points().zip(self.values.iter().copied())
    }
}

/// What to evaluate at each grid point.
#[derive(Debug, Clone, Copy)]
pub enum Backend<'a> {
    Mesh(&'a MeshTransform),
    Voxel(&'a VoxelGrid),
    /// Analytic ball of the given radius about the origin.
    Sphere {
        radius: f64,
    },
    /// Analytic box `[0,a] x [0,b] x [0,c]`.
    Prism {
        a: f64,
        b: f64,
        c: f64,
    },
}

impl Backend<'_> {
    pub fn eval(&self, q: Vec3) -> Result<Complex64, FtError> {
        match *self {
            Backend::Mesh(m) => Ok(m.eval(q)),
            Backend::Voxel(g) => Ok(voxel_ft(g, q)),
            Backend::Sphere { radius } => ft_sphere_analytic(q.norm(), radius),
            Backend::Prism { a, b, c } => ft_prism(q, a, b, c),
        }
    }
}

/// Evaluates `backend` at every grid point on the current rayon pool.
///
/// Points are independent and written by index, so the output is bitwise
/// identical for any number of worker threads. The first failing point in
/// grid order is reported.
pub fn evaluate_field(backend: &Backend<'_>, grid: &QGrid) -> Result<FTField, FieldError> {
    let results: Vec<Result<Complex64, FieldError>> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let q = grid.point(k);
            let v = backend
                .eval(q)
                .map_err(|source| FieldError::Backend { q, source })?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(FieldError::NonFinite { q });
            }
            Ok(v)
        })
        .collect();
    let values = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    FTField::new(*grid, values)
}

/// Difference statistics of a field against a reference field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub max_abs: f64,
    pub mean_abs: f64,
    /// Largest `|a - b| / |b|` over points with `|b| > 1e-12`; zero if none.
    pub max_rel: f64,
    /// Wave vector where `max_abs` occurs.
    pub at_q: Vec3,
}

impl fmt::Display for ErrorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max_abs={}", self.max_abs)?;
        writeln!(f, "mean_abs={}", self.mean_abs)?;
        writeln!(f, "max_rel={}", self.max_rel)?;
        write!(f, "at_q={},{},{}", self.at_q.x, self.at_q.y, self.at_q.z)
    }
}

/// Compares `field` against `reference`; both must share the same grid.
pub fn compare_fields(field: &FTField, reference: &FTField) -> Result<ErrorReport, FieldError> {
    if field.grid != reference.grid {
        return Err(FieldError::GridMismatch);
    }
    let mut report = ErrorReport {
        max_abs: 0.0,
        mean_abs: 0.0,
        max_rel: 0.0,
        at_q: field.grid.point(0),
    };
    let mut sum = 0.0;
    for (k, (a, b)) in field.values.iter().zip(&reference.values).enumerate() {
        let diff = (a - b).norm();
        sum += diff;
        if diff > report.max_abs {
            report.max_abs = diff;
            report.at_q = field.grid.point(k);
        }
        let scale = b.norm();
        if scale > RELATIVE_ERROR_FLOOR {
            report.max_rel = report.max_rel.max(diff / scale);
        }
    }
    report.mean_abs = sum / field.values.len() as f64;
    Ok(report)
}
