//! Mesh and field file formats, test-mesh generators, and the embedded
//! two-sphere fixture.

mod csv;
mod fixture;
mod generate;
mod surfacemesh;

pub use self::csv::{parse_field_csv, write_field_csv, CSV_HEADER};
pub use fixture::{two_spheres, TWO_SPHERES_SURFACEMESH};
pub use generate::{generate, match_volume, GeneratorSpec, Shape, MAX_SUBDIVISION_LEVEL};
pub use surfacemesh::{parse_surfacemesh, write_surfacemesh};

use crate::geometry::GeometryError;
use crate::qfield::FieldError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MeshIoError {
    #[error("not a surface mesh file: expected header \"surfacemesh\", found {0:?}")]
    BadHeader(String),
    #[error("missing {section} count")]
    MissingCount { section: &'static str },
    #[error("{section}: declared {declared}, found {found}")]
    CountMismatch {
        section: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("line {line}: index {index} outside 1..={point_count}")]
    IndexOutOfRange {
        line: usize,
        index: usize,
        point_count: usize,
    },
    #[error("line {line}: malformed number {token:?}")]
    MalformedNumber { line: usize, token: String },
    #[error("line {line}: expected {expected} fields, found {found}")]
    WrongFieldCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unexpected data after the last declared element")]
    TrailingData { line: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("field csv: {0}")]
    BadCsv(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
