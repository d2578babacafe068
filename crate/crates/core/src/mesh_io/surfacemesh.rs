//! The netgen `surfacemesh` text format.
//!
//! ```text
//! surfacemesh
//! <point count>
//! x y z            (one point per line)
//! <element count>
//! i j k            (one triangle per line, one-based point indices)
//! ```
//!
//! Fields are separated by any run of spaces or tabs and blank lines are
//! ignored.

use std::fmt::Write as _;

use super::MeshIoError;
use crate::geometry::{Facet, SurfaceMesh, Vec3};

const HEADER: &str = "surfacemesh";

/// Non-blank lines with their one-based line numbers.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_fields(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, line) in self.inner.by_ref() {
            let fields: Vec<&str> = line
                .split([' ', '\t', '\r'])
                .filter(|s| !s.is_empty())
                .collect();
            if !fields.is_empty() {
                return Some((i + 1, fields));
            }
        }
        None
    }
}

fn parse_token<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, MeshIoError> {
    token.parse().map_err(|_| MeshIoError::MalformedNumber {
        line,
        token: token.to_string(),
    })
}

fn expect_fields(line: usize, fields: &[&str], expected: usize) -> Result<(), MeshIoError> {
    if fields.len() != expected {
        return Err(MeshIoError::WrongFieldCount {
            line,
            expected,
            found: fields.len(),
        });
    }
    Ok(())
}

fn read_count(lines: &mut Lines<'_>, section: &'static str) -> Result<usize, MeshIoError> {
    let (line, fields) = lines
        .next_fields()
        .ok_or(MeshIoError::MissingCount { section })?;
    expect_fields(line, &fields, 1)?;
    parse_token(line, fields[0])
}

/// Parses a `surfacemesh` document. Element indices are shifted from
/// one-based to zero-based.
pub fn parse_surfacemesh(text: &str) -> Result<SurfaceMesh, MeshIoError> {
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };

    match lines.next_fields() {
        Some((_, f)) if f == [HEADER] => {}
        Some((_, f)) => return Err(MeshIoError::BadHeader(f.join(" "))),
        None => return Err(MeshIoError::BadHeader(String::new())),
    }

    let point_count = read_count(&mut lines, "points")?;
    let mut points = Vec::with_capacity(point_count);
    for found in 0..point_count {
        let (line, fields) = lines.next_fields().ok_or(MeshIoError::CountMismatch {
            section: "points",
            declared: point_count,
            found,
        })?;
        expect_fields(line, &fields, 3)?;
        let x: f64 = parse_token(line, fields[0])?;
        let y: f64 = parse_token(line, fields[1])?;
        let z: f64 = parse_token(line, fields[2])?;
        let p = Vec3::new(x, y, z);
        if !p.is_finite() {
            return Err(MeshIoError::MalformedNumber {
                line,
                token: fields.join(" "),
            });
        }
        points.push(p);
    }

    let element_count = read_count(&mut lines, "elements")?;
    let mut facets = Vec::with_capacity(element_count);
    for found in 0..element_count {
        let (line, fields) = lines.next_fields().ok_or(MeshIoError::CountMismatch {
            section: "elements",
            declared: element_count,
            found,
        })?;
        expect_fields(line, &fields, 3)?;
        let mut idx = Vec::with_capacity(3);
        for tok in &fields {
            let one_based: usize = parse_token(line, tok)?;
            if one_based == 0 || one_based > point_count {
                return Err(MeshIoError::IndexOutOfRange {
                    line,
                    index: one_based,
                    point_count,
                });
            }
            idx.push(one_based - 1);
        }
        facets.push(Facet::new(idx));
    }

    if let Some((line, _)) = lines.next_fields() {
        return Err(MeshIoError::TrailingData { line });
    }

    Ok(SurfaceMesh::new(points, facets)?)
}

/// Serializes a mesh in `surfacemesh` format. Coordinates use the shortest
/// decimal form that parses back to the identical `f64`.
pub fn write_surfacemesh(mesh: &SurfaceMesh) -> String {
    let mut out = String::with_capacity(32 * (mesh.vertices().len() + mesh.facets().len()) + 32);
    // writing to a String cannot fail
    let _ = writeln!(out, "{HEADER}");
    let _ = writeln!(out, "{}", mesh.vertices().len());
    for v in mesh.vertices() {
        let _ = writeln!(out, "{} {} {}", v.x, v.y, v.z);
    }
    let _ = writeln!(out, "{}", mesh.facets().len());
    for f in mesh.facets() {
        let mut first = true;
        for i in f.indices() {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{}", i + 1);
        }
        out.push('\n');
    }
    out
}
