use std::fmt::Write as _;

use num_complex::Complex64;

use super::MeshIoError;
use crate::geometry::Vec3;
use crate::qfield::{AxisSpec, FTField, QGrid};

pub const CSV_HEADER: &str = "Qx,Qy,Qz,re,im,abs";

/// One row per grid point, `Qx` varying fastest. Numbers are written in the
/// shortest form that parses back to the same `f64`.
pub fn write_field_csv(field: &FTField) -> String {
    let mut out = String::with_capacity(64 * (field.values().len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (q, v) in field.samples() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            q.x,
            q.y,
            q.z,
            v.re,
            v.im,
            v.norm()
        );
    }
    out
}

/// Reads a field written by [`write_field_csv`], recovering its grid from
/// the wave-vector columns.
pub fn parse_field_csv(text: &str) -> Result<FTField, MeshIoError> {
    let bad = |msg: String| MeshIoError::BadCsv(msg);
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(bad(format!(
                "expected header {CSV_HEADER:?}, found {:?}",
                other.map(|(_, h)| h).unwrap_or("")
            )))
        }
    }

    let mut qs = Vec::new();
    let mut values = Vec::new();
    for (i, line) in lines {
        let cols: Vec<&str> = line.trim().split(',').collect();
        if cols.len() != 6 {
            return Err(bad(format!(
                "line {}: expected 6 columns, found {}",
                i + 1,
                cols.len()
            )));
        }
        let mut nums = [0.0; 5];
        for (slot, tok) in nums.iter_mut().zip(&cols) {
            *slot = tok
                .trim()
                .parse()
                .map_err(|_| MeshIoError::MalformedNumber {
                    line: i + 1,
                    token: tok.to_string(),
                })?;
        }
        qs.push(Vec3::new(nums[0], nums[1], nums[2]));
        values.push(Complex64::new(nums[3], nums[4]));
    }
    if qs.is_empty() {
        return Err(bad("no data rows".into()));
    }

    let n = qs.len();
    let first = qs[0];
    let nx = qs
        .iter()
        .position(|q| q.y != first.y || q.z != first.z)
        .unwrap_or(n);
    let nxy = qs.iter().position(|q| q.z != first.z).unwrap_or(n);
    if nxy % nx != 0 || n % nxy != 0 {
        return Err(bad("rows do not form a rectilinear grid".into()));
    }
    let (ny, nz) = (nxy / nx, n / nxy);
    let axis = |start: f64, stop: f64, count: usize| AxisSpec::new(start, stop, count);
    let grid = QGrid::new(
        axis(first.x, qs[nx - 1].x, nx)?,
        axis(first.y, qs[nxy - 1].y, ny)?,
        axis(first.z, qs[n - 1].z, nz)?,
    );
    if grid.points().zip(&qs).any(|(a, b)| a != *b) {
        return Err(bad("rows do not form a rectilinear grid".into()));
    }
    Ok(FTField::new(grid, values)?)
}
