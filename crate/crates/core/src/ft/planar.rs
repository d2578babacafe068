use num_complex::Complex64;

use super::kernel::{cis, contour_area_integral, interval_transform, sinc};
use super::{FtError, ZERO_Q_RELATIVE};
use crate::geometry::{polygon_area, segment_normal_2d, Polygon2D, Vec2, Vec3};

/// Contribution of the directed segment `r0 -> r1` to the contour sum of a
/// polygon transform:
///
/// `-(q·n)|d| / |q|^2 · e^{i q·mid} · i · sinc(q·d / 2)`
///
/// with `n` the outward segment normal and `mid` the segment midpoint.
pub fn ft_segment_2d(q: Vec2, r0: Vec2, r1: Vec2) -> Result<Complex64, FtError> {
    let n = segment_normal_2d(r0, r1)?;
    let q2 = q.dot(q);
    if q2 == 0.0 {
        return Err(FtError::ZeroWaveVector);
    }
    let d = r1 - r0;
    let mid = (r0 + r1) * 0.5;
    let weight = -q.dot(n) * d.norm() / q2;
    Ok(cis(q.dot(mid)) * Complex64::new(0.0, weight * sinc(0.5 * q.dot(d))))
}

/// `∫∫_poly e^{i q·r} dA` for a counter-clockwise polygon (clockwise input
/// yields the negated value).
///
/// Near `q = 0` (below `1e-12` over the bounding diagonal) the signed area
/// is returned directly.
pub fn ft_polygon_2d(q: Vec2, poly: &Polygon2D) -> Result<Complex64, FtError> {
    let qmag = q.norm();
    if qmag <= ZERO_Q_RELATIVE / poly.bounding_diagonal() {
        return Ok(Complex64::new(polygon_area(poly), 0.0));
    }
    let corners: Vec<Vec3> = poly.vertices().iter().map(|v| v.lift()).collect();
    let origin = corners[0];
    let q3 = q.lift();
    let integral = contour_area_integral(q3, origin, &corners, |d| Vec3::new(d.y, -d.x, 0.0));
    Ok(cis(q3.dot(origin)) * integral)
}

/// Closed form for the rectangle `[0,a] x [0,b]`:
/// `-(e^{i q_x a} - 1)(e^{i q_y b} - 1) / (q_x q_y)`, evaluated as a product
/// of one-dimensional interval transforms so that the axis limits need no
/// special casing.
pub fn ft_rectangle(q: Vec2, a: f64, b: f64) -> Result<Complex64, FtError> {
    if !(a > 0.0 && b > 0.0) {
        return Err(FtError::InvalidDimensions);
    }
    Ok(interval_transform(q.x, a) * interval_transform(q.y, b))
}
