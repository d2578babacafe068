//! Closed-form transforms used as references for the mesh and voxel paths.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::kernel::interval_transform;
use super::FtError;
use crate::geometry::Vec3;

/// Box `[0,a] x [0,b] x [0,c]`:
/// `i (e^{i q_x a} - 1)(e^{i q_y b} - 1)(e^{i q_z c} - 1) / (q_x q_y q_z)`,
/// evaluated as a product of interval transforms.
pub fn ft_prism(q: Vec3, a: f64, b: f64, c: f64) -> Result<Complex64, FtError> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(FtError::InvalidDimensions);
    }
    Ok(interval_transform(q.x, a) * interval_transform(q.y, b) * interval_transform(q.z, c))
}

/// Ball of radius `radius` centered at the origin:
/// `4π (sin x - x cos x) / q^3` with `x = q R`.
///
/// This equals `(4π/3) Γ(5/2) R^3 J_{3/2}(x) / (x/2)^{3/2}` through
/// `J_{3/2}(x) = sqrt(2/(πx)) (sin x / x - cos x)` and `Γ(5/2) = 3√π/4`.
/// For `x < 1` a Taylor series replaces the cancelling difference.
pub fn ft_sphere_analytic(qmag: f64, radius: f64) -> Result<Complex64, FtError> {
    if radius.is_nan() || radius <= 0.0 || qmag.is_nan() || qmag < 0.0 {
        return Err(FtError::InvalidDimensions);
    }
    let x = qmag * radius;
    let r3 = radius * radius * radius;
    let value = if x < 1.0 {
        // (sin x - x cos x)/x^3 = sum_{k>=1} (-1)^{k+1} 2k x^{2k-2} / (2k+1)!
        let x2 = x * x;
        let mut fact = 6.0; // (2k+1)! at k = 1
        let mut pow = 1.0;
        let mut acc = 0.0;
        for k in 1..=11 {
            let kf = k as f64;
            if k > 1 {
                fact *= (2.0 * kf) * (2.0 * kf + 1.0);
                pow *= -x2;
            }
            acc += 2.0 * kf * pow / fact;
        }
        4.0 * PI * r3 * acc
    } else {
        4.0 * PI * (x.sin() - x * x.cos()) / (qmag * qmag * qmag)
    };
    Ok(Complex64::new(value, 0.0))
}
