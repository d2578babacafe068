//! Scalar kernels shared by the segment, polygon, facet, and closed-form
//! transforms.

use num_complex::Complex64;

use crate::geometry::Vec3;

/// Below this |u| the sinc is evaluated from its Taylor series.
pub const SINC_SERIES_THRESHOLD: f64 = 1e-4;

/// `sin(u)/u` with the removable singularity filled in (`sinc(0) = 1`).
#[inline]
pub fn sinc(u: f64) -> f64 {
    if u.abs() < SINC_SERIES_THRESHOLD {
        let u2 = u * u;
        1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0))
    } else {
        u.sin() / u
    }
}

/// `sinc(u) - 1` without cancellation for small |u|.
#[inline]
pub(crate) fn sinc_minus_one(u: f64) -> f64 {
    if u.abs() < 1.0 {
        // sum_{k>=1} (-1)^k u^{2k} / (2k+1)!, truncated after u^16 (< 1e-17 for |u| < 1)
        let u2 = u * u;
        let mut term = 1.0;
        let mut acc = 0.0;
        for k in 1..=8 {
            let k = k as f64;
            term *= -u2 / ((2.0 * k) * (2.0 * k + 1.0));
            acc += term;
        }
        acc
    } else {
        u.sin() / u - 1.0
    }
}

/// `e^{i phi} * sinc(u) - 1`, accurate to full relative precision when both
/// arguments are small.
#[inline]
pub(crate) fn phase_sinc_minus_one(phi: f64, u: f64) -> Complex64 {
    let s = sinc(u);
    let half = (0.5 * phi).sin();
    Complex64::new(-2.0 * s * half * half + sinc_minus_one(u), s * phi.sin())
}

/// `e^{i phi}`.
#[inline]
pub fn cis(phi: f64) -> Complex64 {
    let (s, c) = phi.sin_cos();
    Complex64::new(c, s)
}

/// `∫_0^len e^{i q x} dx = len * e^{i q len / 2} * sinc(q len / 2)`, the
/// limit-free form of `(e^{i q len} - 1) / (i q)`.
#[inline]
pub fn interval_transform(q: f64, len: f64) -> Complex64 {
    let half = 0.5 * q * len;
    cis(half) * (len * sinc(half))
}

/// `e^{i phi} * sinc(u) - 1 - i phi`, second order in small arguments.
#[inline]
pub(crate) fn phase_sinc_minus_linear(phi: f64, u: f64) -> Complex64 {
    let s = sinc(u);
    let half = (0.5 * phi).sin();
    let s1 = sinc_minus_one(u);
    Complex64::new(
        -2.0 * s * half * half + s1,
        phi * (sinc_minus_one(phi) * s + s1),
    )
}

/// `e^{i phi} - 1` without cancellation for small `phi`.
#[inline]
pub(crate) fn cis_minus_one(phi: f64) -> Complex64 {
    let half = (0.5 * phi).sin();
    Complex64::new(-2.0 * half * half, phi.sin())
}

/// Area integral `∫_A e^{i q·(r - origin)} dA` over a planar polygon, from its
/// boundary.
///
/// `q` must lie in the polygon's plane and be nonzero. `corners` lists the
/// polygon corners in traversal order; `outward` maps a directed edge vector
/// to the in-plane outward edge normal scaled by the edge length.
///
/// Each edge contributes `-(q·m)/|q|^2 · i · e^{i q·(mid - origin)} sinc(q·d/2)`.
/// Because `Σ q·m = 0` around a closed loop, the constant part of every
/// phase factor is subtracted before summing, which removes the `1/|q|`
/// cancellation that otherwise appears as `|q| -> 0`.
pub(crate) fn contour_area_integral(
    q: Vec3,
    origin: Vec3,
    corners: &[Vec3],
    outward: impl Fn(Vec3) -> Vec3,
) -> Complex64 {
    contour_sum(q, origin, corners, outward, phase_sinc_minus_one)
}

/// `∫_A (e^{i q·(r - origin)} - 1) dA`, the area integral with the polygon
/// area taken out. Same arguments as [`contour_area_integral`].
///
/// The linear part of each edge's phase factor sums to exactly the area, so
/// dropping it leaves terms of order `|q|`.
pub(crate) fn contour_area_excess(
    q: Vec3,
    origin: Vec3,
    corners: &[Vec3],
    outward: impl Fn(Vec3) -> Vec3,
) -> Complex64 {
    contour_sum(q, origin, corners, outward, phase_sinc_minus_linear)
}

fn contour_sum(
    q: Vec3,
    origin: Vec3,
    corners: &[Vec3],
    outward: impl Fn(Vec3) -> Vec3,
    kernel: fn(f64, f64) -> Complex64,
) -> Complex64 {
    let q2 = q.norm_squared();
    let n = corners.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..n {
        let r0 = corners[l];
        let r1 = corners[(l + 1) % n];
        let d = r1 - r0;
        let weight = -q.dot(outward(d)) / q2;
        let mid = (r0 - origin) + d * 0.5;
        let ramp = kernel(q.dot(mid), 0.5 * q.dot(d));
        // weight * i * ramp
        acc += Complex64::new(-ramp.im, ramp.re) * weight;
    }
    acc
}
