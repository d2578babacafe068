#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::Rng;

use polyft::geometry::{Facet, SurfaceMesh, Vec3};
use polyft::mesh_io::{generate, GeneratorSpec};

pub fn random_vec(rng: &mut StdRng, half_width: f64) -> Vec3 {
    Vec3::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

pub fn random_unit(rng: &mut StdRng) -> Vec3 {
    loop {
        let v = random_vec(rng, 1.0);
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Uniform random rotation from a normalized quaternion, row-major.
pub fn random_rotation(rng: &mut StdRng) -> [[f64; 3]; 3] {
    let (w, x, y, z) = loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            break (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
        }
    };
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

pub fn apply(m: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    Vec3::new(
        m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
        m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
        m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
    )
}

pub fn transpose(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
}

/// Positively oriented tetrahedron with corners in `[-s, s]^3` and volume
/// at least `s^3 / 50`.
pub fn random_tetrahedron_points(rng: &mut StdRng, s: f64) -> [Vec3; 4] {
    loop {
        let mut p: [Vec3; 4] = std::array::from_fn(|_| random_vec(rng, s));
        let v = (p[1] - p[0]).dot((p[2] - p[0]).cross(p[3] - p[0])) / 6.0;
        if v.abs() < s * s * s / 50.0 {
            continue;
        }
        if v < 0.0 {
            p.swap(2, 3);
        }
        return p;
    }
}

pub fn tetrahedron_mesh(p: [Vec3; 4]) -> SurfaceMesh {
    let facets = vec![
        Facet::triangle(0, 2, 1),
        Facet::triangle(0, 1, 3),
        Facet::triangle(0, 3, 2),
        Facet::triangle(1, 2, 3),
    ];
    SurfaceMesh::new(p.to_vec(), facets).unwrap()
}

/// A rotated, translated box.
pub fn random_box(rng: &mut StdRng) -> SurfaceMesh {
    let (a, b, c) = (
        rng.gen_range(0.2..2.0),
        rng.gen_range(0.2..2.0),
        rng.gen_range(0.2..2.0),
    );
    let m = generate(&GeneratorSpec::prism(a, b, c)).unwrap();
    m.transformed(&random_rotation(rng))
        .translated(random_vec(rng, 1.0))
}

/// Level-1 icosphere with every vertex pushed radially by up to 20%. Stays
/// star-shaped, so it remains closed and outward oriented.
pub fn random_blob(rng: &mut StdRng) -> SurfaceMesh {
    let base = generate(&GeneratorSpec::icosphere(1.0, 1)).unwrap();
    let vertices = base
        .vertices()
        .iter()
        .map(|&v| v * rng.gen_range(0.8..1.2))
        .collect();
    let centre = random_vec(rng, 1.0);
    SurfaceMesh::new(vertices, base.facets().to_vec())
        .unwrap()
        .translated(centre)
}

/// One of the three random mesh families, cycling with `trial`.
pub fn random_mesh(rng: &mut StdRng, trial: usize) -> SurfaceMesh {
    match trial % 3 {
        0 => tetrahedron_mesh(random_tetrahedron_points(rng, 1.0)),
        1 => random_box(rng),
        _ => random_blob(rng),
    }
}

pub fn relative_error(value: Complex64, reference: Complex64) -> f64 {
    (value - reference).norm() / reference.norm().max(1e-12)
}

/// Gauss–Legendre nodes and weights on `[0, 1]`, by Newton iteration on
/// the Legendre polynomial.
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            (0.5 * (1.0 - x), 0.5 * w)
        })
        .collect()
}

/// `∫ e^{i q·r} dV` over a tetrahedron by a collapsed tensor-product
/// Gauss–Legendre rule with `n` points per direction. Negatively oriented
/// corners give the negated integral.
pub fn tetrahedron_quadrature(p: [Vec3; 4], q: Vec3, n: usize) -> Complex64 {
    let rule = gauss_legendre_unit(n);
    let (e1, e2, e3) = (p[1] - p[0], p[2] - p[0], p[3] - p[0]);
    let jac = e1.dot(e2.cross(e3));
    let mut sum = Complex64::new(0.0, 0.0);
    for &(u, wu) in &rule {
        for &(v, wv) in &rule {
            for &(w, ww) in &rule {
                // barycentric (a, b, c) = (u, (1-u) v, (1-u)(1-v) w)
                let a = u;
                let b = (1.0 - u) * v;
                let c = (1.0 - u) * (1.0 - v) * w;
                let weight = wu * wv * ww * (1.0 - u) * (1.0 - u) * (1.0 - v);
                let r = p[0] + e1 * a + e2 * b + e3 * c;
                let (s, co) = q.dot(r).sin_cos();
                sum += Complex64::new(co, s) * weight;
            }
        }
    }
    sum * jac
}

/// Signed solid angle of triangle `abc` seen from the origin.
fn solid_angle(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let (la, lb, lc) = (a.norm(), b.norm(), c.norm());
    let num = a.dot(b.cross(c));
    let den = la * lb * lc + a.dot(b) * lc + b.dot(c) * la + c.dot(a) * lb;
    2.0 * num.atan2(den)
}

/// Generalized winding number of a closed triangle mesh about `p`: 1 inside,
/// 0 outside.
pub fn winding_number(mesh: &SurfaceMesh, p: Vec3) -> f64 {
    let v = mesh.vertices();
    mesh.facets()
        .iter()
        .map(|f| {
            let i = f.indices();
            solid_angle(v[i[0]] - p, v[i[1]] - p, v[i[2]] - p)
        })
        .sum::<f64>()
        / (4.0 * PI)
}

pub fn is_inside(mesh: &SurfaceMesh, p: Vec3) -> bool {
    winding_number(mesh, p) > 0.5
}
