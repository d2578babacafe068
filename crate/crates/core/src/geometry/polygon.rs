use super::{GeometryError, Vec2, DEGENERATE_SEGMENT_LENGTH};

/// Closed planar polygon. The last vertex connects back to the first.
///
/// Construction checks vertex count, finiteness, and that consecutive
/// vertices are distinct. Orientation is not enforced so that clockwise
/// loops can be represented; [`polygon_area`] reports it through its sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon2D {
    vertices: Vec<Vec2>,
}

impl Polygon2D {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::TooFewVertices(vertices.len()));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite(i));
        }
        let n = vertices.len();
        for i in 0..n {
            if (vertices[(i + 1) % n] - vertices[i]).norm() < DEGENERATE_SEGMENT_LENGTH {
                return Err(GeometryError::DegenerateSegment);
            }
        }
        Ok(Self { vertices })
    }

    /// Axis-aligned rectangle `[0,a] x [0,b]`, counter-clockwise from the origin.
    pub fn rectangle(a: f64, b: f64) -> Result<Self, GeometryError> {
        Self::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(a, 0.0),
            Vec2::new(a, b),
            Vec2::new(0.0, b),
        ])
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Directed edges `(start, end)` in traversal order, including the
    /// closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    pub fn bounding_diagonal(&self) -> f64 {
        let (mut lo, mut hi) = (self.vertices[0], self.vertices[0]);
        for v in &self.vertices {
            lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (hi - lo).norm()
    }

    /// True if no two non-adjacent edges intersect.
    pub fn is_simple(&self) -> bool {
        let edges: Vec<_> = self.edges().collect();
        let n = edges.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if !adjacent && segments_intersect(edges[i], edges[j]) {
                    return false;
                }
            }
        }
        true
    }
}

fn segments_intersect((a, b): (Vec2, Vec2), (c, d): (Vec2, Vec2)) -> bool {
    let orient = |p: Vec2, q: Vec2, r: Vec2| (q - p).perp_dot(r - p);
    let on_segment = |p: Vec2, q: Vec2, r: Vec2| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// Outward unit normal of the directed segment `r0 -> r1` for a
/// counter-clockwise polygon: `((y1 - y0)/d, (x0 - x1)/d)`.
pub fn segment_normal_2d(r0: Vec2, r1: Vec2) -> Result<Vec2, GeometryError> {
    let d = (r1 - r0).norm();
    if d.is_nan() || d < DEGENERATE_SEGMENT_LENGTH {
        return Err(GeometryError::DegenerateSegment);
    }
    Ok(Vec2::new((r1.y - r0.y) / d, (r0.x - r1.x) / d))
}

/// Signed shoelace area; positive for counter-clockwise traversal.
pub fn polygon_area(poly: &Polygon2D) -> f64 {
    let origin = poly.vertices[0];
    0.5 * poly
        .edges()
        .map(|(a, b)| (a - origin).perp_dot(b - origin))
        .sum::<f64>()
}
