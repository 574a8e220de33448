//! Planar primitives: points, simple polygons, kernel membership, the radial
//! distance function seen from a kernel point, and circle/boundary contact.
//!
//! All comparisons use an absolute tolerance of [`EPS`] scaled by the polygon
//! diameter. Angles are normalized to `[0, 2π)`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Relative geometric tolerance; multiply by the instance diameter.
pub const EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Point at distance `r` from `center` in direction `angle`.
    pub fn polar(center: Point, r: f64, angle: f64) -> Self {
        Point::new(center.x + r * angle.cos(), center.y + r * angle.sin())
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Direction of `self` seen from `from`, in `[0, 2π)`.
    pub fn angle_from(self, from: Point) -> f64 {
        let d = self - from;
        normalize_angle(d.y.atan2(d.x))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Maps any angle to `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Counter-clockwise angular distance from `from` to `to`, in `[0, 2π)`.
pub fn ccw_gap(from: f64, to: f64) -> f64 {
    normalize_angle(to - from)
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let v = b - a;
    let len2 = v.dot(v);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(v) / len2).clamp(0.0, 1.0);
    p.dist(a + v * t)
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// True if the closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    (o1 == 0.0 && on_segment(a, b, c))
        || (o2 == 0.0 && on_segment(a, b, d))
        || (o3 == 0.0 && on_segment(c, d, a))
        || (o4 == 0.0 && on_segment(c, d, b))
}

/// True iff the closed vertex chain has no self-intersection: non-adjacent
/// edges are disjoint and adjacent edges meet only in their shared vertex.
pub fn is_simple(vertices: &[Point]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    let edge = |k: usize| (vertices[k], vertices[(k + 1) % n]);
    for i in 0..n {
        let (a, b) = edge(i);
        if a == b {
            return false;
        }
        for j in (i + 1)..n {
            let (c, d) = edge(j);
            let adjacent_next = j == i + 1;
            let adjacent_wrap = i == 0 && j == n - 1;
            if adjacent_next {
                // shared vertex b == c; the far ends must not fold back onto the other edge
                if (orient(a, b, d) == 0.0 && on_segment(a, b, d))
                    || (orient(c, d, a) == 0.0 && on_segment(c, d, a))
                {
                    return false;
                }
            } else if adjacent_wrap {
                // shared vertex a == d
                if (orient(c, d, b) == 0.0 && on_segment(c, d, b))
                    || (orient(a, b, c) == 0.0 && on_segment(a, b, c))
                {
                    return false;
                }
            } else if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|k| vertices[k].cross(vertices[(k + 1) % n]))
        .sum::<f64>()
        * 0.5
}

/// A simple polygon with counter-clockwise vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
    diameter: f64,
}

impl Polygon {
    /// Validates the vertex chain; clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon(format!("non-finite vertex {p}")));
        }
        let n = vertices.len();
        for k in 0..n {
            if vertices[k] == vertices[(k + 1) % n] {
                return Err(Error::InvalidPolygon(format!(
                    "consecutive vertices {} and {} coincide",
                    k,
                    (k + 1) % n
                )));
            }
        }
        if !is_simple(&vertices) {
            return Err(Error::InvalidPolygon("boundary self-intersects".into()));
        }
        let area = signed_area(&vertices);
        if area == 0.0 {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let mut diameter: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                diameter = diameter.max(vertices[i].dist(vertices[j]));
            }
        }
        Ok(Polygon { vertices, diameter })
    }

    /// Regular `m`-gon with circumradius `radius` centred at `center`, first vertex at angle 0.
    pub fn regular(m: usize, radius: f64, center: Point) -> Result<Self> {
        Polygon::new(
            (0..m)
                .map(|k| Point::polar(center, radius, TAU * k as f64 / m as f64))
                .collect(),
        )
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Polygon::new(vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    /// Parses the line-oriented polygon format: optional `#` comment lines,
    /// a vertex count `n`, then `n` lines of `x y`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (count_line, count) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "missing vertex count".into(),
        })?;
        let n: usize = count.parse().map_err(|_| Error::Parse {
            line: count_line,
            msg: format!("expected vertex count, found {count:?}"),
        })?;
        let mut vertices = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, text) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("expected {n} vertices, found {}", vertices.len()),
            })?;
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected `x y`, found {text:?}"),
                });
            }
            let coord = |s: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or(Error::Parse {
                        line,
                        msg: format!("bad coordinate {s:?}"),
                    })
            };
            vertices.push(Point::new(coord(fields[0])?, coord(fields[1])?));
        }
        if let Some((line, extra)) = lines.next() {
            return Err(Error::Parse {
                line,
                msg: format!("unexpected trailing content {extra:?}"),
            });
        }
        Polygon::new(vertices)
    }

    /// Serializes to the text format read by [`Polygon::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.vertices.len());
        for p in &self.vertices {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
        out
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `k` runs from vertex `k` to vertex `k + 1`.
    pub fn edge(&self, k: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[k % n], self.vertices[(k + 1) % n])
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Absolute tolerance for this instance.
    pub fn tolerance(&self) -> f64 {
        EPS * self.diameter
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Even-odd containment test; boundary points count as outside or inside
    /// arbitrarily.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        for k in 0..n {
            let (a, b) = self.edge(k);
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn boundary_distance(&self, p: Point) -> f64 {
        (0..self.len())
            .map(|k| {
                let (a, b) = self.edge(k);
                point_segment_distance(p, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Signed distance from `p` to the supporting line of edge `k`; positive on
    /// the interior side.
    pub fn edge_line_distance(&self, k: usize, p: Point) -> f64 {
        let (a, b) = self.edge(k);
        let v = b - a;
        v.cross(p - a) / v.norm()
    }

    pub fn translated(&self, by: Point) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&p| p + by).collect(),
            diameter: self.diameter,
        }
    }

    pub fn scaled(&self, k: f64) -> Polygon {
        assert!(k > 0.0);
        Polygon {
            vertices: self.vertices.iter().map(|&p| p * k).collect(),
            diameter: self.diameter * k,
        }
    }
}

/// True iff `s` lies in the kernel with margin: strictly on the interior side
/// of every edge's supporting line. Kernel-boundary points are rejected.
pub fn in_kernel(polygon: &Polygon, s: Point) -> bool {
    let tol = polygon.tolerance();
    (0..polygon.len()).all(|k| polygon.edge_line_distance(k, s) > tol)
}

/// Checks the preconditions shared by all kernel-point algorithms.
pub fn validate_kernel_point(polygon: &Polygon, s: Point) -> Result<()> {
    if !s.is_finite() {
        return Err(Error::Domain(format!("non-finite start point {s}")));
    }
    let tol = polygon.tolerance();
    if (0..polygon.len()).any(|k| polygon.edge_line_distance(k, s) < -tol) {
        return Err(Error::NotInKernel);
    }
    if polygon.boundary_distance(s) <= tol {
        return Err(Error::DegenerateInput);
    }
    if !in_kernel(polygon, s) {
        return Err(Error::NotInKernel);
    }
    Ok(())
}

/// Supporting line of one edge as seen from the start point: `f(φ) = d / cos(φ − θ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeLine {
    /// Distance from the start point to the line.
    pub d: f64,
    /// Direction of the foot of the perpendicular.
    pub theta: f64,
}

impl EdgeLine {
    fn new(a: Point, b: Point, s: Point) -> Self {
        let v = b - a;
        let d = v.cross(s - a) / v.norm();
        // outward normal for a CCW edge is (v.y, -v.x)
        let theta = normalize_angle((-v.x).atan2(v.y));
        EdgeLine { d, theta }
    }

    /// Distance along direction `phi` to the line.
    pub fn distance_at(&self, phi: f64) -> f64 {
        let c = (phi - self.theta).cos();
        if c <= 0.0 {
            f64::INFINITY
        } else {
            self.d / c
        }
    }
}

/// The radial distance function `f(φ) = |s p_{s,φ}|` of a kernel point.
#[derive(Clone, Debug)]
pub struct RadialProfile {
    polygon: Polygon,
    center: Point,
    /// `(angle, distance)` at every vertex, sorted by angle.
    breakpoints: Vec<(f64, f64)>,
    /// `order[m]` is the vertex at breakpoint `m`; the profile between
    /// breakpoints `m` and `m + 1` follows edge `order[m]`.
    order: Vec<usize>,
    lines: Vec<EdgeLine>,
    min_distance: f64,
    max_distance: f64,
}

impl RadialProfile {
    pub fn new(polygon: &Polygon, s: Point) -> Result<Self> {
        validate_kernel_point(polygon, s)?;
        let n = polygon.len();
        let verts = polygon.vertices();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| verts[a].angle_from(s).total_cmp(&verts[b].angle_from(s)));
        // kernel points see the vertices in boundary order
        let start = order[0];
        let order: Vec<usize> = (0..n).map(|m| (start + m) % n).collect();
        let breakpoints = order
            .iter()
            .map(|&k| (verts[k].angle_from(s), verts[k].dist(s)))
            .collect::<Vec<_>>();
        let lines = (0..n)
            .map(|k| {
                let (a, b) = polygon.edge(k);
                EdgeLine::new(a, b, s)
            })
            .collect();
        let max_distance = breakpoints.iter().map(|b| b.1).fold(0.0, f64::max);
        let min_distance = polygon.boundary_distance(s);
        Ok(RadialProfile {
            polygon: polygon.clone(),
            center: s,
            breakpoints,
            order,
            lines,
            min_distance,
            max_distance,
        })
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    /// Supporting line of polygon edge `k` relative to the center.
    pub fn line(&self, k: usize) -> EdgeLine {
        self.lines[k]
    }

    /// `min_φ f(φ)`: the distance to the nearest boundary point.
    pub fn min_distance(&self) -> f64 {
        self.min_distance
    }

    /// `max_φ f(φ)`, attained at a vertex.
    pub fn max_distance(&self) -> f64 {
        self.max_distance
    }

    /// Polygon edge crossed by the ray in direction `phi`.
    pub fn edge_at(&self, phi: f64) -> usize {
        let phi = normalize_angle(phi);
        let m = self.breakpoints.partition_point(|b| b.0 <= phi);
        let slot = if m == 0 { self.order.len() - 1 } else { m - 1 };
        self.order[slot]
    }

    /// Angular span `[start, start + width]` of edge `k` as seen from the center.
    pub fn edge_span(&self, k: usize) -> (f64, f64) {
        let (a, b) = self.polygon.edge(k);
        let start = a.angle_from(self.center);
        (start, ccw_gap(start, b.angle_from(self.center)))
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let k = self.edge_at(phi);
        let f = self.lines[k].distance_at(phi);
        if f.is_finite() {
            f
        } else {
            // only reachable through rounding at a breakpoint
            self.max_distance
        }
    }

    /// Boundary point in direction `phi`.
    pub fn boundary_point(&self, phi: f64) -> Point {
        Point::polar(self.center, self.eval(phi), phi)
    }

    /// Angular measure of the largest arc of the circle of radius `x` that
    /// stays inside the polygon: `2π` if the circle never meets the boundary
    /// from inside, `0` if it lies outside.
    pub fn max_inside_arc(&self, x: f64) -> f64 {
        let hits = circle_boundary_hits(&self.polygon, self.center, x);
        if hits.hits.is_empty() {
            return if self.eval(0.0) > x { TAU } else { 0.0 };
        }
        let m = hits.hits.len();
        let mut best: f64 = 0.0;
        for i in 0..m {
            let a = hits.hits[i].angle;
            let gap = if m == 1 {
                TAU
            } else {
                ccw_gap(a, hits.hits[(i + 1) % m].angle)
            };
            if gap > best && self.eval(a + 0.5 * gap) > x {
                best = gap;
            }
        }
        best.clamp(0.0, TAU)
    }
}

/// Builds the radial distance function of a kernel point.
pub fn radial_profile(polygon: &Polygon, s: Point) -> Result<RadialProfile> {
    RadialProfile::new(polygon, s)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryHit {
    pub angle: f64,
    pub edge: usize,
    /// Contact without crossing: circle tangent to the edge, or passing
    /// exactly through a vertex.
    pub tangential: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CircleIntersections {
    pub radius: f64,
    /// Sorted by strictly increasing angle.
    pub hits: Vec<BoundaryHit>,
}

/// Every angle at which the circle of radius `x` around `s` meets the boundary.
pub fn circle_boundary_hits(polygon: &Polygon, s: Point, x: f64) -> CircleIntersections {
    let tol = polygon.tolerance();
    let mut hits = Vec::new();
    for k in 0..polygon.len() {
        let (a, b) = polygon.edge(k);
        let v = b - a;
        let w = a - s;
        let vv = v.dot(v);
        let wv = w.dot(v);
        // |w + t v|^2 = x^2, reduced to (t + wv/vv)^2 = h2 / vv
        let foot_t = -wv / vv;
        let line_d2 = (w.dot(w) - wv * wv / vv).max(0.0);
        let h2 = x * x - line_d2;
        let t_tol = tol / vv.sqrt();
        if h2.abs() <= 2.0 * x * tol {
            if (-t_tol..=1.0 + t_tol).contains(&foot_t) {
                let p = a + v * foot_t.clamp(0.0, 1.0);
                hits.push(BoundaryHit {
                    angle: p.angle_from(s),
                    edge: k,
                    tangential: true,
                });
            }
            continue;
        }
        if h2 < 0.0 {
            continue;
        }
        let dt = (h2 / vv).sqrt();
        for t in [foot_t - dt, foot_t + dt] {
            if (-t_tol..=1.0 + t_tol).contains(&t) {
                let p = a + v * t.clamp(0.0, 1.0);
                hits.push(BoundaryHit {
                    angle: p.angle_from(s),
                    edge: k,
                    tangential: false,
                });
            }
        }
    }
    hits.sort_by(|p, q| p.angle.total_cmp(&q.angle));
    // a crossing at a vertex is reported by both incident edges
    let merge = 1e-10;
    let mut merged: Vec<BoundaryHit> = Vec::with_capacity(hits.len());
    for h in hits {
        match merged.last_mut() {
            Some(last) if h.angle - last.angle <= merge => {
                last.tangential = true;
            }
            _ => merged.push(h),
        }
    }
    if merged.len() > 1 {
        let first = merged[0].angle;
        let last = merged[merged.len() - 1].angle;
        if first + TAU - last <= merge {
            merged.pop();
            merged[0].tangential = true;
        }
    }
    CircleIntersections {
        radius: x,
        hits: merged,
    }
}

/// Largest arc of the circle of radius `x` around `s` lying inside the polygon.
pub fn max_inside_arc(polygon: &Polygon, s: Point, x: f64) -> Result<f64> {
    Ok(RadialProfile::new(polygon, s)?.max_inside_arc(x))
}

/// Smallest signed angular difference `b − a` in `(−π, π]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = normalize_angle(b - a);
    if d > PI {
        d - TAU
    } else {
        d
    }
}
