//! Brute-force references used to check the exact routines.
//!
//! Everything here works from definitions: point-in-polygon tests, segment
//! visibility, marching along the spiral and Euclidean distances between
//! points placed on rays.

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::certificate::{certificate, certificate_oracle};
use crate::error::Result;
use crate::geometry::{segments_intersect, Point, Polygon};
use crate::lowerbound::closed_form_sum;
use crate::spiral::SpiralParams;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub exact_value: f64,
    pub oracle_value: f64,
    pub abs_gap: f64,
    pub rel_gap: f64,
    /// Grid or summation parameters of the oracle run.
    pub params: Vec<(&'static str, f64)>,
}

impl OracleReport {
    fn new(exact_value: f64, oracle_value: f64, params: Vec<(&'static str, f64)>) -> Self {
        let abs_gap = (exact_value - oracle_value).abs();
        OracleReport {
            exact_value,
            oracle_value,
            abs_gap,
            rel_gap: abs_gap / exact_value.abs().max(f64::MIN_POSITIVE),
            params,
        }
    }
}

/// Exact certificate against the sampling oracle.
pub fn cross_validate_certificate(
    polygon: &Polygon,
    s: Point,
    x_samples: usize,
    angle_samples: usize,
) -> Result<OracleReport> {
    let exact = certificate(polygon, s)?.length;
    let oracle = certificate_oracle(polygon, s, x_samples, angle_samples)?.length;
    Ok(OracleReport::new(
        exact,
        oracle,
        vec![
            ("x_samples", x_samples as f64),
            ("angle_samples", angle_samples as f64),
        ],
    ))
}

/// `F1(k) + F2(k)` for `x_i = a^i` by placing the points in the plane and
/// summing Euclidean distances, against the closed geometric-series form.
pub fn cross_validate_functionals(n: u64, a: f64, k: usize) -> Result<OracleReport> {
    let exact = closed_form_sum(n, a, k)?;
    let theta = TAU / n as f64;
    let points: Vec<Point> = (1..=k)
        .map(|i| Point::polar(Point::default(), a.powi(i as i32), theta * i as f64))
        .collect();
    let mut chain = 0.0;
    let mut comp = 0.0;
    for w in points.windows(2) {
        // Kahan summation
        let y = w[0].dist(w[1]) - comp;
        let t = chain + y;
        comp = (t - chain) - y;
        chain = t;
    }
    let x_k = points[k - 1].norm();
    let x_far = points[k - n as usize].norm();
    let oracle = chain / (x_k * (1.0 + theta)) + chain / (x_far * (1.0 + TAU));
    Ok(OracleReport::new(
        exact,
        oracle,
        vec![("n", n as f64), ("a", a), ("k", k as f64)],
    ))
}

/// Kernel membership by visibility: every vertex and a few points on every
/// edge must be seen from `s` without the sight line crossing the boundary.
pub fn kernel_by_visibility(polygon: &Polygon, s: Point) -> bool {
    if !polygon.contains(s) {
        return false;
    }
    let n = polygon.len();
    let verts = polygon.vertices();
    let mut targets: Vec<(Point, Option<usize>)> = Vec::new();
    for k in 0..n {
        targets.push((verts[k], Some(k)));
        let (a, b) = polygon.edge(k);
        for j in 1..8 {
            targets.push((a + (b - a) * (j as f64 / 8.0), None));
        }
    }
    targets.iter().all(|&(t, vertex)| {
        let tip = t + (s - t) * 1e-9;
        (0..n).all(|k| {
            if let Some(v) = vertex {
                if k == v || (k + 1) % n == v {
                    return true;
                }
            }
            let (a, b) = polygon.edge(k);
            !segments_intersect(s, tip, a, b)
        }) && polygon.contains(s + (t - s) * 0.5)
    })
}

/// Spiral exit by marching in steps of `step` radians, refined by bisection
/// on point-in-polygon.
pub fn marched_spiral_escape(
    polygon: &Polygon,
    s: Point,
    params: SpiralParams,
    step: f64,
) -> Option<(f64, f64)> {
    let d_min = polygon.boundary_distance(s);
    let r_max = polygon
        .vertices()
        .iter()
        .map(|v| v.dist(s))
        .fold(0.0, f64::max);
    let c = 1.0 / params.beta.tan();
    let radius = |phi: f64| params.a * (c * phi).exp();
    let point = |phi: f64| Point::polar(s, radius(phi), phi + params.rotation);
    let mut phi = (1e-6 * d_min / params.a).ln() / c;
    let stop = (r_max / params.a).ln() / c + TAU;
    while phi < stop {
        let next = phi + step;
        if !polygon.contains(point(next)) {
            let (mut lo, mut hi) = (phi, next);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if polygon.contains(point(mid)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let len = params.a / params.beta.cos() * (c * hi).exp();
            return Some((hi, len));
        }
        phi = next;
    }
    None
}

/// A random polygon that is star-shaped around the origin: `6..=50` sorted
/// angles with radii in `[0.2, 1]`, redrawn while an angular gap is wider
/// than `0.9π` or narrower than `1e-6`.
pub fn random_star_polygon<R: Rng>(rng: &mut R) -> Polygon {
    loop {
        let n = rng.gen_range(6..=50);
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let ok = (0..n).all(|i| {
            let gap = if i + 1 < n {
                angles[i + 1] - angles[i]
            } else {
                angles[0] + TAU - angles[i]
            };
            (1e-6..0.9 * PI).contains(&gap)
        });
        if !ok {
            continue;
        }
        let verts = angles
            .iter()
            .map(|&a| Point::polar(Point::default(), rng.gen_range(0.2..=1.0), a))
            .collect();
        if let Ok(p) = Polygon::new(verts) {
            return p;
        }
    }
}

/// A random start point in the kernel of `polygon` at distance at least
/// `margin` from the boundary, drawn within `radius` of the origin; the
/// origin if no draw succeeds.
pub fn random_kernel_point<R: Rng>(rng: &mut R, polygon: &Polygon, radius: f64, margin: f64) -> Point {
    for _ in 0..1000 {
        let p = Point::new(rng.gen_range(-radius..radius), rng.gen_range(-radius..radius));
        if crate::geometry::in_kernel(polygon, p) && polygon.boundary_distance(p) > margin {
            return p;
        }
    }
    Point::default()
}
