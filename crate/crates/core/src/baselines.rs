//! Known escape paths for special shapes and how the certificate compares.
//!
//! The straight segment for disks, the Besicovitch zig-zag for the
//! equilateral triangle and the Zalgaller path for the strip are each placed
//! at a start point under every rotation; the longest walk until the path
//! first leaves the shape is its worst case.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::certificate::certificate_from_profile;
use crate::error::Result;
use crate::geometry::{in_kernel, normalize_angle, Point, Polygon, RadialProfile};
use crate::optimize::golden_section_max;

/// Initial rotation grid of the adversary.
pub const ROTATION_SAMPLES: usize = 360;
/// Dominance slack.
pub const DOMINANCE_TOL: f64 = 1e-9;
/// Width of the strip model and its length.
pub const STRIP_WIDTH: f64 = 1.0;
pub const STRIP_LENGTH: f64 = 20.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PathPiece {
    Segment {
        from: Point,
        to: Point,
    },
    /// Counter-clockwise for positive `sweep`.
    Arc {
        center: Point,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl PathPiece {
    pub fn length(&self) -> f64 {
        match *self {
            PathPiece::Segment { from, to } => from.dist(to),
            PathPiece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Point at arc length `t` from the piece start.
    pub fn point_at(&self, t: f64) -> Point {
        match *self {
            PathPiece::Segment { from, to } => {
                let len = from.dist(to);
                if len == 0.0 {
                    from
                } else {
                    from + (to - from) * (t / len)
                }
            }
            PathPiece::Arc {
                center,
                radius,
                start,
                sweep,
            } => Point::polar(center, radius, start + sweep.signum() * t / radius),
        }
    }

    pub fn end(&self) -> Point {
        self.point_at(self.length())
    }

    fn transformed(&self, rotation: f64, shift: Point) -> PathPiece {
        let (sin, cos) = rotation.sin_cos();
        let map = |p: Point| Point::new(cos * p.x - sin * p.y, sin * p.x + cos * p.y) + shift;
        match *self {
            PathPiece::Segment { from, to } => PathPiece::Segment {
                from: map(from),
                to: map(to),
            },
            PathPiece::Arc {
                center,
                radius,
                start,
                sweep,
            } => PathPiece::Arc {
                center: map(center),
                radius,
                start: start + rotation,
                sweep,
            },
        }
    }

    /// Arc-length parameters where the piece meets segment `ab`.
    fn crossings(&self, a: Point, b: Point, out: &mut Vec<f64>) {
        let v = b - a;
        let tol = 1e-12;
        match *self {
            PathPiece::Segment { from, to } => {
                let w = to - from;
                let len = w.norm();
                let den = w.cross(v);
                if den.abs() <= tol * len * v.norm() {
                    // parallel: only collinear overlap matters, at its ends
                    if (a - from).cross(w).abs() <= tol * len * len.max(1.0) {
                        for p in [a, b] {
                            let t = (p - from).dot(w) / len;
                            if (-tol..=len + tol).contains(&t) {
                                out.push(t.clamp(0.0, len));
                            }
                        }
                    }
                    return;
                }
                let t = (a - from).cross(v) / den;
                let u = (a - from).cross(w) / den;
                if (-tol..=1.0 + tol).contains(&t) && (-tol..=1.0 + tol).contains(&u) {
                    out.push(t.clamp(0.0, 1.0) * len);
                }
            }
            PathPiece::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let vv = v.dot(v);
                let w = a - center;
                let foot = -w.dot(v) / vv;
                let h2 = radius * radius - (w.dot(w) - w.dot(v) * w.dot(v) / vv);
                if h2 < -tol * radius * radius {
                    return;
                }
                let dt = (h2.max(0.0) / vv).sqrt();
                for u in [foot - dt, foot + dt] {
                    if !(-tol..=1.0 + tol).contains(&u) {
                        continue;
                    }
                    let p = a + v * u;
                    let ang = (p - center).y.atan2((p - center).x);
                    let off = normalize_angle(sweep.signum() * (ang - start));
                    let off = if off > TAU - 1e-12 { 0.0 } else { off };
                    if off <= sweep.abs() + 1e-12 {
                        out.push((off * radius).min(radius * sweep.abs()));
                    }
                }
            }
        }
    }
}

/// A fixed escape path starting at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct EscapePath {
    pub pieces: Vec<PathPiece>,
}

impl EscapePath {
    pub fn length(&self) -> f64 {
        self.pieces.iter().map(PathPiece::length).sum()
    }

    /// The path rotated by `rotation` about its start and moved to `start`.
    pub fn placed(&self, start: Point, rotation: f64) -> EscapePath {
        EscapePath {
            pieces: self
                .pieces
                .iter()
                .map(|p| p.transformed(rotation, start))
                .collect(),
        }
    }

    /// Arc length at which the path first leaves `polygon`; `None` if it
    /// stays inside (touching the boundary is not leaving).
    pub fn exit_length(&self, polygon: &Polygon) -> Option<f64> {
        let mut walked = 0.0;
        for piece in &self.pieces {
            let len = piece.length();
            let mut cuts = vec![0.0, len];
            for k in 0..polygon.len() {
                let (a, b) = polygon.edge(k);
                piece.crossings(a, b, &mut cuts);
            }
            cuts.sort_by(f64::total_cmp);
            for w in cuts.windows(2) {
                if w[1] - w[0] <= 1e-13 {
                    continue;
                }
                let mid = piece.point_at(0.5 * (w[0] + w[1]));
                if !polygon.contains(mid) && polygon.boundary_distance(mid) > 1e-12 {
                    return Some(walked + w[0]);
                }
            }
            walked += len;
        }
        None
    }

    /// Exit length when placed at `start` with `rotation`; the full length if
    /// the path never leaves.
    pub fn escape_length(&self, polygon: &Polygon, start: Point, rotation: f64) -> f64 {
        self.placed(start, rotation)
            .exit_length(polygon)
            .unwrap_or_else(|| self.length())
    }

    /// Adversarial rotation: grid of [`ROTATION_SAMPLES`] rotations, then
    /// golden-section refinement of the best eight to 1e-6 rad.
    pub fn worst_case(&self, polygon: &Polygon, start: Point) -> (f64, f64) {
        let step = TAU / ROTATION_SAMPLES as f64;
        let grid: Vec<f64> = (0..ROTATION_SAMPLES)
            .map(|i| self.escape_length(polygon, start, i as f64 * step))
            .collect();
        let mut order: Vec<usize> = (0..ROTATION_SAMPLES).collect();
        order.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]).then(a.cmp(&b)));
        let mut best = (order[0] as f64 * step, grid[order[0]]);
        for &i in &order[..8] {
            let r = i as f64 * step;
            let (rot, len) = golden_section_max(
                |rot| self.escape_length(polygon, start, rot),
                r - step,
                r + step,
                1e-6 / (r.abs() + step),
            );
            if len > best.1 {
                best = (normalize_angle(rot), len);
            }
        }
        best
    }
}

/// Besicovitch's three-segment path for the unit equilateral triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct ZigZagPath {
    /// `arcsin(1/√28)`; the middle segment turns by `2α`.
    pub alpha: f64,
    pub segment_length: f64,
    pub vertices: [Point; 4],
}

impl ZigZagPath {
    pub fn length(&self) -> f64 {
        3.0 * self.segment_length
    }

    pub fn path(&self) -> EscapePath {
        EscapePath {
            pieces: self
                .vertices
                .windows(2)
                .map(|w| PathPiece::Segment {
                    from: w[0],
                    to: w[1],
                })
                .collect(),
        }
    }
}

pub fn besicovitch_path() -> ZigZagPath {
    let alpha = (1.0 / 28f64.sqrt()).asin();
    let x = (3.0f64 / 28.0).sqrt();
    let p0 = Point::default();
    let p1 = Point::new(x, 0.0);
    let p2 = p1 + Point::polar(Point::default(), x, 2.0 * alpha);
    let p3 = p2 + Point::new(x, 0.0);
    ZigZagPath {
        alpha,
        segment_length: x,
        vertices: [p0, p1, p2, p3],
    }
}

/// Zalgaller's escape path for a strip of width `l`, built from `Z1..Z7`
/// with `Z1` at the origin and the baseline `Z1 Z7` on the x-axis.
#[derive(Clone, Debug, PartialEq)]
pub struct ZalgallerPath {
    pub l: f64,
    pub phi: f64,
    pub psi: f64,
    /// Baseline length over `l`, `sec φ`.
    pub x: f64,
    pub vertices: [Point; 7],
    pub pieces: Vec<PathPiece>,
}

impl ZalgallerPath {
    pub fn length(&self) -> f64 {
        self.pieces.iter().map(PathPiece::length).sum()
    }

    pub fn path(&self) -> EscapePath {
        EscapePath {
            pieces: self.pieces.clone(),
        }
    }

    /// `Z1 … Z7` from one.
    pub fn z(&self, i: usize) -> Point {
        self.vertices[i - 1]
    }
}

pub fn zalgaller_path(l: f64) -> ZalgallerPath {
    let phi = (1.0 / 6.0 + 4.0 / 3.0 * ((17.0f64 / 64.0).asin() / 3.0).sin()).asin();
    let psi = (0.5 / phi.cos()).atan();
    let x = 1.0 / phi.cos();
    let h = 0.5 * x;
    let (s2, c2) = (2.0 * psi).sin_cos();
    let local = [
        Point::new(-h, 0.0),
        Point::new(h - phi.cos(), phi.sin()),
        Point::new(h - s2, c2),
        Point::new(0.0, 1.0),
        Point::new(-h + s2, c2),
        Point::new(-h + phi.cos(), phi.sin()),
        Point::new(h, 0.0),
    ];
    let vertices = local.map(|p| (p + Point::new(h, 0.0)) * l);
    let z = |i: usize| vertices[i - 1];
    let pieces = vec![
        PathPiece::Segment {
            from: z(1),
            to: z(2),
        },
        PathPiece::Arc {
            center: z(7),
            radius: l,
            start: PI - phi,
            sweep: 2.0 * psi + phi - FRAC_PI_2,
        },
        PathPiece::Segment {
            from: z(3),
            to: z(4),
        },
        PathPiece::Segment {
            from: z(4),
            to: z(5),
        },
        PathPiece::Arc {
            center: z(1),
            radius: l,
            start: FRAC_PI_2 - 2.0 * psi,
            sweep: 2.0 * psi + phi - FRAC_PI_2,
        },
        PathPiece::Segment {
            from: z(6),
            to: z(7),
        },
    ];
    ZalgallerPath {
        l,
        phi,
        psi,
        x,
        vertices,
        pieces,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeComparison {
    pub start: Point,
    pub baseline_worst: f64,
    pub certificate_length: f64,
    pub dominated: bool,
}

impl EscapeComparison {
    fn new(start: Point, baseline_worst: f64, certificate_length: f64) -> Self {
        EscapeComparison {
            start,
            baseline_worst,
            certificate_length,
            dominated: certificate_length <= baseline_worst + DOMINANCE_TOL,
        }
    }

    /// `certificate / baseline`.
    pub fn ratio(&self) -> f64 {
        self.certificate_length / self.baseline_worst
    }
}

pub fn unit_triangle() -> Polygon {
    Polygon::new(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.5, 3f64.sqrt() / 2.0),
    ])
    .expect("valid triangle")
}

/// `0.125·(1 + 5π/4) < 2·√(3/28)`.
pub fn rhomboid_inequality() -> (f64, f64) {
    (0.125 * (1.0 + 1.25 * PI), 2.0 * (3.0f64 / 28.0).sqrt())
}

fn sample_interior<F: Fn(&mut ChaCha8Rng) -> Point>(
    polygon: &Polygon,
    samples: usize,
    seed: u64,
    draw: F,
) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let p = draw(&mut rng);
        if in_kernel(polygon, p) {
            out.push(p);
        }
    }
    out
}

fn compare_all(polygon: &Polygon, starts: &[Point], path: &EscapePath) -> Result<Vec<EscapeComparison>> {
    starts
        .par_iter()
        .map(|&s| {
            let profile = RadialProfile::new(polygon, s)?;
            let cert = certificate_from_profile(&profile)?.length;
            let (_, worst) = path.worst_case(polygon, s);
            Ok(EscapeComparison::new(s, worst, cert))
        })
        .collect()
}

/// Certificate against the worst-case zig-zag at `samples` uniform points of
/// the unit equilateral triangle.
pub fn triangle_dominance(samples: usize, seed: u64) -> Result<Vec<EscapeComparison>> {
    let tri = unit_triangle();
    let h = 3f64.sqrt() / 2.0;
    let starts = sample_interior(&tri, samples, seed, |rng| {
        let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        Point::new(u + 0.5 * v, h * v)
    });
    compare_all(&tri, &starts, &besicovitch_path().path())
}

/// The strip `[−10, 10] × [0, 1]`.
pub fn strip_polygon() -> Polygon {
    Polygon::rectangle(-0.5 * STRIP_LENGTH, 0.0, 0.5 * STRIP_LENGTH, STRIP_WIDTH)
        .expect("valid strip")
}

/// Exit length of the Zalgaller path from height `d` when rotated about `Z1`
/// until `Z4` touches the upper wall with `Z3` and `Z5` inside. The longer
/// of the two admissible rotations is returned.
pub fn zalgaller_touching_exit(d: f64) -> f64 {
    let strip = strip_polygon();
    let z = zalgaller_path(STRIP_WIDTH);
    let path = z.path();
    let s = Point::new(0.0, d);
    let z4 = z.z(4);
    let r = z4.norm();
    let w = ((STRIP_WIDTH - d) / r).clamp(-1.0, 1.0).asin();
    let base = z4.y.atan2(z4.x);
    let mut best = f64::NEG_INFINITY;
    for angle in [w, PI - w] {
        let rot = angle - base;
        let placed = path.placed(s, rot);
        let inside = |p: Point| p.y >= -1e-12 && p.y <= STRIP_WIDTH + 1e-12;
        let (sin, cos) = rot.sin_cos();
        let map = |p: Point| Point::new(cos * p.x - sin * p.y, sin * p.x + cos * p.y) + s;
        if !(inside(map(z.z(3))) && inside(map(z.z(5)))) {
            continue;
        }
        let len = placed.exit_length(&strip).unwrap_or_else(|| z.length());
        best = best.max(len);
    }
    best
}

/// Strip heights `d_i = (i / samples)·l/2`, `i = 1..=samples`.
pub fn strip_depths(samples: usize) -> Vec<f64> {
    (1..=samples)
        .map(|i| 0.5 * STRIP_WIDTH * i as f64 / samples as f64)
        .collect()
}

/// `x(1 + α_s(x))` for a fixed radius `x`.
pub fn fixed_radius_length(profile: &RadialProfile, x: f64) -> f64 {
    x * (1.0 + profile.max_inside_arc(x))
}

/// Certificate against the worst-case Zalgaller path for start heights
/// `d ∈ (0, l/2]`; the baseline is the larger of the adversary search and
/// the touching construction.
pub fn strip_dominance(samples: usize) -> Result<Vec<EscapeComparison>> {
    let strip = strip_polygon();
    let path = zalgaller_path(STRIP_WIDTH).path();
    strip_depths(samples)
        .par_iter()
        .map(|&d| {
            let s = Point::new(0.0, d);
            let profile = RadialProfile::new(&strip, s)?;
            let cert = certificate_from_profile(&profile)?.length;
            let (_, worst) = path.worst_case(&strip, s);
            let worst = worst.max(zalgaller_touching_exit(d));
            Ok(EscapeComparison::new(s, worst, cert))
        })
        .collect()
}

/// Certificate against the straight escape along a diameter in a 512-gon of
/// radius 1; its worst case is the largest radial distance.
pub fn disk_dominance(samples: usize, seed: u64) -> Result<Vec<EscapeComparison>> {
    let disk = Polygon::regular(512, 1.0, Point::default())?;
    let starts = sample_interior(&disk, samples, seed, |rng| {
        let r = 0.999 * rng.gen::<f64>().sqrt();
        Point::polar(Point::default(), r, TAU * rng.gen::<f64>())
    });
    starts
        .par_iter()
        .map(|&s| {
            let profile = RadialProfile::new(&disk, s)?;
            let cert = certificate_from_profile(&profile)?.length;
            Ok(EscapeComparison::new(s, profile.max_distance(), cert))
        })
        .collect()
}
