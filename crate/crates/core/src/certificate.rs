//! Certificate paths: move straight out to radius `x`, then follow the circle
//! of radius `x` until the boundary is met. The certificate of a start point
//! is the shortest such path that succeeds for every rotation,
//! `min_x x(1 + α(x))` with `α(x)` the largest arc of the circle that lies
//! inside the polygon.
//!
//! The exact route sweeps a circle of growing radius over the polygon. Between
//! consecutive critical radii (vertex distances and edge tangencies) each
//! inside arc is bounded by a crossing on one edge `i` where the boundary
//! leaves the circle and one on edge `j` where it re-enters, and its angular
//! measure has the closed form
//!
//! ```text
//! α(x) = π − ∠(l_i, l_j) + σ_i·acos(d_i / x) + σ_j·acos(d_j / x)
//! ```
//!
//! Such an `(i, j)` arc is a [`Candidate`]; `α(x)` is the upper envelope of the
//! live candidates. Each candidate's length `x(1 + α(x))` is convex in `x`, so
//! golden-section search is exact on every envelope piece.
//!
//! [`certificate_oracle`] is an independent brute-force route used for
//! verification.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geometry::{
    angle_diff, ccw_gap, circle_boundary_hits, normalize_angle, validate_kernel_point, Point,
    Polygon, RadialProfile,
};
use crate::optimize::{bisect, golden_section_min};

/// Crossings per candidate pair and cell beyond which the envelope builder gives up.
pub const MAX_PAIR_CROSSINGS: usize = 8;

const CROSSING_SAMPLES: usize = 33;
const PIECE_REL_TOL: f64 = 1e-10;

/// One inside arc of the sweep circle, bounded by a crossing on edge `edge_i`
/// (counter-clockwise start) and one on edge `edge_j` (end).
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub edge_i: usize,
    pub edge_j: usize,
    /// Distance from the start point to the supporting line of `edge_i`.
    pub d_i: f64,
    pub d_j: f64,
    /// Direction of the foot of the perpendicular on each supporting line.
    pub theta_i: f64,
    pub theta_j: f64,
    /// `∠(l_i, l_j)` in the arc formula; `π` minus the counter-clockwise turn
    /// from `theta_i` to `theta_j` spanned by the arc.
    pub angle_ij: f64,
    pub sign_i: f64,
    pub sign_j: f64,
    /// Existence interval `[x⁻, x⁺]`.
    pub interval: (f64, f64),
}

impl Candidate {
    pub fn contains(&self, x: f64) -> bool {
        let tol = 1e-12 * self.interval.1;
        x >= self.interval.0 - tol && x <= self.interval.1 + tol
    }

    fn arc_unchecked(&self, x: f64) -> f64 {
        let acos = |d: f64| (d / x).clamp(-1.0, 1.0).acos();
        (PI - self.angle_ij + self.sign_i * acos(self.d_i) + self.sign_j * acos(self.d_j))
            .clamp(0.0, TAU)
    }

    /// Arc angle at radius `x`, clamped to `[0, 2π]`.
    pub fn arc(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::OutOfInterval {
                x,
                lo: self.interval.0,
                hi: self.interval.1,
            });
        }
        Ok(self.arc_unchecked(x))
    }

    /// Certificate length `x(1 + α(x))` for this arc.
    pub fn length(&self, x: f64) -> f64 {
        x * (1.0 + self.arc_unchecked(x))
    }

    /// Direction where the arc starts at radius `x`.
    pub fn start_angle(&self, x: f64) -> f64 {
        normalize_angle(self.theta_i - self.sign_i * (self.d_i / x).clamp(-1.0, 1.0).acos())
    }
}

/// Evaluates the arc formula for `candidate` at `x ∈ [x⁻, x⁺]`.
pub fn candidate_arc(candidate: &Candidate, x: f64) -> Result<f64> {
    candidate.arc(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    /// A vertex whose incident edges are both already inside the circle; the
    /// arc in that direction shrinks to nothing.
    VertexAbsorbed,
    /// A vertex with one incident edge inside and one outside; the arc
    /// endpoint moves to the next edge.
    VertexSplit,
    /// A vertex with both incident edges outside, or an edge tangency; one
    /// arc splits in two.
    Birth,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepEvent {
    pub radius: f64,
    pub kind: EventKind,
    pub vertex: Option<usize>,
    pub edge: Option<usize>,
}

/// All sweep events, in nondecreasing radius (ties by vertex, then edge index).
pub fn sweep_events(profile: &RadialProfile) -> Vec<SweepEvent> {
    let polygon = profile.polygon();
    let s = profile.center();
    let verts = polygon.vertices();
    let n = verts.len();
    let mut events = Vec::with_capacity(2 * n);
    for k in 0..n {
        let p = verts[k];
        let out = p - s;
        let next_out = out.dot(verts[(k + 1) % n] - p) >= 0.0;
        let prev_out = out.dot(verts[(k + n - 1) % n] - p) >= 0.0;
        let kind = match (prev_out, next_out) {
            (false, false) => EventKind::VertexAbsorbed,
            (true, true) => EventKind::Birth,
            _ => EventKind::VertexSplit,
        };
        events.push(SweepEvent {
            radius: out.norm(),
            kind,
            vertex: Some(k),
            edge: None,
        });
    }
    for k in 0..n {
        let (a, b) = polygon.edge(k);
        let v = b - a;
        let t = (s - a).dot(v) / v.dot(v);
        if t > 0.0 && t < 1.0 {
            events.push(SweepEvent {
                radius: profile.line(k).d,
                kind: EventKind::Birth,
                vertex: None,
                edge: Some(k),
            });
        }
    }
    events.sort_by(|a, b| {
        a.radius
            .total_cmp(&b.radius)
            .then(a.vertex.unwrap_or(usize::MAX).cmp(&b.vertex.unwrap_or(usize::MAX)))
            .then(a.edge.cmp(&b.edge))
    });
    events
}

#[derive(Clone, Copy, Debug)]
struct Crossing {
    angle: f64,
    edge: usize,
    /// The inside arc begins here (boundary moving away from the center).
    opens: bool,
}

/// An inside arc of the circle of radius `x`.
#[derive(Clone, Copy, Debug)]
struct InsideArc {
    open_edge: usize,
    close_edge: usize,
    start: f64,
    arc: f64,
}

fn inside_arcs(profile: &RadialProfile, x: f64) -> Vec<InsideArc> {
    let polygon = profile.polygon();
    let s = profile.center();
    let mut crossings = Vec::new();
    for k in 0..polygon.len() {
        let (a, b) = polygon.edge(k);
        let beyond_a = a.dist(s) > x;
        let beyond_b = b.dist(s) > x;
        let line = profile.line(k);
        let half = || (line.d / x).clamp(-1.0, 1.0).acos();
        match (beyond_a, beyond_b) {
            (true, false) => crossings.push(Crossing {
                angle: normalize_angle(line.theta - half()),
                edge: k,
                opens: false,
            }),
            (false, true) => crossings.push(Crossing {
                angle: normalize_angle(line.theta + half()),
                edge: k,
                opens: true,
            }),
            (true, true) => {
                let v = b - a;
                let t = (s - a).dot(v) / v.dot(v);
                if line.d < x && t > 0.0 && t < 1.0 {
                    let h = half();
                    crossings.push(Crossing {
                        angle: normalize_angle(line.theta - h),
                        edge: k,
                        opens: false,
                    });
                    crossings.push(Crossing {
                        angle: normalize_angle(line.theta + h),
                        edge: k,
                        opens: true,
                    });
                }
            }
            (false, false) => {}
        }
    }
    crossings.sort_by(|p, q| p.angle.total_cmp(&q.angle));
    let m = crossings.len();
    let mut arcs = Vec::new();
    for i in 0..m {
        if !crossings[i].opens {
            continue;
        }
        let Some(close) = (1..=m)
            .map(|o| crossings[(i + o) % m])
            .find(|c| !c.opens)
        else {
            continue;
        };
        let mut arc = ccw_gap(crossings[i].angle, close.angle);
        if close.edge == crossings[i].edge && arc == 0.0 {
            arc = TAU;
        }
        arcs.push(InsideArc {
            open_edge: crossings[i].edge,
            close_edge: close.edge,
            start: crossings[i].angle,
            arc,
        });
    }
    arcs
}

/// Distinct critical radii in increasing order; radii closer than the
/// instance tolerance are merged.
fn critical_radii(profile: &RadialProfile) -> Vec<f64> {
    let tol = profile.polygon().tolerance();
    let mut radii: Vec<f64> = sweep_events(profile).iter().map(|e| e.radius).collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup_by(|b, a| *b - *a <= tol);
    radii
}

fn make_candidate(profile: &RadialProfile, arc: &InsideArc, x: f64, lo: f64, hi: f64) -> Candidate {
    let li = profile.line(arc.open_edge);
    let lj = profile.line(arc.close_edge);
    let a_i = (li.d / x).clamp(-1.0, 1.0).acos();
    let a_j = (lj.d / x).clamp(-1.0, 1.0).acos();
    let end = normalize_angle(arc.start + arc.arc);
    // which side of each foot the crossing lies on fixes the ± in the arc formula
    let sign_i = if angle_diff(li.theta, arc.start) > 0.0 {
        -1.0
    } else {
        1.0
    };
    let sign_j = if angle_diff(lj.theta, end) < 0.0 {
        -1.0
    } else {
        1.0
    };
    let delta = arc.arc - sign_i * a_i - sign_j * a_j;
    let base = ccw_gap(li.theta, lj.theta);
    let turns = ((delta - base) / TAU).round();
    Candidate {
        edge_i: arc.open_edge,
        edge_j: arc.close_edge,
        d_i: li.d,
        d_j: lj.d,
        theta_i: li.theta,
        theta_j: lj.theta,
        angle_ij: PI - (base + TAU * turns),
        sign_i,
        sign_j,
        interval: (lo, hi),
    }
}

/// Result of the radial sweep: candidates and the cell boundaries they live on.
#[derive(Clone, Debug)]
pub struct CandidateSweep {
    pub radii: Vec<f64>,
    pub candidates: Vec<Candidate>,
    /// Number of candidates opened at each radius in `radii`.
    pub births: Vec<usize>,
}

impl CandidateSweep {
    pub fn run(profile: &RadialProfile) -> Self {
        let radii = critical_radii(profile);
        let mut candidates: Vec<Candidate> = Vec::new();
        let mut births = vec![0; radii.len()];
        let mut live: HashMap<(usize, usize), usize> = HashMap::new();
        for cell in 0..radii.len().saturating_sub(1) {
            let (lo, hi) = (radii[cell], radii[cell + 1]);
            let x = 0.5 * (lo + hi);
            let mut next_live = HashMap::new();
            for arc in inside_arcs(profile, x) {
                let key = (arc.open_edge, arc.close_edge);
                let fresh = make_candidate(profile, &arc, x, lo, hi);
                let idx = match live.get(&key) {
                    Some(&idx)
                        if (candidates[idx].angle_ij - fresh.angle_ij).abs() < 1e-9
                            && candidates[idx].interval.1 == lo =>
                    {
                        candidates[idx].interval.1 = hi;
                        idx
                    }
                    _ => {
                        candidates.push(fresh);
                        births[cell] += 1;
                        candidates.len() - 1
                    }
                };
                next_live.insert(key, idx);
            }
            live = next_live;
        }
        CandidateSweep {
            radii,
            candidates,
            births,
        }
    }
}

/// All candidate arcs for a kernel start point.
pub fn enumerate_candidates(polygon: &Polygon, s: Point) -> Result<Vec<Candidate>> {
    let profile = RadialProfile::new(polygon, s)?;
    Ok(CandidateSweep::run(&profile).candidates)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopePiece {
    pub lo: f64,
    pub hi: f64,
    /// Index of the candidate realizing the maximum arc on `[lo, hi]`.
    pub candidate: usize,
}

/// Upper envelope of the candidate arc functions over `[d_min, x_max]`.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub candidates: Vec<Candidate>,
    pub pieces: Vec<EnvelopePiece>,
    pub d_min: f64,
    pub x_max: f64,
}

impl Envelope {
    pub fn build(profile: &RadialProfile) -> Result<Self> {
        let sweep = CandidateSweep::run(profile);
        let mut pieces: Vec<EnvelopePiece> = Vec::new();
        for cell in 0..sweep.radii.len().saturating_sub(1) {
            let (lo, hi) = (sweep.radii[cell], sweep.radii[cell + 1]);
            let alive: Vec<usize> = (0..sweep.candidates.len())
                .filter(|&c| {
                    let (a, b) = sweep.candidates[c].interval;
                    a <= lo && b >= hi
                })
                .collect();
            if alive.is_empty() {
                continue;
            }
            let mut cuts = vec![lo, hi];
            for (p, &c) in alive.iter().enumerate() {
                for &e in &alive[p + 1..] {
                    cuts.extend(pair_crossings(
                        &sweep.candidates[c],
                        &sweep.candidates[e],
                        lo,
                        hi,
                    )?);
                }
            }
            cuts.sort_by(f64::total_cmp);
            cuts.dedup();
            for w in cuts.windows(2) {
                let mid = 0.5 * (w[0] + w[1]);
                let best = argmax(&sweep.candidates, &alive, mid);
                match pieces.last_mut() {
                    Some(last) if last.candidate == best && last.hi == w[0] => last.hi = w[1],
                    _ => pieces.push(EnvelopePiece {
                        lo: w[0],
                        hi: w[1],
                        candidate: best,
                    }),
                }
            }
        }
        Ok(Envelope {
            candidates: sweep.candidates,
            pieces,
            d_min: profile.min_distance(),
            x_max: profile.max_distance(),
        })
    }

    /// Candidates alive at `x`; an arc that ends at `x` by splitting or
    /// vanishing is no longer counted (boundary contact ends an arc).
    pub fn alive_at(&self, x: f64) -> impl Iterator<Item = usize> + '_ {
        (0..self.candidates.len()).filter(move |&c| {
            let (lo, hi) = self.candidates[c].interval;
            lo <= x && x < hi
        })
    }

    /// `α_s(x)` reconstructed from the envelope.
    pub fn alpha(&self, x: f64) -> f64 {
        if x < self.d_min {
            return TAU;
        }
        self.alive_at(x)
            .map(|c| self.candidates[c].arc_unchecked(x))
            .fold(0.0, f64::max)
    }
}

fn argmax(candidates: &[Candidate], alive: &[usize], x: f64) -> usize {
    let mut best = alive[0];
    let mut best_val = candidates[best].arc_unchecked(x);
    for &c in &alive[1..] {
        let v = candidates[c].arc_unchecked(x);
        if v > best_val {
            best = c;
            best_val = v;
        }
    }
    best
}

fn pair_crossings(c: &Candidate, e: &Candidate, lo: f64, hi: f64) -> Result<Vec<f64>> {
    let diff = |x: f64| c.arc_unchecked(x) - e.arc_unchecked(x);
    let band = 1e-12;
    let sign = |v: f64| {
        if v > band {
            1
        } else if v < -band {
            -1
        } else {
            0
        }
    };
    let mut out = Vec::new();
    let mut prev: Option<(f64, i32)> = None;
    for k in 0..CROSSING_SAMPLES {
        let x = lo + (hi - lo) * k as f64 / (CROSSING_SAMPLES - 1) as f64;
        let sg = sign(diff(x));
        if sg == 0 {
            continue;
        }
        if let Some((px, ps)) = prev {
            if ps != sg {
                out.push(bisect(diff, px, x, 1e-15 * hi));
            }
        }
        prev = Some((x, sg));
    }
    if out.len() > MAX_PAIR_CROSSINGS {
        return Err(Error::EnvelopeComplexity {
            limit: MAX_PAIR_CROSSINGS,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertificateResult {
    pub x_star: f64,
    pub alpha_star: f64,
    /// `x_star · (1 + alpha_star)`.
    pub length: f64,
    /// Direction at which the worst-case arc starts.
    pub witness_direction: f64,
    pub candidate_count: usize,
}

/// Exact certificate of a kernel start point.
pub fn certificate(polygon: &Polygon, s: Point) -> Result<CertificateResult> {
    let profile = RadialProfile::new(polygon, s)?;
    certificate_from_profile(&profile)
}

pub fn certificate_from_profile(profile: &RadialProfile) -> Result<CertificateResult> {
    let env = Envelope::build(profile)?;
    let s = profile.center();
    let polygon = profile.polygon();

    // full circle at the nearest boundary distance
    let nearest = (0..polygon.len())
        .map(|k| {
            let (a, b) = polygon.edge(k);
            let v = b - a;
            let t = ((s - a).dot(v) / v.dot(v)).clamp(0.0, 1.0);
            a + v * t
        })
        .min_by(|p, q| p.dist(s).total_cmp(&q.dist(s)))
        .expect("polygon has edges");
    let mut best = CertificateResult {
        x_star: env.d_min,
        alpha_star: TAU,
        length: env.d_min * (1.0 + TAU),
        witness_direction: nearest.angle_from(s),
        candidate_count: env.candidates.len(),
    };
    // straight segment to the farthest vertex
    if env.x_max < best.length {
        let far = polygon
            .vertices()
            .iter()
            .copied()
            .max_by(|p, q| p.dist(s).total_cmp(&q.dist(s)))
            .expect("polygon has vertices");
        best = CertificateResult {
            x_star: env.x_max,
            alpha_star: 0.0,
            length: env.x_max,
            witness_direction: far.angle_from(s),
            candidate_count: env.candidates.len(),
        };
    }
    for piece in &env.pieces {
        let cand = &env.candidates[piece.candidate];
        let (x, len) = golden_section_min(|x| cand.length(x), piece.lo, piece.hi, PIECE_REL_TOL);
        if len < best.length {
            best = CertificateResult {
                x_star: x,
                alpha_star: cand.arc_unchecked(x),
                length: len,
                witness_direction: cand.start_angle(x),
                candidate_count: env.candidates.len(),
            };
        }
    }
    Ok(best)
}

/// Largest inside arc by exhaustion: exact circle/boundary hits, each gap
/// classified by a point-in-polygon test at its midpoint. Returns the arc and
/// the direction where it starts.
fn oracle_arc(polygon: &Polygon, s: Point, x: f64, angle_samples: usize) -> (f64, f64) {
    let hits = circle_boundary_hits(polygon, s, x).hits;
    if hits.is_empty() {
        let inside = (0..angle_samples)
            .filter(|&k| polygon.contains(Point::polar(s, x, TAU * k as f64 / angle_samples as f64)))
            .count();
        return if 2 * inside > angle_samples {
            (TAU, 0.0)
        } else {
            (0.0, 0.0)
        };
    }
    let m = hits.len();
    let mut best = (0.0, hits[0].angle);
    for i in 0..m {
        let a = hits[i].angle;
        let gap = if m == 1 {
            TAU
        } else {
            ccw_gap(a, hits[(i + 1) % m].angle)
        };
        if gap > best.0 && polygon.contains(Point::polar(s, x, a + 0.5 * gap)) {
            best = (gap, a);
        }
    }
    best
}

/// Brute-force certificate: grid over `x ∈ [d_min, x_max]`, then
/// golden-section refinement around the lowest grid minima.
pub fn certificate_oracle(
    polygon: &Polygon,
    s: Point,
    x_samples: usize,
    angle_samples: usize,
) -> Result<CertificateResult> {
    if x_samples < 64 || angle_samples < 64 {
        return Err(Error::Domain(format!(
            "oracle needs at least 64 samples, got x={x_samples}, angle={angle_samples}"
        )));
    }
    validate_kernel_point(polygon, s)?;
    let d_min = polygon.boundary_distance(s);
    let x_max = polygon
        .vertices()
        .iter()
        .map(|p| p.dist(s))
        .fold(0.0, f64::max);
    let length = |x: f64| x * (1.0 + oracle_arc(polygon, s, x, angle_samples).0);
    let grid: Vec<(f64, f64)> = (0..x_samples)
        .map(|g| {
            let x = d_min + (x_max - d_min) * g as f64 / (x_samples - 1) as f64;
            (x, length(x))
        })
        .collect();
    let mut minima: Vec<usize> = (0..x_samples)
        .filter(|&g| {
            (g == 0 || grid[g].1 <= grid[g - 1].1)
                && (g + 1 == x_samples || grid[g].1 <= grid[g + 1].1)
        })
        .collect();
    minima.sort_by(|&a, &b| grid[a].1.total_cmp(&grid[b].1));
    minima.truncate(8);
    let mut best = (grid[minima[0]].0, grid[minima[0]].1);
    for &g in &minima {
        let lo = grid[g.saturating_sub(1)].0;
        let hi = grid[(g + 1).min(x_samples - 1)].0;
        let (x, len) = golden_section_min(length, lo, hi, 1e-13);
        if len < best.1 {
            best = (x, len);
        }
    }
    let (alpha, start) = oracle_arc(polygon, s, best.0, angle_samples);
    Ok(CertificateResult {
        x_star: best.0,
        alpha_star: alpha,
        length: best.1,
        witness_direction: start,
        candidate_count: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::radial_profile;

    fn triangle() -> Polygon {
        let h = 3f64.sqrt() / 2.0;
        Polygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, h),
        ])
        .unwrap()
    }

    fn manual(d_i: f64, d_j: f64, angle_ij: f64, lo: f64, hi: f64) -> Candidate {
        Candidate {
            edge_i: 0,
            edge_j: 1,
            d_i,
            d_j,
            theta_i: 0.0,
            theta_j: 0.0,
            angle_ij,
            sign_i: -1.0,
            sign_j: -1.0,
            interval: (lo, hi),
        }
    }

    #[test]
    fn arc_formula_examples() {
        let c = manual(0.5, 0.5, PI, 0.5, 2.0);
        assert_eq!(candidate_arc(&c, 0.5).unwrap(), 0.0);
        // parallel walls on either side of the midline: the arc spans a turn of π
        let strip = manual(0.5, 0.5, 0.0, 0.5, 10.0);
        assert!((candidate_arc(&strip, 1.0).unwrap() - PI / 3.0).abs() < 1e-15);
        assert!(matches!(
            candidate_arc(&strip, 11.0),
            Err(Error::OutOfInterval { .. })
        ));
    }

    #[test]
    fn square_sweep() {
        let sq = Polygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap();
        let profile = radial_profile(&sq, Point::default()).unwrap();
        let events = sweep_events(&profile);
        let births: Vec<_> = events
            .iter()
            .filter(|e| e.kind == EventKind::Birth)
            .collect();
        assert_eq!(births.len(), 4);
        assert!(births.iter().all(|e| (e.radius - 0.5).abs() < 1e-15 && e.edge.is_some()));
        assert!(events
            .iter()
            .filter(|e| e.vertex.is_some())
            .all(|e| e.kind == EventKind::VertexAbsorbed && (e.radius - 0.5f64.sqrt()).abs() < 1e-15));

        let cands = enumerate_candidates(&sq, Point::default()).unwrap();
        assert_eq!(cands.len(), 4);
        for c in &cands {
            assert_eq!(c.interval.0, 0.5);
            assert!((c.interval.1 - 0.5f64.sqrt()).abs() < 1e-15);
            // consecutive walls, a quarter turn apart
            assert!((c.angle_ij - PI / 2.0).abs() < 1e-12);
            assert_eq!((c.sign_i, c.sign_j), (-1.0, -1.0));
            assert!((c.arc(0.5).unwrap() - PI / 2.0).abs() < 1e-12);
            assert!(c.arc(0.5f64.sqrt()).unwrap().abs() < 1e-7);
        }
    }

    #[test]
    fn triangle_sweep_events() {
        let tri = triangle();
        let c = Point::new(0.5, 3f64.sqrt() / 6.0);
        let profile = radial_profile(&tri, c).unwrap();
        let inradius = 1.0 / (2.0 * 3f64.sqrt());
        let circumradius = 1.0 / 3f64.sqrt();
        for e in sweep_events(&profile) {
            match e.kind {
                EventKind::Birth => assert!((e.radius - inradius).abs() < 1e-12),
                EventKind::VertexAbsorbed => assert!((e.radius - circumradius).abs() < 1e-12),
                EventKind::VertexSplit => panic!("no split events at the centroid"),
            }
        }
        let cands = enumerate_candidates(&tri, c).unwrap();
        assert_eq!(cands.len(), 3);
    }

    #[test]
    fn regular_polygon_candidates_share_shape() {
        let m = 7;
        let poly = Polygon::regular(m, 1.0, Point::default()).unwrap();
        let cands = enumerate_candidates(&poly, Point::default()).unwrap();
        let inradius = (PI / m as f64).cos();
        assert_eq!(cands.len(), m);
        for c in &cands {
            assert!((c.interval.0 - inradius).abs() < 1e-12);
            assert!((c.d_i - cands[0].d_i).abs() < 1e-12);
            assert!((c.angle_ij - cands[0].angle_ij).abs() < 1e-12);
        }
    }

    #[test]
    fn single_tangent_edge_gives_full_circle_at_birth() {
        // near wall at distance 0.1 of a large room
        let room = Polygon::rectangle(-50.0, -0.1, 50.0, 60.0).unwrap();
        let cands = enumerate_candidates(&room, Point::default()).unwrap();
        let first = cands
            .iter()
            .min_by(|a, b| a.interval.0.total_cmp(&b.interval.0))
            .unwrap();
        assert!((first.interval.0 - 0.1).abs() < 1e-15);
        assert_eq!(first.edge_i, first.edge_j);
        assert!((first.arc(0.1).unwrap() - TAU).abs() < 1e-12);
    }

    #[test]
    fn born_candidates_continue_parent_arc() {
        // a notch whose tip is a local minimum of the radial distance
        let poly = Polygon::new(vec![
            Point::new(-2.0, -0.5),
            Point::new(2.0, -0.5),
            Point::new(2.0, 2.0),
            Point::new(0.3, 2.0),
            Point::new(0.0, 1.0),
            Point::new(-0.3, 2.0),
            Point::new(-2.0, 2.0),
        ])
        .unwrap();
        let profile = radial_profile(&poly, Point::default()).unwrap();
        let sweep = CandidateSweep::run(&profile);
        // the notch tip sits at distance 1
        let parents: Vec<_> = sweep
            .candidates
            .iter()
            .filter(|c| c.interval.1 == 1.0)
            .collect();
        let children: Vec<_> = sweep
            .candidates
            .iter()
            .filter(|c| c.interval.0 == 1.0)
            .collect();
        assert_eq!((parents.len(), children.len()), (1, 2));
        let total: f64 = children.iter().map(|c| c.arc(1.0).unwrap()).sum();
        assert!((total - parents[0].arc(1.0).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn certificate_of_square() {
        let sq = Polygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap();
        let c = certificate(&sq, Point::default()).unwrap();
        assert!(c.length >= 0.5 && c.length <= 0.5 * (1.0 + TAU));
        assert!((c.length - c.x_star * (1.0 + c.alpha_star)).abs() < 1e-12);
        let o = certificate_oracle(&sq, Point::default(), 4096, 256).unwrap();
        assert!((c.length - o.length).abs() / c.length < 1e-6);
    }

    #[test]
    fn near_spike_certificate_is_full_circle() {
        // a needle from the floor whose tip is 0.1 below the start point
        let room = Polygon::new(vec![
            Point::new(-50.0, -1.0),
            Point::new(-0.001, -1.0),
            Point::new(0.0, -0.1),
            Point::new(0.001, -1.0),
            Point::new(50.0, -1.0),
            Point::new(50.0, 60.0),
            Point::new(-50.0, 60.0),
        ])
        .unwrap();
        let c = certificate(&room, Point::default()).unwrap();
        assert!((c.length - 0.1 * (1.0 + TAU)).abs() < 1e-12);
        assert!((c.length - 0.728_318_5).abs() < 1e-6);
        assert_eq!(c.alpha_star, TAU);
    }

    #[test]
    fn near_flat_wall_uses_slightly_larger_circle() {
        // min over t of d·sec t·(1 + 2π − 2t): tan t·(1 + 2π − 2t) = 2
        let d = 0.1;
        let t = bisect(|t: f64| t.tan() * (1.0 + TAU - 2.0 * t) - 2.0, 0.01, 1.0, 1e-15);
        let expected = d / t.cos() * (1.0 + TAU - 2.0 * t);
        let room = Polygon::rectangle(-50.0, -d, 50.0, 60.0).unwrap();
        let c = certificate(&room, Point::default()).unwrap();
        assert!((c.length - expected).abs() < 1e-9, "{} vs {expected}", c.length);
        assert!(c.length < d * (1.0 + TAU));
    }

    #[test]
    fn disk_certificate_is_radius() {
        let disk = Polygon::regular(512, 1.0, Point::default()).unwrap();
        let c = certificate(&disk, Point::default()).unwrap();
        assert!((c.length - 1.0).abs() < 1e-12);
        assert_eq!(c.alpha_star, 0.0);
    }

    #[test]
    fn strip_midline_certificate() {
        let strip = Polygon::rectangle(-10.0, -0.5, 10.0, 0.5).unwrap();
        let c = certificate(&strip, Point::default()).unwrap();
        assert!(c.length < 2.11);
        // the radius-l certificate is available, so the optimum is no longer
        assert!(c.length <= 1.0 + PI / 3.0 + 1e-12);
        let o = certificate_oracle(&strip, Point::default(), 8192, 128).unwrap();
        assert!((c.length - o.length).abs() / c.length < 1e-6);
    }

    #[test]
    fn oracle_rejects_coarse_grids() {
        let sq = Polygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap();
        assert!(matches!(
            certificate_oracle(&sq, Point::default(), 10, 128),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn certificate_errors() {
        let sq = Polygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap();
        assert_eq!(
            certificate(&sq, Point::new(0.5, 0.0)),
            Err(Error::DegenerateInput)
        );
        assert_eq!(certificate(&sq, Point::new(2.0, 0.0)), Err(Error::NotInKernel));
    }
}
