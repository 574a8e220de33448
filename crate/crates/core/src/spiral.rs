//! Logarithmic spiral escape strategy.
//!
//! The spiral `r(φ) = a·e^{φ cot β}` around the start point has arc length
//! `(a / cos β)·e^{φ cot β}` measured from the pole. With `β` chosen so that
//! `e^{2π cot β} = 1 + 2π` it leaves every star-shaped polygon from a kernel
//! point within `1 / cos β ≈ 3.3186738` times the certificate length.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{ccw_gap, normalize_angle, Point, Polygon, RadialProfile};
use crate::optimize::{bisect, golden_section_max};

/// Competitive ratio guaranteed by the optimal spiral, rounded up.
pub const RATIO_BOUND: f64 = 3.318674;

/// Radius, relative to the nearest boundary distance, where exit detection starts.
const START_RADIUS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpiralParams {
    pub a: f64,
    pub beta: f64,
    /// Adversary rotation: the spiral point at parameter `φ` lies in
    /// direction `φ + rotation`.
    pub rotation: f64,
}

impl SpiralParams {
    /// Optimal eccentricity with `a = 1e-3 · d_min`.
    pub fn for_distance(d_min: f64) -> Self {
        SpiralParams {
            a: 1e-3 * d_min,
            beta: optimal_beta(),
            rotation: 0.0,
        }
    }

    pub fn cot_beta(&self) -> f64 {
        1.0 / self.beta.tan()
    }

    pub fn radius(&self, phi: f64) -> f64 {
        self.a * (phi * self.cot_beta()).exp()
    }

    /// Parameter at which the spiral reaches radius `r`.
    pub fn phi_at_radius(&self, r: f64) -> f64 {
        (r / self.a).ln() / self.cot_beta()
    }

    /// Arc length from the pole to parameter `phi`.
    pub fn length(&self, phi: f64) -> f64 {
        self.a / self.beta.cos() * (phi * self.cot_beta()).exp()
    }

    pub fn point(&self, s: Point, phi: f64) -> Point {
        Point::polar(s, self.radius(phi), phi + self.rotation)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::Domain(format!("spiral scale a = {} must be positive", self.a)));
        }
        if !(self.beta > FRAC_PI_4 && self.beta < FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "eccentricity {} outside (pi/4, pi/2)",
                self.beta
            )));
        }
        if !self.rotation.is_finite() {
            return Err(Error::Domain("rotation must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EscapeResult {
    pub exit_angle: f64,
    pub path_length: f64,
    pub exit_point: Point,
}

/// `arccot(ln(1 + 2π) / 2π)`.
pub fn optimal_beta() -> f64 {
    (TAU / (1.0 + TAU).ln()).atan()
}

/// Ratio of the spiral against a certificate whose arc is `gamma`:
/// `e^{γ cot β} / (cos β (1 + γ))`.
pub fn ratio_function(gamma: f64, beta: f64) -> Result<f64> {
    if !(0.0..=TAU).contains(&gamma) {
        return Err(Error::Domain(format!("gamma = {gamma} outside [0, 2pi]")));
    }
    Ok((gamma / beta.tan()).exp() / (beta.cos() * (1.0 + gamma)))
}

/// Follows the spiral until it first reaches the boundary (touching counts).
///
/// Inside the angular span of one edge, with `u` the angle from the edge
/// normal, `h(φ) = r(φ)·cos u − d` has derivative proportional to
/// `cos(u + β)`: it rises up to `u = π/2 − β` and falls after. The first
/// root on each span is therefore found by one bisection on the rising part.
pub fn escape(polygon: &Polygon, s: Point, params: SpiralParams) -> Result<EscapeResult> {
    let profile = RadialProfile::new(polygon, s)?;
    escape_from_profile(&profile, params)
}

pub fn escape_from_profile(profile: &RadialProfile, params: SpiralParams) -> Result<EscapeResult> {
    params.validate()?;
    let d_min = profile.min_distance();
    if params.a > d_min {
        return Err(Error::Domain(format!(
            "spiral scale a = {} exceeds the boundary distance {d_min}",
            params.a
        )));
    }
    let polygon = profile.polygon();
    let s = profile.center();
    let n = polygon.len();
    let verts = polygon.vertices();
    let u_peak = FRAC_PI_2 - params.beta;

    let mut phi = params.phi_at_radius(START_RADIUS * d_min);
    let mut k = profile.edge_at(phi + params.rotation);
    // a spiral that has grown past every vertex cannot still be inside
    let phi_limit = params.phi_at_radius(profile.max_distance()) + TAU;
    while phi <= phi_limit {
        let line = profile.line(k);
        let psi = normalize_angle(phi + params.rotation);
        let phi_end = phi + ccw_gap(psi, verts[(k + 1) % n].angle_from(s));
        let h = |p: f64| {
            params.radius(p) * (p + params.rotation - line.theta).cos() - line.d
        };
        let u0 = crate::geometry::angle_diff(line.theta, psi);
        let phi_peak = phi + (u_peak - u0);
        let rise_end = phi_peak.min(phi_end);
        if h(phi) >= 0.0 {
            return Ok(result(params, s, phi));
        }
        if rise_end > phi && h(rise_end) >= 0.0 {
            let tol = 1e-13 * phi.abs().max(1.0);
            let mut root = bisect(h, phi, rise_end, tol);
            // settle on the side where the spiral has reached the boundary
            while h(root) < 0.0 && root < rise_end {
                root = (root + tol).min(rise_end);
            }
            return Ok(result(params, s, root));
        }
        phi = phi_end;
        k = (k + 1) % n;
    }
    Err(Error::NoExit)
}

fn result(params: SpiralParams, s: Point, phi: f64) -> EscapeResult {
    EscapeResult {
        exit_angle: phi,
        path_length: params.length(phi),
        exit_point: params.point(s, phi),
    }
}

/// Worst escape length over adversary rotations: a uniform grid of
/// `rotation_samples` rotations, then golden-section refinement around the
/// eight largest grid values.
pub fn worst_case_escape(
    polygon: &Polygon,
    s: Point,
    beta: f64,
    rotation_samples: usize,
) -> Result<(f64, f64)> {
    if rotation_samples < 360 {
        return Err(Error::Domain(format!(
            "need at least 360 rotation samples, got {rotation_samples}"
        )));
    }
    let profile = RadialProfile::new(polygon, s)?;
    let base = SpiralParams {
        beta,
        ..SpiralParams::for_distance(profile.min_distance())
    };
    let run = |rotation: f64| {
        escape_from_profile(&profile, SpiralParams { rotation, ..base }).map(|e| e.path_length)
    };
    let step = TAU / rotation_samples as f64;
    let grid: Vec<f64> = (0..rotation_samples)
        .into_par_iter()
        .map(|i| run(i as f64 * step))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..rotation_samples).collect();
    order.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]).then(a.cmp(&b)));
    let mut best = (order[0] as f64 * step, grid[order[0]]);
    let refined: Vec<(f64, f64)> = order[..8]
        .par_iter()
        .map(|&i| {
            let r = i as f64 * step;
            golden_section_max(
                |rot| run(rot).unwrap_or(f64::NEG_INFINITY),
                r - step,
                r + step,
                1e-12,
            )
        })
        .collect();
    for (rot, len) in refined {
        if len > best.1 {
            best = (normalize_angle(rot), len);
        }
    }
    Ok(best)
}
