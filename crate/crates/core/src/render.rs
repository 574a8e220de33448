//! SVG output for polygons, certificate paths, spirals, baseline paths and
//! radial profiles. Coordinates are written with six decimals and the y-axis
//! points up, so identical input gives identical bytes.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::baselines::{EscapePath, PathPiece};
use crate::certificate::CertificateResult;
use crate::error::{Error, Result};
use crate::geometry::{Point, Polygon, RadialProfile};
use crate::spiral::{EscapeResult, SpiralParams};

/// Largest angular step of sampled curves.
pub const MAX_STEP: f64 = 0.5 * std::f64::consts::PI / 180.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Boundary,
    Path,
    Spiral,
    Guide,
}

impl Style {
    fn stroke(self) -> &'static str {
        match self {
            Style::Boundary => "#222222",
            Style::Path => "#c0392b",
            Style::Spiral => "#2c6fbb",
            Style::Guide => "#999999",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Drawable {
    Polygon(Vec<Point>),
    Polyline(Vec<Point>, Style),
    /// Counter-clockwise for positive `sweep`.
    Arc {
        center: Point,
        radius: f64,
        start: f64,
        sweep: f64,
        style: Style,
    },
    Marker(Point),
    Text(Point, String),
}

impl Drawable {
    fn extent(&self, out: &mut Vec<Point>) {
        match self {
            Drawable::Polygon(p) | Drawable::Polyline(p, _) => out.extend(p),
            Drawable::Arc {
                center,
                radius,
                start,
                sweep,
                ..
            } => {
                let steps = ((sweep.abs() / MAX_STEP).ceil() as usize).max(1);
                out.extend((0..=steps).map(|i| {
                    Point::polar(*center, *radius, start + sweep * i as f64 / steps as f64)
                }));
            }
            Drawable::Marker(p) | Drawable::Text(p, _) => out.push(*p),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Scene {
    pub layers: Vec<Drawable>,
}

impl Scene {
    pub fn new() -> Self {
        Scene::default()
    }

    pub fn push(&mut self, d: Drawable) -> &mut Self {
        self.layers.push(d);
        self
    }

    /// `(min_x, min_y, width, height)` of all drawables with a 5% margin.
    pub fn viewbox(&self) -> Option<(f64, f64, f64, f64)> {
        let mut pts = Vec::new();
        for d in &self.layers {
            d.extent(&mut pts);
        }
        let first = *pts.first()?;
        let (mut lo, mut hi) = (first, first);
        for p in &pts {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let size = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let m = 0.05 * size;
        Some((lo.x - m, lo.y - m, hi.x - lo.x + 2.0 * m, hi.y - lo.y + 2.0 * m))
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

fn xy(p: Point) -> String {
    format!("{} {}", num(p.x), num(-p.y))
}

fn points_attr(pts: &[Point]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", num(p.x), num(-p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn arc_path(center: Point, radius: f64, start: f64, sweep: f64) -> String {
    // y is flipped, so counter-clockwise in the plane is sweep-flag 0
    let flag = if sweep > 0.0 { 0 } else { 1 };
    let pieces = if sweep.abs() >= TAU - 1e-9 { 2 } else { 1 };
    let part = sweep / pieces as f64;
    let mut d = format!("M {}", xy(Point::polar(center, radius, start)));
    for i in 1..=pieces {
        let end = Point::polar(center, radius, start + part * i as f64);
        let large = if part.abs() > std::f64::consts::PI { 1 } else { 0 };
        let _ = write!(
            d,
            " A {} {} 0 {large} {flag} {}",
            num(radius),
            num(radius),
            xy(end)
        );
    }
    d
}

fn escape_text(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// SVG 1.1 document for `scene`.
pub fn render_scene(scene: &Scene) -> Result<String> {
    let (x0, y0, w, h) = scene.viewbox().ok_or(Error::EmptyScene)?;
    let size = w.max(h);
    let stroke = num(0.004 * size);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(x0),
        num(-(y0 + h)),
        num(w),
        num(h)
    );
    for d in &scene.layers {
        match d {
            Drawable::Polygon(p) => {
                let _ = writeln!(
                    out,
                    "  <path d=\"M {} Z\" fill=\"#f2f2f2\" stroke=\"{}\" stroke-width=\"{stroke}\"/>",
                    p.iter().map(|q| xy(*q)).collect::<Vec<_>>().join(" L "),
                    Style::Boundary.stroke()
                );
            }
            Drawable::Polyline(p, style) => {
                let _ = writeln!(
                    out,
                    "  <polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{stroke}\"/>",
                    points_attr(p),
                    style.stroke()
                );
            }
            Drawable::Arc {
                center,
                radius,
                start,
                sweep,
                style,
            } => {
                let _ = writeln!(
                    out,
                    "  <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{stroke}\"/>",
                    arc_path(*center, *radius, *start, *sweep),
                    style.stroke()
                );
            }
            Drawable::Marker(p) => {
                let _ = writeln!(
                    out,
                    "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#000000\"/>",
                    num(p.x),
                    num(-p.y),
                    num(0.008 * size)
                );
            }
            Drawable::Text(p, t) => {
                let _ = writeln!(
                    out,
                    "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\">{}</text>",
                    num(p.x),
                    num(-p.y),
                    num(0.035 * size),
                    escape_text(t)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn polygon_scene(polygon: &Polygon, s: Option<Point>) -> Scene {
    let mut scene = Scene::new();
    scene.push(Drawable::Polygon(polygon.vertices().to_vec()));
    if let Some(s) = s {
        scene.push(Drawable::Marker(s));
    }
    scene
}

/// Polygon, the radius segment in the witness direction and the arc.
pub fn certificate_scene(polygon: &Polygon, s: Point, cert: &CertificateResult) -> Scene {
    let mut scene = polygon_scene(polygon, Some(s));
    let dir = cert.witness_direction;
    scene.push(Drawable::Polyline(
        vec![s, Point::polar(s, cert.x_star, dir)],
        Style::Path,
    ));
    if cert.alpha_star > 0.0 {
        scene.push(Drawable::Arc {
            center: s,
            radius: cert.x_star,
            start: dir,
            sweep: cert.alpha_star,
            style: Style::Path,
        });
    }
    scene
}

/// Spiral points from radius `1e-3·d_min` to the exit, at most half a degree apart.
pub fn spiral_points(s: Point, params: SpiralParams, d_min: f64, exit_angle: f64) -> Vec<Point> {
    let start = params.phi_at_radius(1e-3 * d_min).min(exit_angle);
    let steps = (((exit_angle - start) / MAX_STEP).ceil() as usize).max(1);
    (0..=steps)
        .map(|i| params.point(s, start + (exit_angle - start) * i as f64 / steps as f64))
        .collect()
}

pub fn spiral_scene(polygon: &Polygon, s: Point, params: SpiralParams, exit: &EscapeResult) -> Scene {
    let mut scene = polygon_scene(polygon, Some(s));
    let d_min = polygon.boundary_distance(s);
    scene.push(Drawable::Polyline(
        spiral_points(s, params, d_min, exit.exit_angle),
        Style::Spiral,
    ));
    scene.push(Drawable::Marker(exit.exit_point));
    scene
}

/// Polygon and a placed escape path, cut at `length`.
pub fn path_scene(polygon: &Polygon, s: Point, path: &EscapePath, length: f64) -> Scene {
    let mut scene = polygon_scene(polygon, Some(s));
    let mut left = length;
    for piece in &path.pieces {
        if left <= 0.0 {
            break;
        }
        let len = piece.length().min(left);
        match *piece {
            PathPiece::Segment { from, .. } => {
                scene.push(Drawable::Polyline(vec![from, piece.point_at(len)], Style::Path));
            }
            PathPiece::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                scene.push(Drawable::Arc {
                    center,
                    radius,
                    start,
                    sweep: sweep.signum() * len / radius,
                    style: Style::Path,
                });
            }
        }
        left -= len;
    }
    scene
}

/// Plot of `f(φ)` over `[0, 2π]` with the certificate as a hook: up to
/// `x*` at the witness direction, then across by `α*`.
pub fn render_radial_profile(profile: &RadialProfile, cert: Option<&CertificateResult>) -> Result<String> {
    let f_max = profile.max_distance();
    // plot area is 2π wide and π high
    let k = std::f64::consts::PI / f_max;
    let at = |phi: f64, f: f64| Point::new(phi, f * k);
    let mut phis: Vec<f64> = (0..=720).map(|i| TAU * i as f64 / 720.0).collect();
    phis.extend(profile.breakpoints().iter().map(|b| b.0));
    phis.sort_by(f64::total_cmp);
    phis.dedup();
    let curve: Vec<Point> = phis.iter().map(|&p| at(p, profile.eval(p))).collect();

    let mut scene = Scene::new();
    scene.push(Drawable::Polyline(vec![at(0.0, 0.0), at(TAU, 0.0)], Style::Guide));
    scene.push(Drawable::Polyline(vec![at(0.0, 0.0), at(0.0, f_max)], Style::Guide));
    scene.push(Drawable::Polyline(curve, Style::Boundary));
    if let Some(c) = cert {
        let phi = c.witness_direction;
        let end = phi + c.alpha_star;
        scene.push(Drawable::Polyline(
            vec![at(phi, 0.0), at(phi, c.x_star)],
            Style::Path,
        ));
        if end <= TAU {
            scene.push(Drawable::Polyline(
                vec![at(phi, c.x_star), at(end, c.x_star)],
                Style::Path,
            ));
        } else {
            scene.push(Drawable::Polyline(
                vec![at(phi, c.x_star), at(TAU, c.x_star)],
                Style::Path,
            ));
            scene.push(Drawable::Polyline(
                vec![at(0.0, c.x_star), at(end - TAU, c.x_star)],
                Style::Path,
            ));
        }
    }
    scene.push(Drawable::Text(at(0.0, -0.08 * f_max), "0".into()));
    scene.push(Drawable::Text(at(TAU, -0.08 * f_max), "2π".into()));
    render_scene(&scene)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::rectangle(-0.5, -0.5, 0.5, 0.5).unwrap()
    }

    #[test]
    fn empty_scene_is_an_error() {
        assert_eq!(render_scene(&Scene::new()), Err(Error::EmptyScene));
    }

    #[test]
    fn polygon_only() {
        let svg = render_scene(&polygon_scene(&square(), None)).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(" Z\""));
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("viewBox=\"-0.550000 -0.550000 1.100000 1.100000\""));
    }

    #[test]
    fn arcs_use_path_commands() {
        let mut scene = Scene::new();
        scene.push(Drawable::Arc {
            center: Point::default(),
            radius: 1.0,
            start: 0.0,
            sweep: TAU,
            style: Style::Path,
        });
        let svg = render_scene(&scene).unwrap();
        // a full circle is drawn as two half arcs
        assert_eq!(svg.matches(" A ").count(), 2);
        let mut quarter = Scene::new();
        quarter.push(Drawable::Arc {
            center: Point::default(),
            radius: 1.0,
            start: 0.0,
            sweep: 0.5 * std::f64::consts::PI,
            style: Style::Path,
        });
        let svg = render_scene(&quarter).unwrap();
        assert!(svg.contains("M 1.000000 0.000000 A 1.000000 1.000000 0 0 0 0.000000 -1.000000"));
    }

    #[test]
    fn output_is_deterministic() {
        let sq = square();
        let cert = crate::certificate::certificate(&sq, Point::default()).unwrap();
        let a = render_scene(&certificate_scene(&sq, Point::default(), &cert)).unwrap();
        let b = render_scene(&certificate_scene(&sq, Point::default(), &cert)).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("NaN") && !a.contains("inf"));
    }

    #[test]
    fn spiral_sampling_step() {
        let p = SpiralParams::for_distance(0.5);
        let pts = spiral_points(Point::default(), p, 0.5, 20.0);
        for w in pts.windows(2) {
            let a = w[0].y.atan2(w[0].x);
            let b = w[1].y.atan2(w[1].x);
            assert!(crate::geometry::angle_diff(a, b).abs() <= MAX_STEP + 1e-12);
        }
    }

    #[test]
    fn profile_plot_wraps_hook() {
        let sq = square();
        let profile = RadialProfile::new(&sq, Point::default()).unwrap();
        let cert = CertificateResult {
            x_star: 0.6,
            alpha_star: 1.0,
            length: 1.2,
            witness_direction: 6.0,
            candidate_count: 4,
        };
        let svg = render_radial_profile(&profile, Some(&cert)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 6);
    }
}
