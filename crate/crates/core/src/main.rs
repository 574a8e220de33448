use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use escape_core::baselines::{
    disk_dominance, strip_dominance, triangle_dominance, EscapeComparison,
};
use escape_core::certificate::{certificate_from_profile, certificate_oracle};
use escape_core::geometry::{Point, Polygon, RadialProfile};
use escape_core::lowerbound::minimize_g;
use escape_core::render::{
    certificate_scene, polygon_scene, render_radial_profile, render_scene, spiral_scene,
};
use escape_core::spiral::{escape_from_profile, optimal_beta, worst_case_escape, SpiralParams};

#[derive(Parser)]
#[command(name = "escape", version, about = "Escape paths from star-shaped polygons")]
struct Cli {
    /// Seed for sampled start points.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Shortest radius-plus-arc path that leaves the polygon under any rotation.
    Certificate {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        start: Point,
        /// Also run the sampling oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 4096)]
        x_samples: usize,
        #[arg(long, default_value_t = 512)]
        angle_samples: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Worst-case logarithmic spiral escape against the certificate.
    Spiral {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        start: Point,
        #[arg(long, default_value_t = 720)]
        rotations: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Minimizes the lower-bound functional for n rays.
    Lowerbound {
        #[arg(long, default_value_t = 28_000_000_000)]
        n: u64,
        /// Comma-separated list of ray counts; overrides --n.
        #[arg(long, value_delimiter = ',')]
        sweep: Option<Vec<u64>>,
    },
    /// Certificate against a known escape path at sampled start points.
    Baselines {
        #[arg(long, value_enum)]
        case: Case,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Writes an SVG picture.
    Render {
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        start: Point,
        #[arg(long, value_enum)]
        what: What,
        /// Spiral rotation for `--what spiral`.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        rotation: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Triangle,
    Strip,
    Disk,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Polygon,
    Certificate,
    Spiral,
    Profile,
}

enum Failure {
    Input(String),
    Io(String),
}

impl From<escape_core::Error> for Failure {
    fn from(e: escape_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected X,Y, got {s:?}"))?;
    let p = Point::new(
        x.trim().parse().map_err(|e| format!("bad x in {s:?}: {e}"))?,
        y.trim().parse().map_err(|e| format!("bad y in {s:?}: {e}"))?,
    );
    if p.is_finite() {
        Ok(p)
    } else {
        Err(format!("start point {s:?} is not finite"))
    }
}

/// Nine significant digits.
fn sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..15).contains(&exp) {
        return format!("{v:.8e}");
    }
    let decimals = (8 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

fn read_polygon(path: &Path) -> Result<Polygon, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(Polygon::parse(&text)?)
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn report_csv(case: Case, rows: &[EscapeComparison]) -> String {
    let mut out = String::new();
    match case {
        Case::Strip => out.push_str("d,baseline_worst,certificate,ratio,dominated\n"),
        _ => out.push_str("start_x,start_y,baseline_worst,certificate,ratio,dominated\n"),
    }
    for r in rows {
        let start = match case {
            Case::Strip => sig(r.start.y),
            _ => format!("{},{}", sig(r.start.x), sig(r.start.y)),
        };
        let _ = writeln!(
            out,
            "{start},{},{},{},{}",
            sig(r.baseline_worst),
            sig(r.certificate_length),
            sig(r.ratio()),
            r.dominated
        );
    }
    out
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match cli.command {
        Command::Certificate {
            polygon,
            start,
            oracle,
            x_samples,
            angle_samples,
            svg,
        } => {
            let poly = read_polygon(&polygon)?;
            let profile = RadialProfile::new(&poly, start)?;
            let cert = certificate_from_profile(&profile)?;
            let _ = writeln!(
                out,
                "x_star={} alpha_star={} length={} candidates={}",
                sig(cert.x_star),
                sig(cert.alpha_star),
                sig(cert.length),
                cert.candidate_count
            );
            if oracle {
                let o = certificate_oracle(&poly, start, x_samples, angle_samples)?;
                let _ = writeln!(
                    out,
                    "oracle_x_star={} oracle_alpha_star={} oracle_length={} rel_gap={}",
                    sig(o.x_star),
                    sig(o.alpha_star),
                    sig(o.length),
                    sig((o.length - cert.length).abs() / cert.length)
                );
            }
            if let Some(path) = svg {
                write_file(&path, &render_scene(&certificate_scene(&poly, start, &cert))?)?;
            }
        }
        Command::Spiral {
            polygon,
            start,
            rotations,
            svg,
        } => {
            let poly = read_polygon(&polygon)?;
            let profile = RadialProfile::new(&poly, start)?;
            let cert = certificate_from_profile(&profile)?;
            let (rot, worst) = worst_case_escape(&poly, start, optimal_beta(), rotations)?;
            let _ = writeln!(
                out,
                "worst_rotation={} escape_length={} certificate_length={} ratio={}",
                sig(rot),
                sig(worst),
                sig(cert.length),
                sig(worst / cert.length)
            );
            if let Some(path) = svg {
                let params = SpiralParams {
                    rotation: rot,
                    ..SpiralParams::for_distance(profile.min_distance())
                };
                let exit = escape_from_profile(&profile, params)?;
                write_file(&path, &render_scene(&spiral_scene(&poly, start, params, &exit))?)?;
            }
        }
        Command::Lowerbound { n, sweep } => {
            for n in sweep.unwrap_or_else(|| vec![n]) {
                let r = minimize_g(n)?;
                let _ = writeln!(
                    out,
                    "n={} a_star={} a_minus_1={} g={} bound={}",
                    r.n,
                    r.a_star,
                    sig(r.a_minus_one),
                    sig(r.g_value),
                    sig(r.bound)
                );
            }
        }
        Command::Baselines {
            case,
            samples,
            report,
        } => {
            if samples == 0 {
                return Err(Failure::Input("--samples must be positive".into()));
            }
            let rows = match case {
                Case::Triangle => triangle_dominance(samples, cli.seed)?,
                Case::Strip => strip_dominance(samples)?,
                Case::Disk => disk_dominance(samples, cli.seed)?,
            };
            let dominated = rows.iter().filter(|r| r.dominated).count();
            let max_ratio = rows.iter().map(EscapeComparison::ratio).fold(0.0, f64::max);
            let _ = writeln!(
                out,
                "samples={} dominated={} max_ratio={}",
                rows.len(),
                dominated,
                sig(max_ratio)
            );
            if let Some(path) = report {
                write_file(&path, &report_csv(case, &rows))?;
            }
        }
        Command::Render {
            polygon,
            start,
            what,
            rotation,
            out: path,
        } => {
            let poly = read_polygon(&polygon)?;
            let profile = RadialProfile::new(&poly, start)?;
            let svg = match what {
                What::Polygon => render_scene(&polygon_scene(&poly, Some(start)))?,
                What::Certificate => {
                    let cert = certificate_from_profile(&profile)?;
                    render_scene(&certificate_scene(&poly, start, &cert))?
                }
                What::Spiral => {
                    let params = SpiralParams {
                        rotation,
                        ..SpiralParams::for_distance(profile.min_distance())
                    };
                    let exit = escape_from_profile(&profile, params)?;
                    render_scene(&spiral_scene(&poly, start, params, &exit))?
                }
                What::Profile => {
                    let cert = certificate_from_profile(&profile)?;
                    render_radial_profile(&profile, Some(&cert))?
                }
            };
            write_file(&path, &svg)?;
            let _ = writeln!(out, "wrote {}", path.display());
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
