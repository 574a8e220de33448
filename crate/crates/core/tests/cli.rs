use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn escape(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_escape"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(line: &str, key: &str) -> f64 {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing in {line}"))
        .parse()
        .unwrap()
}

#[test]
fn certificate_of_square_center() {
    let sq = data("square.poly");
    let o = escape(&["certificate", "--polygon", sq.to_str().unwrap(), "--start", "0,0", "--oracle"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    let first = lines.next().unwrap();
    assert!((field(first, "length") - 0.5f64.sqrt()).abs() < 1e-8);
    assert_eq!(field(first, "candidates"), 4.0);
    assert!(field(lines.next().unwrap(), "rel_gap") <= 1e-6);
}

#[test]
fn negative_start_coordinates_parse() {
    let sq = data("square.poly");
    let o = escape(&["certificate", "--polygon", sq.to_str().unwrap(), "--start", "-0.1,-0.2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn spiral_ratio_within_bound() {
    let star = data("star.poly");
    let o = escape(&["spiral", "--polygon", star.to_str().unwrap(), "--start", "0,0", "--rotations", "360"]);
    assert_eq!(o.status.code(), Some(0));
    let ratio = field(&stdout(&o), "ratio");
    assert!(ratio > 1.0 && ratio <= 3.318674 + 1e-6, "{ratio}");
}

#[test]
fn lowerbound_sweep_lines() {
    let o = escape(&["lowerbound", "--sweep", "8,64"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(field(lines[0], "bound") < field(lines[1], "bound"));
}

#[test]
fn baselines_report_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("tri.csv");
    let o = escape(&["baselines", "--case", "triangle", "--samples", "20", "--report", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("samples=20 dominated=20"));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "start_x,start_y,baseline_worst,certificate,ratio,dominated");
    assert_eq!(lines.filter(|l| l.ends_with(",true")).count(), 20);
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let sq = data("square.poly");
    for what in ["polygon", "certificate", "spiral", "profile"] {
        let o = escape(&[
            "render", "--polygon", sq.to_str().unwrap(), "--start", "0.1,0", "--what", what,
            "--out", svg.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{what}");
        assert!(std::fs::read_to_string(&svg).unwrap().contains("<svg "));
    }
}

#[test]
fn invalid_inputs_exit_2_without_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("never.svg");
    let bad = data("bad.poly");
    let o = escape(&["certificate", "--polygon", bad.to_str().unwrap(), "--start", "0,0", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!svg.exists());

    let notch = data("notch.poly");
    let o = escape(&["render", "--polygon", notch.to_str().unwrap(), "--start", "5,5", "--what", "polygon", "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!svg.exists());

    assert_eq!(escape(&["lowerbound", "--n", "1"]).status.code(), Some(2));
    assert_eq!(escape(&["certificate", "--start", "0,0"]).status.code(), Some(2));
    assert_eq!(escape(&["baselines", "--case", "triangle", "--samples", "0"]).status.code(), Some(2));
}

#[test]
fn io_errors_exit_3() {
    let o = escape(&["certificate", "--polygon", "/nonexistent/x.poly", "--start", "0,0"]);
    assert_eq!(o.status.code(), Some(3));
    let sq = data("square.poly");
    let o = escape(&["render", "--polygon", sq.to_str().unwrap(), "--start", "0,0", "--what", "polygon", "--out", "/nonexistent/dir/x.svg"]);
    assert_eq!(o.status.code(), Some(3));
}
