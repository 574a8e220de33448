//! Lower bound for escaping star-shaped polygons.
//!
//! A strategy on `n` equidistant rays visits depths `x_1, x_2, …` in
//! periodic order. Against it the adversary offers two certificates, a short
//! arc at the deepest point and a full circle at the shallowest, giving the
//! functionals
//!
//! ```text
//! F1(k) = Σ_{i<k} |x_i x_{i+1}| / (x_k (1 + 2π/n))
//! F2(k) = Σ_{i<k} |x_i x_{i+1}| / (x_{k−n+1} (1 + 2π))
//! ```
//!
//! For exponential strategies `x_i = a^i` their sum tends to
//! `g_n(a) = √q / (a − 1) · [1 / (1 + 2π/n) + a^{n−1} / (1 + 2π)]`
//! with `q = 1 − 2a·cos(2π/n) + a²`, and half its minimum bounds the
//! competitive ratio from below.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::optimize::golden_section_min;

/// Search bracket for `c` in `a = 1 + c·2π/n`.
const C_MAX: f64 = 64.0;

#[derive(Clone, Debug, PartialEq)]
pub struct RaySystem {
    pub n: u64,
    /// Depths in visiting order; `x_i` lies on ray `i mod n`.
    pub strategy: Vec<f64>,
}

impl RaySystem {
    pub fn new(n: u64, strategy: Vec<f64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("need at least 3 rays, got {n}")));
        }
        if let Some(x) = strategy.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
            return Err(Error::Domain(format!("depth {x} is not positive")));
        }
        Ok(RaySystem { n, strategy })
    }

    /// `x_i = t·a^i` for `i = 1..=k`.
    pub fn exponential(n: u64, a: f64, t: f64, k: usize) -> Result<Self> {
        if !(a > 1.0) {
            return Err(Error::Domain(format!("base a = {a} must exceed 1")));
        }
        let la = a.ln();
        RaySystem::new(n, (1..=k).map(|i| t * (i as f64 * la).exp()).collect())
    }

    fn angle(&self) -> f64 {
        TAU / self.n as f64
    }

    /// Compensated sum of the chain segment lengths up to `x_k`.
    fn chain_length(&self, k: usize) -> f64 {
        let cos = self.angle().cos();
        let mut sum = NeumaierSum::default();
        for w in self.strategy[..k].windows(2) {
            sum.add(segment_length(w[0], w[1], cos));
        }
        sum.total()
    }
}

/// Distance between depth `x` on one ray and depth `y` on a ray at angle `θ`
/// with `cos θ = cos`.
fn segment_length(x: f64, y: f64, cos: f64) -> f64 {
    (x * x - 2.0 * cos * x * y + y * y).max(0.0).sqrt()
}

#[derive(Default)]
struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `F1(k)`, for `1 ≤ k ≤` strategy length (`k = 1` is the empty chain).
pub fn functional_f1(system: &RaySystem, k: usize) -> Result<f64> {
    if k == 0 || k > system.strategy.len() {
        return Err(Error::Index(format!(
            "k = {k} outside 1..={}",
            system.strategy.len()
        )));
    }
    Ok(system.chain_length(k) / (system.strategy[k - 1] * (1.0 + system.angle())))
}

/// `F2(k)`, for `n ≤ k ≤` strategy length.
pub fn functional_f2(system: &RaySystem, k: usize) -> Result<f64> {
    let n = system.n as usize;
    if k < n || k > system.strategy.len() {
        return Err(Error::Index(format!(
            "k = {k} outside {n}..={}",
            system.strategy.len()
        )));
    }
    Ok(system.chain_length(k) / (system.strategy[k - n] * (1.0 + TAU)))
}

/// `q = 1 − 2a·cos(2π/n) + a²` as `u² + 4(1 + u)·sin²(π/n)`, `u = a − 1`.
fn q_excess(n: u64, u: f64) -> f64 {
    let s = (PI / n as f64).sin();
    u * u + 4.0 * (1.0 + u) * s * s
}

/// `a^m` from `u = a − 1` without forming `a`.
fn pow_excess(u: f64, m: f64) -> f64 {
    (m * u.ln_1p()).exp()
}

/// `g_n` as a function of `u = a − 1 > 0`.
pub fn g_excess(n: u64, u: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!("need at least 3 rays, got {n}")));
    }
    if !(u > 0.0) {
        return Err(Error::Domain(format!("a - 1 = {u} must be positive")));
    }
    let nf = n as f64;
    let root = q_excess(n, u).sqrt();
    Ok(root / u * (1.0 / (1.0 + TAU / nf) + pow_excess(u, nf - 1.0) / (1.0 + TAU)))
}

/// `g_n(a)`.
pub fn g(n: u64, a: f64) -> Result<f64> {
    if !(a > 1.0) {
        return Err(Error::Domain(format!("base a = {a} must exceed 1")));
    }
    g_excess(n, a - 1.0)
}

/// Closed form of `F1(k) + F2(k)` for `x_i = t·a^i`, `k ≥ n`.
pub fn closed_form_sum(n: u64, a: f64, k: usize) -> Result<f64> {
    if !(a > 1.0) {
        return Err(Error::Domain(format!("base a = {a} must exceed 1")));
    }
    if (k as u64) < n {
        return Err(Error::Index(format!("k = {k} below n = {n}")));
    }
    let u = a - 1.0;
    let (nf, kf) = (n as f64, k as f64);
    let root = q_excess(n, u).sqrt();
    let first = (1.0 - pow_excess(u, 1.0 - kf)) / (1.0 + TAU / nf);
    let second = (pow_excess(u, nf - 1.0) - pow_excess(u, nf - kf)) / (1.0 + TAU);
    Ok(root / u * (first + second))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowerBoundResult {
    pub n: u64,
    pub a_star: f64,
    /// `a_star − 1`, kept separately because `a_star` rounds it for large `n`.
    pub a_minus_one: f64,
    pub g_value: f64,
    pub bound: f64,
}

/// Minimizes `g_n` over `a = 1 + c·2π/n`, `c ∈ (0, 64]`.
pub fn minimize_g(n: u64) -> Result<LowerBoundResult> {
    if n < 3 {
        return Err(Error::Domain(format!("need at least 3 rays, got {n}")));
    }
    let scale = TAU / n as f64;
    let obj = |c: f64| g_excess(n, c * scale).unwrap_or(f64::INFINITY);
    let (c, g_value) = golden_section_min(obj, C_MAX * 1e-9, C_MAX, 1e-12);
    let u = c * scale;
    Ok(LowerBoundResult {
        n,
        a_star: 1.0 + u,
        a_minus_one: u,
        g_value,
        bound: g_value / 2.0,
    })
}

/// Outcome of reordering a visit sequence into sorted periodic order.
#[derive(Clone, Debug, PartialEq)]
pub struct RearrangementCheck {
    /// Depths after dropping non-improving visits and merging repeats on one ray.
    pub registered: Vec<(usize, f64)>,
    /// The same depths sorted, on rays `0, 1, …, n − 1, 0, …`.
    pub sorted: Vec<f64>,
    /// Path length of the original visits, starting at the center.
    pub original_length: f64,
    pub registered_length: f64,
    pub sorted_length: f64,
    /// `x_M`: largest depth reached.
    pub original_max: f64,
    /// `x_m`: smallest final depth over all rays.
    pub original_min: f64,
    /// Last depth of the sorted sequence.
    pub sorted_max: f64,
    /// `n`-th largest depth of the sorted sequence.
    pub sorted_min: f64,
}

impl RearrangementCheck {
    /// Sorted length is no longer and neither certificate denominator shrinks.
    pub fn holds(&self, rel_tol: f64) -> bool {
        let slack = rel_tol * self.original_length;
        self.sorted_length <= self.registered_length + slack
            && self.registered_length <= self.original_length + slack
            && self.sorted_max >= self.original_max * (1.0 - rel_tol)
            && self.sorted_min >= self.original_min * (1.0 - rel_tol)
    }
}

fn path_length(n: usize, visits: &[(usize, f64)]) -> f64 {
    let theta = TAU / n as f64;
    let point = |(r, x): (usize, f64)| (x * (theta * r as f64).cos(), x * (theta * r as f64).sin());
    let mut sum = NeumaierSum::default();
    let mut prev = (0.0, 0.0);
    for &v in visits {
        let p = point(v);
        sum.add((p.0 - prev.0).hypot(p.1 - prev.1));
        prev = p;
    }
    sum.total()
}

/// Rearranges a finite visit sequence `(ray, depth)` on `n` rays into
/// increasing depth and periodic ray order and measures both.
pub fn periodic_rearrangement(n: usize, visits: &[(usize, f64)]) -> Result<RearrangementCheck> {
    if n < 3 {
        return Err(Error::Domain(format!("need at least 3 rays, got {n}")));
    }
    let mut depth = vec![0.0f64; n];
    let mut registered: Vec<(usize, f64)> = Vec::new();
    for &(ray, x) in visits {
        if ray >= n {
            return Err(Error::Index(format!("ray {ray} outside 0..{n}")));
        }
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::Domain(format!("depth {x} is not positive")));
        }
        if x <= depth[ray] {
            continue;
        }
        depth[ray] = x;
        match registered.last_mut() {
            Some(last) if last.0 == ray => last.1 = x,
            _ => registered.push((ray, x)),
        }
    }
    if depth.iter().any(|&d| d == 0.0) {
        return Err(Error::Domain("every ray must be visited".into()));
    }
    let mut sorted: Vec<f64> = registered.iter().map(|v| v.1).collect();
    sorted.sort_by(f64::total_cmp);
    let cos = (TAU / n as f64).cos();
    let mut sum = NeumaierSum::default();
    sum.add(sorted[0]);
    for w in sorted.windows(2) {
        sum.add(segment_length(w[0], w[1], cos));
    }
    let k = sorted.len();
    Ok(RearrangementCheck {
        original_length: path_length(n, visits),
        registered_length: path_length(n, &registered),
        sorted_length: sum.total(),
        original_max: depth.iter().copied().fold(0.0, f64::max),
        original_min: depth.iter().copied().fold(f64::INFINITY, f64::min),
        sorted_max: sorted[k - 1],
        sorted_min: sorted[k - n],
        registered,
        sorted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn functional_examples() {
        let sys = RaySystem::new(4, vec![1.0; 5]).unwrap();
        let root2 = 2f64.sqrt();
        assert!((functional_f1(&sys, 5).unwrap() - 4.0 * root2 / (1.0 + FRAC_PI_2)).abs() < 1e-14);
        assert!((functional_f2(&sys, 5).unwrap() - 4.0 * root2 / (1.0 + TAU)).abs() < 1e-14);
        assert_eq!(functional_f1(&sys, 1).unwrap(), 0.0);
        let ratio = functional_f2(&sys, 5).unwrap() / functional_f1(&sys, 5).unwrap();
        assert!((ratio - (1.0 + FRAC_PI_2) / (1.0 + TAU)).abs() < 1e-14);
        assert!(matches!(functional_f1(&sys, 6), Err(Error::Index(_))));
        assert!(matches!(functional_f1(&sys, 0), Err(Error::Index(_))));
        assert!(matches!(functional_f2(&sys, 3), Err(Error::Index(_))));
    }

    #[test]
    fn exponential_functional_ratio() {
        let (n, a) = (8, 1.3);
        let sys = RaySystem::exponential(n, a, 1.0, 60).unwrap();
        for k in [8, 20, 60] {
            let r = functional_f2(&sys, k).unwrap() / functional_f1(&sys, k).unwrap();
            let expected = a.powi(n as i32 - 1) * (1.0 + TAU / n as f64) / (1.0 + TAU);
            assert!((r - expected).abs() / expected < 1e-12);
        }
    }

    #[test]
    fn closed_form_matches_direct_sum() {
        for (n, a) in [(4u64, 1.5), (8, 1.2), (16, 1.05), (64, 1.01)] {
            let sys = RaySystem::exponential(n, a, 1.0, 3 * n as usize).unwrap();
            for k in [n as usize, 2 * n as usize, 3 * n as usize] {
                let direct = functional_f1(&sys, k).unwrap() + functional_f2(&sys, k).unwrap();
                let closed = closed_form_sum(n, a, k).unwrap();
                assert!((direct - closed).abs() / closed < 1e-12, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn direct_sum_converges_to_g() {
        for n in [8u64, 16, 64] {
            let a = minimize_g(n).unwrap().a_star;
            let k = 40 * n as usize;
            let sys = RaySystem::exponential(n, a, 1.0, k).unwrap();
            let direct = functional_f1(&sys, k).unwrap() + functional_f2(&sys, k).unwrap();
            let limit = g(n, a).unwrap();
            assert!((direct - limit).abs() / limit < 1e-6, "n={n}");
        }
    }

    #[test]
    fn scaling_leaves_functionals_unchanged() {
        let (n, a, k) = (8, 1.25, 40);
        let base = RaySystem::exponential(n, a, 1.0, k).unwrap();
        let f = functional_f1(&base, k).unwrap() + functional_f2(&base, k).unwrap();
        for t in [0.5, 2.0] {
            let sys = RaySystem::exponential(n, a, t, k).unwrap();
            let ft = functional_f1(&sys, k).unwrap() + functional_f2(&sys, k).unwrap();
            assert!((f - ft).abs() / f < 1e-13);
        }
    }

    #[test]
    fn cancellation_safe_q() {
        let n = 10_000u64;
        let a: f64 = 1.0003;
        let naive = 1.0 - 2.0 * (TAU / n as f64).cos() * a + a * a;
        let safe = q_excess(n, a - 1.0);
        assert!((naive - safe).abs() / safe < 1e-9);
    }

    #[test]
    fn g_blows_up_at_both_ends() {
        let n = 8;
        let mid = minimize_g(n).unwrap().g_value;
        assert!(g(n, 1.0 + 1e-15).unwrap() > 1e6 * mid);
        assert!(g(n, 10.0).unwrap() > 1e4 * mid);
        assert!(matches!(g(n, 1.0), Err(Error::Domain(_))));
        assert!(matches!(g(2, 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn large_n_bound() {
        let r = minimize_g(28_000_000_000).unwrap();
        assert!((r.bound - 3.313126).abs() < 1e-5);
        assert!((r.g_value - 2.0 * r.bound).abs() == 0.0);
        assert!(r.a_minus_one > 6.8e-11 && r.a_minus_one < 6.82e-11);
        assert!(r.bound < crate::spiral::RATIO_BOUND);
    }

    #[test]
    fn bound_increases_with_n() {
        let bounds: Vec<f64> = [8u64, 64, 512, 4096, 1 << 20, 1 << 30]
            .iter()
            .map(|&n| minimize_g(n).unwrap().bound)
            .collect();
        assert!(bounds.windows(2).all(|w| w[0] < w[1]), "{bounds:?}");
        assert!((bounds[0] - 2.1614).abs() < 1e-3);
    }

    #[test]
    fn rearrangement_on_fixed_sequence() {
        let visits = [(0, 1.0), (1, 2.0), (1, 3.0), (2, 0.5), (0, 0.7), (3, 4.0), (2, 1.5)];
        let r = periodic_rearrangement(4, &visits).unwrap();
        // (0, 0.7) is not an improvement and the two ray-1 visits merge
        assert_eq!(r.registered, vec![(0, 1.0), (1, 3.0), (2, 0.5), (3, 4.0), (2, 1.5)]);
        assert_eq!(r.sorted, vec![0.5, 1.0, 1.5, 3.0, 4.0]);
        assert_eq!(r.sorted_min, 1.0);
        assert_eq!(r.original_min, 1.0);
        assert!(r.holds(1e-12));
    }

    #[test]
    fn rearrangement_errors() {
        assert!(matches!(
            periodic_rearrangement(4, &[(0, 1.0), (1, 1.0), (2, 1.0)]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            periodic_rearrangement(4, &[(5, 1.0)]),
            Err(Error::Index(_))
        ));
    }
}
