//! One-dimensional bracketing minimizers.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `rel_tol · max(|lo|, |hi|, 1e-300)`.
/// Returns `(x_min, f_min)`, where the endpoints of the original bracket are
/// also compared so a monotone function yields the correct endpoint.
pub fn golden_section_min<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let f_lo = f(lo);
    let f_hi = f(hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let scale = lo.abs().max(hi.abs()).max(1e-300);
    for _ in 0..400 {
        if (b - a) <= rel_tol * scale {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if f_lo < best.1 {
        best = (lo, f_lo);
    }
    if f_hi < best.1 {
        best = (hi, f_hi);
    }
    best
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
pub fn golden_section_max<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
) -> (f64, f64) {
    let (x, v) = golden_section_min(|x| -f(x), lo, hi, rel_tol);
    (x, -v)
}

/// Bisection for a sign change of `f` on `[lo, hi]`; `f(lo)` and `f(hi)`
/// must have opposite signs (zero counts as the `hi` side).
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, abs_tol: f64) -> f64 {
    let lo_neg = f(lo) < 0.0;
    for _ in 0..200 {
        if (hi - lo).abs() <= abs_tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == lo_neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_minimum() {
        let (x, v) = golden_section_min(|x| (x - 0.3) * (x - 0.3) + 2.0, -1.0, 4.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn monotone_function_returns_endpoint() {
        let (x, _) = golden_section_min(|x| x, 1.0, 2.0, 1e-12);
        assert_eq!(x, 1.0);
        let (x, _) = golden_section_max(|x| x, 1.0, 2.0, 1e-12);
        assert_eq!(x, 2.0);
    }

    #[test]
    fn bisection_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15);
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }
}
