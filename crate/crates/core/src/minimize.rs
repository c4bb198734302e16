//! Scalar minimization for the unimodal mean-energy curves.

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
///
/// Returns `(x_min, f_min)` once the bracket shrinks below `rel_tol · x` or
/// `max_iters` evaluations are spent.
pub fn golden_section<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    max_iters: usize,
) -> (f64, f64) {
    const INV_PHI2: f64 = 0.381_966_011_250_105_1; // 2 - φ

    let mut x1 = lo + INV_PHI2 * (hi - lo);
    let mut x2 = hi - INV_PHI2 * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    for _ in 0..max_iters {
        if hi - lo <= rel_tol * (lo.abs() + hi.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + INV_PHI2 * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - INV_PHI2 * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Coarse argmin of `f` over `n` log-spaced points in `[lo, hi]`; used to
/// seed a golden-section bracket when no closed-form minimizer is at hand.
pub fn log_scan_argmin<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> f64 {
    debug_assert!(lo > 0.0 && hi > lo && n >= 2);
    let step = (hi / lo).ln() / (n as f64 - 1.0);
    let mut best_x = lo;
    let mut best_f = f(lo);
    for i in 1..n {
        let x = lo * (step * i as f64).exp();
        let fx = f(x);
        if fx < best_f {
            best_f = fx;
            best_x = x;
        }
    }
    best_x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_minimum_found_to_tolerance() {
        let (x, fx) = golden_section(|x| (x - 1.7) * (x - 1.7) + 0.25, 0.0, 10.0, 1e-10, 200);
        assert!((x - 1.7).abs() < 1e-8);
        assert!((fx - 0.25).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_unimodal_curve() {
        // a x - b √x has its minimum at x = (b/2a)².
        let (a, b) = (1.5, 2.0);
        let (x, _) = golden_section(|x: f64| a * x - b * x.sqrt(), 1e-4, 50.0, 1e-12, 300);
        let want = (b / (2.0 * a)).powi(2);
        assert!(((x - want) / want).abs() < 1e-7, "got {x}, want {want}");
    }

    #[test]
    fn log_scan_lands_near_minimum() {
        let x = log_scan_argmin(|x: f64| x + 1.0 / x, 1e-3, 1e3, 120);
        assert!(x > 0.5 && x < 2.0);
    }
}
