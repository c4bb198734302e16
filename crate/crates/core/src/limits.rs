//! The variational/exact energy ratios and their large-index limits.
//!
//! Three sequences, each tending to 1:
//!
//! - `ratio_hydrogen(l, d)`: (l+(d-1)/2)²/(l+d/2) · (Γ(l+(d-1)/2)/Γ(l+d/2))²,
//!   the Gaussian-trial bound over the exact Coulomb ground energy;
//! - `ratio_oscillator(L)`: 2√((L+3)/2) Γ((L+3)/2) / ((L+2) Γ(L/2+1)), the
//!   quartic-trial bound over the exact D = 4 oscillator ground energy;
//! - `main_sequence(l)`: √(l+3/2) Γ(l+3/2) / ((l+1) Γ(l+1)), the oscillator
//!   ratio read at L = 2l.
//!
//! Read at finite index they tie exactly into the Wallis partial products:
//! ratio_hydrogen(n-1, 3) = (2/π) P_n and main_sequence(l)⁻² equals
//! ratio_hydrogen(l, 3). All evaluation goes through log-Gamma differences so
//! the identities hold to ~1e-14 out to l ~ 1e6.

use crate::error::{Error, Result};
use crate::gamma::ln_gamma_ratio;

/// √(s+1/2)/s · Γ(s+1/2)/Γ(s), the shared kernel of [`main_sequence`] and
/// [`symmetric_ratio`]. Implementing both through one function of the sum
/// makes the l <-> k swap symmetry bit-exact rather than merely numerical.
fn ratio_of_sum(s: f64) -> f64 {
    (s + 0.5).sqrt() / s
        * ln_gamma_ratio(s + 0.5, s)
            .expect("s >= 1 by construction")
            .exp()
}

/// Variational-to-exact ground-energy ratio for the d-dimensional Coulomb
/// problem with the Gaussian trial family; lies in (0, 1) and increases to 1.
pub fn ratio_hydrogen(l: u32, d: u32) -> Result<f64> {
    if d < 3 {
        return Err(Error::Domain(format!(
            "ratio_hydrogen requires d >= 3, got d = {d}"
        )));
    }
    let lf = l as f64;
    let df = d as f64;
    let a = lf + (df - 1.0) / 2.0;
    let b = lf + df / 2.0;
    Ok(a * a / b * (2.0 * ln_gamma_ratio(a, b).expect("a, b > 0")).exp())
}

/// Variational-to-exact ground-energy ratio for the D = 4 oscillator with
/// the quartic trial family; >= 1 and decreases to 1.
pub fn ratio_oscillator(l_dual: u32) -> f64 {
    let lf = l_dual as f64;
    2.0 * ((lf + 3.0) / 2.0).sqrt() / (lf + 2.0)
        * ln_gamma_ratio((lf + 3.0) / 2.0, lf / 2.0 + 1.0)
            .expect("arguments > 0")
            .exp()
}

/// √(l+3/2)/(l+1) · Γ(l+3/2)/Γ(l+1); equals `ratio_oscillator(2l)` and tends
/// to 1, the reciprocal square root of the Wallis limit.
pub fn main_sequence(l: u32) -> f64 {
    ratio_of_sum(l as f64 + 1.0)
}

/// √(l+k+1/2)/(l+k) · Γ(l+k+1/2)/Γ(l+k): the oscillator ratio in terms of
/// the source angular momentum l and the dimension offset k (D = 2k + 2).
/// A function of l + k only, so swapping the two arguments is exact;
/// k = 1 reproduces [`main_sequence`] bit for bit.
pub fn symmetric_ratio(l: u32, k: u32) -> Result<f64> {
    let s = l as u64 + k as u64;
    if s == 0 {
        return Err(Error::Domain(
            "symmetric_ratio requires l + k >= 1".into(),
        ));
    }
    Ok(ratio_of_sum(s as f64))
}

/// How [`analyze_sequence`] arrived at its limit estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtrapolationMethod {
    None,
    Aitken,
    Richardson,
}

/// A sampled limit sequence with convergence diagnostics: the extrapolated
/// limit, the fitted decay rate q and constant C of |f(n) - limit| ~ C n^-q.
#[derive(Debug, Clone)]
pub struct RatioSequence {
    pub indices: Vec<u64>,
    pub values: Vec<f64>,
    pub limit_estimate: f64,
    /// Power q of the 1/n decay; NaN when the tail is already at noise level.
    pub rate_estimate: f64,
    /// Constant C of the fitted decay; NaN together with `rate_estimate`.
    pub rate_constant: f64,
    pub extrapolation_method: ExtrapolationMethod,
    pub warnings: Vec<String>,
}

/// One Aitken Δ² pass; entries whose second difference is at rounding level
/// are passed through unchanged (they are already converged).
fn aitken_pass(v: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(v.len() - 2);
    for w in v.windows(3) {
        let (x0, x1, x2) = (w[0], w[1], w[2]);
        let denom = x2 - 2.0 * x1 + x0;
        let scale = x0.abs().max(x1.abs()).max(x2.abs());
        if denom.abs() <= 8.0 * f64::EPSILON * scale {
            out.push(x2);
        } else {
            out.push(x2 - (x2 - x1) * (x2 - x1) / denom);
        }
    }
    out
}

/// Iterated Aitken extrapolation of a sequence sampled at `indices`.
///
/// Fits the tail deviation |f(n) - limit| to C n^-q by log-log least squares
/// and reports both. At least 4 increasing indices are required. A constant
/// sequence yields the constant with `rate_estimate = NaN` and a warning; a
/// tail that does not decay monotonically is flagged but still fitted.
pub fn analyze_sequence<F: Fn(u64) -> f64>(f: F, indices: &[u64]) -> Result<RatioSequence> {
    if indices.len() < 4 {
        return Err(Error::InsufficientPoints {
            needed: 4,
            got: indices.len(),
        });
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(
            "analyze_sequence requires strictly increasing indices".into(),
        ));
    }
    let values: Vec<f64> = indices.iter().map(|&n| f(n)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(
            "analyze_sequence requires finite sequence values".into(),
        ));
    }

    let mut warnings = Vec::new();
    let vmax = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let spread = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - values.iter().cloned().fold(f64::INFINITY, f64::min);

    if spread <= 8.0 * f64::EPSILON * vmax {
        warnings.push("constant sequence: decay rate undefined".into());
        return Ok(RatioSequence {
            indices: indices.to_vec(),
            values: values.clone(),
            limit_estimate: *values.last().unwrap(),
            rate_estimate: f64::NAN,
            rate_constant: f64::NAN,
            extrapolation_method: ExtrapolationMethod::None,
            warnings,
        });
    }

    let mut table = values.clone();
    while table.len() >= 3 {
        table = aitken_pass(&table);
    }
    let limit = *table.last().unwrap();

    // Log-log fit of the tail deviations, skipping points at rounding level.
    let floor = 64.0 * f64::EPSILON * limit.abs().max(vmax);
    let tail_start = indices.len() / 2;
    let pts: Vec<(f64, f64)> = indices
        .iter()
        .zip(&values)
        .skip(tail_start)
        .filter(|(_, &v)| (v - limit).abs() > floor)
        .map(|(&n, &v)| ((n as f64).ln(), (v - limit).abs().ln()))
        .collect();

    let (q, c) = if pts.len() < 3 {
        warnings.push("tail deviations at rounding level: decay rate undefined".into());
        (f64::NAN, f64::NAN)
    } else {
        let deviations: Vec<f64> = indices
            .iter()
            .zip(&values)
            .skip(tail_start)
            .map(|(_, &v)| (v - limit).abs())
            .collect();
        if deviations.windows(2).any(|w| w[1] > w[0] * (1.0 + 1e-9)) {
            warnings.push("non-monotone tail deviations".into());
        }
        let m = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        let intercept = (sy - slope * sx) / m;
        (-slope, intercept.exp())
    };

    Ok(RatioSequence {
        indices: indices.to_vec(),
        values,
        limit_estimate: limit,
        rate_estimate: q,
        rate_constant: c,
        extrapolation_method: ExtrapolationMethod::Aitken,
        warnings,
    })
}

/// One Richardson pass under a known decay power q: eliminates the C n^-q
/// term between consecutive samples and returns the refined last entry.
pub fn richardson_limit(indices: &[u64], values: &[f64], q: f64) -> Result<f64> {
    if indices.len() != values.len() || indices.len() < 2 {
        return Err(Error::InsufficientPoints {
            needed: 2,
            got: indices.len().min(values.len()),
        });
    }
    let mut refined = Vec::with_capacity(values.len() - 1);
    for i in 0..values.len() - 1 {
        let r = indices[i + 1] as f64 / indices[i] as f64;
        let w = r.powf(q);
        refined.push((w * values[i + 1] - values[i]) / (w - 1.0));
    }
    Ok(*refined.last().unwrap())
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen reference decimals
mod tests {
    use super::*;
    use crate::gamma::{wallis_partial, wallis_partials};
    use std::f64::consts::PI;

    fn rel_err(got: f64, want: f64) -> f64 {
        ((got - want) / want).abs()
    }

    #[test]
    fn hydrogen_ratio_reference_values() {
        // 8/(3π), 128/(45π) and high-precision values for larger indices.
        assert!(rel_err(ratio_hydrogen(0, 3).unwrap(), 8.0 / (3.0 * PI)) < 1e-14);
        assert!(rel_err(ratio_hydrogen(1, 3).unwrap(), 128.0 / (45.0 * PI)) < 1e-14);
        assert!(rel_err(ratio_hydrogen(5, 3).unwrap(), 0.962_304_959_730_181_758_21) < 1e-13);
        assert!(rel_err(ratio_hydrogen(0, 4).unwrap(), 0.883_572_933_822_129_348_32) < 1e-13);
        assert!(rel_err(ratio_hydrogen(3, 4).unwrap(), 0.951_307_772_987_204_693_87) < 1e-13);
        assert!(rel_err(ratio_hydrogen(0, 5).unwrap(), 128.0 / (45.0 * PI)) < 1e-13);
    }

    #[test]
    fn hydrogen_ratio_large_l_approaches_one_like_quarter_l() {
        let r = ratio_hydrogen(1_000_000, 3).unwrap();
        assert!(rel_err(r, 0.999_999_750_000_406_249_35) < 1e-13);
        // 1 - r ~ 1/(4(l+1)) to leading order.
        let gap = 1.0 - r;
        let lead = 1.0 / (4.0 * 1_000_001.0);
        assert!((gap / lead - 1.0).abs() < 0.01, "gap/lead = {}", gap / lead);
    }

    #[test]
    fn hydrogen_ratio_rejects_low_dimension() {
        assert!(ratio_hydrogen(0, 2).is_err());
    }

    #[test]
    fn hydrogen_ratio_in_unit_interval_and_increasing() {
        for d in [3u32, 4, 5] {
            let mut prev = 0.0;
            for l in 0..200 {
                let r = ratio_hydrogen(l, d).unwrap();
                assert!(r > 0.0 && r < 1.0, "ratio out of (0,1) at l={l}, d={d}");
                assert!(r > prev, "not increasing at l={l}, d={d}");
                prev = r;
            }
        }
    }

    #[test]
    fn oscillator_ratio_reference_values() {
        assert!(rel_err(ratio_oscillator(0), (3.0 * PI / 2.0).sqrt() / 2.0) < 1e-14);
        assert!(rel_err(ratio_oscillator(1), 1.063_846_081_070_487_141_2) < 1e-13);
        assert!(rel_err(ratio_oscillator(7), 1.025_272_897_836_763_448_2) < 1e-13);
        assert!(rel_err(ratio_oscillator(2_000_000), 1.000_000_124_999_820_312_8) < 1e-13);
    }

    #[test]
    fn oscillator_ratio_at_least_one_and_decreasing() {
        let mut prev = f64::INFINITY;
        for l_dual in 0..400 {
            let r = ratio_oscillator(l_dual);
            assert!(r >= 1.0, "ratio below 1 at L={l_dual}");
            assert!(r < prev, "not decreasing at L={l_dual}");
            prev = r;
        }
    }

    #[test]
    fn main_sequence_reference_values() {
        assert!(rel_err(main_sequence(0), (3.0 * PI / 8.0).sqrt()) < 1e-14);
        assert!(rel_err(main_sequence(5), 1.019_397_673_093_743_907_7) < 1e-13);
        assert!(rel_err(main_sequence(1_000_000), 1.000_000_124_999_820_312_8) < 1e-13);
    }

    #[test]
    fn main_sequence_equals_oscillator_ratio_at_doubled_index() {
        for l in [0u32, 1, 2, 10, 100, 10_000] {
            assert!(
                rel_err(main_sequence(l), ratio_oscillator(2 * l)) <= 1e-12,
                "mismatch at l = {l}"
            );
        }
    }

    #[test]
    fn main_sequence_inverse_square_is_scaled_wallis() {
        // main_sequence(l)^-2 = (2/π) P_{l+1}: the reciprocal-square-root form.
        for l in [0u32, 1, 5, 100, 9_999] {
            let lhs = main_sequence(l).powi(-2);
            let rhs = 2.0 / PI * wallis_partial(l + 1);
            assert!(
                rel_err(lhs, rhs) <= 1e-12,
                "reciprocal form fails at l = {l}: {:.2e}",
                rel_err(lhs, rhs)
            );
        }
    }

    #[test]
    fn finite_bridge_hydrogen_to_wallis() {
        // ratio_hydrogen(n-1, 3) = (2/π) P_n for every n >= 1.
        let partials = wallis_partials(10_000);
        for n in 1..=10_000u32 {
            let lhs = ratio_hydrogen(n - 1, 3).unwrap();
            let rhs = 2.0 / PI * partials[(n - 1) as usize];
            assert!(
                rel_err(lhs, rhs) <= 1e-12,
                "bridge fails at n = {n}: {:.2e}",
                rel_err(lhs, rhs)
            );
        }
    }

    #[test]
    fn reciprocal_bridge() {
        for l in (0..=10_000u32).step_by(97) {
            let prod = main_sequence(l).powi(2) * ratio_hydrogen(l, 3).unwrap();
            assert!(
                (prod - 1.0).abs() <= 1e-12,
                "main² · hydrogen != 1 at l = {l}: {:.2e}",
                (prod - 1.0).abs()
            );
        }
    }

    #[test]
    fn symmetric_ratio_swap_is_bit_exact() {
        let pairs = [(0u32, 1u32), (3, 5), (5, 3), (17, 230), (1000, 2)];
        for (l, k) in pairs {
            let a = symmetric_ratio(l, k).unwrap();
            let b = symmetric_ratio(k, l).unwrap();
            assert_eq!(a.to_bits(), b.to_bits(), "swap differs at ({l}, {k})");
        }
        assert!(symmetric_ratio(0, 0).is_err());
    }

    #[test]
    fn symmetric_ratio_k_one_is_main_sequence() {
        for l in [0u32, 1, 4, 77, 100_000] {
            assert_eq!(
                symmetric_ratio(l, 1).unwrap().to_bits(),
                main_sequence(l).to_bits()
            );
        }
    }

    #[test]
    fn analyze_hydrogen_ratio_sequence() {
        let indices: Vec<u64> = (4..=20).map(|k| 1u64 << k).collect();
        let seq = analyze_sequence(|n| ratio_hydrogen(n as u32, 3).unwrap(), &indices).unwrap();
        assert!(
            (seq.limit_estimate - 1.0).abs() < 1e-8,
            "limit = {:.3e}",
            seq.limit_estimate - 1.0
        );
        assert!((seq.rate_estimate - 1.0).abs() < 0.05, "q = {}", seq.rate_estimate);
        assert_eq!(seq.extrapolation_method, ExtrapolationMethod::Aitken);
    }

    #[test]
    fn even_dimension_ratio_also_reaches_one() {
        // The even-d family has no exact finite-n product bridge here, so its
        // limit is measured rather than asserted from an identity.
        let indices: Vec<u64> = (4..=20).map(|k| 1u64 << k).collect();
        for d in [4u32, 6] {
            let seq =
                analyze_sequence(|n| ratio_hydrogen(n as u32, d).unwrap(), &indices).unwrap();
            assert!(
                (seq.limit_estimate - 1.0).abs() < 1e-8,
                "d = {d}: limit {:.3e}",
                seq.limit_estimate - 1.0
            );
            assert!((seq.rate_estimate - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn analyze_wallis_sequence_finds_pi_over_eight() {
        let indices: Vec<u64> = (4..=20).map(|k| 1u64 << k).collect();
        let seq = analyze_sequence(|n| wallis_partial(n as u32), &indices).unwrap();
        assert!((seq.limit_estimate - PI / 2.0).abs() < 1e-8);
        assert!((seq.rate_estimate - 1.0).abs() < 0.05, "q = {}", seq.rate_estimate);
        assert!(
            (seq.rate_constant / (PI / 8.0) - 1.0).abs() < 0.02,
            "C = {}, want ~π/8",
            seq.rate_constant
        );
    }

    #[test]
    fn analyze_constant_sequence_warns() {
        let indices = [1u64, 2, 4, 8, 16];
        let seq = analyze_sequence(|_| 2.5, &indices).unwrap();
        assert_eq!(seq.limit_estimate, 2.5);
        assert!(seq.rate_estimate.is_nan());
        assert_eq!(seq.extrapolation_method, ExtrapolationMethod::None);
        assert!(!seq.warnings.is_empty());
    }

    #[test]
    fn analyze_rejects_bad_index_lists() {
        assert!(matches!(
            analyze_sequence(|n| n as f64, &[1, 2, 3]),
            Err(crate::Error::InsufficientPoints { .. })
        ));
        assert!(analyze_sequence(|n| n as f64, &[1, 2, 2, 3]).is_err());
    }

    #[test]
    fn richardson_refines_known_rate() {
        let indices: Vec<u64> = (4..=14).map(|k| 1u64 << k).collect();
        let values: Vec<f64> = indices
            .iter()
            .map(|&n| ratio_hydrogen(n as u32, 3).unwrap())
            .collect();
        let refined = richardson_limit(&indices, &values, 1.0).unwrap();
        let raw_gap = (values.last().unwrap() - 1.0).abs();
        assert!((refined - 1.0).abs() < raw_gap / 100.0);
    }
}
