//! The verification checks behind the `verify` CLI command, grouped into
//! three suites. Every check pins its threshold here; the acceptance test
//! target runs the same checks and asserts them one by one.

use crate::error::Result;
use crate::gamma::{duplication_check, gamma_ratio, wallis_partial, wallis_partials};
use crate::limits::{analyze_sequence, main_sequence, ratio_hydrogen, ratio_oscillator, symmetric_ratio};
use crate::model::{dual_exponent, dual_problem, PhysicalConstants, RadialProblem};
use crate::spectral::{duality_residual, solve_radial, verify_dual_spectrum, SolverConfig};
use crate::variational::{
    hydrogen_exact_energy, hydrogen_variational_min, oscillator_alpha_star,
    oscillator_exact_energy, oscillator_mean_energy, oscillator_variational_min,
    quadrature_mean_energy, TrialFunction,
};
use crate::minimize::golden_section;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    /// Worst measured deviation (or the measured quantity itself).
    pub measured: f64,
    /// Threshold the measurement must stay below (or inside, see detail).
    pub threshold: f64,
    pub passed: bool,
    pub runtime: Duration,
    pub detail: String,
}

impl CheckResult {
    fn new(
        suite: &'static str,
        name: &'static str,
        measured: f64,
        threshold: f64,
        passed: bool,
        started: Instant,
        detail: String,
    ) -> Self {
        Self {
            suite,
            name,
            measured,
            threshold,
            passed,
            runtime: started.elapsed(),
            detail,
        }
    }
}

/// Small deterministic xorshift generator for the random symmetry pairs.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

fn rel_dev(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Gamma-function and limit-sequence identities.
pub fn identities_suite() -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    // Wallis tail: n (π/2 - P_n) must sit within 1% of π/8 at n = 1e5.
    let t = Instant::now();
    let n = 100_000u32;
    let scaled_gap = n as f64 * (FRAC_PI_2 - wallis_partial(n));
    let band = scaled_gap / (PI / 8.0);
    let in_time = t.elapsed() < Duration::from_secs(1);
    out.push(CheckResult::new(
        "identities",
        "wallis convergence constant",
        band,
        1.01,
        (0.99..=1.01).contains(&band) && in_time,
        t,
        format!("n(π/2 - P_n)/(π/8) = {band:.9} at n = {n}; must lie in [0.99, 1.01] in under 1 s"),
    ));

    // Finite-n bridge ratio_hydrogen(n-1, 3) = (2/π) P_n for n = 1..=1e4.
    let t = Instant::now();
    let partials = wallis_partials(10_000);
    let mut worst = 0.0f64;
    for n in 1..=10_000u32 {
        let dev = rel_dev(
            ratio_hydrogen(n - 1, 3)?,
            2.0 / PI * partials[(n - 1) as usize],
        );
        worst = worst.max(dev);
    }
    let in_time = t.elapsed() < Duration::from_secs(1);
    out.push(CheckResult::new(
        "identities",
        "finite-n bridge to wallis",
        worst,
        1e-12,
        worst <= 1e-12 && in_time,
        t,
        format!("worst relative deviation over n in [1, 10^4]: {worst:.3e}; under 1 s"),
    ));

    // The three limits extrapolate to 1 from indices 2^4..2^20.
    let indices: Vec<u64> = (4..=20).map(|k| 1u64 << k).collect();
    for (name, f) in [
        (
            "hydrogen ratio limit",
            Box::new(|n: u64| ratio_hydrogen(n as u32, 3).expect("d = 3 valid"))
                as Box<dyn Fn(u64) -> f64>,
        ),
        (
            "oscillator ratio limit",
            Box::new(|n: u64| ratio_oscillator(n as u32)),
        ),
        ("main sequence limit", Box::new(|n: u64| main_sequence(n as u32))),
    ] {
        let t = Instant::now();
        let seq = analyze_sequence(&f, &indices)?;
        let gap = (seq.limit_estimate - 1.0).abs();
        out.push(CheckResult::new(
            "identities",
            match name {
                "hydrogen ratio limit" => "hydrogen ratio limit",
                "oscillator ratio limit" => "oscillator ratio limit",
                _ => "main sequence limit",
            },
            gap,
            1e-8,
            gap <= 1e-8,
            t,
            format!(
                "extrapolated limit {:.12} (gap {gap:.3e}), fitted rate q = {:.3}",
                seq.limit_estimate, seq.rate_estimate
            ),
        ));
    }

    // Reciprocal bridge main² · hydrogen = 1 for l <= 1e4.
    let t = Instant::now();
    let mut worst = 0.0f64;
    for l in 0..=10_000u32 {
        let dev = (main_sequence(l).powi(2) * ratio_hydrogen(l, 3)? - 1.0).abs();
        worst = worst.max(dev);
    }
    out.push(CheckResult::new(
        "identities",
        "reciprocal bridge",
        worst,
        1e-12,
        worst <= 1e-12,
        t,
        format!("worst |main² · hydrogen - 1| over l in [0, 10^4]: {worst:.3e}"),
    ));

    // Swap symmetry, bit-exact, over 100 seeded random pairs; k = 1 recovers
    // the main sequence.
    let t = Instant::now();
    let mut rng = XorShift(0x9e3779b97f4a7c15);
    let mut bit_mismatches = 0u32;
    for _ in 0..100 {
        let l = (rng.next() % 100_000) as u32;
        let k = (rng.next() % 100_000) as u32 + 1;
        if symmetric_ratio(l, k)?.to_bits() != symmetric_ratio(k, l)?.to_bits() {
            bit_mismatches += 1;
        }
    }
    let mut worst_k1 = 0.0f64;
    for l in (0..=100_000u32).step_by(977) {
        worst_k1 = worst_k1.max(rel_dev(symmetric_ratio(l, 1)?, main_sequence(l)));
    }
    out.push(CheckResult::new(
        "identities",
        "swap symmetry",
        bit_mismatches as f64 + worst_k1,
        1e-15,
        bit_mismatches == 0 && worst_k1 <= 1e-15,
        t,
        format!("{bit_mismatches} bit mismatches in 100 pairs; worst |sym(l,1) - main(l)| rel = {worst_k1:.3e}"),
    ));

    // Bound-property shape: hydrogen in (0,1) increasing, oscillator >= 1
    // decreasing, over a dense low range and a log-spaced tail to 1e6.
    let t = Instant::now();
    let mut indices: Vec<u32> = (0..=1000).collect();
    let mut v = 1024u32;
    while v <= 1_000_000 {
        indices.push(v);
        v *= 2;
    }
    let mut ok = true;
    let mut prev_h = 0.0;
    let mut prev_o = f64::INFINITY;
    for &l in &indices {
        let rh = ratio_hydrogen(l, 3)?;
        let ro = ratio_oscillator(l);
        ok &= rh > 0.0 && rh < 1.0 && rh > prev_h;
        ok &= ro >= 1.0 && ro < prev_o;
        prev_h = rh;
        prev_o = ro;
    }
    out.push(CheckResult::new(
        "identities",
        "variational bound shape",
        if ok { 0.0 } else { 1.0 },
        0.5,
        ok,
        t,
        format!(
            "hydrogen ratio in (0,1) increasing and oscillator ratio >= 1 decreasing over {} indices up to 1e6",
            indices.len()
        ),
    ));

    // Duplication formula across a log-spaced sweep.
    let t = Instant::now();
    let mut worst = 0.0f64;
    let mut x = 0.5;
    while x <= 1e5 {
        worst = worst.max(duplication_check(x)?);
        x *= 1.31;
    }
    out.push(CheckResult::new(
        "identities",
        "duplication formula",
        worst,
        1e-12,
        worst <= 1e-12,
        t,
        format!("worst relative defect over log-spaced n in [0.5, 1e5]: {worst:.3e}"),
    ));

    // Finite products against their Gamma-ratio closed forms.
    let t = Instant::now();
    let mut worst = 0.0f64;
    for n in [1u32, 2, 10, 100, 1000, 10_000] {
        let nf = n as f64;
        worst = worst.max(rel_dev(
            crate::gamma::product_minus(n),
            PI.sqrt() * gamma_ratio(nf + 1.0, nf + 0.5)?,
        ));
        worst = worst.max(rel_dev(
            crate::gamma::product_plus(n),
            PI.sqrt() / 2.0 * gamma_ratio(nf + 1.0, nf + 1.5)?,
        ));
        worst = worst.max(rel_dev(
            wallis_partial(n),
            FRAC_PI_2 * gamma_ratio(nf + 1.0, nf + 0.5)? * gamma_ratio(nf + 1.0, nf + 1.5)?,
        ));
    }
    out.push(CheckResult::new(
        "identities",
        "product closed forms",
        worst,
        1e-12,
        worst <= 1e-12,
        t,
        format!("worst relative deviation of the three product families: {worst:.3e}"),
    ));

    Ok(out)
}

/// Eigensolver spectra and the variational closed-form/quadrature split.
pub fn spectra_suite() -> Result<Vec<CheckResult>> {
    let c = PhysicalConstants::ATOMIC;
    let mut out = Vec::new();

    // Hydrogen and oscillator eigenvalues for l, L <= 4, N <= 3.
    let t = Instant::now();
    let mut worst_h = 0.0f64;
    for l in 0..=4u32 {
        let prob = RadialProblem::hydrogen(3, l as f64, c)?;
        let cfg = SolverConfig::for_problem(&prob, 4)?;
        let states = solve_radial(&prob, &cfg)?;
        for (n, s) in states.iter().enumerate() {
            let want = hydrogen_exact_energy(n as u32, l, 3, &c)?;
            worst_h = worst_h.max(rel_dev(s.energy(), want));
        }
    }
    let mut worst_o = 0.0f64;
    for l_dual in 0..=4u32 {
        let prob = RadialProblem::oscillator_d4(l_dual as f64, 1.0, c)?;
        let cfg = SolverConfig::for_problem(&prob, 4)?;
        let states = solve_radial(&prob, &cfg)?;
        for (n, s) in states.iter().enumerate() {
            let want = oscillator_exact_energy(2 * n as u32, l_dual, 1.0, &c)?;
            worst_o = worst_o.max(rel_dev(s.energy(), want));
        }
    }
    let in_time = t.elapsed() < Duration::from_secs(30);
    let worst = worst_h.max(worst_o);
    out.push(CheckResult::new(
        "spectra",
        "flagship spectra",
        worst,
        1e-6,
        worst <= 1e-6 && in_time,
        t,
        format!(
            "worst relative eigenvalue error: hydrogen {worst_h:.3e}, oscillator {worst_o:.3e} (l, L <= 4, N <= 3; under 30 s)"
        ),
    ));

    // Closed form vs quadrature for l, L in 0..=20, and both minimizers.
    let t = Instant::now();
    let mut worst_eq = 0.0f64;
    for l in 0..=20u32 {
        for d in [3u32, 4] {
            let closed = hydrogen_exact_energy(0, l, d, &c)? * ratio_hydrogen(l, d)?;
            let r = hydrogen_variational_min(l, d, &c)?;
            let trial = TrialFunction::gaussian(r.optimal_scale, l)?;
            let prob = RadialProblem::hydrogen(d, l as f64, c)?;
            let quad_val = quadrature_mean_energy(&trial, &prob)?;
            worst_eq = worst_eq.max(rel_dev(quad_val, closed));
        }
        let omega = 1.0;
        let coupling = c.mass() * omega * omega / 2.0;
        let a_star = oscillator_alpha_star(l, coupling, &c)?;
        let trial = TrialFunction::quartic(a_star, l)?;
        let prob = RadialProblem::oscillator_d4(l as f64, omega, c)?;
        let quad_val = quadrature_mean_energy(&trial, &prob)?;
        let closed = oscillator_variational_min(l, omega, &c)?.min_mean_energy;
        worst_eq = worst_eq.max(rel_dev(quad_val, closed));
    }
    out.push(CheckResult::new(
        "spectra",
        "variational equivalence",
        worst_eq,
        1e-8,
        worst_eq <= 1e-8,
        t,
        format!("worst closed-form vs quadrature deviation over l, L in 0..=20: {worst_eq:.3e}"),
    ));

    let t = Instant::now();
    let mut worst_min = 0.0f64;
    for l_dual in 0..=20u32 {
        let coupling = 0.5;
        let want = oscillator_alpha_star(l_dual, coupling, &c)?;
        let (got, _) = golden_section(
            |a| oscillator_mean_energy(a, l_dual, coupling, &c).expect("a > 0 in bracket"),
            want / 10.0,
            want * 10.0,
            1e-12,
            200,
        );
        worst_min = worst_min.max(rel_dev(got, want));
    }
    out.push(CheckResult::new(
        "spectra",
        "oscillator minimizer",
        worst_min,
        1e-6,
        worst_min <= 1e-6,
        t,
        format!("worst golden-section vs a* = Km/(2ħ²(L+3)) deviation over L in 0..=20: {worst_min:.3e}"),
    ));

    Ok(out)
}

/// Duality dictionary exactness and state transport across the map.
pub fn duality_suite() -> Result<Vec<CheckResult>> {
    let c = PhysicalConstants::ATOMIC;
    let mut out = Vec::new();

    // Dictionary: involution of the exponent map, exact flagship integers,
    // and the double-application round trip.
    let t = Instant::now();
    let mut worst = 0.0f64;
    for beta in [-1.9, -1.3, -1.0, -0.4, 0.0, 0.7, 2.0, 5.5, 11.0] {
        let back = dual_exponent(dual_exponent(beta)?)?;
        worst = worst.max((back - beta).abs() / beta.abs().max(1.0));
    }
    let flagship = dual_problem(&RadialProblem::hydrogen(3, 2.0, c)?, -0.125)?;
    let exact_flagship = flagship.dual_dim == 4.0
        && flagship.dual_ang_momentum == 4.0
        && flagship.dual_energy == 4.0;
    let cases = [
        (3u32, 1.0, -1.0, -1.0, -0.125),
        (4, 2.0, 2.0, 0.5, 4.0),
        (5, 0.0, -0.5, -2.0, -0.7),
    ];
    for (d, l, beta, coupling, energy) in cases {
        let prob = RadialProblem::new(
            d,
            l,
            crate::model::PowerLawPotential::new(coupling, beta)?,
            c,
        )?;
        let dual = dual_problem(&prob, energy)?;
        let back = dual_problem(&dual.to_problem(c)?, dual.dual_energy)?;
        worst = worst.max(rel_dev(back.dual_dim, d as f64));
        worst = worst.max(rel_dev(back.dual_potential.exponent(), beta));
        worst = worst.max(rel_dev(back.dual_potential.coupling(), coupling));
        worst = worst.max(rel_dev(back.dual_energy, energy));
    }
    out.push(CheckResult::new(
        "duality",
        "dictionary round trip",
        worst,
        1e-12,
        worst <= 1e-12 && exact_flagship,
        t,
        format!("worst round-trip deviation {worst:.3e}; flagship D = 4, L = 2l, E = 4e² exact: {exact_flagship}"),
    ));

    // Transport: every computed hydrogen bound state (l <= 4, N <= 3) maps
    // onto a state solving the dual oscillator equation to < 1e-5.
    let t = Instant::now();
    let mut worst_res = 0.0f64;
    let mut count = 0;
    for l in 0..=4u32 {
        let prob = RadialProblem::hydrogen(3, l as f64, c)?;
        let cfg = SolverConfig::for_problem(&prob, 4)?;
        let states = solve_radial(&prob, &cfg)?;
        for state in &states {
            let dual = dual_problem(&prob, state.energy())?;
            worst_res = worst_res.max(duality_residual(state, &prob, &dual)?);
            count += 1;
        }
    }
    out.push(CheckResult::new(
        "duality",
        "state transport residual",
        worst_res,
        1e-5,
        worst_res < 1e-5,
        t,
        format!("worst dual-equation residual over {count} mapped bound states: {worst_res:.3e}"),
    ));

    // The residual must shrink when the source grid is refined.
    let t = Instant::now();
    let prob = RadialProblem::hydrogen(3, 0.0, c)?;
    let mut residuals = Vec::new();
    for n in [30_000usize, 60_000] {
        let cfg = SolverConfig::new(60.0 / (n as f64 + 1.0), 60.0, n, 1, 1e-12)?;
        let state = solve_radial(&prob, &cfg)?.remove(0);
        let dual = dual_problem(&prob, state.energy())?;
        residuals.push(duality_residual(&state, &prob, &dual)?);
    }
    let shrink = residuals[1] / residuals[0];
    out.push(CheckResult::new(
        "duality",
        "residual refinement",
        shrink,
        1.0,
        shrink < 1.0,
        t,
        format!(
            "residual {:.3e} -> {:.3e} under 2x source refinement (ratio {shrink:.3})",
            residuals[0], residuals[1]
        ),
    ));

    // Spectrum identity: the dual oscillator level n = 2N sits at 4e².
    let t = Instant::now();
    let mut worst_spec = 0.0f64;
    for (l, n_max) in [(0u32, 2u32), (1, 1)] {
        let report = verify_dual_spectrum(l, n_max, &c)?;
        for row in &report.levels {
            worst_spec = worst_spec.max(row.relative_error);
        }
    }
    out.push(CheckResult::new(
        "duality",
        "dual spectrum identity",
        worst_spec,
        1e-5,
        worst_spec < 1e-5,
        t,
        format!("worst |E_osc(n=2N, L=2l) - 4e²|/4e² over tested levels: {worst_spec:.3e}"),
    ));

    Ok(out)
}

/// All three suites in order.
pub fn all_suites() -> Result<Vec<CheckResult>> {
    let mut out = identities_suite()?;
    out.extend(spectra_suite()?);
    out.extend(duality_suite()?);
    Ok(out)
}
