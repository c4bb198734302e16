//! Problem data model and the power-law duality dictionary.
//!
//! A radial problem (d, l, V = K r^β, E) maps to a dual problem through the
//! change of variable r = ρ^(2/(β+2)):
//!
//! ```text
//!   D = 2(β+d)/(β+2)          dual dimension
//!   L = 2l/(β+2)              dual angular momentum
//!   E_dual = -(2/(β+2))² K    dual energy (from the old coupling)
//!   V_dual = -(2/(β+2))² E ρ^(-2β/(β+2))   dual potential (from the old energy)
//! ```
//!
//! The map exchanges coupling and energy, is involutive, and is singular at
//! β = -2. Applied to the d = 3 Coulomb problem (β = -1, K = -e²) it yields
//! the D = 4 isotropic oscillator with L = 2l, E_dual = 4e² and dual
//! potential -4E ρ². Only bounded stationary solutions transport across the
//! map, which is why the eigensolver side of this crate deals in bound
//! states exclusively.

use crate::error::{Error, Result};

/// Tolerance for deciding that a dual dimension / angular momentum is an
/// integer and hence physically admissible.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

/// Mass, ħ and squared charge carried explicitly so that formulas stay
/// dimensionally honest; defaults are atomic units m = ħ = e = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    mass: f64,
    hbar: f64,
    charge_sq: f64,
}

impl PhysicalConstants {
    pub const ATOMIC: Self = Self {
        mass: 1.0,
        hbar: 1.0,
        charge_sq: 1.0,
    };

    pub fn new(mass: f64, hbar: f64, charge_sq: f64) -> Result<Self> {
        for (name, v) in [("mass", mass), ("hbar", hbar), ("charge_sq", charge_sq)] {
            if v <= 0.0 || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "physical constant {name} must be strictly positive, got {v}"
                )));
            }
        }
        Ok(Self { mass, hbar, charge_sq })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn charge_sq(&self) -> f64 {
        self.charge_sq
    }

    /// ħ²/2m, the kinetic prefactor of the radial operator.
    pub fn kinetic_factor(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.mass)
    }

    /// Bohr-like length ħ²/(m e²).
    pub fn bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.mass * self.charge_sq)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::ATOMIC
    }
}

/// V(r) = K r^β. The exponent β = -2 is rejected outright: the duality
/// coordinate power 2/(β+2) blows up there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawPotential {
    coupling: f64,
    exponent: f64,
}

impl PowerLawPotential {
    pub fn new(coupling: f64, exponent: f64) -> Result<Self> {
        if !coupling.is_finite() || !exponent.is_finite() {
            return Err(Error::Domain(format!(
                "potential parameters must be finite, got K = {coupling}, beta = {exponent}"
            )));
        }
        if exponent == -2.0 {
            return Err(Error::SingularExponent);
        }
        Ok(Self { coupling, exponent })
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn evaluate(&self, r: f64) -> f64 {
        self.coupling * power(r, self.exponent)
    }

    /// Whether the potential can hold bound states: attractive and less
    /// singular than -2 (Coulomb-like), or confining.
    pub fn supports_bound_states(&self) -> bool {
        (self.exponent > -2.0 && self.exponent < 0.0 && self.coupling < 0.0)
            || (self.exponent > 0.0 && self.coupling > 0.0)
    }
}

/// r^e with correctly rounded results for the exponents the duality actually
/// produces; `powf` is not correctly rounded and would spoil exact cases
/// like ρ = √r.
fn power(r: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else if e == 1.0 {
        r
    } else if e == -1.0 {
        1.0 / r
    } else if e == 2.0 {
        r * r
    } else if e == 0.5 {
        r.sqrt()
    } else {
        r.powf(e)
    }
}

/// A d-dimensional radial Schrödinger problem with power-law potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProblem {
    spatial_dim: u32,
    angular_momentum: f64,
    potential: PowerLawPotential,
    constants: PhysicalConstants,
}

impl RadialProblem {
    pub fn new(
        spatial_dim: u32,
        angular_momentum: f64,
        potential: PowerLawPotential,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        if spatial_dim < 1 {
            return Err(Error::Domain("spatial dimension must be >= 1".into()));
        }
        if angular_momentum < 0.0 || !angular_momentum.is_finite() {
            return Err(Error::Domain(format!(
                "angular momentum must be >= 0, got {angular_momentum}"
            )));
        }
        Ok(Self {
            spatial_dim,
            angular_momentum,
            potential,
            constants,
        })
    }

    /// Coulomb problem V = -e²/r in d dimensions.
    pub fn hydrogen(spatial_dim: u32, angular_momentum: f64, constants: PhysicalConstants) -> Result<Self> {
        let potential = PowerLawPotential::new(-constants.charge_sq(), -1.0)?;
        Self::new(spatial_dim, angular_momentum, potential, constants)
    }

    /// Isotropic oscillator V = (m ω²/2) ρ² in four dimensions, the dual of
    /// the d = 3 Coulomb problem.
    pub fn oscillator_d4(angular_momentum: f64, omega: f64, constants: PhysicalConstants) -> Result<Self> {
        if omega <= 0.0 || !omega.is_finite() {
            return Err(Error::Domain(format!("omega must be positive, got {omega}")));
        }
        let potential = PowerLawPotential::new(constants.mass() * omega * omega / 2.0, 2.0)?;
        Self::new(4, angular_momentum, potential, constants)
    }

    pub fn spatial_dim(&self) -> u32 {
        self.spatial_dim
    }

    pub fn angular_momentum(&self) -> f64 {
        self.angular_momentum
    }

    pub fn potential(&self) -> &PowerLawPotential {
        &self.potential
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// Centrifugal factor l(l+d-2) of the radial equation.
    pub fn centrifugal_factor(&self) -> f64 {
        let l = self.angular_momentum;
        l * (l + self.spatial_dim as f64 - 2.0)
    }
}

/// The dual problem produced by the dictionary, plus the coordinate-map
/// exponent σ = 2/(β+2) with r = ρ^σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityOutput {
    pub dual_dim: f64,
    pub dual_ang_momentum: f64,
    pub dual_energy: f64,
    pub dual_potential: PowerLawPotential,
    pub coord_exponent: f64,
}

impl DualityOutput {
    /// The dictionary is algebraically valid for any β ≠ -2, but only
    /// integer D and L describe an actual radial problem.
    pub fn is_physical(&self) -> bool {
        let near_integer = |x: f64| (x - x.round()).abs() <= INTEGER_TOLERANCE;
        near_integer(self.dual_dim)
            && near_integer(self.dual_ang_momentum)
            && self.dual_dim >= 1.0 - INTEGER_TOLERANCE
            && self.dual_ang_momentum >= -INTEGER_TOLERANCE
    }

    /// Materialize the dual problem; fails when D or L is not an integer.
    pub fn to_problem(&self, constants: PhysicalConstants) -> Result<RadialProblem> {
        if !self.is_physical() {
            return Err(Error::Domain(format!(
                "dual problem is unphysical: D = {}, L = {} are not nonnegative integers",
                self.dual_dim, self.dual_ang_momentum
            )));
        }
        RadialProblem::new(
            self.dual_dim.round() as u32,
            self.dual_ang_momentum.round(),
            self.dual_potential,
            constants,
        )
    }
}

/// A bound state sampled on an explicit radial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    grid: Vec<f64>,
    values: Vec<f64>,
    energy: f64,
    radial_quantum_number: Option<u32>,
}

impl RadialState {
    pub fn new(
        grid: Vec<f64>,
        values: Vec<f64>,
        energy: f64,
        radial_quantum_number: Option<u32>,
    ) -> Result<Self> {
        if grid.len() < 3 || grid.len() != values.len() {
            return Err(Error::InvalidState(format!(
                "need >= 3 grid points and matching value count, got {} and {}",
                grid.len(),
                values.len()
            )));
        }
        if !grid[0].is_finite() || grid[0] <= 0.0 {
            return Err(Error::InvalidState("grid must be strictly positive".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0] || !w[1].is_finite()) {
            return Err(Error::InvalidState("grid must be strictly ascending".into()));
        }
        if values.iter().any(|v| !v.is_finite()) || !energy.is_finite() {
            return Err(Error::InvalidState("values and energy must be finite".into()));
        }
        Ok(Self {
            grid,
            values,
            energy,
            radial_quantum_number,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn radial_quantum_number(&self) -> Option<u32> {
        self.radial_quantum_number
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Sign changes of the interior samples, ignoring values below a small
    /// fraction of the peak (boundary noise is not a node).
    pub fn node_count(&self) -> u32 {
        let peak = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if peak == 0.0 {
            return 0;
        }
        let cut = 1e-9 * peak;
        let mut nodes = 0;
        let mut last_sign = 0i8;
        for &v in &self.values {
            if v.abs() <= cut {
                continue;
            }
            let sign = if v > 0.0 { 1 } else { -1 };
            if last_sign != 0 && sign != last_sign {
                nodes += 1;
            }
            last_sign = sign;
        }
        nodes
    }
}

/// Exponent of the dual potential: β -> -2β/(β+2). Involutive away from the
/// singular point.
pub fn dual_exponent(beta: f64) -> Result<f64> {
    if !beta.is_finite() {
        return Err(Error::Domain(format!("beta must be finite, got {beta}")));
    }
    if beta == -2.0 {
        return Err(Error::SingularExponent);
    }
    // + 0.0 normalizes the -0.0 produced at beta = 0.
    Ok(-2.0 * beta / (beta + 2.0) + 0.0)
}

/// Apply the duality dictionary to a problem at a given bound-state energy.
///
/// The energy is not verified to be an eigenvalue here; that contract
/// belongs to the caller (see the spectral module's residual check).
pub fn dual_problem(prob: &RadialProblem, energy: f64) -> Result<DualityOutput> {
    let beta = prob.potential().exponent();
    if beta == -2.0 {
        return Err(Error::SingularExponent);
    }
    if !energy.is_finite() {
        return Err(Error::Domain(format!("energy must be finite, got {energy}")));
    }
    let sigma = 2.0 / (beta + 2.0);
    let sigma_sq = sigma * sigma;
    Ok(DualityOutput {
        dual_dim: 2.0 * (beta + prob.spatial_dim() as f64) / (beta + 2.0),
        dual_ang_momentum: sigma * prob.angular_momentum(),
        dual_energy: -sigma_sq * prob.potential().coupling(),
        dual_potential: PowerLawPotential::new(-sigma_sq * energy, dual_exponent(beta)?)?,
        coord_exponent: sigma,
    })
}

/// Coordinate map ρ = r^((β+2)/2), the inverse of r = ρ^(2/(β+2)).
pub fn map_coordinate(r: f64, beta: f64) -> Result<f64> {
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::Domain(format!("map_coordinate requires r > 0, got {r}")));
    }
    if !beta.is_finite() {
        return Err(Error::Domain(format!("beta must be finite, got {beta}")));
    }
    if beta == -2.0 {
        return Err(Error::SingularExponent);
    }
    Ok(power(r, (beta + 2.0) / 2.0))
}

/// Transport a sampled state across the duality: ρ_i = r_i^((β+2)/2) with
/// the sample values unchanged pointwise (R̃(ρ) = R(r)).
///
/// For β < -2 the coordinate map reverses orientation, so grid and values
/// are flipped to keep the grid ascending. The energy label is passed
/// through untouched: relabeling it is the dictionary's job
/// ([`dual_problem`]), and normalization is left to the caller.
pub fn map_state(state: &RadialState, beta: f64) -> Result<RadialState> {
    let mut grid: Vec<f64> = state
        .grid()
        .iter()
        .map(|&r| map_coordinate(r, beta))
        .collect::<Result<_>>()?;
    let mut values = state.values().to_vec();
    if grid.len() >= 2 && grid[0] > grid[1] {
        grid.reverse();
        values.reverse();
    }
    RadialState::new(grid, values, state.energy(), state.radial_quantum_number())
}
