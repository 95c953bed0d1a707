//! The damped partial-swap family: a spin qubit sweeping over thermal spin
//! qubits, coupled by the swap-inducing interaction `H_sw = ħ·J·U_sw` while
//! each ancilla leaks information to its own environment at rate `γ_A`.
//!
//! One interaction of duration `δt` retains
//!
//! ```text
//! φ_S(δt) = e^(-2γ_A δt) (cos(ωδt) + (γ_A/ω) sin(ωδt))²
//! φ_A(δt) = 1 - e^(-2γ_A δt) (J²/ω²) sin²(ωδt)
//! ```
//!
//! with `ω = sqrt(J² - γ_A²)` the damped oscillation rate; `γ_A > J` is
//! overdamped (`ω` imaginary: cos ↦ cosh, sin ↦ i·sinh) and `γ_A = J`
//! critically damped. The convex endpoints are `ρ_S⊙ = ρ_A(0)` and
//! `ρ_A⊙,n = ρ_S(nδt)`, so `E_A⊙,∞ = E_A(0)` and the friction is entirely
//! transient.

use crate::constants::HBAR;
use crate::convex::{
    decay_rate, ConvexModelSpec, FrictionDecomposition, ModelEndpoints, RetentionProfile,
};
use crate::quantum::QubitThermalState;
use crate::{Error, Result};

use super::{local_hamiltonian, Coupling, FrictionModel, TrajectoryPoint, VelocityRegime};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampedSwapParams {
    pub coupling: Coupling,
    /// Ancilla leak rate γ_A, 1/s.
    pub gamma_ancilla: f64,
    /// Lattice spacing δx, meters.
    pub spacing: f64,
    pub system: QubitThermalState,
    pub ancilla: QubitThermalState,
}

impl DampedSwapParams {
    pub fn validate(&self) -> Result<()> {
        if self.gamma_ancilla < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "leak rate must be nonnegative, got {}",
                self.gamma_ancilla
            )));
        }
        if !(self.spacing > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lattice spacing must be positive, got {}",
                self.spacing
            )));
        }
        Ok(())
    }

    /// Polarization gap `a_A(0) - a_S(0)`; its sign decides between friction
    /// and anti-friction in both velocity limits.
    pub fn polarization_gap(&self) -> f64 {
        self.ancilla.polarization - self.system.polarization
    }

    /// The equivalent one-dimensional convex collision model.
    pub fn to_convex_spec(&self) -> Result<ConvexModelSpec> {
        self.validate()?;
        let p = *self;
        let phi_s = RetentionProfile::new(move |dt| retentions_at(&p, dt).0);
        let phi_a = RetentionProfile::new(move |dt| retentions_at(&p, dt).1);
        let rho_s0 = self.system.to_density_matrix();
        let rho_a0 = self.ancilla.to_density_matrix();
        ConvexModelSpec::new(
            phi_s,
            phi_a,
            ModelEndpoints::States {
                system_initial: rho_s0.clone(),
                system_target: rho_a0.clone(),
                ancilla_initial: rho_a0.clone(),
                ancilla_target_initial: rho_s0,
                ancilla_target_final: rho_a0,
                h_system: local_hamiltonian(self.system.gap),
                h_ancilla: local_hamiltonian(self.ancilla.gap),
            },
            self.spacing,
        )
    }
}

fn retentions_at(p: &DampedSwapParams, dt: f64) -> (f64, f64) {
    // In velocity-scaled mode J = k·v = k·δx/δt.
    let j = match p.coupling {
        Coupling::Fixed { j } => j,
        Coupling::VelocityScaled { k } => k * p.spacing / dt,
    };
    damped_retentions(j, p.gamma_ancilla, dt)
}

/// `(φ_S, φ_A)` for swap rate `j`, leak rate `gamma`, duration `dt ≥ 0`.
///
/// One continuous expression across all damping regimes: the underdamped
/// branch evaluates the trigonometric forms, the overdamped branch the
/// hyperbolic ones in the log domain (no overflow at large `γ'δt`), and a
/// series in `ω²δt²` bridges the critical point where both degenerate.
pub fn damped_retentions(j: f64, gamma: f64, dt: f64) -> (f64, f64) {
    let disc = j * j - gamma * gamma; // ω²; negative when overdamped
    let u = disc * dt * dt;
    let damp = (-2.0 * gamma * dt).exp();
    if u.abs() < 1e-8 {
        // cos(ωδt) and sin(ωδt)/ω through O(u²); exact at the critical point
        let c = 1.0 - u / 2.0 + u * u / 24.0;
        let s = dt * (1.0 - u / 6.0 + u * u / 120.0);
        let a = c + gamma * s;
        (damp * a * a, 1.0 - damp * (j * s) * (j * s))
    } else if disc > 0.0 {
        let omega = disc.sqrt();
        let (sin, cos) = (omega * dt).sin_cos();
        let a = cos + gamma / omega * sin;
        (damp * a * a, 1.0 - damp * (j / omega * sin).powi(2))
    } else {
        let gp = (-disc).sqrt(); // γ' = sqrt(γ² - J²)
        let x = gp * dt;
        let r = gamma / gp;
        // A = cosh x + r sinh x = ((1+r)e^x + (1-r)e^(-x))/2
        let ln_a = x + ((1.0 + r) / 2.0).ln() + ((1.0 - r) / (1.0 + r) * (-2.0 * x).exp()).ln_1p();
        let phi_s = (2.0 * (ln_a - gamma * dt)).exp();
        // e^(-2γδt)(J/γ')² sinh²x = (J/γ')² e^(2(x-γδt)) (1 - e^(-2x))²/4
        let leak = (j / gp).powi(2) * (2.0 * (x - gamma * dt)).exp()
            * (1.0 - (-2.0 * x).exp()).powi(2)
            / 4.0;
        (phi_s, 1.0 - leak)
    }
}

/// `(φ_S, φ_A)` of the family at interaction duration `δt`.
pub fn damped_swap_retentions(params: &DampedSwapParams, dt: f64) -> Result<(f64, f64)> {
    params.validate()?;
    if dt < 0.0 {
        return Err(Error::NonPositiveDuration(dt));
    }
    let (phi_s, phi_a) = retentions_at(params, dt);
    Ok((
        crate::convex::clamp_retention(phi_s)?,
        crate::convex::clamp_retention(phi_a)?,
    ))
}

/// Closed-form `(f_∞, f_tr, Γ)` at drag velocity `v`:
///
/// ```text
/// f_∞  = 0
/// f_tr = (ħω_S (1 - φ_S(δt)) - ħω_A (1 - φ_A(δt))) (a_A(0) - a_S(0)) / δx
/// Γ    = -ln(φ_S(δt)) / δt  =  2γ_A - (2v/δx)·ln|cos(ωδx/v) + (γ_A/ω)sin(ωδx/v)|
/// ```
pub fn damped_swap_friction(
    params: &DampedSwapParams,
    velocity: f64,
) -> Result<FrictionDecomposition> {
    params.validate()?;
    if !(velocity > 0.0) {
        return Err(Error::NonPositiveVelocity(velocity));
    }
    let dt = params.spacing / velocity;
    let (phi_s, phi_a) = retentions_at(params, dt);
    let f_transient = (HBAR * params.system.gap * (1.0 - phi_s)
        - HBAR * params.ancilla.gap * (1.0 - phi_a))
        * params.polarization_gap()
        / params.spacing;
    Ok(FrictionDecomposition {
        f_infinity: 0.0,
        f_transient,
        decay_rate: decay_rate(phi_s, dt)?,
        velocity,
    })
}

/// Leading expansion coefficients of `f_tr` and `Γ` in the four
/// coupling/regime corners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DampedSwapLimits {
    /// Fixed `J`, `v → ∞`: `f_tr ≈ c/v²`, `Γ ≈ g/v`.
    FixedLargeV {
        f_tr_times_v_squared: f64,
        gamma_times_v: f64,
    },
    /// Fixed `J`, `v → 0`: both approach constants.
    FixedSmallV { f_tr: f64, gamma: f64 },
    /// `J = k·v`, `v → ∞`: `f_tr` approaches a constant while `Γ ∝ v`.
    ScaledLargeV { f_tr: f64, gamma_over_v: f64 },
    /// `J = k·v`, `v → 0` (always overdamped): `f_tr ≈ c·v`, `Γ ≈ g·v²` —
    /// the everyday profile `f ~ v`.
    ScaledSmallV {
        f_tr_over_v: f64,
        gamma_over_v_squared: f64,
    },
}

/// The family's closed-form limit coefficients for the requested regime.
pub fn damped_swap_limits(
    params: &DampedSwapParams,
    regime: VelocityRegime,
) -> Result<DampedSwapLimits> {
    params.validate()?;
    let gap_s = params.system.gap;
    let gap_a = params.ancilla.gap;
    let da = params.polarization_gap();
    let gamma = params.gamma_ancilla;
    let dx = params.spacing;
    match (params.coupling, regime) {
        (Coupling::Fixed { j }, VelocityRegime::LargeV) => Ok(DampedSwapLimits::FixedLargeV {
            f_tr_times_v_squared: HBAR * j * j * dx * (gap_s - gap_a) * da,
            gamma_times_v: j * j * dx,
        }),
        (Coupling::Fixed { j }, VelocityRegime::SmallV) => {
            let gamma_limit = if gamma <= j {
                2.0 * gamma
            } else {
                2.0 * gamma - 2.0 * (gamma * gamma - j * j).sqrt()
            };
            Ok(DampedSwapLimits::FixedSmallV {
                f_tr: HBAR * gap_s * da / dx,
                gamma: gamma_limit,
            })
        }
        (Coupling::VelocityScaled { k }, VelocityRegime::LargeV) => {
            let s2 = (k * dx).sin().powi(2);
            Ok(DampedSwapLimits::ScaledLargeV {
                f_tr: HBAR * s2 * (gap_s - gap_a) * da / dx,
                gamma_over_v: -((k * dx).cos().powi(2)).ln() / dx,
            })
        }
        (Coupling::VelocityScaled { k }, VelocityRegime::SmallV) => {
            if !(gamma > 0.0) {
                return Err(Error::InvalidParameter(
                    "the scaled small-velocity regime needs γ_A > 0 (overdamped branch)".into(),
                ));
            }
            Ok(DampedSwapLimits::ScaledSmallV {
                f_tr_over_v: k * k * HBAR * gap_s * da / gamma,
                gamma_over_v_squared: k * k / gamma,
            })
        }
    }
}

/// The family behind the [`FrictionModel`] trait.
#[derive(Debug, Clone)]
pub struct DampedSwapModel {
    params: DampedSwapParams,
}

impl DampedSwapModel {
    pub fn new(params: DampedSwapParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &DampedSwapParams {
        &self.params
    }
}

impl FrictionModel for DampedSwapModel {
    fn name(&self) -> &'static str {
        "damped_swap"
    }

    fn decomposition(&self, velocity: f64) -> Result<FrictionDecomposition> {
        damped_swap_friction(&self.params, velocity)
    }

    fn convex_spec(&self) -> Option<ConvexModelSpec> {
        self.params.to_convex_spec().ok()
    }

    fn trajectory(&self, velocity: f64, interactions: usize) -> Result<Vec<TrajectoryPoint>> {
        let spec = self.params.to_convex_spec()?;
        super::registry::convex_trajectory(&spec, velocity, interactions)
    }
}
