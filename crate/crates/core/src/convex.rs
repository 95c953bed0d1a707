//! One-dimensional convex collision models: each party moves along the
//! segment between its own initial state and a fixed target state, keeping a
//! retention fraction `φ(δt)` of itself per interaction.
//!
//! The system update solves exactly to
//! `ρ_S(nδt) = φ_Sⁿ ρ_S(0) + (1 - φ_Sⁿ) ρ_S⊙`, interpolated between lattice
//! times by `e^(-Γt)` with `Γ = -ln(φ_S(δt))/δt`. The per-interaction
//! friction splits into a permanent and a geometrically decaying transient
//! part, `f_n = f_∞ + f_tr·φ_S(δt)ⁿ`, with
//!
//! ```text
//! f_∞  = (1 - φ_A)·(E_A⊙,∞ - E_A(0))/δx
//! f_tr = (1 - φ_S)·(E_S⊙ - E_S(0))/δx + (1 - φ_A)·(E_A⊙,0 - E_A⊙,∞)/δx
//! ```
//!
//! `φ_A` is taken independent of the interaction number; the ancilla target
//! may still drift with `n` through its linear dependence on the system
//! state, `ρ_A⊙,n = φ_Sⁿ ρ_A⊙,0 + (1 - φ_Sⁿ) ρ_A⊙,∞`.
//!
//! All functions here are pure over immutable specs.

use std::fmt;
use std::sync::Arc;

use crate::quantum::{expectation, DensityMatrix, HermitianOperator};
use crate::{Error, Result};

/// Floating-point slack allowed around the `[0, 1]` retention range before a
/// value is treated as a model bug.
pub const RETENTION_CLAMP: f64 = 1e-12;

/// Clamp roundoff noise at the edges of `[0, 1]`; reject anything further
/// out.
pub fn clamp_retention(value: f64) -> Result<f64> {
    if value.is_nan() {
        return Err(Error::RetentionOutOfRange { value });
    }
    if value < 0.0 {
        return if value >= -RETENTION_CLAMP {
            Ok(0.0)
        } else {
            Err(Error::RetentionOutOfRange { value })
        };
    }
    if value > 1.0 {
        return if value <= 1.0 + RETENTION_CLAMP {
            Ok(1.0)
        } else {
            Err(Error::RetentionOutOfRange { value })
        };
    }
    Ok(value)
}

/// `Γ = -ln(φ)/δt`, the continuous-time rate whose exponential matches the
/// geometric decay at every lattice time. `φ = 0` maps to `+∞` (target
/// reached after a single interaction), `φ = 1` to zero.
pub fn decay_rate(phi: f64, dt: f64) -> Result<f64> {
    if !(dt > 0.0) {
        return Err(Error::NonPositiveDuration(dt));
    }
    let phi = clamp_retention(phi)?;
    if phi == 0.0 {
        return Ok(f64::INFINITY);
    }
    let gamma = -phi.ln() / dt;
    Ok(if gamma == 0.0 { 0.0 } else { gamma })
}

/// A retention function `δt ↦ φ ∈ [0, 1]`, either a closed form from a model
/// family or any evaluable function.
#[derive(Clone)]
pub struct RetentionProfile {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl RetentionProfile {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(f) }
    }

    pub fn constant(phi: f64) -> Self {
        Self::new(move |_| phi)
    }

    /// Evaluate and range-check at duration `δt`.
    pub fn eval(&self, dt: f64) -> Result<f64> {
        clamp_retention((self.eval)(dt))
    }
}

impl fmt::Debug for RetentionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RetentionProfile(..)")
    }
}

/// The five energy symbols that fix the friction of a convex model:
/// `E_S(0)`, `E_S⊙`, `E_A(0)`, `E_A⊙,0`, `E_A⊙,∞` (joules).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevels {
    pub system_initial: f64,
    pub system_target: f64,
    pub ancilla_initial: f64,
    pub ancilla_target_initial: f64,
    pub ancilla_target_final: f64,
}

/// State-level or energy-level description of the model endpoints.
///
/// Full states enable the state-space operations; the friction only needs
/// the energies, which is all some figure parameterizations provide.
#[derive(Debug, Clone)]
pub enum ModelEndpoints {
    States {
        system_initial: DensityMatrix,
        system_target: DensityMatrix,
        ancilla_initial: DensityMatrix,
        ancilla_target_initial: DensityMatrix,
        ancilla_target_final: DensityMatrix,
        h_system: HermitianOperator,
        h_ancilla: HermitianOperator,
    },
    Energies(EnergyLevels),
}

/// A fully parameterized one-dimensional convex collision model.
#[derive(Debug, Clone)]
pub struct ConvexModelSpec {
    pub phi_system: RetentionProfile,
    pub phi_ancilla: RetentionProfile,
    pub endpoints: ModelEndpoints,
    /// Lattice spacing δx, meters.
    pub spacing: f64,
}

impl ConvexModelSpec {
    pub fn new(
        phi_system: RetentionProfile,
        phi_ancilla: RetentionProfile,
        endpoints: ModelEndpoints,
        spacing: f64,
    ) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lattice spacing must be positive, got {spacing}"
            )));
        }
        if let ModelEndpoints::States {
            system_initial,
            system_target,
            ancilla_initial,
            ancilla_target_initial,
            ancilla_target_final,
            h_system,
            h_ancilla,
        } = &endpoints
        {
            for s in [system_initial, system_target] {
                if s.dim() != h_system.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: h_system.dim(),
                        found: s.dim(),
                    });
                }
            }
            for s in [ancilla_initial, ancilla_target_initial, ancilla_target_final] {
                if s.dim() != h_ancilla.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: h_ancilla.dim(),
                        found: s.dim(),
                    });
                }
            }
        }
        Ok(Self {
            phi_system,
            phi_ancilla,
            endpoints,
            spacing,
        })
    }

    /// The energy symbols, computed from states when states are given.
    pub fn energies(&self) -> Result<EnergyLevels> {
        match &self.endpoints {
            ModelEndpoints::Energies(e) => Ok(*e),
            ModelEndpoints::States {
                system_initial,
                system_target,
                ancilla_initial,
                ancilla_target_initial,
                ancilla_target_final,
                h_system,
                h_ancilla,
            } => Ok(EnergyLevels {
                system_initial: expectation(h_system, system_initial)?,
                system_target: expectation(h_system, system_target)?,
                ancilla_initial: expectation(h_ancilla, ancilla_initial)?,
                ancilla_target_initial: expectation(h_ancilla, ancilla_target_initial)?,
                ancilla_target_final: expectation(h_ancilla, ancilla_target_final)?,
            }),
        }
    }

    fn states(
        &self,
    ) -> Result<(
        &DensityMatrix,
        &DensityMatrix,
        &DensityMatrix,
        &DensityMatrix,
    )> {
        match &self.endpoints {
            ModelEndpoints::States {
                system_initial,
                system_target,
                ancilla_target_initial,
                ancilla_target_final,
                ..
            } => Ok((
                system_initial,
                system_target,
                ancilla_target_initial,
                ancilla_target_final,
            )),
            ModelEndpoints::Energies(_) => Err(Error::MissingStates),
        }
    }

    /// Exact solution of the system update,
    /// `φ_S(δt)ⁿ ρ_S(0) + (1 - φ_S(δt)ⁿ) ρ_S⊙`.
    pub fn system_state_at(&self, dt: f64, n: u32) -> Result<DensityMatrix> {
        let (initial, target, _, _) = self.states()?;
        let phi = self.phi_system.eval(dt)?;
        DensityMatrix::mix(initial, target, phi.powi(n as i32))
    }

    /// The exponential interpolation `e^(-Γt) ρ_S(0) + (1 - e^(-Γt)) ρ_S⊙`,
    /// exact at every lattice time `t = n·δt`.
    pub fn interpolated_state(&self, dt: f64, t: f64) -> Result<DensityMatrix> {
        if t < 0.0 {
            return Err(Error::InvalidParameter(format!("negative time {t}")));
        }
        let (initial, target, _, _) = self.states()?;
        let gamma = decay_rate(self.phi_system.eval(dt)?, dt)?;
        let weight = survival_weight(gamma, t);
        DensityMatrix::mix(initial, target, weight)
    }

    /// The drifting ancilla target,
    /// `ρ_A⊙,n = φ_S(δt)ⁿ ρ_A⊙,0 + (1 - φ_S(δt)ⁿ) ρ_A⊙,∞`.
    pub fn ancilla_target_at(&self, dt: f64, n: u32) -> Result<DensityMatrix> {
        let (_, _, target_initial, target_final) = self.states()?;
        let phi = self.phi_system.eval(dt)?;
        DensityMatrix::mix(target_initial, target_final, phi.powi(n as i32))
    }

    /// The complete characterization `(f_∞, f_tr, Γ)` at drag velocity `v`.
    pub fn friction_decomposition(&self, velocity: f64) -> Result<FrictionDecomposition> {
        if !(velocity > 0.0) {
            return Err(Error::NonPositiveVelocity(velocity));
        }
        let dt = self.spacing / velocity;
        let phi_s = self.phi_system.eval(dt)?;
        let phi_a = self.phi_ancilla.eval(dt)?;
        let e = self.energies()?;
        Ok(FrictionDecomposition {
            f_infinity: (1.0 - phi_a) * (e.ancilla_target_final - e.ancilla_initial)
                / self.spacing,
            f_transient: (1.0 - phi_s) * (e.system_target - e.system_initial) / self.spacing
                + (1.0 - phi_a) * (e.ancilla_target_initial - e.ancilla_target_final)
                    / self.spacing,
            decay_rate: decay_rate(phi_s, dt)?,
            velocity,
        })
    }

    /// `f_n = f_∞ + f_tr·φ_S(δt)ⁿ`, evaluated analytically (no iteration).
    pub fn friction_at(&self, velocity: f64, n: u32) -> Result<f64> {
        let d = self.friction_decomposition(velocity)?;
        let phi_s = self.phi_system.eval(self.spacing / velocity)?;
        Ok(d.f_infinity + d.f_transient * phi_s.powi(n as i32))
    }

    /// Per-interaction energy changes `(δE_S,n, δE_A,n)` from the energy
    /// sequences: `δE_S,n = (1 - φ_S)·φ_Sⁿ·(E_S⊙ - E_S(0))` and
    /// `δE_A,n = (1 - φ_A)·(E_A⊙,n - E_A(0))`.
    pub fn energy_changes_at(&self, velocity: f64, n: u32) -> Result<(f64, f64)> {
        if !(velocity > 0.0) {
            return Err(Error::NonPositiveVelocity(velocity));
        }
        let dt = self.spacing / velocity;
        let phi_s = self.phi_system.eval(dt)?;
        let phi_a = self.phi_ancilla.eval(dt)?;
        let e = self.energies()?;
        let phi_n = phi_s.powi(n as i32);
        let de_s = (1.0 - phi_s) * phi_n * (e.system_target - e.system_initial);
        let e_target_n =
            phi_n * e.ancilla_target_initial + (1.0 - phi_n) * e.ancilla_target_final;
        let de_a = (1.0 - phi_a) * (e_target_n - e.ancilla_initial);
        Ok((de_s, de_a))
    }
}

fn survival_weight(gamma: f64, t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else if gamma.is_infinite() {
        0.0
    } else {
        (-gamma * t).exp()
    }
}

/// The triple `(f_∞, f_tr, Γ)` that fully captures the friction sequence at
/// one velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrictionDecomposition {
    /// Permanent friction, N. Set entirely by the ancilla dynamics.
    pub f_infinity: f64,
    /// Transient friction at `n = 0`, N.
    pub f_transient: f64,
    /// Decay rate Γ of the transient, 1/s; `+∞` when `φ_S(δt) = 0`.
    pub decay_rate: f64,
    /// Drag velocity this decomposition belongs to, m/s.
    pub velocity: f64,
}

impl FrictionDecomposition {
    /// Friction of the exponential interpolation at time `t`:
    /// `f_∞ + f_tr·e^(-Γt)`.
    pub fn friction_at_time(&self, t: f64) -> f64 {
        self.f_infinity + self.f_transient * survival_weight(self.decay_rate, t)
    }

    /// The velocity-independent bounds `|f_∞| ≤ |E_A⊙,∞ - E_A(0)|/δx` and
    /// `|f_tr| ≤ |E_S⊙ - E_S(0)|/δx + |E_A⊙,0 - E_A⊙,∞|/δx`.
    pub fn within_bounds(&self, energies: &EnergyLevels, spacing: f64) -> bool {
        let slack = 1e-12;
        let bound_inf = (energies.ancilla_target_final - energies.ancilla_initial).abs() / spacing;
        let bound_tr = (energies.system_target - energies.system_initial).abs() / spacing
            + (energies.ancilla_target_initial - energies.ancilla_target_final).abs() / spacing;
        self.f_infinity.abs() <= bound_inf * (1.0 + slack) + slack
            && self.f_transient.abs() <= bound_tr * (1.0 + slack) + slack
    }
}

/// Leading retention coefficients in one of the four asymptotic regimes.
///
/// * `RegularLargeV`: `φ_X(δt) = 1 - δt·φ_X,1 + O(δt²)` — friction decays
///   like `1/v` at high speed.
/// * `JumpLargeV`: `φ_X(δt → 0) = 1 - F_X` — a finite jump survives the
///   `δt → 0` limit and the friction approaches a constant at high speed.
/// * `SaturatingSmallV`: `φ_X(δt → ∞) = 1 - f_X` — the friction approaches
///   a constant at low speed.
/// * `PolynomialSmallV`: `φ_X(δt) = 1 - δt^(-p)·φ_X,p` for large `δt` —
///   low-speed friction scales as `v^p`, recovering any everyday profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticCoefficients {
    RegularLargeV { phi_s1: f64, phi_a1: f64 },
    JumpLargeV { jump_s: f64, jump_a: f64 },
    SaturatingSmallV { defect_s: f64, defect_a: f64 },
    PolynomialSmallV { phi_sp: f64, phi_ap: f64, exponent: f64 },
}

/// Leading-order `(f_∞, f_tr, Γ)` of the matching expansion.
pub fn asymptotic_decomposition(
    coefficients: &AsymptoticCoefficients,
    energies: &EnergyLevels,
    spacing: f64,
    velocity: f64,
) -> Result<FrictionDecomposition> {
    if !(velocity > 0.0) {
        return Err(Error::NonPositiveVelocity(velocity));
    }
    if !(spacing > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lattice spacing must be positive, got {spacing}"
        )));
    }
    let de_s = energies.system_target - energies.system_initial;
    let de_a_perm = energies.ancilla_target_final - energies.ancilla_initial;
    let de_a_tr = energies.ancilla_target_initial - energies.ancilla_target_final;
    match *coefficients {
        AsymptoticCoefficients::RegularLargeV { phi_s1, phi_a1 } => Ok(FrictionDecomposition {
            f_infinity: de_a_perm * phi_a1 / velocity,
            f_transient: de_s * phi_s1 / velocity + de_a_tr * phi_a1 / velocity,
            decay_rate: phi_s1,
            velocity,
        }),
        AsymptoticCoefficients::JumpLargeV { jump_s, jump_a } => {
            if !(0.0..=1.0).contains(&jump_s) || !(0.0..=1.0).contains(&jump_a) {
                return Err(Error::InvalidParameter(
                    "retention jumps must lie in [0, 1]".into(),
                ));
            }
            // Γ of the interpolation at retention 1 - F_S: -(v/δx)·ln(1 - F_S).
            let gamma = if jump_s >= 1.0 {
                f64::INFINITY
            } else {
                -(1.0 - jump_s).ln() * velocity / spacing
            };
            Ok(FrictionDecomposition {
                f_infinity: de_a_perm * jump_a / spacing,
                f_transient: de_s * jump_s / spacing + de_a_tr * jump_a / spacing,
                decay_rate: gamma,
                velocity,
            })
        }
        AsymptoticCoefficients::SaturatingSmallV { defect_s, defect_a } => {
            Ok(FrictionDecomposition {
                f_infinity: de_a_perm * defect_a / spacing,
                f_transient: de_s * defect_s / spacing + de_a_tr * defect_a / spacing,
                decay_rate: 0.0,
                velocity,
            })
        }
        AsymptoticCoefficients::PolynomialSmallV {
            phi_sp,
            phi_ap,
            exponent,
        } => {
            if !(exponent > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "polynomial regime needs p > 0, got {exponent}"
                )));
            }
            let scale = velocity.powf(exponent) / spacing.powf(exponent + 1.0);
            Ok(FrictionDecomposition {
                f_infinity: de_a_perm * phi_ap * scale,
                f_transient: (de_s * phi_sp + de_a_tr * phi_ap) * scale,
                decay_rate: phi_sp * velocity.powf(exponent + 1.0)
                    / spacing.powf(exponent + 1.0),
                velocity,
            })
        }
    }
}
