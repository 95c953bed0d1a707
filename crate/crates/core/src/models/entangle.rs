//! The entangle–disentangle family: system and ancilla oscillate between a
//! product state and a (partially) maximally entangled state, so each
//! reduced state moves between itself and its maximally mixed state.
//!
//! Both retentions are `φ(δt) = ε + (1 - ε)cos²(Jδt)`; at `ε = 1` nothing
//! evolves and at `ε = 0` a full entangling step (`Jδt = π/2`) lands both
//! parties on their targets in one interaction. The targets are fully mixed,
//! `ρ_X⊙ = 1/D_X`, which pins the friction sign to the initial energies:
//! both `f_∞` and `f_tr` are negative exactly when the initial states sit
//! above the maximally mixed energies (inverted populations).
//!
//! The joint entangled state never needs to be materialized; the friction
//! depends only on the marginals' energies.

use crate::convex::{
    decay_rate, ConvexModelSpec, EnergyLevels, FrictionDecomposition, ModelEndpoints,
    RetentionProfile,
};
use crate::{Error, Result};

use super::{Coupling, FrictionModel, TrajectoryPoint};

/// The four energies (J) that parameterize the family; targets are the
/// maximally-mixed-state energies `Tr(H_X)/D_X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdEnergies {
    pub system_initial: f64,
    pub system_target: f64,
    pub ancilla_initial: f64,
    pub ancilla_target: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangleDisentangleParams {
    pub coupling: Coupling,
    /// Residual product weight ε ∈ [0, 1]; the parties are never maximally
    /// entangled unless ε = 0.
    pub epsilon: f64,
    /// Lattice spacing δx, meters.
    pub spacing: f64,
    pub energies: EdEnergies,
}

impl EntangleDisentangleParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::InvalidParameter(format!(
                "epsilon {} outside [0, 1]",
                self.epsilon
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

    /// The equivalent convex model. The ancilla target is `n`-independent,
    /// so `E_A⊙,0 = E_A⊙,∞` and the transient carries no ancilla term.
    pub fn to_convex_spec(&self) -> Result<ConvexModelSpec> {
        self.validate()?;
        let p = *self;
        let phi = RetentionProfile::new(move |dt| retention_at(&p, dt));
        ConvexModelSpec::new(
            phi.clone(),
            phi,
            ModelEndpoints::Energies(EnergyLevels {
                system_initial: self.energies.system_initial,
                system_target: self.energies.system_target,
                ancilla_initial: self.energies.ancilla_initial,
                ancilla_target_initial: self.energies.ancilla_target,
                ancilla_target_final: self.energies.ancilla_target,
            }),
            self.spacing,
        )
    }
}

/// `(1 - ε)·sin²(Jδt)`, the weight moved onto the targets per interaction.
fn strength_at(p: &EntangleDisentangleParams, dt: f64) -> f64 {
    let j = match p.coupling {
        Coupling::Fixed { j } => j,
        Coupling::VelocityScaled { k } => k * p.spacing / dt,
    };
    (1.0 - p.epsilon) * (j * dt).sin().powi(2)
}

// φ = ε + (1-ε)cos², written via sin² so the retention and the closed-form
// friction share one arithmetic path.
fn retention_at(p: &EntangleDisentangleParams, dt: f64) -> f64 {
    1.0 - strength_at(p, dt)
}

/// The shared retention `φ_S = φ_A = ε + (1 - ε)cos²(Jδt) ∈ [ε, 1]`.
pub fn ed_retentions(params: &EntangleDisentangleParams, dt: f64) -> Result<f64> {
    params.validate()?;
    if dt < 0.0 || (dt == 0.0 && params.coupling.is_velocity_scaled()) {
        return Err(Error::NonPositiveDuration(dt));
    }
    crate::convex::clamp_retention(retention_at(params, dt))
}

/// Closed-form `(f_∞, f_tr, Γ)` at drag velocity `v`:
///
/// ```text
/// f_∞  = (1 - ε) sin²(Jδx/v) (E_A⊙,∞ - E_A(0)) / δx
/// f_tr = (1 - ε) sin²(Jδx/v) (E_S⊙  - E_S(0)) / δx
/// Γ    = -(v/δx)·ln(1 - (1 - ε) sin²(Jδx/v))
/// ```
///
/// With `J = k·v` the sine argument is `kδx` at every velocity, so `f_∞`
/// and `f_tr` are constants and `Γ ∝ v`.
pub fn ed_friction(
    params: &EntangleDisentangleParams,
    velocity: f64,
) -> Result<FrictionDecomposition> {
    params.validate()?;
    if !(velocity > 0.0) {
        return Err(Error::NonPositiveVelocity(velocity));
    }
    let dt = params.spacing / velocity;
    let strength = strength_at(params, dt);
    let e = params.energies;
    Ok(FrictionDecomposition {
        f_infinity: strength * (e.ancilla_target - e.ancilla_initial) / params.spacing,
        f_transient: strength * (e.system_target - e.system_initial) / params.spacing,
        decay_rate: decay_rate(retention_at(params, dt), dt)?,
        velocity,
    })
}

/// The family behind the [`FrictionModel`] trait.
#[derive(Debug, Clone)]
pub struct EntangleDisentangleModel {
    params: EntangleDisentangleParams,
}

impl EntangleDisentangleModel {
    pub fn new(params: EntangleDisentangleParams) -> Result<Self> {
        params.validate()?;
        Ok(Self { params })
    }

    pub fn params(&self) -> &EntangleDisentangleParams {
        &self.params
    }
}

impl FrictionModel for EntangleDisentangleModel {
    fn name(&self) -> &'static str {
        "entangle_disentangle"
    }

    fn decomposition(&self, velocity: f64) -> Result<FrictionDecomposition> {
        ed_friction(&self.params, velocity)
    }

    fn convex_spec(&self) -> Option<ConvexModelSpec> {
        self.params.to_convex_spec().ok()
    }

    fn trajectory(&self, velocity: f64, interactions: usize) -> Result<Vec<TrajectoryPoint>> {
        let spec = self.params.to_convex_spec()?;
        super::registry::convex_trajectory(&spec, velocity, interactions)
    }
}
