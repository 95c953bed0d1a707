//! The two worked model families — damped partial swap and
//! entangle–disentangle — as convex-spec factories with their own
//! closed-form friction, plus a runtime registry that puts every family
//! behind one trait.
//!
//! Unit conventions shared by the families, the oracle, and the CLI:
//! couplings and leak rates are angular (rad/s; "THz" means 1e12 rad/s),
//! and a thermal qubit with polarization `a` and splitting `ω` carries the
//! internal energy `E = ħ·ω·a` — the level splitting is measured by
//! `ħ·ω·σ_z`. All closed-form friction values in this module follow that
//! normalization.

mod damped_swap;
mod entangle;
mod generic;
mod registry;

pub use damped_swap::{
    damped_swap_friction, damped_swap_limits, damped_swap_retentions, DampedSwapLimits,
    DampedSwapModel, DampedSwapParams,
};
pub use entangle::{
    ed_friction, ed_retentions, EdEnergies, EntangleDisentangleModel, EntangleDisentangleParams,
};
pub use generic::{GenericCollisionModel, GenericCollisionParams};
pub use registry::{FrictionModel, ModelParams, ModelRegistry, TrajectoryPoint};

use crate::constants::HBAR;
use crate::quantum::HermitianOperator;

/// How the interaction rate depends on the drag velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// Velocity-independent swap rate `J` (rad/s).
    Fixed { j: f64 },
    /// Velocity-proportional rate `J = k·v` with `k` in rad/m.
    VelocityScaled { k: f64 },
}

impl Coupling {
    /// Effective rate at drag velocity `v`.
    pub fn rate_at(&self, velocity: f64) -> f64 {
        match *self {
            Coupling::Fixed { j } => j,
            Coupling::VelocityScaled { k } => k * velocity,
        }
    }

    pub fn is_velocity_scaled(&self) -> bool {
        matches!(self, Coupling::VelocityScaled { .. })
    }
}

/// Local qubit Hamiltonian `ħ·ω·σ_z` in the module's energy normalization.
pub(crate) fn local_hamiltonian(omega: f64) -> HermitianOperator {
    HermitianOperator::pauli_z().scaled(HBAR * omega)
}

/// Regime selector for the closed-form expansion coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VelocityRegime {
    LargeV,
    SmallV,
}
