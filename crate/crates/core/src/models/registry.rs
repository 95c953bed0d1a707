//! One trait in front of every model family, with a name-keyed registry so
//! the frontend can select a family at runtime from configuration.

use std::collections::BTreeMap;

use crate::collision::{run_trajectory, CollisionSpec};
use crate::convex::{ConvexModelSpec, FrictionDecomposition};
use crate::quantum::DensityMatrix;
use crate::{Error, Result};

use super::damped_swap::{DampedSwapModel, DampedSwapParams};
use super::entangle::{EntangleDisentangleModel, EntangleDisentangleParams};
use super::generic::{GenericCollisionModel, GenericCollisionParams};

/// One row of a per-interaction trajectory. `δE_S + δE_A + δW = 0` row-wise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub index: usize,
    /// Lattice time `n·δt`, s.
    pub time: f64,
    /// Average friction over this interaction, N.
    pub friction: f64,
    /// System internal energy entering the interaction, J.
    pub system_energy: f64,
    pub delta_e_system: f64,
    pub delta_e_ancilla: f64,
    pub work: f64,
}

/// A friction-velocity model selectable at runtime.
pub trait FrictionModel: Send + Sync {
    /// Registry name of the family.
    fn name(&self) -> &'static str;

    /// The `(f_∞, f_tr, Γ)` characterization at drag velocity `v`. Families
    /// without a closed form may estimate it from simulation.
    fn decomposition(&self, velocity: f64) -> Result<FrictionDecomposition>;

    /// Friction of the interpolation at time `t`, `f_∞ + f_tr·e^(-Γt)`.
    fn friction_at_time(&self, velocity: f64, time: f64) -> Result<f64> {
        Ok(self.decomposition(velocity)?.friction_at_time(time))
    }

    /// The equivalent convex model, when the family has one.
    fn convex_spec(&self) -> Option<ConvexModelSpec>;

    /// Per-interaction energy and friction books at drag velocity `v`.
    fn trajectory(&self, velocity: f64, interactions: usize) -> Result<Vec<TrajectoryPoint>>;
}

/// Trajectory rows for a convex model, straight from the energy sequences.
pub(crate) fn convex_trajectory(
    spec: &ConvexModelSpec,
    velocity: f64,
    interactions: usize,
) -> Result<Vec<TrajectoryPoint>> {
    if !(velocity > 0.0) {
        return Err(Error::NonPositiveVelocity(velocity));
    }
    let dt = spec.spacing / velocity;
    let phi_s = spec.phi_system.eval(dt)?;
    let e = spec.energies()?;
    let mut rows = Vec::with_capacity(interactions);
    for n in 0..interactions {
        let (de_s, de_a) = spec.energy_changes_at(velocity, n as u32)?;
        let phi_n = phi_s.powi(n as i32);
        rows.push(TrajectoryPoint {
            index: n,
            time: n as f64 * dt,
            friction: (de_s + de_a) / spec.spacing,
            system_energy: phi_n * e.system_initial + (1.0 - phi_n) * e.system_target,
            delta_e_system: de_s,
            delta_e_ancilla: de_a,
            work: -(de_s + de_a),
        });
    }
    Ok(rows)
}

/// Trajectory rows from the joint-unitary engine.
pub(crate) fn engine_trajectory(
    spec: &CollisionSpec,
    initial_system: &DensityMatrix,
    velocity: f64,
    interactions: usize,
) -> Result<Vec<TrajectoryPoint>> {
    let dt = spec.spacing / velocity;
    let mut e_system = crate::quantum::expectation(&spec.h_system, initial_system)?;
    run_trajectory(spec, initial_system, velocity, interactions)?
        .into_iter()
        .map(|r| {
            let row = TrajectoryPoint {
                index: r.index,
                time: r.index as f64 * dt,
                friction: r.friction,
                system_energy: e_system,
                delta_e_system: r.delta_e_system,
                delta_e_ancilla: r.delta_e_ancilla,
                work: r.work,
            };
            e_system += r.delta_e_system;
            Ok(row)
        })
        .collect()
}

/// Parameters for one of the registered families.
#[derive(Debug, Clone)]
pub enum ModelParams {
    DampedSwap(DampedSwapParams),
    EntangleDisentangle(EntangleDisentangleParams),
    Generic(GenericCollisionParams),
}

impl ModelParams {
    fn kind(&self) -> &'static str {
        match self {
            ModelParams::DampedSwap(_) => "damped_swap",
            ModelParams::EntangleDisentangle(_) => "entangle_disentangle",
            ModelParams::Generic(_) => "generic_hamiltonian",
        }
    }
}

type Builder = fn(ModelParams) -> Result<Box<dyn FrictionModel>>;

/// Name-keyed registry of model builders.
pub struct ModelRegistry {
    builders: BTreeMap<&'static str, Builder>,
}

impl ModelRegistry {
    /// A registry with the built-in families registered.
    pub fn with_builtin() -> Self {
        let mut registry = Self {
            builders: BTreeMap::new(),
        };
        registry.register("damped_swap", |params| match params {
            ModelParams::DampedSwap(p) => {
                Ok(Box::new(DampedSwapModel::new(p)?) as Box<dyn FrictionModel>)
            }
            other => Err(Error::ModelParameterMismatch {
                model: "damped_swap",
                given: other.kind(),
            }),
        });
        registry.register("entangle_disentangle", |params| match params {
            ModelParams::EntangleDisentangle(p) => {
                Ok(Box::new(EntangleDisentangleModel::new(p)?) as Box<dyn FrictionModel>)
            }
            other => Err(Error::ModelParameterMismatch {
                model: "entangle_disentangle",
                given: other.kind(),
            }),
        });
        registry.register("generic_hamiltonian", |params| match params {
            ModelParams::Generic(p) => {
                Ok(Box::new(GenericCollisionModel::new(p)?) as Box<dyn FrictionModel>)
            }
            other => Err(Error::ModelParameterMismatch {
                model: "generic_hamiltonian",
                given: other.kind(),
            }),
        });
        registry
    }

    pub fn register(&mut self, name: &'static str, builder: Builder) {
        self.builders.insert(name, builder);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.builders.keys().copied()
    }

    pub fn build(&self, name: &str, params: ModelParams) -> Result<Box<dyn FrictionModel>> {
        let builder = self
            .builders
            .get(name)
            .ok_or_else(|| Error::UnknownModel(name.to_string()))?;
        builder(params)
    }
}
