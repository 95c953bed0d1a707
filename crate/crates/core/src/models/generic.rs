//! A model family backed by the joint-unitary engine for Hamiltonians with
//! no closed-form friction. The decomposition is estimated empirically from
//! a simulated trajectory; prefer the closed-form families when one applies.

use crate::collision::{collide_once, CollisionSpec};
use crate::convex::{ConvexModelSpec, FrictionDecomposition};
use crate::quantum::DensityMatrix;
use crate::{Error, Result};

use super::registry::{engine_trajectory, FrictionModel, TrajectoryPoint};

#[derive(Debug, Clone)]
pub struct GenericCollisionParams {
    pub spec: CollisionSpec,
    pub initial_system: DensityMatrix,
    /// Horizon used to estimate the settled (permanent) friction.
    pub settle_interactions: usize,
}

/// Engine-backed [`FrictionModel`].
///
/// `decomposition` reports `f_∞` as the friction after `settle_interactions`
/// collisions, `f_tr = f_0 - f_∞`, and `Γ` fitted from the first decay step
/// `(f_1 - f_∞)/(f_0 - f_∞)` where that ratio is usable (NaN otherwise —
/// generic dynamics need not decay geometrically).
#[derive(Debug, Clone)]
pub struct GenericCollisionModel {
    params: GenericCollisionParams,
}

impl GenericCollisionModel {
    pub fn new(params: GenericCollisionParams) -> Result<Self> {
        if params.initial_system.dim() != params.spec.system_dim() {
            return Err(Error::DimensionMismatch {
                expected: params.spec.system_dim(),
                found: params.initial_system.dim(),
            });
        }
        if params.settle_interactions < 2 {
            return Err(Error::InvalidParameter(
                "settling horizon must cover at least two interactions".into(),
            ));
        }
        Ok(Self { params })
    }

    pub fn params(&self) -> &GenericCollisionParams {
        &self.params
    }

    /// One collision from the configured initial state.
    pub fn first_collision_friction(&self, velocity: f64) -> Result<f64> {
        Ok(collide_once(&self.params.spec, &self.params.initial_system, velocity)?.friction)
    }
}

impl FrictionModel for GenericCollisionModel {
    fn name(&self) -> &'static str {
        "generic_hamiltonian"
    }

    fn decomposition(&self, velocity: f64) -> Result<FrictionDecomposition> {
        let rows = self.trajectory(velocity, self.params.settle_interactions)?;
        let dt = self.params.spec.spacing / velocity;
        let f_infinity = rows.last().expect("horizon >= 2").friction;
        let f_transient = rows[0].friction - f_infinity;
        let first_step = (rows[1].friction - f_infinity) / f_transient;
        let decay_rate = if f_transient.abs() > 1e-12 * f_infinity.abs().max(f_transient.abs())
            && (0.0..=1.0).contains(&first_step)
        {
            crate::convex::decay_rate(first_step, dt)?
        } else {
            f64::NAN
        };
        Ok(FrictionDecomposition {
            f_infinity,
            f_transient,
            decay_rate,
            velocity,
        })
    }

    fn friction_at_time(&self, velocity: f64, time: f64) -> Result<f64> {
        // No interpolation guarantee here; report the lattice row at
        // n = round(t/δt).
        let dt = self.params.spec.spacing / velocity;
        let n = (time / dt).round().max(0.0) as usize;
        let rows = self.trajectory(velocity, n + 1)?;
        Ok(rows[n].friction)
    }

    fn convex_spec(&self) -> Option<ConvexModelSpec> {
        None
    }

    fn trajectory(&self, velocity: f64, interactions: usize) -> Result<Vec<TrajectoryPoint>> {
        engine_trajectory(
            &self.params.spec,
            &self.params.initial_system,
            velocity,
            interactions,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collision::CouplingMode;
    use crate::constants::HBAR;
    use crate::models::registry::{ModelParams, ModelRegistry};
    use crate::quantum::{swap_unitary, HermitianOperator, QubitThermalState};
    use approx::assert_relative_eq;

    fn swap_params() -> GenericCollisionParams {
        let j = 1.5e13;
        let spec = CollisionSpec::new(
            HermitianOperator::pauli_z().scaled(HBAR * 9.0e13),
            HermitianOperator::pauli_z().scaled(HBAR * 4.0e13),
            HermitianOperator::new(swap_unitary(2)).unwrap().scaled(HBAR * j),
            QubitThermalState::new(0.8, 4.0e13).unwrap().to_density_matrix(),
            2.0e-10,
            CouplingMode::Fixed,
        )
        .unwrap();
        GenericCollisionParams {
            spec,
            initial_system: QubitThermalState::new(-0.3, 9.0e13)
                .unwrap()
                .to_density_matrix(),
            settle_interactions: 300,
        }
    }

    #[test]
    fn empirical_decomposition_settles() {
        let registry = ModelRegistry::with_builtin();
        let model = registry
            .build("generic_hamiltonian", ModelParams::Generic(swap_params()))
            .unwrap();
        let v = 6.0e3;
        let d = model.decomposition(v).unwrap();
        // swap model: friction dies out at late times
        assert!(d.f_infinity.abs() < 1e-3 * d.f_transient.abs());
        let rows = model.trajectory(v, 3).unwrap();
        assert_relative_eq!(
            rows[0].friction,
            d.f_infinity + d.f_transient,
            max_relative = 1e-12
        );
        assert!(d.decay_rate.is_finite() && d.decay_rate > 0.0);
    }
}
