//! The generic repeated-interaction engine: per-collision state updates,
//! energy/work/friction accounting, and the high-velocity (Zeno) analysis.
//!
//! Every `δt = δx/v` the moving system meets a fresh ancilla prepared in
//! `ρ_A(0)`. One interaction conjugates the product state by
//! `U(δt) = exp(-i·H·δt/ħ)` with `H = H_S + H_A + H_SA`, traces out each
//! side, and books the energy changes. The work done by the agent holding
//! the speed fixed closes the balance `δE_S + δE_A + δW = 0`, and the
//! friction over the interaction is `f_n = -δW/δx = (δE_S + δE_A)/δx`.
//!
//! `collide_once` and the `zeno_*` functions are pure; `run_trajectory` is
//! sequential in `n` but independent velocities may run in parallel.

use crate::constants::HBAR;
use crate::quantum::{
    evolution_unitary, evolve, expectation, partial_trace, CMatrix, DensityMatrix,
    HermitianOperator, Subsystem,
};
use crate::{Error, Result};

/// How the joint generator depends on the drag velocity.
///
/// `Fixed` uses `H` as given, so `U(δt) = exp(-i·H·δt/ħ)` and nothing happens
/// in no time. `VelocityScaled` multiplies the full joint Hamiltonian by
/// `v·(1 s/m)`, which makes `U(δt) = exp(-i·H·(1 s/m)·δx/ħ)` independent of
/// `δt`: a finite amount of evolution survives the `v → ∞` limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingMode {
    Fixed,
    VelocityScaled,
}

/// The full specification of one collision family.
#[derive(Debug, Clone)]
pub struct CollisionSpec {
    pub h_system: HermitianOperator,
    pub h_ancilla: HermitianOperator,
    /// Interaction term on the joint space (system slow, ancilla fast).
    pub h_interaction: HermitianOperator,
    pub ancilla_initial: DensityMatrix,
    /// Lattice spacing δx in meters.
    pub spacing: f64,
    pub coupling_mode: CouplingMode,
}

impl CollisionSpec {
    pub fn new(
        h_system: HermitianOperator,
        h_ancilla: HermitianOperator,
        h_interaction: HermitianOperator,
        ancilla_initial: DensityMatrix,
        spacing: f64,
        coupling_mode: CouplingMode,
    ) -> Result<Self> {
        let joint_dim = h_system.dim() * h_ancilla.dim();
        if h_interaction.dim() != joint_dim {
            return Err(Error::DimensionMismatch {
                expected: joint_dim,
                found: h_interaction.dim(),
            });
        }
        if ancilla_initial.dim() != h_ancilla.dim() {
            return Err(Error::DimensionMismatch {
                expected: h_ancilla.dim(),
                found: ancilla_initial.dim(),
            });
        }
        if !(spacing > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lattice spacing must be positive, got {spacing}"
            )));
        }
        Ok(Self {
            h_system,
            h_ancilla,
            h_interaction,
            ancilla_initial,
            spacing,
            coupling_mode,
        })
    }

    pub fn system_dim(&self) -> usize {
        self.h_system.dim()
    }

    pub fn ancilla_dim(&self) -> usize {
        self.h_ancilla.dim()
    }

    /// `H_S ⊗ 1 + 1 ⊗ H_A + H_SA` on the joint space.
    pub fn joint_hamiltonian(&self) -> HermitianOperator {
        let id_s = HermitianOperator::identity(self.system_dim());
        let id_a = HermitianOperator::identity(self.ancilla_dim());
        self.h_system
            .tensor(&id_a)
            .add(&id_s.tensor(&self.h_ancilla))
            .and_then(|h| h.add(&self.h_interaction))
            .expect("dims validated at construction")
    }

    /// Velocity scale `2·δx·‖H‖/ħ` above which one collision produces little
    /// evolution. Only meaningful for `CouplingMode::Fixed`.
    pub fn zeno_speed(&self) -> f64 {
        2.0 * self.spacing * self.joint_hamiltonian().operator_norm() / HBAR
    }

    /// The joint unitary for one interaction at velocity `v`.
    pub fn interaction_unitary(&self, velocity: f64) -> Result<CMatrix> {
        if !(velocity > 0.0) {
            return Err(Error::NonPositiveVelocity(velocity));
        }
        let h = self.joint_hamiltonian();
        let phase = match self.coupling_mode {
            CouplingMode::Fixed => self.spacing / velocity / HBAR,
            // H ↦ v·(1 s/m)·H, so the phase is δx·(1 s/m)/ħ regardless of v.
            CouplingMode::VelocityScaled => self.spacing / HBAR,
        };
        Ok(evolution_unitary(&h, phase))
    }
}

/// Books from one interaction. `δE_S + δE_A + δW = 0` by construction and
/// `f_n = -δW/δx`.
#[derive(Debug, Clone)]
pub struct InteractionRecord {
    /// Interaction index, counted from zero.
    pub index: usize,
    /// Change of the system's internal energy, J.
    pub delta_e_system: f64,
    /// Change of the ancilla's internal energy, J.
    pub delta_e_ancilla: f64,
    /// Work done by the external agent, J.
    pub work: f64,
    /// Average friction over this interaction, N.
    pub friction: f64,
    pub system_state_after: DensityMatrix,
}

/// One collision of the system with a fresh ancilla at drag velocity `v`.
pub fn collide_once(
    spec: &CollisionSpec,
    system_state: &DensityMatrix,
    velocity: f64,
) -> Result<InteractionRecord> {
    if system_state.dim() != spec.system_dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.system_dim(),
            found: system_state.dim(),
        });
    }
    let u = spec.interaction_unitary(velocity)?;
    let dims = (spec.system_dim(), spec.ancilla_dim());
    let joint = system_state.tensor(&spec.ancilla_initial);
    let evolved = evolve(&u, &joint)?;
    let system_after = partial_trace(&evolved, Subsystem::First, dims)?;
    let ancilla_after = partial_trace(&evolved, Subsystem::Second, dims)?;

    let delta_e_system =
        expectation(&spec.h_system, &system_after)? - expectation(&spec.h_system, system_state)?;
    let delta_e_ancilla = expectation(&spec.h_ancilla, &ancilla_after)?
        - expectation(&spec.h_ancilla, &spec.ancilla_initial)?;
    let work = -(delta_e_system + delta_e_ancilla);
    let friction = -work / spec.spacing;

    Ok(InteractionRecord {
        index: 0,
        delta_e_system,
        delta_e_ancilla,
        work,
        friction,
        system_state_after: system_after,
    })
}

/// `n` successive collisions, threading the system state; the ancilla is
/// fresh each step.
pub fn run_trajectory(
    spec: &CollisionSpec,
    initial_system: &DensityMatrix,
    velocity: f64,
    interactions: usize,
) -> Result<Vec<InteractionRecord>> {
    if interactions == 0 {
        return Err(Error::InvalidParameter(
            "trajectory needs at least one interaction".into(),
        ));
    }
    // The unitary does not depend on n; build it once.
    let u = spec.interaction_unitary(velocity)?;
    let dims = (spec.system_dim(), spec.ancilla_dim());
    let e_ancilla_initial = expectation(&spec.h_ancilla, &spec.ancilla_initial)?;

    let mut records = Vec::with_capacity(interactions);
    let mut state = initial_system.clone();
    let mut e_system = expectation(&spec.h_system, &state)?;
    for n in 0..interactions {
        let joint = state.tensor(&spec.ancilla_initial);
        let evolved = evolve(&u, &joint)?;
        let system_after = partial_trace(&evolved, Subsystem::First, dims)?;
        let ancilla_after = partial_trace(&evolved, Subsystem::Second, dims)?;
        let e_system_after = expectation(&spec.h_system, &system_after)?;
        let delta_e_system = e_system_after - e_system;
        let delta_e_ancilla = expectation(&spec.h_ancilla, &ancilla_after)? - e_ancilla_initial;
        let work = -(delta_e_system + delta_e_ancilla);
        records.push(InteractionRecord {
            index: n,
            delta_e_system,
            delta_e_ancilla,
            work,
            friction: -work / spec.spacing,
            system_state_after: system_after.clone(),
        });
        state = system_after;
        e_system = e_system_after;
    }
    Ok(records)
}

/// The `v → ∞` limit of `v·f_n` for a velocity-independent generator:
/// `⟨(i/ħ)[H_SA, H_S + H_A]⟩` on `ρ_S ⊗ ρ_A(0)`.
///
/// Friction at high speed is set by how the interaction fails to conserve
/// the local energies. Velocity-scaled couplings violate the regularity
/// assumptions behind the limit and are rejected.
pub fn zeno_leading_coefficient(
    spec: &CollisionSpec,
    system_state: &DensityMatrix,
) -> Result<f64> {
    if spec.coupling_mode == CouplingMode::VelocityScaled {
        return Err(Error::VelocityScaledZeno);
    }
    let id_s = HermitianOperator::identity(spec.system_dim());
    let id_a = HermitianOperator::identity(spec.ancilla_dim());
    let h_local = spec
        .h_system
        .tensor(&id_a)
        .add(&id_s.tensor(&spec.h_ancilla))?;
    let commutator =
        spec.h_interaction.entries() * h_local.entries() - h_local.entries() * spec.h_interaction.entries();
    // i·[H_SA, H_loc] is Hermitian, so the expectation is real.
    let i_comm = HermitianOperator::new(
        commutator.map(|c| c * num_complex::Complex64::new(0.0, 1.0 / HBAR)),
    )?;
    let joint = system_state.tensor(&spec.ancilla_initial);
    expectation(&i_comm, &joint)
}

/// The velocity scale `2·r·E/ħ` above which a crossing of duration
/// `δt = 2r/v` produces only perturbatively small evolution at interaction
/// energy `E`.
pub fn zeno_critical_speed(radius: f64, energy: f64) -> f64 {
    2.0 * radius * energy / HBAR
}
