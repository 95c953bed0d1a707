//! Independent brute-force validators. These certify the analytic modules
//! before they are trusted: a full joint-unitary collision simulation for
//! the undamped swap family, and a Richardson ladder for the high-velocity
//! friction limit.
//!
//! The validators deliberately share nothing with the convex module beyond
//! the quantum primitives. The dissipative (`γ_A > 0`) retentions have no
//! more fundamental dynamics to simulate — they enter the models
//! phenomenologically — so the unitary oracle refuses them; their checks are
//! the damping-branch continuity and limit properties in the model family.

use crate::collision::{collide_once, CollisionSpec};
use crate::models::{local_hamiltonian, DampedSwapParams};
use crate::quantum::{
    evolve, expectation, partial_swap_unitary, partial_trace, DensityMatrix, Subsystem,
};
use crate::{Error, Result};

/// Friction series and system states from the exact joint-unitary evolution.
#[derive(Debug, Clone)]
pub struct BruteForceTrajectory {
    pub frictions: Vec<f64>,
    /// System state entering each interaction; one longer than `frictions`.
    pub system_states: Vec<DensityMatrix>,
}

/// Evolves the joint state with the partial-swap unitary
/// `U(δt) = cos(Jδt)·1 - i·sin(Jδt)·U_sw` generated by `H_sw = ħ·J·U_sw`
/// (the swap-inducing spin coupling, normalized so that diagonal states
/// retain `cos²(Jδt)` of themselves), traces out each side, and books the
/// energies against the local splittings `ħ·ω·σ_z`.
///
/// Unitary evolution has no dissipation channel, so `γ_A` must be zero.
pub fn brute_force_swap_trajectory(
    params: &DampedSwapParams,
    velocity: f64,
    interactions: usize,
) -> Result<BruteForceTrajectory> {
    params.validate()?;
    if params.gamma_ancilla != 0.0 {
        return Err(Error::DissipativeOracle(params.gamma_ancilla));
    }
    if !(velocity > 0.0) {
        return Err(Error::NonPositiveVelocity(velocity));
    }
    let dt = params.spacing / velocity;
    let j = params.coupling.rate_at(velocity);
    let u = partial_swap_unitary(j, dt, 2);
    let h_system = local_hamiltonian(params.system.gap);
    let h_ancilla = local_hamiltonian(params.ancilla.gap);
    let ancilla0 = params.ancilla.to_density_matrix();
    let e_ancilla0 = expectation(&h_ancilla, &ancilla0)?;

    let mut state = params.system.to_density_matrix();
    let mut e_system = expectation(&h_system, &state)?;
    let mut frictions = Vec::with_capacity(interactions);
    let mut system_states = Vec::with_capacity(interactions + 1);
    system_states.push(state.clone());
    for _ in 0..interactions {
        let joint = state.tensor(&ancilla0);
        let evolved = evolve(&u, &joint)?;
        let system_after = partial_trace(&evolved, Subsystem::First, (2, 2))?;
        let ancilla_after = partial_trace(&evolved, Subsystem::Second, (2, 2))?;
        let e_system_after = expectation(&h_system, &system_after)?;
        let de_s = e_system_after - e_system;
        let de_a = expectation(&h_ancilla, &ancilla_after)? - e_ancilla0;
        frictions.push((de_s + de_a) / params.spacing);
        state = system_after;
        e_system = e_system_after;
        system_states.push(state.clone());
    }
    Ok(BruteForceTrajectory {
        frictions,
        system_states,
    })
}

/// One rung of the high-velocity ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoRung {
    pub velocity: f64,
    /// `v·f_0(v)` at this rung.
    pub v_times_friction: f64,
}

/// Result of the numerical `lim v·f_0` extraction.
#[derive(Debug, Clone)]
pub struct ZenoLadderReport {
    /// Richardson-extrapolated limit.
    pub estimate: f64,
    pub rungs: Vec<ZenoRung>,
    /// `|v·f_0 - estimate|` per rung.
    pub residuals: Vec<f64>,
    /// Whether the residuals shrink over the final rungs. A flat tail flags
    /// a non-convergent ladder; no error is raised.
    pub converged: bool,
}

/// Numerically extracts `lim v·f_0` on a geometric velocity ladder using
/// two levels of Richardson extrapolation (ratio from the ladder itself;
/// low order is robust to the unknown tail exponent).
pub fn numeric_zeno_limit(
    spec: &CollisionSpec,
    system_state: &DensityMatrix,
    ladder: &[f64],
) -> Result<ZenoLadderReport> {
    if ladder.len() < 4 {
        return Err(Error::InvalidParameter(
            "Richardson ladder needs at least 4 rungs".into(),
        ));
    }
    let ratio = ladder[1] / ladder[0];
    if !(ratio > 1.0) {
        return Err(Error::InvalidParameter(
            "ladder must be ascending".into(),
        ));
    }
    for pair in ladder.windows(2) {
        if ((pair[1] / pair[0]) / ratio - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(
                "ladder must be geometric with a constant ratio".into(),
            ));
        }
    }

    let rungs: Vec<ZenoRung> = ladder
        .iter()
        .map(|&v| {
            Ok(ZenoRung {
                velocity: v,
                v_times_friction: v * collide_once(spec, system_state, v)?.friction,
            })
        })
        .collect::<Result<_>>()?;

    // g(v) = L + c/v + d/v² + ...: the first level removes 1/v, the second
    // removes 1/v².
    let g: Vec<f64> = rungs.iter().map(|r| r.v_times_friction).collect();
    let level1: Vec<f64> = g
        .windows(2)
        .map(|w| (ratio * w[1] - w[0]) / (ratio - 1.0))
        .collect();
    let r2 = ratio * ratio;
    let level2: Vec<f64> = level1
        .windows(2)
        .map(|w| (r2 * w[1] - w[0]) / (r2 - 1.0))
        .collect();
    let estimate = *level2.last().expect("ladder length checked");

    let residuals: Vec<f64> = g.iter().map(|&x| (x - estimate).abs()).collect();
    let tail = &residuals[residuals.len().saturating_sub(3)..];
    let scale = g.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1e-300);
    let converged = tail.windows(2).all(|w| w[1] <= w[0] * 1.01 + 1e-13 * scale);

    Ok(ZenoLadderReport {
        estimate,
        rungs,
        residuals,
        converged,
    })
}

/// Outcome of an analytic-vs-brute-force comparison. Produced on pass too.
///
/// `max_rel_error` is relative to the largest magnitude in the compared
/// series, so a geometrically dying tail does not divide by zero.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub n_points: usize,
    pub worst_case: String,
}

/// Certifies the convex closed form against the joint-unitary ground truth:
/// the system state at every step (elementwise) and the friction series
/// `f_n = f_∞ + f_tr·φⁿ`.
pub fn compare_convex_vs_brute(
    params: &DampedSwapParams,
    velocity: f64,
    interactions: usize,
) -> Result<ComparisonReport> {
    let brute = brute_force_swap_trajectory(params, velocity, interactions)?;
    let spec = params.to_convex_spec()?;
    let dt = params.spacing / velocity;
    let decomposition = spec.friction_decomposition(velocity)?;

    let friction_scale = brute
        .frictions
        .iter()
        .fold(
            (decomposition.f_infinity.abs() + decomposition.f_transient.abs()).max(1e-300),
            |m, &f| m.max(f.abs()),
        );

    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    let mut worst = String::from("no deviation");
    let mut n_points = 0usize;

    for (n, state) in brute.system_states.iter().enumerate() {
        let analytic = spec.system_state_at(dt, n as u32)?;
        let err = crate::quantum::max_abs(&(state.entries() - analytic.entries()));
        n_points += 1;
        if err > max_abs {
            max_abs = err;
            worst = format!("system state after interaction {n}");
        }
        max_rel = max_rel.max(err); // states are O(1); entrywise error is already relative
    }
    for (n, &f) in brute.frictions.iter().enumerate() {
        let analytic = spec.friction_at(velocity, n as u32)?;
        let err = (f - analytic).abs();
        n_points += 1;
        if err > max_abs {
            max_abs = err;
            worst = format!("friction at interaction {n}");
        }
        max_rel = max_rel.max(err / friction_scale);
    }

    Ok(ComparisonReport {
        max_abs_error: max_abs,
        max_rel_error: max_rel,
        n_points,
        worst_case: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collision::CouplingMode;
    use crate::constants::HBAR;
    use crate::models::{Coupling, VelocityRegime};
    use crate::quantum::{swap_unitary, HermitianOperator, QubitThermalState};

    fn undamped(j: f64, a_s: f64, a_a: f64, omega_s: f64, omega_a: f64) -> DampedSwapParams {
        DampedSwapParams {
            coupling: Coupling::Fixed { j },
            gamma_ancilla: 0.0,
            spacing: 2.0e-10,
            system: QubitThermalState::new(a_s, omega_s).unwrap(),
            ancilla: QubitThermalState::new(a_a, omega_a).unwrap(),
        }
    }

    #[test]
    fn zero_coupling_means_zero_friction() {
        let p = undamped(0.0, -0.4, 0.7, 9.0e13, 4.0e13);
        let run = brute_force_swap_trajectory(&p, 5.0e3, 10).unwrap();
        for f in run.frictions {
            assert!(f.abs() < 1e-25);
        }
    }

    #[test]
    fn equal_gaps_full_swap_conserves_energy() {
        let omega = 6.0e13;
        let p = undamped(1.5e13, -1.0, 1.0, omega, omega);
        // Jδt = π/2 per step
        let v = 2.0 * 1.5e13 * p.spacing / std::f64::consts::PI;
        let run = brute_force_swap_trajectory(&p, v, 5).unwrap();
        for f in run.frictions {
            assert!(f.abs() < 1e-12 * HBAR * omega / p.spacing);
        }
    }

    #[test]
    fn oracle_rejects_dissipation() {
        let mut p = undamped(1.5e13, 0.0, 0.5, 9.0e13, 4.0e13);
        p.gamma_ancilla = 1.0e12;
        assert!(matches!(
            brute_force_swap_trajectory(&p, 1.0e4, 3),
            Err(Error::DissipativeOracle(_))
        ));
    }

    #[test]
    fn detuned_quarter_swap_matches_closed_form() {
        // ω_S ≠ ω_A, Jδt = π/4: the series must reconstruct f_∞ + f_tr·φⁿ.
        let j = 1.5e13;
        let p = undamped(j, -0.3, 0.8, 9.0e13, 4.0e13);
        let v = 4.0 * j * p.spacing / std::f64::consts::PI;
        let report = compare_convex_vs_brute(&p, v, 60).unwrap();
        assert!(
            report.max_rel_error < 1e-10,
            "max rel {:e} ({})",
            report.max_rel_error,
            report.worst_case
        );
    }

    #[test]
    fn single_step_comparison_reduces_to_collide_once() {
        let p = undamped(1.5e13, -0.3, 0.8, 9.0e13, 4.0e13);
        let report = compare_convex_vs_brute(&p, 7.0e3, 1).unwrap();
        assert_eq!(report.n_points, 3); // two states + one friction value
        assert!(report.max_rel_error < 1e-12);
    }

    #[test]
    fn symmetric_polarizations_give_zero_friction_both_ways() {
        let p = undamped(1.5e13, 0.4, 0.4, 9.0e13, 4.0e13);
        let report = compare_convex_vs_brute(&p, 7.0e3, 30).unwrap();
        let brute = brute_force_swap_trajectory(&p, 7.0e3, 30).unwrap();
        assert!(brute.frictions.iter().all(|f| f.abs() < 1e-25));
        assert!(report.max_abs_error < 1e-13);
    }

    fn ladder(start: f64, rungs: usize) -> Vec<f64> {
        (0..rungs).map(|k| start * 2f64.powi(k as i32)).collect()
    }

    #[test]
    fn commuting_interaction_ladder_sits_at_roundoff() {
        let spec = CollisionSpec::new(
            HermitianOperator::pauli_z().scaled(HBAR * 3.0e13),
            HermitianOperator::pauli_z().scaled(HBAR * 1.0e13),
            HermitianOperator::pauli_z()
                .tensor(&HermitianOperator::pauli_z())
                .scaled(HBAR * 2.0e13),
            QubitThermalState::new(0.3, 1.0e13).unwrap().to_density_matrix(),
            2.0e-10,
            CouplingMode::Fixed,
        )
        .unwrap();
        let rho = QubitThermalState::new(-0.6, 3.0e13).unwrap().to_density_matrix();
        let report =
            numeric_zeno_limit(&spec, &rho, &ladder(10.0 * spec.zeno_speed(), 12)).unwrap();
        let scale = HBAR * 3.0e13 / 2.0e-10 * spec.zeno_speed();
        assert!(report.estimate.abs() < 1e-10 * scale);
    }

    #[test]
    fn swap_with_diagonal_states_has_vanishing_limit_and_inverse_v_residual() {
        let spec = CollisionSpec::new(
            HermitianOperator::pauli_z().scaled(HBAR * 9.0e13),
            HermitianOperator::pauli_z().scaled(HBAR * 4.0e13),
            HermitianOperator::new(swap_unitary(2)).unwrap().scaled(HBAR * 1.5e13),
            QubitThermalState::new(0.8, 4.0e13).unwrap().to_density_matrix(),
            2.0e-10,
            CouplingMode::Fixed,
        )
        .unwrap();
        let rho = QubitThermalState::new(-0.3, 9.0e13).unwrap().to_density_matrix();
        let report =
            numeric_zeno_limit(&spec, &rho, &ladder(10.0 * spec.zeno_speed(), 12)).unwrap();
        assert!(report.converged);
        let typical = report.rungs[0].v_times_friction.abs();
        assert!(report.estimate.abs() < 1e-6 * typical);
        // friction is O(v⁻²), so v·f residuals halve per rung
        for w in report.residuals.windows(2).take(8) {
            let shrink = w[0] / w[1];
            assert!(shrink > 1.9, "shrink factor {shrink}");
        }
        // matches the commutator route
        let analytic = crate::collision::zeno_leading_coefficient(&spec, &rho).unwrap();
        assert!((report.estimate - analytic).abs() < 1e-6 * typical);
    }

    #[test]
    fn undamped_swap_series_matches_model_reconstruction() {
        // ω_S ≠ ω_A, several velocities: brute force vs f_∞ + f_tr·φⁿ from
        // the family's closed form.
        let j = 1.5e13;
        let p = undamped(j, -0.2, 0.9, 9.0e13, 4.0e13);
        let limits = crate::models::damped_swap_limits(&p, VelocityRegime::SmallV).unwrap();
        let _ = limits; // closed form exists; main check below
        for v in [3.0e3, 9.0e3, 4.0e4] {
            let brute = brute_force_swap_trajectory(&p, v, 50).unwrap();
            let d = crate::models::damped_swap_friction(&p, v).unwrap();
            let dt = p.spacing / v;
            let phi = crate::models::damped_swap_retentions(&p, dt).unwrap().0;
            let scale = d.f_infinity.abs() + d.f_transient.abs();
            for (n, &f) in brute.frictions.iter().enumerate() {
                let model = d.f_infinity + d.f_transient * phi.powi(n as i32);
                assert!(
                    (f - model).abs() <= 1e-10 * scale,
                    "n = {n}, v = {v}: {:e}",
                    (f - model).abs() / scale
                );
            }
        }
    }
}
