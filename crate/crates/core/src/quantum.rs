//! Dense complex linear algebra for small Hilbert spaces: density matrices,
//! Hermitian operators, tensor products, partial traces, unitary evolution,
//! and the partial-swap unitary family.
//!
//! Basis convention, fixed project-wide: computational basis with the first
//! (system) factor on the slow index and the second (ancilla) factor on the
//! fast index, so a joint basis state is `|s, a⟩ ↦ s·d_A + a`. Partial-trace
//! correctness depends on this single convention.
//!
//! All types are immutable values after construction; operations are pure.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Dense complex matrix used throughout.
pub type CMatrix = DMatrix<Complex64>;

/// Hermiticity gate for states and operators.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Allowed deviation of a state's trace from one.
pub const TRACE_TOL: f64 = 1e-12;
/// Floor on the smallest eigenvalue of a state.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;
/// Gate on `max |U†U - 1|` before conjugating a state.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Largest imaginary part tolerated in an expectation value.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest entrywise modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Largest deviation from Hermiticity, `max |m[i][j] - conj(m[j][i])|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|c| c * 0.5)
}

fn check_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Kronecker product with the first factor on the slow index.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Which factor of a bipartite space to keep when tracing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Partial trace of a raw joint-space matrix over one factor.
///
/// `dims = (d1, d2)` are the factor dimensions; the joint dimension must be
/// their product.
pub fn partial_trace_matrix(
    m: &CMatrix,
    keep: Subsystem,
    dims: (usize, usize),
) -> Result<CMatrix> {
    let (d1, d2) = dims;
    let n = check_square(m)?;
    if n != d1 * d2 {
        return Err(Error::DimensionMismatch {
            expected: d1 * d2,
            found: n,
        });
    }
    match keep {
        Subsystem::First => {
            let mut out = CMatrix::zeros(d1, d1);
            for i in 0..d1 {
                for j in 0..d1 {
                    let mut s = Complex64::default();
                    for k in 0..d2 {
                        s += m[(i * d2 + k, j * d2 + k)];
                    }
                    out[(i, j)] = s;
                }
            }
            Ok(out)
        }
        Subsystem::Second => {
            let mut out = CMatrix::zeros(d2, d2);
            for i in 0..d2 {
                for j in 0..d2 {
                    let mut s = Complex64::default();
                    for k in 0..d1 {
                        s += m[(k * d2 + i, k * d2 + j)];
                    }
                    out[(i, j)] = s;
                }
            }
            Ok(out)
        }
    }
}

/// A finite-dimensional quantum state: trace one, Hermitian, positive
/// semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validates the invariants, then stores the symmetrized matrix.
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        let defect = hermiticity_defect(&entries);
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: defect });
        }
        let entries = symmetrize(&entries);
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::TraceNotUnit { trace: trace.re });
        }
        let min = hermitian_eigenvalues(&entries)[0];
        if min < EIGENVALUE_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                min_eigenvalue: min,
            });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Diagonal state from populations (must sum to one).
    pub fn from_diagonal(populations: &[f64]) -> Result<Self> {
        let entries = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            populations.len(),
            populations.iter().map(|&p| Complex64::new(p, 0.0)),
        ));
        Self::new(entries)
    }

    /// Pure state `|ψ⟩⟨ψ|` from (normalized) amplitudes.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !(norm2.is_finite() && norm2 > 0.0) {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let d = amplitudes.len();
        let mut entries = CMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                entries[(i, j)] = amplitudes[i] * amplitudes[j].conj() / norm2;
            }
        }
        Self::new(entries)
    }

    /// Computational basis state `|k⟩⟨k|`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        let mut entries = CMatrix::zeros(dim, dim);
        entries[(k, k)] = ONE;
        Self { entries }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim).map(|c| c / dim as f64),
        }
    }

    /// Convex combination `w·a + (1-w)·b`.
    pub fn mix(a: &Self, b: &Self, weight_a: f64) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        if !(0.0..=1.0).contains(&weight_a) {
            return Err(Error::InvalidParameter(format!(
                "mixing weight {weight_a} outside [0, 1]"
            )));
        }
        let entries = a.entries.map(|c| c * weight_a) + b.entries.map(|c| c * (1.0 - weight_a));
        Ok(Self { entries })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            entries: kron(&self.entries, &other.entries),
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.entries)[0]
    }

    /// Ginibre-style random state: `G G† / Tr(G G†)` with standard complex
    /// normal entries. Covers the full state space including near-singular
    /// states.
    pub fn random_ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let g = CMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let gg = &g * g.adjoint();
        let trace = gg.trace().re;
        Self {
            entries: symmetrize(&gg.map(|c| c / trace)),
        }
    }
}

/// A Hermitian operator; carries joules when used as a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    entries: CMatrix,
}

impl HermitianOperator {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        let defect = hermiticity_defect(&entries);
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: defect });
        }
        Ok(Self {
            entries: symmetrize(&entries),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            entries: CMatrix::zeros(dim, dim),
        }
    }

    pub fn from_diagonal(values: &[f64]) -> Self {
        Self {
            entries: CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                values.len(),
                values.iter().map(|&v| Complex64::new(v, 0.0)),
            )),
        }
    }

    pub fn pauli_x() -> Self {
        Self {
            entries: CMatrix::from_row_slice(2, 2, &[0.0.into(), ONE, ONE, 0.0.into()]),
        }
    }

    pub fn pauli_y() -> Self {
        Self {
            entries: CMatrix::from_row_slice(2, 2, &[0.0.into(), -I, I, 0.0.into()]),
        }
    }

    pub fn pauli_z() -> Self {
        Self::from_diagonal(&[1.0, -1.0])
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            entries: self.entries.map(|c| c * factor),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self {
            entries: &self.entries + &other.entries,
        })
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            entries: kron(&self.entries, &other.entries),
        }
    }

    /// Largest eigenvalue magnitude (operator norm).
    pub fn operator_norm(&self) -> f64 {
        hermitian_eigenvalues(&self.entries)
            .iter()
            .fold(0.0f64, |m, &v| m.max(v.abs()))
    }
}

/// `Tr(A ρ)`. Errors if the imaginary part exceeds the gate; that signals
/// broken Hermiticity upstream.
pub fn expectation(a: &HermitianOperator, rho: &DensityMatrix) -> Result<f64> {
    if a.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: rho.dim(),
        });
    }
    let tr = (a.entries() * rho.entries()).trace();
    if tr.im.abs() >= EXPECTATION_IMAG_TOL {
        return Err(Error::ComplexExpectation { imaginary: tr.im });
    }
    Ok(tr.re)
}

/// Reduced state of one factor of a bipartite state.
pub fn partial_trace(
    joint: &DensityMatrix,
    keep: Subsystem,
    dims: (usize, usize),
) -> Result<DensityMatrix> {
    let reduced = partial_trace_matrix(joint.entries(), keep, dims)?;
    DensityMatrix::new(reduced)
}

/// `U ρ U†`. Rejects `U` with `max |U†U - 1| > 1e-10`.
pub fn evolve(u: &CMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let n = check_square(u)?;
    if n != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: n,
        });
    }
    let defect = max_abs(&(u.adjoint() * u - CMatrix::identity(n, n)));
    if defect > UNITARITY_TOL {
        return Err(Error::NotUnitary { deviation: defect });
    }
    DensityMatrix::new(u * rho.entries() * u.adjoint())
}

/// The swap unitary on `d ⊗ d`: `U_sw |s, a⟩ = |a, s⟩`. Self-adjoint and
/// involutive.
pub fn swap_unitary(d: usize) -> CMatrix {
    let mut u = CMatrix::zeros(d * d, d * d);
    for s in 0..d {
        for a in 0..d {
            u[(a * d + s, s * d + a)] = ONE;
        }
    }
    u
}

/// Partial-swap unitary `cos(Jt)·1 - i·sin(Jt)·U_sw`, the evolution generated
/// by `H_sw = ħ·J·U_sw` for a time `t`. At `Jt = π/2` it is `-i·U_sw`, a full
/// swap up to phase.
pub fn partial_swap_unitary(j: f64, t: f64, d: usize) -> CMatrix {
    let angle = j * t;
    let c = Complex64::new(angle.cos(), 0.0);
    let s = I * angle.sin();
    CMatrix::identity(d * d, d * d).map(|x| x * c) - swap_unitary(d).map(|x| x * s)
}

/// `exp(-i·phase·H)` via Hermitian eigendecomposition — exact at any phase
/// for the small matrices used here, and unitary to machine precision.
///
/// For evolution under a Hamiltonian `H` for a time `t`, pass `phase = t/ħ`.
pub fn evolution_unitary(h: &HermitianOperator, phase: f64) -> CMatrix {
    let eig = SymmetricEigen::new(h.entries().clone());
    let diag = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| (-I * e * phase).exp()));
    &eig.eigenvectors * diag * eig.eigenvectors.adjoint()
}

/// A qubit in a thermal (diagonal) state `(1 + a·σ_z)/2` with polarization
/// `a ∈ [-1, 1]` and angular gap `ω`. `a = -1` is the ground state; `a > 0`
/// is population-inverted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitThermalState {
    pub polarization: f64,
    pub gap: f64,
}

impl QubitThermalState {
    pub fn new(polarization: f64, gap: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&polarization) {
            return Err(Error::InvalidParameter(format!(
                "polarization {polarization} outside [-1, 1]"
            )));
        }
        Ok(Self { polarization, gap })
    }

    /// `(1 + a·σ_z)/2`, diagonal, trace one.
    pub fn to_density_matrix(self) -> DensityMatrix {
        let a = self.polarization;
        DensityMatrix::from_diagonal(&[(1.0 + a) / 2.0, (1.0 - a) / 2.0])
            .expect("thermal state populations are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qubit_pair() -> (DensityMatrix, DensityMatrix) {
        let rho = DensityMatrix::from_diagonal(&[0.7, 0.3]).unwrap();
        let sigma = DensityMatrix::from_diagonal(&[0.2, 0.8]).unwrap();
        (rho, sigma)
    }

    fn max_diff(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
        max_abs(&(a.entries() - b.entries()))
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = DensityMatrix::maximally_mixed(2);
        let t = i2.tensor(&i2);
        assert_eq!(t.dim(), 4);
        assert!(max_diff(&t, &DensityMatrix::maximally_mixed(4)) < 1e-15);
    }

    #[test]
    fn tensor_of_basis_states() {
        // |0⟩⟨0| ⊗ |1⟩⟨1| = |01⟩⟨01|, basis index 1 of 4
        let t = DensityMatrix::basis_state(2, 0).tensor(&DensityMatrix::basis_state(2, 1));
        assert!(max_diff(&t, &DensityMatrix::basis_state(4, 1)) < 1e-15);
    }

    #[test]
    fn tensor_of_pauli_z_pair() {
        let zz = HermitianOperator::pauli_z().tensor(&HermitianOperator::pauli_z());
        let expected = HermitianOperator::from_diagonal(&[1.0, -1.0, -1.0, 1.0]);
        assert!(max_abs(&(zz.entries() - expected.entries())) < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_recovers_factors() {
        let (rho, sigma) = qubit_pair();
        let joint = rho.tensor(&sigma);
        let left = partial_trace(&joint, Subsystem::First, (2, 2)).unwrap();
        let right = partial_trace(&joint, Subsystem::Second, (2, 2)).unwrap();
        assert!(max_diff(&left, &rho) < 1e-14);
        assert!(max_diff(&right, &sigma) < 1e-14);
    }

    #[test]
    fn bell_state_marginal_is_maximally_mixed() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let phi_plus = DensityMatrix::pure(&[
            Complex64::new(inv, 0.0),
            Complex64::default(),
            Complex64::default(),
            Complex64::new(inv, 0.0),
        ])
        .unwrap();
        let marginal = partial_trace(&phi_plus, Subsystem::First, (2, 2)).unwrap();
        assert!(max_diff(&marginal, &DensityMatrix::maximally_mixed(2)) < 1e-14);
    }

    #[test]
    fn full_swap_exchanges_marginals() {
        let (rho, sigma) = qubit_pair();
        let joint = rho.tensor(&sigma);
        let swapped = evolve(&swap_unitary(2), &joint).unwrap();
        assert!(max_diff(&swapped, &sigma.tensor(&rho)) < 1e-14);
        let kept = partial_trace(&swapped, Subsystem::First, (2, 2)).unwrap();
        assert!(max_diff(&kept, &sigma) < 1e-13);
    }

    #[test]
    fn partial_swap_is_unitary_and_full_at_quarter_period() {
        for d in [2usize, 3] {
            let u = partial_swap_unitary(1.3, 0.7, d);
            let defect = max_abs(&(u.adjoint() * &u - CMatrix::identity(d * d, d * d)));
            assert!(defect <= 1e-12, "unitarity defect {defect:e}");
        }
        // Jt = π/2 gives -i·U_sw
        let u = partial_swap_unitary(1.0, std::f64::consts::FRAC_PI_2, 2);
        let expected = swap_unitary(2).map(|x| x * -I);
        assert!(max_abs(&(u - expected)) < 1e-15);
        // Jt = 0 gives the identity
        let u0 = partial_swap_unitary(1.0, 0.0, 2);
        assert!(max_abs(&(u0 - CMatrix::identity(4, 4))) < 1e-15);
    }

    #[test]
    fn half_swap_mixes_diagonal_marginals_equally() {
        // Jt = π/4: cos² = sin² = 1/2, both reduced states are 50/50 mixtures
        let (rho, sigma) = qubit_pair();
        let u = partial_swap_unitary(1.0, std::f64::consts::FRAC_PI_4, 2);
        let evolved = evolve(&u, &rho.tensor(&sigma)).unwrap();
        let reduced = partial_trace(&evolved, Subsystem::First, (2, 2)).unwrap();
        let expected = DensityMatrix::mix(&rho, &sigma, 0.5).unwrap();
        assert!(max_diff(&reduced, &expected) < 1e-14);
    }

    #[test]
    fn partial_swap_at_third_period_gives_convex_mix() {
        // Jt = π/3 on diagonal (thermal) qubits: marginal weights cos², sin²
        let (rho, sigma) = qubit_pair();
        let jt = std::f64::consts::FRAC_PI_3;
        let u = partial_swap_unitary(1.0, jt, 2);
        let evolved = evolve(&u, &rho.tensor(&sigma)).unwrap();
        let reduced_s = partial_trace(&evolved, Subsystem::First, (2, 2)).unwrap();
        let reduced_a = partial_trace(&evolved, Subsystem::Second, (2, 2)).unwrap();
        let w = jt.cos().powi(2);
        assert!(max_diff(&reduced_s, &DensityMatrix::mix(&rho, &sigma, w).unwrap()) < 1e-12);
        assert!(max_diff(&reduced_a, &DensityMatrix::mix(&sigma, &rho, w).unwrap()) < 1e-12);
    }

    #[test]
    fn partial_swap_cross_term_for_noncommuting_states() {
        // With coherent inputs the reduced state picks up the commutator
        // cross term -i·cos·sin·Tr_A([U_sw, ρ⊗σ]).
        let rho = DensityMatrix::pure(&[
            Complex64::new(0.8, 0.0),
            Complex64::new(0.36, 0.48),
        ])
        .unwrap();
        let sigma = DensityMatrix::from_diagonal(&[0.9, 0.1]).unwrap();
        let jt = 0.4;
        let u = partial_swap_unitary(1.0, jt, 2);
        let evolved = evolve(&u, &rho.tensor(&sigma)).unwrap();
        let reduced = partial_trace_matrix(evolved.entries(), Subsystem::First, (2, 2)).unwrap();

        let joint = rho.tensor(&sigma);
        let usw = swap_unitary(2);
        let comm = &usw * joint.entries() - joint.entries() * &usw;
        let cross = partial_trace_matrix(&comm, Subsystem::First, (2, 2)).unwrap();
        let expected = rho.entries().map(|c| c * jt.cos().powi(2))
            + sigma.entries().map(|c| c * jt.sin().powi(2))
            - cross.map(|c| c * I * jt.cos() * jt.sin());
        assert!(max_abs(&(reduced - expected)) < 1e-12);
    }

    #[test]
    fn evolve_requires_unitary() {
        let (rho, _) = qubit_pair();
        let bad = CMatrix::identity(2, 2).map(|c| c * 1.1);
        assert!(matches!(
            evolve(&bad, &rho),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn evolution_unitary_matches_partial_swap_closed_form() {
        let h = HermitianOperator::new(swap_unitary(2)).unwrap().scaled(1.7);
        let u = evolution_unitary(&h, 0.9);
        let expected = partial_swap_unitary(1.7, 0.9, 2);
        assert!(max_abs(&(u - expected)) < 1e-13);
    }

    #[test]
    fn expectation_examples() {
        let (rho, _) = qubit_pair();
        let id = HermitianOperator::identity(2);
        assert_abs_diff_eq!(expectation(&id, &rho).unwrap(), 1.0, epsilon = 1e-14);

        // ⟨ħω σ_z/2⟩ on a thermal state is ħω·a/2
        let a = 0.37;
        let omega = 2.1e13;
        let h = HermitianOperator::pauli_z().scaled(crate::constants::HBAR * omega / 2.0);
        let thermal = QubitThermalState::new(a, omega).unwrap().to_density_matrix();
        let e = expectation(&h, &thermal).unwrap();
        assert_abs_diff_eq!(
            e,
            crate::constants::HBAR * omega * a / 2.0,
            epsilon = 1e-12 * crate::constants::HBAR * omega
        );

        // ⟨σ_x⟩ on |+⟩ is 1
        let plus = DensityMatrix::pure(&[
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ])
        .unwrap();
        assert_abs_diff_eq!(
            expectation(&HermitianOperator::pauli_x(), &plus).unwrap(),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn thermal_state_endpoints() {
        let ground = QubitThermalState::new(-1.0, 1.0).unwrap().to_density_matrix();
        assert!(max_diff(&ground, &DensityMatrix::basis_state(2, 1)) < 1e-15);
        let inverted = QubitThermalState::new(1.0, 1.0).unwrap().to_density_matrix();
        assert!(max_diff(&inverted, &DensityMatrix::basis_state(2, 0)) < 1e-15);
        assert!(QubitThermalState::new(1.5, 1.0).is_err());
    }

    #[test]
    fn random_states_satisfy_invariants_and_roundtrip_partial_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7a3d_1f2b);
        for _ in 0..100 {
            for (d1, d2) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
                let rho = DensityMatrix::random_ginibre(d1, &mut rng);
                let sigma = DensityMatrix::random_ginibre(d2, &mut rng);
                assert!((rho.entries().trace().re - 1.0).abs() < 1e-14);
                assert!(rho.min_eigenvalue() > -1e-12);
                let joint = rho.tensor(&sigma);
                let back = partial_trace(&joint, Subsystem::First, (d1, d2)).unwrap();
                assert!(max_diff(&back, &rho) < 1e-14);
                let back2 = partial_trace(&joint, Subsystem::Second, (d1, d2)).unwrap();
                assert!(max_diff(&back2, &sigma) < 1e-14);
            }
        }
    }

    #[test]
    fn evolve_preserves_trace_and_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x00c0_ffee);
        for _ in 0..50 {
            let rho = DensityMatrix::random_ginibre(4, &mut rng);
            let h = {
                let g = CMatrix::from_fn(4, 4, |_, _| {
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                });
                HermitianOperator::new((&g + g.adjoint()).map(|c| c * 0.5)).unwrap()
            };
            let u = evolution_unitary(&h, 0.37);
            let evolved = evolve(&u, &rho).unwrap();
            assert!((evolved.entries().trace().re - 1.0).abs() < 1e-13);
            assert!(evolved.min_eigenvalue() >= -1e-10);
        }
    }
}
