//! Simulation and analysis of the friction felt by a small quantum system
//! dragged at fixed speed over a chain of identically prepared ancillas.
//!
//! The system meets a fresh ancilla every `δt = δx/v`. Each interaction
//! exchanges internal energy between the system, the ancilla, and the agent
//! holding the speed fixed; the friction over one interaction is
//! `f_n = (δE_S,n + δE_A,n)/δx`. The crate provides
//!
//! * [`quantum`] — dense complex linear algebra for small Hilbert spaces
//!   (density matrices, tensor products, partial traces, unitaries),
//! * [`collision`] — the generic repeated-interaction engine with full
//!   energy/work accounting and the high-velocity (Zeno) analysis,
//! * [`convex`] — one-dimensional convex collision models with the exact
//!   `f_n = f_∞ + f_tr·φ_S(δt)ⁿ` decomposition and its asymptotic regimes,
//! * [`models`] — the damped partial-swap and entangle–disentangle model
//!   families with closed-form friction, plus a runtime model registry,
//! * [`oracle`] — brute-force joint-unitary validators that certify the
//!   analytic fast paths before they are trusted,
//! * [`kinematics`] — reference stopping-distance arithmetic.

pub mod collision;
pub mod constants;
pub mod convex;
mod error;
pub mod kinematics;
pub mod models;
pub mod oracle;
pub mod quantum;

pub use error::{Error, Result};
