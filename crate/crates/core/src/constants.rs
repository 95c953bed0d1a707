//! Physical constants (SI) and the unit conventions used by the model
//! families and the CLI.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;

/// One electronvolt in joules (exact, 2019 SI).
pub const ELECTRON_VOLT: f64 = 1.602176634e-19;

/// Unified atomic mass unit in kilograms (CODATA 2022).
pub const ATOMIC_MASS_UNIT: f64 = 1.66053906892e-27;

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 2.99792458e8;

pub const NANOMETER: f64 = 1e-9;

pub const FEMTOSECOND: f64 = 1e-15;

/// "THz" in configs and figure captions means an angular rate of 1e12 rad/s.
/// The conversion E = 1e-20 J = 62 meV = 95 ħ·THz only holds with this
/// reading.
pub const TERAHERTZ: f64 = 1e12;

/// Angular frequency (rad/s) of a level splitting given as an energy in eV.
pub fn ev_to_angular(ev: f64) -> f64 {
    ev * ELECTRON_VOLT / HBAR
}
