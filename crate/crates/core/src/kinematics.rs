//! Constant-force stopping arithmetic for the reference deceleration
//! example: what a given friction force does to a moving atom.

/// Stopping report for a constant decelerating force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinematicsReport {
    /// Deceleration `F/m`, m/s².
    pub acceleration: f64,
    /// `v₀/a`, s; infinite when the force vanishes.
    pub stop_time: f64,
    /// `v₀²/(2a)`, m; infinite when the force vanishes.
    pub stop_distance: f64,
    /// Stopping distance in units of the interaction radius.
    pub radii_crossed: f64,
}

/// Stopping report for force `F` (N) on mass `m` (kg) from speed `v₀` (m/s),
/// with distances also expressed in units of `radius` (m).
pub fn stopping_report(force: f64, mass: f64, initial_speed: f64, radius: f64) -> KinematicsReport {
    let acceleration = force / mass;
    let (stop_time, stop_distance) = if acceleration > 0.0 {
        (
            initial_speed / acceleration,
            initial_speed * initial_speed / (2.0 * acceleration),
        )
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    KinematicsReport {
        acceleration,
        stop_time,
        stop_distance,
        radii_crossed: stop_distance / radius,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ATOMIC_MASS_UNIT;
    use approx::assert_relative_eq;

    #[test]
    fn nitrogen_reference_numbers() {
        // 0.1 nN on 14 amu from 10 km/s: a ≈ 4.30e15 m/s², stop in 2.33 ps
        // over 11.6 nm, crossing about 50 radii of 0.23 nm.
        let r = stopping_report(0.1e-9, 14.0 * ATOMIC_MASS_UNIT, 10.0e3, 0.23e-9);
        assert_relative_eq!(r.acceleration, 4.30e15, max_relative = 1e-3);
        assert_relative_eq!(r.stop_time, 2.325e-12, max_relative = 1e-3);
        assert_relative_eq!(r.stop_distance, 11.6e-9, max_relative = 3e-3);
        assert!((r.radii_crossed - 50.5).abs() < 0.1);
    }

    #[test]
    fn zero_force_never_stops() {
        let r = stopping_report(0.0, 14.0 * ATOMIC_MASS_UNIT, 10.0e3, 0.23e-9);
        assert!(r.stop_time.is_infinite());
        assert!(r.stop_distance.is_infinite());
    }
}
