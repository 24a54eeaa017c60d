//! Unit conventions and conversion helpers.
//!
//! Internal convention: angular frequencies in rad/s, lengths in metres,
//! areas in m^2, powers in watts. Interfaces that read better in MHz,
//! micrometres, centimetres or microwatts convert at the boundary with
//! the helpers below.

/// 2*pi, used pervasively for cycle <-> angular conversions.
pub const TWO_PI: f64 = std::f64::consts::TAU;

/// Reduced Planck constant, J*s.
pub const HBAR: f64 = 1.0545718e-34;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.99792458e8;

/// Convert a cycle frequency in MHz to an angular frequency in rad/s.
#[inline]
pub fn mhz_to_rad_s(f_mhz: f64) -> f64 {
    TWO_PI * 1.0e6 * f_mhz
}

/// Convert an angular frequency in rad/s to a cycle frequency in MHz.
#[inline]
pub fn rad_s_to_mhz(omega: f64) -> f64 {
    omega / (TWO_PI * 1.0e6)
}

/// Convert an angular frequency in rad/s to a cycle frequency in Hz.
#[inline]
pub fn rad_s_to_hz(omega: f64) -> f64 {
    omega / TWO_PI
}

/// Convert micrometres to metres.
#[inline]
pub fn um_to_m(x_um: f64) -> f64 {
    x_um * 1.0e-6
}

/// Convert centimetres to metres.
#[inline]
pub fn cm_to_m(x_cm: f64) -> f64 {
    x_cm * 1.0e-2
}

/// Convert a number density in cm^-3 to m^-3.
#[inline]
pub fn per_cm3_to_per_m3(n: f64) -> f64 {
    n * 1.0e6
}

/// Convert microwatts to watts.
#[inline]
pub fn uw_to_w(p_uw: f64) -> f64 {
    p_uw * 1.0e-6
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        assert_eq!(rad_s_to_mhz(mhz_to_rad_s(150.0)), 150.0);
        assert_eq!(rad_s_to_hz(TWO_PI), 1.0);
        assert!((um_to_m(50.0) - 5.0e-5).abs() < 1.0e-19);
        assert!((cm_to_m(1.75) - 1.75e-2).abs() < 1.0e-16);
    }
}
