// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Unit conversions. Internal unit for rates and angular frequencies is
//! rad/ns; user-facing configuration uses linear GHz.

/// 2π.
pub const TAU: f64 = std::f64::consts::TAU;

/// Linear GHz → angular rad/ns. Exactly ×2π.
pub fn ghz(linear_ghz: f64) -> f64 {
    TAU * linear_ghz
}

/// Angular rad/ns → linear GHz. Exactly ÷2π.
pub fn to_ghz(angular: f64) -> f64 {
    angular / TAU
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        for &x in &[0.08, 0.5, 3.2, 9.3, 31.9, 67.7] {
            assert_eq!(to_ghz(ghz(x)), x);
        }
    }

    #[test]
    fn gamma_r_is_pi() {
        // 2π × 0.50 GHz stores as π rad/ns
        assert!((ghz(0.50) - std::f64::consts::PI).abs() < 1e-15);
    }
}
