// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Coherence-free population rate equations for the same Λ system.
//!
//! Adiabatic elimination of the optical coherences turns each drive into a
//! Lorentzian stimulated rate W(Δ) acting symmetrically between the two
//! levels it couples. The linewidth of the |s⟩–|t⟩ drive is Γ_r; for
//! |p⟩–|t⟩ it is Γ_r + Γ_p + 2γ_p. Because W₂ depends on Δ₂ only through
//! Δ₂², every rate-model profile in Δ₂ is exactly even — the contrast
//! against the master equation, whose detuned dips are not.

use crate::operators::solve_linear;
use crate::trion::TrionParams;
use crate::{C64, CMat, CVec, Result, SimError};

/// Classical occupation probabilities of the three levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePopulations {
    pub n_s: f64,
    pub n_p: f64,
    pub n_t: f64,
}

/// Lorentzian stimulated rate W = (Ω²/2)·(γ/2) / (Δ² + (γ/2)²).
pub fn stimulated_rate(omega_rabi: f64, delta: f64, linewidth: f64) -> Result<f64> {
    if !(linewidth > 0.0 && linewidth.is_finite()) {
        return Err(SimError::InvalidArgument(format!(
            "linewidth must be > 0, got {linewidth}"
        )));
    }
    let hw = linewidth / 2.0;
    Ok((omega_rabi * omega_rabi / 2.0) * hw / (delta * delta + hw * hw))
}

/// Steady state of the balance equations with stimulated rates W₁ (s↔t),
/// W₂ (p↔t), decays Γ_r(1−b) t→s, Γ_r·b t→p and relaxation Γ_p p→s.
pub fn rate_steady_state(p: &TrionParams) -> Result<RatePopulations> {
    p.validate()?;
    let w1 = stimulated_rate(p.omega1_rabi, p.delta1, p.gamma_r)?;
    let w2 = stimulated_rate(
        p.omega2_rabi,
        p.delta2,
        p.gamma_r + p.gamma_p_relax + 2.0 * p.gamma_p_deph,
    )?;
    let gr_s = p.gamma_r * (1.0 - p.branching_b);
    let gr_p = p.gamma_r * p.branching_b;
    let gp = p.gamma_p_relax;
    // balance rows for n_s and n_p plus the normalization row
    let re = |x: f64| C64::new(x, 0.0);
    let mut a = CMat::zeros((3, 3));
    a[[0, 0]] = re(-w1);
    a[[0, 1]] = re(gp);
    a[[0, 2]] = re(w1 + gr_s);
    a[[1, 0]] = re(0.0);
    a[[1, 1]] = re(-(w2 + gp));
    a[[1, 2]] = re(w2 + gr_p);
    a[[2, 0]] = re(1.0);
    a[[2, 1]] = re(1.0);
    a[[2, 2]] = re(1.0);
    let mut rhs = CVec::zeros(3);
    rhs[2] = re(1.0);
    let n = solve_linear(&a, &rhs).map_err(|e| match e {
        SimError::SingularMatrix { .. } => {
            SimError::DegenerateSteadyState("rate balance matrix is singular".into())
        }
        other => other,
    })?;
    Ok(RatePopulations {
        n_s: n[0].re,
        n_p: n[1].re,
        n_t: n[2].re,
    })
}

/// Rate-model fluorescence Γ_r(1−b)·n_t in photons/ns.
pub fn rate_fluorescence(p: &TrionParams) -> Result<f64> {
    let n = rate_steady_state(p)?;
    Ok(p.gamma_r * (1.0 - p.branching_b) * n.n_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trion::fluorescence_intensity;
    use crate::units::ghz;
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn stimulated_rate_basics() {
        assert_eq!(stimulated_rate(0.0, 1.0, 2.0).unwrap(), 0.0);
        // peak value Ω²/γ at Δ = 0
        assert_abs_diff_eq!(stimulated_rate(2.0, 0.0, 4.0).unwrap(), 1.0, epsilon = 1e-15);
        assert!(stimulated_rate(1.0, 0.0, 0.0).is_err());
        assert!(stimulated_rate(1.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn stimulated_rate_is_even_in_detuning() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let om = rng.random_range(0.0..10.0);
            let de = rng.random_range(0.0..20.0);
            let lw = rng.random_range(0.1..30.0);
            assert_eq!(
                stimulated_rate(om, de, lw).unwrap(),
                stimulated_rate(om, -de, lw).unwrap()
            );
        }
    }

    #[test]
    fn no_drive_yields_ground_population() {
        let n = rate_steady_state(&TrionParams::qd1()).unwrap();
        assert_eq!((n.n_s, n.n_p, n.n_t), (1.0, 0.0, 0.0));
    }

    #[test]
    fn fluxes_balance_at_steady_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let p = TrionParams {
                omega1_rabi: rng.random_range(0.1..10.0),
                omega2_rabi: rng.random_range(0.0..10.0),
                delta1: rng.random_range(-5.0..5.0),
                delta2: rng.random_range(-5.0..5.0),
                ..TrionParams::qd1()
            };
            let w1 = stimulated_rate(p.omega1_rabi, p.delta1, p.gamma_r).unwrap();
            let w2 = stimulated_rate(
                p.omega2_rabi,
                p.delta2,
                p.gamma_r + p.gamma_p_relax + 2.0 * p.gamma_p_deph,
            )
            .unwrap();
            let n = rate_steady_state(&p).unwrap();
            let ds = -w1 * (n.n_s - n.n_t)
                + p.gamma_r * (1.0 - p.branching_b) * n.n_t
                + p.gamma_p_relax * n.n_p;
            let dp = -w2 * (n.n_p - n.n_t) + p.gamma_r * p.branching_b * n.n_t
                - p.gamma_p_relax * n.n_p;
            let dt = w1 * (n.n_s - n.n_t) + w2 * (n.n_p - n.n_t) - p.gamma_r * n.n_t;
            assert!(ds.abs() <= 1e-12 && dp.abs() <= 1e-12 && dt.abs() <= 1e-12);
            assert_abs_diff_eq!(n.n_s + n.n_p + n.n_t, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rate_profile_is_exactly_even_in_delta2() {
        let base = TrionParams {
            omega1_rabi: ghz(0.27),
            omega2_rabi: ghz(2.1),
            delta1: ghz(0.5),
            ..TrionParams::qd1()
        };
        for i in 1..40 {
            let d2 = ghz(0.5 * i as f64);
            let plus = rate_fluorescence(&TrionParams { delta2: d2, ..base }).unwrap();
            let minus = rate_fluorescence(&TrionParams { delta2: -d2, ..base }).unwrap();
            assert_eq!(plus, minus);
        }
    }

    #[test]
    fn master_equation_approaches_rate_model_under_heavy_dephasing() {
        // coherences killed: γ_p = 100·Γ_p
        let p = TrionParams {
            omega1_rabi: ghz(0.27),
            omega2_rabi: ghz(2.1),
            gamma_p_deph: 100.0 * ghz(9.3),
            ..TrionParams::qd1()
        };
        let master = fluorescence_intensity(&p).unwrap();
        let rate = rate_fluorescence(&p).unwrap();
        assert!(
            (master - rate).abs() / rate < 0.05,
            "master {master}, rate {rate}"
        );
    }
}
