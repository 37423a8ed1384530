// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! The Λ model of a driven quantum-dot trion.
//!
//! Basis order is fixed: |s⟩ = 0 (electron ground orbital), |p⟩ = 1
//! (excited orbital), |t⟩ = 2 (trion). Laser ω₁ drives |s⟩–|t⟩ with Rabi
//! frequency Ω₁, laser ω₂ drives |p⟩–|t⟩ with Ω₂.
//!
//! In the two-frequency rotating frame (rotating-wave approximation) the
//! Hamiltonian is time independent:
//!
//!   H = −Δ₁|t⟩⟨t| − (Δ₁−Δ₂)|p⟩⟨p|
//!       + (Ω₁/2)(|t⟩⟨s| + |s⟩⟨t|) + (Ω₂/2)(|t⟩⟨p| + |p⟩⟨t|)
//!
//! with Δ = ω_laser − ω_transition, so a red-detuned laser has Δ < 0 and
//! two-photon (Raman) resonance sits at Δ₁ = Δ₂.
//!
//! Dissipation has exactly four channels: radiative decay of |t⟩ into |s⟩
//! at Γ_r(1−b) and into |p⟩ at Γ_r·b, orbital relaxation |p⟩→|s⟩ at Γ_p,
//! and pure dephasing of |p⟩ as the channel |p⟩⟨p| at rate 2γ_p (so the
//! coherences ρ_sp and ρ_pt pick up an extra decay γ_p).

use crate::lindblad::{build_liouvillian, steady_state, DensityMatrix, DissipationChannel, Liouvillian};
use crate::operators::{eig_hermitian, HilbertSpace};
use crate::units::ghz;
use crate::{C64, CMat, Result, SimError};

/// Basis index of |s⟩.
pub const IDX_S: usize = 0;
/// Basis index of |p⟩.
pub const IDX_P: usize = 1;
/// Basis index of |t⟩.
pub const IDX_T: usize = 2;

/// The three-state Hilbert space (s, p, t).
pub fn space() -> HilbertSpace {
    HilbertSpace::new(["s", "p", "t"]).expect("static labels are valid")
}

/// Physical parameters of the Λ model. All rates and angular frequencies
/// in rad/ns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrionParams {
    /// Rabi frequency Ω₁ of the drive on |s⟩–|t⟩.
    pub omega1_rabi: f64,
    /// Rabi frequency Ω₂ of the drive on |p⟩–|t⟩.
    pub omega2_rabi: f64,
    /// Detuning Δ₁ of laser ω₁ from the fundamental transition.
    pub delta1: f64,
    /// Detuning Δ₂ of laser ω₂ from the Auger transition.
    pub delta2: f64,
    /// Total radiative decay rate Γ_r of |t⟩.
    pub gamma_r: f64,
    /// Branching fraction b ∈ [0, 1) of radiative decay into |p⟩.
    pub branching_b: f64,
    /// Orbital relaxation rate Γ_p of |p⟩→|s⟩.
    pub gamma_p_relax: f64,
    /// Pure dephasing rate γ_p of |p⟩.
    pub gamma_p_deph: f64,
}

impl TrionParams {
    /// Rates of the measured dot: Γ_r = 2π×0.50 GHz, Γ_p = 2π×9.3 GHz,
    /// γ_p = 2π×8.8 GHz, b = 0.01. Drives and detunings start at zero.
    pub fn qd1() -> Self {
        Self {
            omega1_rabi: 0.0,
            omega2_rabi: 0.0,
            delta1: 0.0,
            delta2: 0.0,
            gamma_r: ghz(0.50),
            branching_b: 0.01,
            gamma_p_relax: ghz(9.3),
            gamma_p_deph: ghz(8.8),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega1_rabi", self.omega1_rabi),
            ("omega2_rabi", self.omega2_rabi),
            ("delta1", self.delta1),
            ("delta2", self.delta2),
            ("gamma_r", self.gamma_r),
            ("branching_b", self.branching_b),
            ("gamma_p_relax", self.gamma_p_relax),
            ("gamma_p_deph", self.gamma_p_deph),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(SimError::InvalidArgument(format!("{name} must be finite")));
            }
        }
        for (name, v) in [
            ("omega1_rabi", self.omega1_rabi),
            ("omega2_rabi", self.omega2_rabi),
            ("gamma_p_relax", self.gamma_p_relax),
            ("gamma_p_deph", self.gamma_p_deph),
        ] {
            if v < 0.0 {
                return Err(SimError::InvalidArgument(format!(
                    "{name} must be ≥ 0, got {v}"
                )));
            }
        }
        if self.gamma_r <= 0.0 {
            return Err(SimError::InvalidArgument(format!(
                "gamma_r must be > 0, got {}",
                self.gamma_r
            )));
        }
        if !(0.0..1.0).contains(&self.branching_b) {
            return Err(SimError::InvalidArgument(format!(
                "branching_b must lie in [0, 1), got {}",
                self.branching_b
            )));
        }
        Ok(())
    }
}

/// Emission channel selector for intensities, spectra and correlations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmissionChannel {
    /// |t⟩ → |s⟩, the fundamental line.
    Fundamental,
    /// |t⟩ → |p⟩, the red-shifted satellite line.
    Auger,
}

impl EmissionChannel {
    /// Dimensionless jump operator of the channel.
    pub fn jump_operator(&self) -> CMat {
        let mut m = CMat::zeros((3, 3));
        match self {
            EmissionChannel::Fundamental => m[[IDX_S, IDX_T]] = C64::new(1.0, 0.0),
            EmissionChannel::Auger => m[[IDX_P, IDX_T]] = C64::new(1.0, 0.0),
        }
        m
    }

    /// Radiative rate of the channel in rad/ns.
    pub fn rate(&self, p: &TrionParams) -> f64 {
        match self {
            EmissionChannel::Fundamental => p.gamma_r * (1.0 - p.branching_b),
            EmissionChannel::Auger => p.gamma_r * p.branching_b,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EmissionChannel::Fundamental => "fundamental",
            EmissionChannel::Auger => "auger",
        }
    }
}

/// Rotating-frame Hamiltonian of the two-laser Λ system.
pub fn hamiltonian(p: &TrionParams) -> CMat {
    let mut h = CMat::zeros((3, 3));
    h[[IDX_T, IDX_T]] = C64::new(-p.delta1, 0.0);
    h[[IDX_P, IDX_P]] = C64::new(-(p.delta1 - p.delta2), 0.0);
    h[[IDX_T, IDX_S]] = C64::new(p.omega1_rabi / 2.0, 0.0);
    h[[IDX_S, IDX_T]] = C64::new(p.omega1_rabi / 2.0, 0.0);
    h[[IDX_T, IDX_P]] = C64::new(p.omega2_rabi / 2.0, 0.0);
    h[[IDX_P, IDX_T]] = C64::new(p.omega2_rabi / 2.0, 0.0);
    h
}

/// The four dissipation channels of the model, in fixed order:
/// fundamental emission, Auger emission, orbital relaxation, pure
/// dephasing.
pub fn channels(p: &TrionParams) -> Vec<DissipationChannel> {
    let ch = |m: CMat, rate: f64| DissipationChannel { operator: m, rate };
    vec![
        ch(
            EmissionChannel::Fundamental.jump_operator(),
            p.gamma_r * (1.0 - p.branching_b),
        ),
        ch(EmissionChannel::Auger.jump_operator(), p.gamma_r * p.branching_b),
        ch(
            {
                let mut m = CMat::zeros((3, 3));
                m[[IDX_S, IDX_P]] = C64::new(1.0, 0.0);
                m
            },
            p.gamma_p_relax,
        ),
        ch(
            {
                let mut m = CMat::zeros((3, 3));
                m[[IDX_P, IDX_P]] = C64::new(1.0, 0.0);
                m
            },
            2.0 * p.gamma_p_deph,
        ),
    ]
}

/// Superoperator of the model.
pub fn liouvillian(p: &TrionParams) -> Result<Liouvillian> {
    p.validate()?;
    build_liouvillian(&hamiltonian(p), &channels(p))
}

/// Steady state of the model.
pub fn steady_density(p: &TrionParams) -> Result<DensityMatrix> {
    steady_state(&liouvillian(p)?)
}

/// Steady-state photon rate of the fundamental line, Γ_r(1−b)·ρ_tt, in
/// photons/ns.
pub fn fluorescence_intensity(p: &TrionParams) -> Result<f64> {
    let rho = steady_density(p)?;
    Ok(EmissionChannel::Fundamental.rate(p) * rho.population(IDX_T))
}

/// Steady-state photon rate of the Auger line, Γ_r·b·ρ_tt, in photons/ns.
pub fn auger_intensity(p: &TrionParams) -> Result<f64> {
    let rho = steady_density(p)?;
    Ok(EmissionChannel::Auger.rate(p) * rho.population(IDX_T))
}

/// Dressed-state splitting √(Ω₁²+Δ₁²) of the singly-driven |s⟩–|t⟩
/// transition. Only defined for single-laser dressing (Ω₂ = 0).
pub fn dressed_splitting(p: &TrionParams) -> Result<f64> {
    if p.omega2_rabi != 0.0 {
        return Err(SimError::InvalidArgument(format!(
            "dressed splitting is defined for single-laser dressing (Ω₂ = 0), got Ω₂ = {}",
            p.omega2_rabi
        )));
    }
    Ok((p.omega1_rabi * p.omega1_rabi + p.delta1 * p.delta1).sqrt())
}

/// Same splitting obtained from the eigenvalues of the driven (s, t)
/// block; used to cross-check [`dressed_splitting`].
pub fn dressed_splitting_from_eigenvalues(p: &TrionParams) -> Result<f64> {
    if p.omega2_rabi != 0.0 {
        return Err(SimError::InvalidArgument(
            "dressed splitting is defined for single-laser dressing (Ω₂ = 0)".into(),
        ));
    }
    let mut block = CMat::zeros((2, 2));
    block[[0, 1]] = C64::new(p.omega1_rabi / 2.0, 0.0);
    block[[1, 0]] = C64::new(p.omega1_rabi / 2.0, 0.0);
    block[[1, 1]] = C64::new(-p.delta1, 0.0);
    let (vals, _) = eig_hermitian(&block)?;
    Ok(vals[1] - vals[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::{propagate, steady_state, DensityMatrix};
    use approx::assert_abs_diff_eq;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hamiltonian_zero_params_is_zero() {
        let p = TrionParams {
            omega1_rabi: 0.0,
            omega2_rabi: 0.0,
            delta1: 0.0,
            delta2: 0.0,
            gamma_r: 1.0,
            branching_b: 0.0,
            gamma_p_relax: 0.0,
            gamma_p_deph: 0.0,
        };
        assert_eq!(crate::operators::max_abs(&hamiltonian(&p)), 0.0);
    }

    #[test]
    fn hamiltonian_structure() {
        let p = TrionParams {
            omega1_rabi: 2.0,
            omega2_rabi: 3.0,
            delta1: 0.5,
            delta2: -0.7,
            ..TrionParams::qd1()
        };
        let h = hamiltonian(&p);
        assert_eq!(h[[IDX_T, IDX_T]], C64::new(-0.5, 0.0));
        assert_eq!(h[[IDX_P, IDX_P]], C64::new(-(0.5 - -0.7), 0.0));
        assert_eq!(h[[IDX_S, IDX_T]], C64::new(1.0, 0.0));
        assert_eq!(h[[IDX_P, IDX_T]], C64::new(1.5, 0.0));
        assert_eq!(h[[IDX_S, IDX_P]], C64::new(0.0, 0.0));
        assert!(crate::operators::is_hermitian(&h, 0.0));
    }

    #[test]
    fn two_photon_resonance_degenerates_lower_states() {
        let p = TrionParams {
            delta1: 1.3,
            delta2: 1.3,
            ..TrionParams::qd1()
        };
        let h = hamiltonian(&p);
        // |s⟩ at 0 and |p⟩ at −(Δ₁−Δ₂) = 0 are degenerate in the frame
        assert_eq!(h[[IDX_S, IDX_S]], C64::new(0.0, 0.0));
        assert_eq!(h[[IDX_P, IDX_P]], C64::new(0.0, 0.0));
    }

    #[test]
    fn resonant_single_laser_block_splits_by_rabi() {
        // Ω₂ = 0, Δ₁ = 0: the driven (s,t) block splits by Ω₁
        let omega1 = ghz(31.9);
        let p = TrionParams {
            omega1_rabi: omega1,
            ..TrionParams::qd1()
        };
        let from_eig = dressed_splitting_from_eigenvalues(&p).unwrap();
        assert_abs_diff_eq!(from_eig, omega1, epsilon = 1e-10 * omega1);
        assert_abs_diff_eq!(dressed_splitting(&p).unwrap(), omega1, epsilon = 0.0);
    }

    #[test]
    fn four_channels_with_expected_rates() {
        let p = TrionParams::qd1();
        let chs = channels(&p);
        assert_eq!(chs.len(), 4);
        assert_abs_diff_eq!(chs[0].rate, ghz(0.50) * 0.99, epsilon = 1e-15);
        assert_abs_diff_eq!(chs[1].rate, ghz(0.50) * 0.01, epsilon = 1e-15);
        assert_abs_diff_eq!(chs[2].rate, ghz(9.3), epsilon = 1e-15);
        assert_abs_diff_eq!(chs[3].rate, 2.0 * ghz(8.8), epsilon = 1e-15);
        // branching identity is exact
        assert_eq!(chs[0].rate + chs[1].rate, p.gamma_r);
    }

    #[test]
    fn zero_branching_kills_auger_channel() {
        let p = TrionParams {
            branching_b: 0.0,
            ..TrionParams::qd1()
        };
        let chs = channels(&p);
        assert_eq!(chs[1].rate, 0.0);
        assert_eq!(chs[0].rate, p.gamma_r);
    }

    #[test]
    fn no_drive_relaxes_to_ground() {
        let p = TrionParams::qd1();
        let rho = steady_density(&p).unwrap();
        assert_abs_diff_eq!(rho.population(IDX_S), 1.0, epsilon = 1e-12);
        assert_eq!(fluorescence_intensity(&p).unwrap(), 0.0);
    }

    #[test]
    fn two_level_limit_matches_analytic_steady_state() {
        // b = 0, Ω₂ = 0: |p⟩ decouples and ρ_tt is the optical-Bloch value
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..25 {
            let p = TrionParams {
                omega1_rabi: rng.random_range(0.05..12.0),
                delta1: rng.random_range(-8.0..8.0),
                branching_b: 0.0,
                ..TrionParams::qd1()
            };
            let rho = steady_density(&p).unwrap();
            let (om, de, ga) = (p.omega1_rabi, p.delta1, p.gamma_r);
            let analytic = (om * om / 4.0) / (de * de + ga * ga / 4.0 + om * om / 2.0);
            assert_abs_diff_eq!(rho.population(IDX_T), analytic, epsilon = 1e-10);
            let fluor = fluorescence_intensity(&p).unwrap();
            assert_abs_diff_eq!(fluor, ga * analytic, epsilon = 1e-10 * ga);
        }
    }

    #[test]
    fn dip_condition_matches_frozen_golden() {
        // golden ratio pinned by the long-time propagation oracle
        let on = TrionParams {
            omega1_rabi: ghz(0.08),
            omega2_rabi: ghz(3.2),
            ..TrionParams::qd1()
        };
        let off = TrionParams {
            omega2_rabi: 0.0,
            ..on
        };
        let ratio = fluorescence_intensity(&on).unwrap() / fluorescence_intensity(&off).unwrap();
        assert_abs_diff_eq!(ratio, 0.337020452629, epsilon = 1e-9);
        // the second laser removes roughly two thirds of the signal
        assert!(ratio > 0.2 && ratio < 0.4);
    }

    #[test]
    fn auger_to_fundamental_ratio_is_branching_odds() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let p = TrionParams {
                omega1_rabi: rng.random_range(0.3..10.0),
                omega2_rabi: rng.random_range(0.0..10.0),
                delta1: rng.random_range(-5.0..5.0),
                delta2: rng.random_range(-5.0..5.0),
                branching_b: rng.random_range(0.001..0.3),
                ..TrionParams::qd1()
            };
            let f = fluorescence_intensity(&p).unwrap();
            let a = auger_intensity(&p).unwrap();
            let odds = p.branching_b / (1.0 - p.branching_b);
            assert_abs_diff_eq!(a / f, odds, epsilon = 1e-12 * (1.0 + odds));
        }
    }

    #[test]
    fn auger_intensity_zero_at_zero_branching() {
        let p = TrionParams {
            omega1_rabi: 2.0,
            branching_b: 0.0,
            ..TrionParams::qd1()
        };
        assert_eq!(auger_intensity(&p).unwrap(), 0.0);
    }

    #[test]
    fn saturated_auger_intensity_approaches_half_branch_rate() {
        let p = TrionParams {
            omega1_rabi: 100.0 * ghz(0.50),
            branching_b: 0.05,
            ..TrionParams::qd1()
        };
        let a = auger_intensity(&p).unwrap();
        let limit = p.gamma_r * p.branching_b / 2.0;
        assert!((a - limit).abs() / limit < 0.02, "a = {a}, limit = {limit}");
    }

    #[test]
    fn dressed_splitting_examples() {
        let q = TrionParams::qd1();
        for &(o1, d1) in &[(ghz(31.9), 0.0), (ghz(67.7), 0.0), (0.0, ghz(-2.0)), (3.0, 4.0)] {
            let p = TrionParams {
                omega1_rabi: o1,
                delta1: d1,
                ..q
            };
            let expected = (o1 * o1 + d1 * d1).sqrt();
            assert_abs_diff_eq!(dressed_splitting(&p).unwrap(), expected, epsilon = 0.0);
            assert_abs_diff_eq!(
                dressed_splitting_from_eigenvalues(&p).unwrap(),
                expected,
                epsilon = 1e-9 * (1.0 + expected)
            );
        }
        let bad = TrionParams {
            omega2_rabi: 1.0,
            ..q
        };
        assert!(dressed_splitting(&bad).is_err());
    }

    #[test]
    fn populations_sum_to_one_at_steady_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..20 {
            let p = TrionParams {
                omega1_rabi: rng.random_range(0.1..30.0),
                omega2_rabi: rng.random_range(0.0..30.0),
                delta1: rng.random_range(-20.0..20.0),
                delta2: rng.random_range(-20.0..20.0),
                gamma_r: rng.random_range(0.5..20.0),
                branching_b: rng.random_range(0.0..0.5),
                gamma_p_relax: rng.random_range(0.1..100.0),
                gamma_p_deph: rng.random_range(0.1..100.0),
            };
            let rho = steady_density(&p).unwrap();
            let total = rho.population(IDX_S) + rho.population(IDX_P) + rho.population(IDX_T);
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn dark_state_traps_population_at_two_photon_resonance() {
        // coherent population trapping: no dephasing, no relaxation, b = 0
        for &fac1 in &[0.1, 1.0, 10.0] {
            for &fac2 in &[0.1, 1.0, 10.0] {
                let gr = ghz(0.50);
                let p = TrionParams {
                    omega1_rabi: fac1 * gr,
                    omega2_rabi: fac2 * gr,
                    delta1: ghz(0.7),
                    delta2: ghz(0.7),
                    gamma_r: gr,
                    branching_b: 0.0,
                    gamma_p_relax: 0.0,
                    gamma_p_deph: 0.0,
                };
                let rho = steady_density(&p).unwrap();
                assert!(
                    rho.population(IDX_T) <= 1e-6,
                    "rho_tt = {} at Ω₁={fac1}Γ, Ω₂={fac2}Γ",
                    rho.population(IDX_T)
                );
            }
        }
    }

    #[test]
    fn fluorescence_symmetric_under_joint_detuning_flip() {
        let base = TrionParams {
            omega1_rabi: ghz(0.27),
            omega2_rabi: ghz(2.1),
            ..TrionParams::qd1()
        };
        for i in 0..5 {
            for j in 0..5 {
                let d1 = ghz(-1.0 + 0.5 * i as f64);
                let d2 = ghz(-4.0 + 2.0 * j as f64);
                let plus = fluorescence_intensity(&TrionParams {
                    delta1: d1,
                    delta2: d2,
                    ..base
                })
                .unwrap();
                let minus = fluorescence_intensity(&TrionParams {
                    delta1: -d1,
                    delta2: -d2,
                    ..base
                })
                .unwrap();
                assert_abs_diff_eq!(plus, minus, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn dip_is_monotone_in_second_drive() {
        let mut prev = f64::INFINITY;
        for i in 0..=12 {
            let p = TrionParams {
                omega1_rabi: ghz(0.08),
                omega2_rabi: ghz(3.2) * i as f64 / 12.0,
                ..TrionParams::qd1()
            };
            let f = fluorescence_intensity(&p).unwrap();
            assert!(f <= prev + 1e-12, "fluorescence rose at step {i}");
            prev = f;
        }
    }

    #[test]
    fn steady_state_cross_checked_by_propagation_at_dip() {
        let p = TrionParams {
            omega1_rabi: ghz(0.08),
            omega2_rabi: ghz(3.2),
            ..TrionParams::qd1()
        };
        let l = liouvillian(&p).unwrap();
        let direct = steady_state(&l).unwrap();
        let from_ground = DensityMatrix::pure_state(3, IDX_S).unwrap();
        let evolved = propagate(&from_ground, &l, &[250.0], 1e-10)
            .unwrap()
            .pop()
            .unwrap();
        let dist = (evolved.matrix() - direct.matrix())
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        assert!(dist <= 1e-7, "distance {dist:.3e}");
    }

    #[test]
    fn validate_rejects_bad_parameters() {
        let mut p = TrionParams::qd1();
        p.branching_b = 1.0;
        assert!(p.validate().is_err());
        p = TrionParams::qd1();
        p.gamma_r = 0.0;
        assert!(p.validate().is_err());
        p = TrionParams::qd1();
        p.omega1_rabi = -1.0;
        assert!(p.validate().is_err());
        p = TrionParams::qd1();
        p.delta1 = f64::NAN;
        assert!(p.validate().is_err());
    }
}
