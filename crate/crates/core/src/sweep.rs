// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps, dip metrics and Rabi-frequency calibration.
//!
//! Sweeps are a parallel map over grid points with a deterministic gather:
//! shuffling evaluation order (or changing the thread count) never changes
//! the output values.

use crate::numeric::{linear_interp, parabola_vertex};
use crate::rate::rate_fluorescence;
use crate::trion::{auger_intensity, fluorescence_intensity, TrionParams};
use crate::{par, Result, SimError};
use ndarray::Array2;

/// A sweepable scalar field of [`TrionParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamField {
    Omega1,
    Omega2,
    Delta1,
    Delta2,
    GammaR,
    BranchingB,
    GammaPRelax,
    GammaPDeph,
}

impl ParamField {
    /// Parse a field name as it appears in configuration files.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "omega1_rabi" | "omega1" => Ok(Self::Omega1),
            "omega2_rabi" | "omega2" => Ok(Self::Omega2),
            "delta1" => Ok(Self::Delta1),
            "delta2" => Ok(Self::Delta2),
            "gamma_r" => Ok(Self::GammaR),
            "branching_b" | "branching" => Ok(Self::BranchingB),
            "gamma_p_relax" | "gamma_p" => Ok(Self::GammaPRelax),
            "gamma_p_deph" | "gamma_p_dephasing" => Ok(Self::GammaPDeph),
            other => Err(SimError::UnknownField(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Omega1 => "omega1_rabi",
            Self::Omega2 => "omega2_rabi",
            Self::Delta1 => "delta1",
            Self::Delta2 => "delta2",
            Self::GammaR => "gamma_r",
            Self::BranchingB => "branching_b",
            Self::GammaPRelax => "gamma_p_relax",
            Self::GammaPDeph => "gamma_p_deph",
        }
    }

    pub fn apply(&self, p: &mut TrionParams, value: f64) {
        match self {
            Self::Omega1 => p.omega1_rabi = value,
            Self::Omega2 => p.omega2_rabi = value,
            Self::Delta1 => p.delta1 = value,
            Self::Delta2 => p.delta2 = value,
            Self::GammaR => p.gamma_r = value,
            Self::BranchingB => p.branching_b = value,
            Self::GammaPRelax => p.gamma_p_relax = value,
            Self::GammaPDeph => p.gamma_p_deph = value,
        }
    }
}

/// One sweep axis: which field to vary and the values it takes (internal
/// units, rad/ns for frequencies and rates).
#[derive(Debug, Clone)]
pub struct AxisSpec {
    pub field: ParamField,
    pub values: Vec<f64>,
}

impl AxisSpec {
    pub fn new(field_name: &str, values: Vec<f64>) -> Result<Self> {
        let field = ParamField::parse(field_name)?;
        if values.is_empty() {
            return Err(SimError::InvalidArgument(format!(
                "axis '{field_name}' has no values"
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(SimError::InvalidArgument(format!(
                "axis '{field_name}' contains non-finite values"
            )));
        }
        Ok(Self { field, values })
    }
}

/// Steady-state observable evaluated on sweep grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// Master-equation fundamental-line photon rate.
    Fluorescence,
    /// Master-equation Auger-line photon rate.
    Auger,
    /// Rate-equation fundamental-line photon rate.
    RateFluorescence,
}

impl Observable {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "fluorescence" => Ok(Self::Fluorescence),
            "auger" => Ok(Self::Auger),
            "rate_fluorescence" => Ok(Self::RateFluorescence),
            other => Err(SimError::UnknownField(format!("observable '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Fluorescence => "fluorescence",
            Self::Auger => "auger",
            Self::RateFluorescence => "rate_fluorescence",
        }
    }

    fn eval(&self, p: &TrionParams) -> Result<f64> {
        match self {
            Self::Fluorescence => fluorescence_intensity(p),
            Self::Auger => auger_intensity(p),
            Self::RateFluorescence => rate_fluorescence(p),
        }
    }
}

/// Rectangular grid of steady-state observables with axis metadata.
/// `values[[i, j]]` belongs to `axis1.values[i]` and `axis2.values[j]`
/// (the second index is 0 for 1-D sweeps).
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub axis1: AxisSpec,
    pub axis2: Option<AxisSpec>,
    pub values: Array2<f64>,
    pub observable: Observable,
}

impl SweepResult {
    pub fn is_one_dimensional(&self) -> bool {
        self.axis2.is_none()
    }
}

struct SweepContext<'a> {
    base: TrionParams,
    axes: &'a [AxisSpec],
    observable: Observable,
    n1: usize,
    n2: usize,
}

impl<'a> SweepContext<'a> {
    fn new(p: &TrionParams, axes: &'a [AxisSpec], observable: Observable) -> Result<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(SimError::InvalidArgument(format!(
                "sweep needs 1 or 2 axes, got {}",
                axes.len()
            )));
        }
        p.validate()?;
        Ok(Self {
            base: *p,
            axes,
            observable,
            n1: axes[0].values.len(),
            n2: axes.get(1).map_or(1, |a| a.values.len()),
        })
    }

    fn len(&self) -> usize {
        self.n1 * self.n2
    }

    fn eval(&self, k: usize) -> Result<f64> {
        let mut q = self.base;
        self.axes[0].field.apply(&mut q, self.axes[0].values[k / self.n2]);
        if let Some(ax2) = self.axes.get(1) {
            ax2.field.apply(&mut q, ax2.values[k % self.n2]);
        }
        self.observable.eval(&q)
    }

    fn finish(&self, flat: Vec<Result<f64>>) -> Result<SweepResult> {
        let flat = flat.into_iter().collect::<Result<Vec<f64>>>()?;
        let values = Array2::from_shape_vec((self.n1, self.n2), flat)
            .expect("flat sweep buffer matches the grid shape");
        Ok(SweepResult {
            axis1: self.axes[0].clone(),
            axis2: self.axes.get(1).cloned(),
            values,
            observable: self.observable,
        })
    }
}

/// Evaluate `observable` over a 1-D or 2-D grid, in parallel when the
/// `parallel` feature is enabled.
pub fn sweep(p: &TrionParams, axes: &[AxisSpec], observable: Observable) -> Result<SweepResult> {
    let ctx = SweepContext::new(p, axes, observable)?;
    let flat = par::map_indexed(ctx.len(), |k| ctx.eval(k));
    ctx.finish(flat)
}

/// Always-sequential sweep; the fallback implementation behind [`sweep`]
/// and the baseline for the benchmark suite.
pub fn sweep_sequential(
    p: &TrionParams,
    axes: &[AxisSpec],
    observable: Observable,
) -> Result<SweepResult> {
    let ctx = SweepContext::new(p, axes, observable)?;
    let flat = (0..ctx.len()).map(|k| ctx.eval(k)).collect();
    ctx.finish(flat)
}

/// Shape metrics of a 1-D dip profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipMetrics {
    /// 1 − min/baseline, with the baseline taken from the outer 10% of
    /// samples on each edge.
    pub depth: f64,
    /// Argmin with quadratic sub-grid refinement, in axis units.
    pub center: f64,
    /// Signed area asymmetry about the center, in [−1, 1]; exactly 0 for
    /// even profiles.
    pub asymmetry: f64,
    /// Largest relative deviation of the edge samples from the baseline;
    /// values well above ~0.02 mean the window is too narrow for a
    /// trustworthy baseline.
    pub edge_variation: f64,
}

/// Compute dip metrics on a 1-D sweep profile.
pub fn dip_metrics(profile: &SweepResult) -> Result<DipMetrics> {
    if profile.axis2.is_some() {
        return Err(SimError::InvalidArgument(
            "dip metrics need a 1-D sweep".into(),
        ));
    }
    let xs = &profile.axis1.values;
    let ys: Vec<f64> = profile.values.column(0).to_vec();
    let n = xs.len();
    if n < 8 {
        return Err(SimError::InvalidArgument(format!(
            "dip metrics need at least 8 samples, got {n}"
        )));
    }
    for w in xs.windows(2) {
        if w[1] <= w[0] || !w[1].is_finite() || !w[0].is_finite() {
            return Err(SimError::InvalidArgument(
                "dip metrics need a strictly ascending axis".into(),
            ));
        }
    }
    let k = (0.10 * n as f64).ceil() as usize;
    let edge: Vec<f64> = ys[..k].iter().chain(ys[n - k..].iter()).copied().collect();
    let baseline = edge.iter().sum::<f64>() / edge.len() as f64;
    if baseline.is_nan() || baseline <= 0.0 {
        return Err(SimError::InvalidArgument(format!(
            "baseline must be positive, got {baseline}"
        )));
    }
    let edge_variation = edge
        .iter()
        .fold(0.0f64, |m, &v| m.max((v - baseline).abs() / baseline));
    let imin = ys
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty profile")
        .0;
    let depth = 1.0 - ys[imin] / baseline;
    let center = if imin > 0 && imin < n - 1 {
        parabola_vertex(
            xs[imin - 1],
            ys[imin - 1],
            xs[imin],
            ys[imin],
            xs[imin + 1],
            ys[imin + 1],
        )
        .filter(|c| *c >= xs[imin - 1] && *c <= xs[imin + 1])
        .unwrap_or(xs[imin])
    } else {
        xs[imin]
    };
    let half_window = (center - xs[0]).min(xs[n - 1] - center);
    let asymmetry = if half_window > 0.0 {
        let steps = 512;
        let mut num = 0.0;
        let mut den = 0.0;
        let mut mag = 0.0;
        let d = half_window / steps as f64;
        for i in 0..=steps {
            let delta = i as f64 * d;
            let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
            let plus = linear_interp(xs, &ys, center + delta);
            let minus = linear_interp(xs, &ys, center - delta);
            num += w * (plus - minus) * d;
            den += w * (plus - minus).abs() * d;
            mag += w * (plus.abs() + minus.abs()) * d;
        }
        // guard against 0/0 on even profiles: the difference integral is
        // pure rounding noise when it is negligible against the profile
        if den <= 1e-9 * mag {
            0.0
        } else {
            num / den
        }
    } else {
        0.0
    };
    Ok(DipMetrics {
        depth,
        center,
        asymmetry,
        edge_variation,
    })
}

/// Fluorescence versus Ω₁ with the second laser off.
pub fn saturation_curve(p: &TrionParams, omega1_values: &[f64]) -> Result<SweepResult> {
    if p.omega2_rabi != 0.0 {
        return Err(SimError::InvalidArgument(format!(
            "saturation curve requires Ω₂ = 0, got {}",
            p.omega2_rabi
        )));
    }
    let axis = AxisSpec::new("omega1_rabi", omega1_values.to_vec())?;
    sweep(p, &[axis], Observable::Fluorescence)
}

/// Result of calibrating the power-to-Rabi conversion Ω = k·√P against a
/// measured saturation curve, with Γ_r held fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaturationFit {
    /// k, in rad/ns per square root of the power unit.
    pub omega_at_unit_power: f64,
    /// Euclidean norm of the intensity residuals at the optimum.
    pub residual_norm: f64,
    /// The fixed radiative rate used by the model.
    pub fixed_gamma_r: f64,
}

/// Resonant two-level excited-state population at drive Ω.
fn saturation_model(omega: f64, gamma_r: f64) -> f64 {
    let o2 = omega * omega;
    (o2 / 4.0) / (gamma_r * gamma_r / 4.0 + o2 / 2.0)
}

/// Least squares over (scale, k) of I = scale·ρ_ee(k√P; Γ_r fixed).
/// The scale is eliminated in closed form; k is found by a coarse
/// logarithmic scan refined with golden-section search.
pub fn fit_rabi_from_power(
    powers: &[f64],
    intensities: &[f64],
    gamma_r: f64,
) -> Result<SaturationFit> {
    if powers.len() != intensities.len() {
        return Err(SimError::DimensionMismatch(format!(
            "{} powers vs {} intensities",
            powers.len(),
            intensities.len()
        )));
    }
    if powers.len() < 5 {
        return Err(SimError::InvalidArgument(format!(
            "need at least 5 data points, got {}",
            powers.len()
        )));
    }
    if !(gamma_r > 0.0 && gamma_r.is_finite()) {
        return Err(SimError::InvalidArgument(format!(
            "gamma_r must be > 0, got {gamma_r}"
        )));
    }
    if powers.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
        return Err(SimError::InvalidArgument("powers must be > 0".into()));
    }
    if intensities.iter().any(|v| !v.is_finite()) {
        return Err(SimError::InvalidArgument("intensities must be finite".into()));
    }
    // degenerate data: all-zero intensities fit k = 0 exactly
    if intensities.iter().all(|&v| v == 0.0) {
        return Ok(SaturationFit {
            omega_at_unit_power: 0.0,
            residual_norm: 0.0,
            fixed_gamma_r: gamma_r,
        });
    }
    let roots: Vec<f64> = powers.iter().map(|&p| p.sqrt()).collect();
    let ssr = |k: f64| -> f64 {
        let mut mi = 0.0;
        let mut mm = 0.0;
        for (&r, &y) in roots.iter().zip(intensities) {
            let m = saturation_model(k * r, gamma_r);
            mi += m * y;
            mm += m * m;
        }
        let scale = if mm > 0.0 { mi / mm } else { 0.0 };
        roots
            .iter()
            .zip(intensities)
            .map(|(&r, &y)| {
                let e = y - scale * saturation_model(k * r, gamma_r);
                e * e
            })
            .sum()
    };
    // scan k logarithmically around the saturation knee
    let r_mid = roots.iter().sum::<f64>() / roots.len() as f64;
    let k0 = gamma_r / r_mid;
    let scan: Vec<f64> = (0..=160)
        .map(|i| k0 * 10f64.powf(-4.0 + 8.0 * i as f64 / 160.0))
        .collect();
    let (best, _) = scan
        .iter()
        .enumerate()
        .map(|(i, &k)| (i, ssr(k)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty scan");
    if best == 0 || best == scan.len() - 1 {
        return Err(SimError::FitFailure {
            best_k: scan[best],
            best_residual: ssr(scan[best]).sqrt(),
            message: "optimum sits at the edge of the scanned k range".into(),
        });
    }
    // golden-section refinement on the bracketing interval
    let (mut lo, mut hi) = (scan[best - 1], scan[best + 1]);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = ssr(x1);
    let mut f2 = ssr(x2);
    for _ in 0..200 {
        if (hi - lo) <= 1e-13 * hi {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = ssr(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = ssr(x2);
        }
    }
    let k = 0.5 * (lo + hi);
    Ok(SaturationFit {
        omega_at_unit_power: k,
        residual_norm: ssr(k).sqrt(),
        fixed_gamma_r: gamma_r,
    })
}
