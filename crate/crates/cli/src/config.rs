// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! TOML run configuration.
//!
//! All frequencies and rates in configuration files are linear GHz; the
//! conversion to the internal angular unit (rad/ns) is exactly ×2π. The
//! dimensionless branching fraction is passed through unchanged.
//!
//! Model values resolve in precedence order: explicit `[model]` entry,
//! then the chosen preset, then the built-in defaults (the qd1 rates with
//! all drives off). A preset passed on the command line overrides the
//! `preset` key in the file.

use crate::CliError;
use serde::{Deserialize, Serialize};
use trion_sim::sweep::{Observable, ParamField};
use trion_sim::trion::{EmissionChannel, TrionParams};
use trion_sim::units::ghz;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub delta1: Option<f64>,
    pub delta2: Option<f64>,
    pub gamma_r: Option<f64>,
    pub branching: Option<f64>,
    pub gamma_p: Option<f64>,
    pub gamma_p_dephasing: Option<f64>,
}

/// Informational transition frequencies carried into output headers.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetadataConfig {
    pub fundamental_thz: Option<f64>,
    pub auger_shift_thz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub field: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub observable: String,
    pub axis1: AxisConfig,
    pub axis2: Option<AxisConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    pub channel: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G2Config {
    pub channel_a: String,
    pub channel_b: String,
    pub tau_start: f64,
    pub tau_stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitRabiConfig {
    pub powers: Vec<f64>,
    pub intensities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateCompareConfig {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub preset: Option<String>,
    #[serde(default)]
    pub model: ModelConfig,
    #[serde(default)]
    pub metadata: MetadataConfig,
    pub sweep: Option<SweepConfig>,
    pub spectrum: Option<SpectrumConfig>,
    pub g2: Option<G2Config>,
    pub fit_rabi: Option<FitRabiConfig>,
    pub rate_compare: Option<RateCompareConfig>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Fully resolved model in linear GHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedModel {
    pub omega1: f64,
    pub omega2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub gamma_r: f64,
    pub branching: f64,
    pub gamma_p: f64,
    pub gamma_p_dephasing: f64,
}

impl ResolvedModel {
    pub fn to_params(self) -> TrionParams {
        TrionParams {
            omega1_rabi: ghz(self.omega1),
            omega2_rabi: ghz(self.omega2),
            delta1: ghz(self.delta1),
            delta2: ghz(self.delta2),
            gamma_r: ghz(self.gamma_r),
            branching_b: self.branching,
            gamma_p_relax: ghz(self.gamma_p),
            gamma_p_deph: ghz(self.gamma_p_dephasing),
        }
    }
}

/// Resolved configuration: what a run actually uses, and what gets
/// written into every output header.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub preset: Option<String>,
    pub model: ResolvedModel,
    pub metadata: MetadataConfig,
    pub sweep: Option<SweepConfig>,
    pub spectrum: Option<SpectrumConfig>,
    pub g2: Option<G2Config>,
    pub fit_rabi: Option<FitRabiConfig>,
    pub rate_compare: Option<RateCompareConfig>,
    pub output: OutputConfig,
}

/// Built-in presets: measured rates of the two dots. The second dot has
/// no independently fitted relaxation rates, so it carries the same
/// values; its Autler-Townes data were taken at much larger Ω₁.
pub fn preset(name: &str) -> Option<(ModelConfig, MetadataConfig)> {
    let qd_rates = ModelConfig {
        omega1: Some(0.0),
        omega2: Some(0.0),
        delta1: Some(0.0),
        delta2: Some(0.0),
        gamma_r: Some(0.50),
        branching: Some(0.01),
        gamma_p: Some(9.3),
        gamma_p_dephasing: Some(8.8),
    };
    match name {
        "qd1" => Some((
            qd_rates,
            MetadataConfig {
                fundamental_thz: Some(384.7),
                auger_shift_thz: Some(3.2),
            },
        )),
        "qd2" => Some((qd_rates, MetadataConfig::default())),
        _ => None,
    }
}

const BUILTIN_DEFAULTS: ResolvedModel = ResolvedModel {
    omega1: 0.0,
    omega2: 0.0,
    delta1: 0.0,
    delta2: 0.0,
    gamma_r: 0.50,
    branching: 0.01,
    gamma_p: 9.3,
    gamma_p_dephasing: 8.8,
};

pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
}

/// Resolve preset and defaults. `preset_flag` (from the command line)
/// overrides the `preset` key in the file.
pub fn resolve(cfg: &RunConfig, preset_flag: Option<&str>) -> Result<Resolved, CliError> {
    let preset_name = preset_flag
        .map(str::to_string)
        .or_else(|| cfg.preset.clone());
    let (preset_model, preset_meta) = match preset_name.as_deref() {
        Some(name) => preset(name).ok_or_else(|| {
            CliError::Config(format!("unknown preset '{name}' (expected qd1 or qd2)"))
        })?,
        None => (ModelConfig::default(), MetadataConfig::default()),
    };
    let pick = |explicit: Option<f64>, preset_v: Option<f64>, default_v: f64| -> f64 {
        explicit.or(preset_v).unwrap_or(default_v)
    };
    let m = &cfg.model;
    let model = ResolvedModel {
        omega1: pick(m.omega1, preset_model.omega1, BUILTIN_DEFAULTS.omega1),
        omega2: pick(m.omega2, preset_model.omega2, BUILTIN_DEFAULTS.omega2),
        delta1: pick(m.delta1, preset_model.delta1, BUILTIN_DEFAULTS.delta1),
        delta2: pick(m.delta2, preset_model.delta2, BUILTIN_DEFAULTS.delta2),
        gamma_r: pick(m.gamma_r, preset_model.gamma_r, BUILTIN_DEFAULTS.gamma_r),
        branching: pick(m.branching, preset_model.branching, BUILTIN_DEFAULTS.branching),
        gamma_p: pick(m.gamma_p, preset_model.gamma_p, BUILTIN_DEFAULTS.gamma_p),
        gamma_p_dephasing: pick(
            m.gamma_p_dephasing,
            preset_model.gamma_p_dephasing,
            BUILTIN_DEFAULTS.gamma_p_dephasing,
        ),
    };
    let metadata = MetadataConfig {
        fundamental_thz: cfg.metadata.fundamental_thz.or(preset_meta.fundamental_thz),
        auger_shift_thz: cfg.metadata.auger_shift_thz.or(preset_meta.auger_shift_thz),
    };
    Ok(Resolved {
        preset: preset_name,
        model,
        metadata,
        sweep: cfg.sweep.clone(),
        spectrum: cfg.spectrum.clone(),
        g2: cfg.g2.clone(),
        fit_rabi: cfg.fit_rabi.clone(),
        rate_compare: cfg.rate_compare.clone(),
        output: cfg.output.clone(),
    })
}

fn check_grid(tag: &str, start: f64, stop: f64, points: usize, out: &mut Vec<String>) {
    if !start.is_finite() || !stop.is_finite() {
        out.push(format!("{tag}: start/stop must be finite"));
        return;
    }
    if points == 0 {
        out.push(format!("{tag}: points must be ≥ 1"));
    } else if points == 1 {
        if start != stop {
            out.push(format!(
                "{tag}: a single-point grid needs start == stop, got {start} and {stop}"
            ));
        }
    } else if stop <= start {
        out.push(format!(
            "{tag}: grid must be ascending (start {start} < stop {stop})"
        ));
    }
}

/// Physics and schema checks on a resolved configuration. Returns every
/// violation found, empty when valid.
pub fn violations(r: &Resolved) -> Vec<String> {
    let mut out = Vec::new();
    let m = &r.model;
    for (name, v) in [
        ("model.omega1", m.omega1),
        ("model.omega2", m.omega2),
        ("model.gamma_p", m.gamma_p),
        ("model.gamma_p_dephasing", m.gamma_p_dephasing),
    ] {
        if !(v >= 0.0 && v.is_finite()) {
            out.push(format!("{name} must be ≥ 0, got {v}"));
        }
    }
    for (name, v) in [("model.delta1", m.delta1), ("model.delta2", m.delta2)] {
        if !v.is_finite() {
            out.push(format!("{name} must be finite, got {v}"));
        }
    }
    if !(m.gamma_r > 0.0 && m.gamma_r.is_finite()) {
        out.push(format!("model.gamma_r must be > 0, got {}", m.gamma_r));
    }
    if !(0.0..1.0).contains(&m.branching) {
        out.push(format!(
            "model.branching out of range [0, 1), got {}",
            m.branching
        ));
    }
    if let Some(sw) = &r.sweep {
        if Observable::parse(&sw.observable).is_err() {
            out.push(format!(
                "sweep.observable '{}' is not one of fluorescence | auger | rate_fluorescence",
                sw.observable
            ));
        }
        for (tag, axis) in [("sweep.axis1", Some(&sw.axis1)), ("sweep.axis2", sw.axis2.as_ref())] {
            let Some(axis) = axis else { continue };
            if ParamField::parse(&axis.field).is_err() {
                out.push(format!("{tag}.field: unknown parameter field '{}'", axis.field));
            }
            check_grid(tag, axis.start, axis.stop, axis.points, &mut out);
        }
    }
    if let Some(sp) = &r.spectrum {
        if parse_channel(&sp.channel).is_none() {
            out.push(format!(
                "spectrum.channel '{}' is not fundamental | auger",
                sp.channel
            ));
        }
        check_grid("spectrum", sp.start, sp.stop, sp.points, &mut out);
        if sp.points < 2 {
            out.push("spectrum: needs at least 2 grid points".into());
        }
    }
    if let Some(g) = &r.g2 {
        for (tag, ch) in [("channel_a", &g.channel_a), ("channel_b", &g.channel_b)] {
            if parse_channel(ch).is_none() {
                out.push(format!("g2.{tag} '{ch}' is not fundamental | auger"));
            }
        }
        check_grid("g2", g.tau_start, g.tau_stop, g.points, &mut out);
    }
    if let Some(f) = &r.fit_rabi {
        if f.powers.len() != f.intensities.len() {
            out.push(format!(
                "fit_rabi: {} powers vs {} intensities",
                f.powers.len(),
                f.intensities.len()
            ));
        }
        if f.powers.len() < 5 {
            out.push("fit_rabi: needs at least 5 data points".into());
        }
        if f.powers.iter().any(|&p| !(p > 0.0 && p.is_finite())) {
            out.push("fit_rabi.powers must all be > 0".into());
        }
        if f.intensities.iter().any(|v| !v.is_finite()) {
            out.push("fit_rabi.intensities must all be finite".into());
        }
    }
    if let Some(rc) = &r.rate_compare {
        check_grid("rate_compare", rc.start, rc.stop, rc.points, &mut out);
    }
    out
}

pub fn parse_channel(name: &str) -> Option<EmissionChannel> {
    match name {
        "fundamental" => Some(EmissionChannel::Fundamental),
        "auger" => Some(EmissionChannel::Auger),
        _ => None,
    }
}

/// Evenly spaced grid in configuration units; reproduced exactly by the
/// header reader, so outputs are byte-stable.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    (0..points)
        .map(|i| start + (stop - start) * i as f64 / (points - 1) as f64)
        .collect()
}

/// True when a sweepable field carries GHz units (everything except the
/// dimensionless branching fraction).
pub fn field_is_frequency(field: ParamField) -> bool {
    !matches!(field, ParamField::BranchingB)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_fills_rates_and_explicit_wins() {
        let cfg = parse_config("preset = \"qd1\"\n[model]\nomega1 = 0.08\n").unwrap();
        let r = resolve(&cfg, None).unwrap();
        assert_eq!(r.model.omega1, 0.08);
        assert_eq!(r.model.gamma_r, 0.50);
        assert_eq!(r.model.gamma_p, 9.3);
        assert_eq!(r.metadata.fundamental_thz, Some(384.7));
        // command-line preset beats the file's
        let r2 = resolve(&cfg, Some("qd2")).unwrap();
        assert_eq!(r2.preset.as_deref(), Some("qd2"));
        assert_eq!(r2.metadata.fundamental_thz, None);
    }

    #[test]
    fn unknown_keys_are_schema_errors() {
        let err = parse_config("[model]\nomega3 = 1.0\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.message().contains("omega3"), "{}", err.message());
    }

    #[test]
    fn violations_catch_bad_physics_and_grids() {
        let cfg = parse_config(
            r#"
[model]
branching = 1.2

[sweep]
observable = "fluorescence"
[sweep.axis1]
field = "delta2"
start = 5.0
stop = -5.0
points = 11
"#,
        )
        .unwrap();
        let r = resolve(&cfg, None).unwrap();
        let v = violations(&r);
        assert!(v.iter().any(|s| s.contains("branching")), "{v:?}");
        assert!(v.iter().any(|s| s.contains("ascending")), "{v:?}");
    }

    #[test]
    fn valid_preset_config_has_no_violations() {
        let cfg = parse_config("preset = \"qd1\"\n").unwrap();
        let r = resolve(&cfg, None).unwrap();
        assert!(violations(&r).is_empty());
    }

    #[test]
    fn unknown_sweep_field_is_reported() {
        let cfg = parse_config(
            r#"
[sweep]
observable = "fluorescence"
[sweep.axis1]
field = "omega3"
start = 0.0
stop = 1.0
points = 5
"#,
        )
        .unwrap();
        let r = resolve(&cfg, None).unwrap();
        let v = violations(&r);
        assert!(v.iter().any(|s| s.contains("omega3")), "{v:?}");
    }
}
