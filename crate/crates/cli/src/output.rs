// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! CSV assembly and the bundled header reader.
//!
//! Every output file starts with `#`-prefixed header lines recording the
//! tool version, the command, the fully resolved configuration and the
//! column layout. Reals carry 17 significant digits (`{:.16e}`), so the
//! header parses back into the exact configuration that produced the
//! file. Separator is `,`, decimal point `.`, line endings LF.

use crate::config::{
    AxisConfig, FitRabiConfig, G2Config, MetadataConfig, OutputConfig, RateCompareConfig, Resolved,
    ResolvedModel, RunConfig, SpectrumConfig, SweepConfig,
};
use crate::CliError;

pub const TOOL_NAME: &str = "trion-sim";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits; round-trips any f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn push_kv(out: &mut String, key: &str, value: impl AsRef<str>) {
    out.push_str("# ");
    out.push_str(key);
    out.push_str(" = ");
    out.push_str(value.as_ref());
    out.push('\n');
}

fn push_axis(out: &mut String, tag: &str, axis: &AxisConfig) {
    push_kv(out, &format!("{tag}.field"), &axis.field);
    push_kv(out, &format!("{tag}.start"), fmt_f64(axis.start));
    push_kv(out, &format!("{tag}.stop"), fmt_f64(axis.stop));
    push_kv(out, &format!("{tag}.points"), axis.points.to_string());
}

/// Header lines for one command run.
pub fn write_header(out: &mut String, command: &str, r: &Resolved, columns: &str) {
    out.push_str(&format!("# {TOOL_NAME} {TOOL_VERSION}\n"));
    push_kv(out, "command", command);
    if let Some(p) = &r.preset {
        push_kv(out, "preset", p);
    }
    let m = &r.model;
    push_kv(out, "model.omega1", fmt_f64(m.omega1));
    push_kv(out, "model.omega2", fmt_f64(m.omega2));
    push_kv(out, "model.delta1", fmt_f64(m.delta1));
    push_kv(out, "model.delta2", fmt_f64(m.delta2));
    push_kv(out, "model.gamma_r", fmt_f64(m.gamma_r));
    push_kv(out, "model.branching", fmt_f64(m.branching));
    push_kv(out, "model.gamma_p", fmt_f64(m.gamma_p));
    push_kv(out, "model.gamma_p_dephasing", fmt_f64(m.gamma_p_dephasing));
    if let Some(v) = r.metadata.fundamental_thz {
        push_kv(out, "metadata.fundamental_thz", fmt_f64(v));
    }
    if let Some(v) = r.metadata.auger_shift_thz {
        push_kv(out, "metadata.auger_shift_thz", fmt_f64(v));
    }
    if let Some(sw) = &r.sweep {
        push_kv(out, "sweep.observable", &sw.observable);
        push_axis(out, "sweep.axis1", &sw.axis1);
        if let Some(ax2) = &sw.axis2 {
            push_axis(out, "sweep.axis2", ax2);
        }
    }
    if let Some(sp) = &r.spectrum {
        push_kv(out, "spectrum.channel", &sp.channel);
        push_kv(out, "spectrum.start", fmt_f64(sp.start));
        push_kv(out, "spectrum.stop", fmt_f64(sp.stop));
        push_kv(out, "spectrum.points", sp.points.to_string());
    }
    if let Some(g) = &r.g2 {
        push_kv(out, "g2.channel_a", &g.channel_a);
        push_kv(out, "g2.channel_b", &g.channel_b);
        push_kv(out, "g2.tau_start", fmt_f64(g.tau_start));
        push_kv(out, "g2.tau_stop", fmt_f64(g.tau_stop));
        push_kv(out, "g2.points", g.points.to_string());
    }
    if let Some(f) = &r.fit_rabi {
        let join = |xs: &[f64]| xs.iter().map(|&x| fmt_f64(x)).collect::<Vec<_>>().join(",");
        push_kv(out, "fit_rabi.powers", join(&f.powers));
        push_kv(out, "fit_rabi.intensities", join(&f.intensities));
    }
    if let Some(rc) = &r.rate_compare {
        push_kv(out, "rate_compare.start", fmt_f64(rc.start));
        push_kv(out, "rate_compare.stop", fmt_f64(rc.stop));
        push_kv(out, "rate_compare.points", rc.points.to_string());
    }
    if let Some(p) = &r.output.path {
        push_kv(out, "output.path", p);
    }
    push_kv(
        out,
        "units",
        "config frequencies and rates are linear GHz (internal angular unit rad/ns = 2*pi x GHz); times in ns; intensities in photons/ns",
    );
    push_kv(out, "columns", columns);
}

fn parse_f64(map: &std::collections::BTreeMap<String, String>, key: &str) -> Result<f64, CliError> {
    let raw = map
        .get(key)
        .ok_or_else(|| CliError::Config(format!("header is missing '{key}'")))?;
    raw.parse::<f64>()
        .map_err(|_| CliError::Config(format!("header value for '{key}' is not a number: {raw}")))
}

fn parse_usize(
    map: &std::collections::BTreeMap<String, String>,
    key: &str,
) -> Result<usize, CliError> {
    let raw = map
        .get(key)
        .ok_or_else(|| CliError::Config(format!("header is missing '{key}'")))?;
    raw.parse::<usize>()
        .map_err(|_| CliError::Config(format!("header value for '{key}' is not an integer: {raw}")))
}

fn parse_axis(
    map: &std::collections::BTreeMap<String, String>,
    tag: &str,
) -> Result<AxisConfig, CliError> {
    Ok(AxisConfig {
        field: map
            .get(&format!("{tag}.field"))
            .ok_or_else(|| CliError::Config(format!("header is missing '{tag}.field'")))?
            .clone(),
        start: parse_f64(map, &format!("{tag}.start"))?,
        stop: parse_f64(map, &format!("{tag}.stop"))?,
        points: parse_usize(map, &format!("{tag}.points"))?,
    })
}

fn parse_list(raw: &str) -> Result<Vec<f64>, CliError> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad list entry '{s}' in header")))
        })
        .collect()
}

/// Parse the header of an emitted CSV back into the command name and the
/// resolved configuration it recorded.
pub fn read_header(text: &str) -> Result<(String, Resolved), CliError> {
    let mut lines = text.lines();
    let first = lines
        .next()
        .ok_or_else(|| CliError::Config("empty file".into()))?;
    if !first.starts_with(&format!("# {TOOL_NAME} ")) {
        return Err(CliError::Config(format!(
            "not a {TOOL_NAME} output file (first line: {first})"
        )));
    }
    let mut map = std::collections::BTreeMap::new();
    for line in lines {
        let Some(rest) = line.strip_prefix("# ") else {
            break; // data section starts
        };
        if let Some((k, v)) = rest.split_once(" = ") {
            map.insert(k.to_string(), v.to_string());
        }
    }
    let command = map
        .get("command")
        .ok_or_else(|| CliError::Config("header is missing 'command'".into()))?
        .clone();
    let model = ResolvedModel {
        omega1: parse_f64(&map, "model.omega1")?,
        omega2: parse_f64(&map, "model.omega2")?,
        delta1: parse_f64(&map, "model.delta1")?,
        delta2: parse_f64(&map, "model.delta2")?,
        gamma_r: parse_f64(&map, "model.gamma_r")?,
        branching: parse_f64(&map, "model.branching")?,
        gamma_p: parse_f64(&map, "model.gamma_p")?,
        gamma_p_dephasing: parse_f64(&map, "model.gamma_p_dephasing")?,
    };
    let metadata = MetadataConfig {
        fundamental_thz: map
            .get("metadata.fundamental_thz")
            .map(|_| parse_f64(&map, "metadata.fundamental_thz"))
            .transpose()?,
        auger_shift_thz: map
            .get("metadata.auger_shift_thz")
            .map(|_| parse_f64(&map, "metadata.auger_shift_thz"))
            .transpose()?,
    };
    let sweep = if map.contains_key("sweep.observable") {
        Some(SweepConfig {
            observable: map["sweep.observable"].clone(),
            axis1: parse_axis(&map, "sweep.axis1")?,
            axis2: if map.contains_key("sweep.axis2.field") {
                Some(parse_axis(&map, "sweep.axis2")?)
            } else {
                None
            },
        })
    } else {
        None
    };
    let spectrum = if map.contains_key("spectrum.channel") {
        Some(SpectrumConfig {
            channel: map["spectrum.channel"].clone(),
            start: parse_f64(&map, "spectrum.start")?,
            stop: parse_f64(&map, "spectrum.stop")?,
            points: parse_usize(&map, "spectrum.points")?,
        })
    } else {
        None
    };
    let g2 = if map.contains_key("g2.channel_a") {
        Some(G2Config {
            channel_a: map["g2.channel_a"].clone(),
            channel_b: map["g2.channel_b"].clone(),
            tau_start: parse_f64(&map, "g2.tau_start")?,
            tau_stop: parse_f64(&map, "g2.tau_stop")?,
            points: parse_usize(&map, "g2.points")?,
        })
    } else {
        None
    };
    let fit_rabi = if map.contains_key("fit_rabi.powers") {
        Some(FitRabiConfig {
            powers: parse_list(&map["fit_rabi.powers"])?,
            intensities: parse_list(&map["fit_rabi.intensities"])?,
        })
    } else {
        None
    };
    let rate_compare = if map.contains_key("rate_compare.start") {
        Some(RateCompareConfig {
            start: parse_f64(&map, "rate_compare.start")?,
            stop: parse_f64(&map, "rate_compare.stop")?,
            points: parse_usize(&map, "rate_compare.points")?,
        })
    } else {
        None
    };
    Ok((
        command,
        Resolved {
            preset: map.get("preset").cloned(),
            model,
            metadata,
            sweep,
            spectrum,
            g2,
            fit_rabi,
            rate_compare,
            output: OutputConfig {
                path: map.get("output.path").cloned(),
            },
        },
    ))
}

/// Convenience for tests: configuration text → resolved form.
pub fn resolve_text(text: &str, preset_flag: Option<&str>) -> Result<Resolved, CliError> {
    let cfg: RunConfig = crate::config::parse_config(text)?;
    crate::config::resolve(&cfg, preset_flag)
}
