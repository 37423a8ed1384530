// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Command execution: each command renders one CSV file as a string.

use crate::config::{
    field_is_frequency, linspace, parse_channel, violations, Resolved,
};
use crate::output::{fmt_f64, write_header};
use crate::CliError;
use trion_sim::correlations::{emission_spectrum, g2};
use trion_sim::sweep::{fit_rabi_from_power, sweep, AxisSpec, Observable, ParamField};
use trion_sim::trion::{steady_density, EmissionChannel, TrionParams, IDX_P, IDX_S, IDX_T};
use trion_sim::units::{ghz, to_ghz};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Steady,
    Sweep,
    Spectrum,
    G2,
    FitRabi,
    RateCompare,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Steady => "steady",
            CommandKind::Sweep => "sweep",
            CommandKind::Spectrum => "spectrum",
            CommandKind::G2 => "g2",
            CommandKind::FitRabi => "fit-rabi",
            CommandKind::RateCompare => "rate-compare",
        }
    }
}

fn require<'a, T>(block: &'a Option<T>, section: &str) -> Result<&'a T, CliError> {
    block
        .as_ref()
        .ok_or_else(|| CliError::Config(format!("configuration is missing the [{section}] section")))
}

/// Run one command against a resolved configuration, returning the CSV
/// file content.
pub fn execute(kind: CommandKind, r: &Resolved) -> Result<String, CliError> {
    let problems = violations(r);
    if !problems.is_empty() {
        return Err(CliError::Config(problems.join("\n")));
    }
    let params = r.model.to_params();
    match kind {
        CommandKind::Steady => steady_cmd(r, &params),
        CommandKind::Sweep => sweep_cmd(r, &params),
        CommandKind::Spectrum => spectrum_cmd(r, &params),
        CommandKind::G2 => g2_cmd(r, &params),
        CommandKind::FitRabi => fit_rabi_cmd(r, &params),
        CommandKind::RateCompare => rate_compare_cmd(r, &params),
    }
}

fn steady_cmd(r: &Resolved, params: &TrionParams) -> Result<String, CliError> {
    let rho = steady_density(params)?;
    let tt = rho.population(IDX_T);
    let mut out = String::new();
    write_header(
        &mut out,
        "steady",
        r,
        "fluorescence_per_ns,auger_per_ns,rho_ss,rho_pp,rho_tt",
    );
    out.push_str(&format!(
        "{},{},{},{},{}\n",
        fmt_f64(EmissionChannel::Fundamental.rate(params) * tt),
        fmt_f64(EmissionChannel::Auger.rate(params) * tt),
        fmt_f64(rho.population(IDX_S)),
        fmt_f64(rho.population(IDX_P)),
        fmt_f64(tt),
    ));
    Ok(out)
}

fn axis_column_name(field: ParamField) -> String {
    if field_is_frequency(field) {
        format!("{}_ghz", field.name())
    } else {
        field.name().to_string()
    }
}

fn axis_to_internal(field: ParamField, config_values: &[f64]) -> Vec<f64> {
    if field_is_frequency(field) {
        config_values.iter().map(|&v| ghz(v)).collect()
    } else {
        config_values.to_vec()
    }
}

fn observable_column(observable: Observable) -> &'static str {
    match observable {
        Observable::Fluorescence => "fluorescence_per_ns",
        Observable::Auger => "auger_per_ns",
        Observable::RateFluorescence => "rate_fluorescence_per_ns",
    }
}

fn sweep_cmd(r: &Resolved, params: &TrionParams) -> Result<String, CliError> {
    let sw = require(&r.sweep, "sweep")?;
    let observable = Observable::parse(&sw.observable)?;
    let field1 = ParamField::parse(&sw.axis1.field)?;
    let grid1 = linspace(sw.axis1.start, sw.axis1.stop, sw.axis1.points);
    let mut axes = vec![AxisSpec {
        field: field1,
        values: axis_to_internal(field1, &grid1),
    }];
    let mut grid2 = Vec::new();
    let mut field2 = None;
    if let Some(ax2) = &sw.axis2 {
        let f2 = ParamField::parse(&ax2.field)?;
        grid2 = linspace(ax2.start, ax2.stop, ax2.points);
        axes.push(AxisSpec {
            field: f2,
            values: axis_to_internal(f2, &grid2),
        });
        field2 = Some(f2);
    }
    let result = sweep(params, &axes, observable)?;
    let mut out = String::new();
    let columns = match field2 {
        Some(f2) => format!(
            "{},{},{}",
            axis_column_name(field1),
            axis_column_name(f2),
            observable_column(observable)
        ),
        None => format!(
            "{},{}",
            axis_column_name(field1),
            observable_column(observable)
        ),
    };
    write_header(&mut out, "sweep", r, &columns);
    for (i, &x1) in grid1.iter().enumerate() {
        if field2.is_some() {
            for (j, &x2) in grid2.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    fmt_f64(x1),
                    fmt_f64(x2),
                    fmt_f64(result.values[[i, j]])
                ));
            }
        } else {
            out.push_str(&format!(
                "{},{}\n",
                fmt_f64(x1),
                fmt_f64(result.values[[i, 0]])
            ));
        }
    }
    Ok(out)
}

fn spectrum_cmd(r: &Resolved, params: &TrionParams) -> Result<String, CliError> {
    let sp = require(&r.spectrum, "spectrum")?;
    let channel = parse_channel(&sp.channel)
        .ok_or_else(|| CliError::Config(format!("unknown channel '{}'", sp.channel)))?;
    let grid_ghz = linspace(sp.start, sp.stop, sp.points);
    let grid: Vec<f64> = grid_ghz.iter().map(|&v| ghz(v)).collect();
    let s = emission_spectrum(params, channel, &grid)?;
    let mut out = String::new();
    write_header(&mut out, "spectrum", r, "omega_ghz,spectral_density");
    for (x, v) in grid_ghz.iter().zip(&s.values) {
        out.push_str(&format!("{},{}\n", fmt_f64(*x), fmt_f64(*v)));
    }
    Ok(out)
}

fn g2_cmd(r: &Resolved, params: &TrionParams) -> Result<String, CliError> {
    let g = require(&r.g2, "g2")?;
    let ch_a = parse_channel(&g.channel_a)
        .ok_or_else(|| CliError::Config(format!("unknown channel '{}'", g.channel_a)))?;
    let ch_b = parse_channel(&g.channel_b)
        .ok_or_else(|| CliError::Config(format!("unknown channel '{}'", g.channel_b)))?;
    let delays = linspace(g.tau_start, g.tau_stop, g.points);
    let trace = g2(params, ch_a, ch_b, &delays)?;
    let mut out = String::new();
    write_header(&mut out, "g2", r, "tau_ns,g2");
    for (t, v) in trace.delays.iter().zip(&trace.values) {
        out.push_str(&format!("{},{}\n", fmt_f64(*t), fmt_f64(*v)));
    }
    Ok(out)
}

fn fit_rabi_cmd(r: &Resolved, params: &TrionParams) -> Result<String, CliError> {
    let f = require(&r.fit_rabi, "fit_rabi")?;
    let fit = fit_rabi_from_power(&f.powers, &f.intensities, params.gamma_r)?;
    let mut out = String::new();
    write_header(
        &mut out,
        "fit-rabi",
        r,
        "omega_at_unit_power_ghz,residual_norm,gamma_r_ghz",
    );
    out.push_str(&format!(
        "{},{},{}\n",
        fmt_f64(to_ghz(fit.omega_at_unit_power)),
        fmt_f64(fit.residual_norm),
        fmt_f64(to_ghz(fit.fixed_gamma_r)),
    ));
    Ok(out)
}

fn rate_compare_cmd(r: &Resolved, params: &TrionParams) -> Result<String, CliError> {
    let rc = require(&r.rate_compare, "rate_compare")?;
    let grid_ghz = linspace(rc.start, rc.stop, rc.points);
    let axis = AxisSpec {
        field: ParamField::Delta2,
        values: grid_ghz.iter().map(|&v| ghz(v)).collect(),
    };
    let master = sweep(params, std::slice::from_ref(&axis), Observable::Fluorescence)?;
    let rate = sweep(params, std::slice::from_ref(&axis), Observable::RateFluorescence)?;
    let mut out = String::new();
    write_header(
        &mut out,
        "rate-compare",
        r,
        "delta2_ghz,fluorescence_per_ns,rate_fluorescence_per_ns",
    );
    for (i, &x) in grid_ghz.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_f64(x),
            fmt_f64(master.values[[i, 0]]),
            fmt_f64(rate.values[[i, 0]])
        ));
    }
    Ok(out)
}
