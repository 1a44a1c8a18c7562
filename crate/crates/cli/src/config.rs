//! Flat key = value configuration files with [section] headers.
//!
//! Zero-dependency parser: '#' starts a comment, keys are `section.key`
//! internally, values are free text trimmed of whitespace. Unknown keys are
//! errors so that typos cannot silently change a run.

use std::collections::BTreeMap;

use surfnoise::response::Channel;
use surfnoise::scales::{Model, SIGMA_SI_TO_CGS};
use surfnoise::sweep::{
    FigurePreset, GridSpec, GridVar, Mode, OutputFormat, PhysicalParams, RunConfig,
};

#[derive(Debug)]
pub struct ConfigError {
    pub field: String,
    pub reason: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config field '{}': {}", self.field, self.reason)
    }
}

impl std::error::Error for ConfigError {}

fn err(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError {
        field: field.to_string(),
        reason: reason.into(),
    }
}

/// Parse the file into `section.key -> value` pairs.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut section = String::new();
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            section = line[1..line.len() - 1].trim().to_string();
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(err(
                &format!("line {}", lineno + 1),
                format!("expected 'key = value', got '{line}'"),
            ));
        };
        let key = if section.is_empty() {
            k.trim().to_string()
        } else {
            format!("{}.{}", section, k.trim())
        };
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn parse_f64(field: &str, v: &str) -> Result<f64, ConfigError> {
    v.parse::<f64>()
        .map_err(|_| err(field, format!("expected a number, got '{v}'")))
}

fn parse_usize(field: &str, v: &str) -> Result<usize, ConfigError> {
    v.parse::<usize>()
        .map_err(|_| err(field, format!("expected an integer, got '{v}'")))
}

fn parse_list<T, F: Fn(&str, &str) -> Result<T, ConfigError>>(
    field: &str,
    v: &str,
    f: F,
) -> Result<Vec<T>, ConfigError> {
    v.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| f(field, s))
        .collect()
}

/// Baseline configuration used when neither the file nor the flags override
/// a value: a dimensionless alpha_zz distance sweep of the local model.
pub fn default_config() -> RunConfig {
    RunConfig {
        mode: Mode::Dimensionless,
        grid_var: GridVar::Z0OverDelta,
        grid: GridSpec {
            start: 1e-2,
            stop: 1e2,
            count: 41,
        },
        models: vec![Model::Local],
        channels: vec![Channel::AlphaZz],
        d0_list: vec![0.0],
        omega_delta_over_c: 1e-6,
        physical: None,
        temperature: None,
        rel_tol: 1e-9,
        figure: None,
        fit_window: None,
        format: OutputFormat::Csv,
    }
}

/// Apply the parsed file on top of `config`. Unknown keys are rejected.
pub fn apply_pairs(
    config: &mut RunConfig,
    pairs: &BTreeMap<String, String>,
) -> Result<(), ConfigError> {
    let mut physical = config.physical.unwrap_or(PhysicalParams {
        sigma: 0.0,
        diffusion_bulk: 0.0,
        diffusion_surface: 0.0,
        omega: None,
        z0: None,
    });
    let mut physical_touched = false;
    let mut fit_start: Option<f64> = None;
    let mut fit_stop: Option<f64> = None;

    for (key, v) in pairs {
        match key.as_str() {
            "run.mode" => {
                config.mode = match v.as_str() {
                    "dimensionless" => Mode::Dimensionless,
                    "physical" => Mode::Physical,
                    other => {
                        return Err(err(
                            "run.mode",
                            format!("expected dimensionless | physical, got '{other}'"),
                        ))
                    }
                }
            }
            "run.models" => {
                config.models = parse_list("run.models", v, |f, s| {
                    s.parse::<Model>().map_err(|e| err(f, e))
                })?;
            }
            "run.channels" => {
                config.channels = parse_list("run.channels", v, |f, s| {
                    s.parse::<Channel>().map_err(|e| err(f, e))
                })?;
            }
            "run.figure" => {
                config.figure = Some(match v.as_str() {
                    "fig1" => FigurePreset::Fig1,
                    "fig2" => FigurePreset::Fig2,
                    other => {
                        return Err(err("run.figure", format!("expected fig1 | fig2, got '{other}'")))
                    }
                });
            }
            "run.format" => {
                config.format = match v.as_str() {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => {
                        return Err(err("run.format", format!("expected csv | json, got '{other}'")))
                    }
                }
            }
            "run.tol" => config.rel_tol = parse_f64("run.tol", v)?,
            "run.fit_start" => fit_start = Some(parse_f64("run.fit_start", v)?),
            "run.fit_stop" => fit_stop = Some(parse_f64("run.fit_stop", v)?),
            "grid.var" => {
                config.grid_var = match v.as_str() {
                    "z0_over_delta" | "z0" => GridVar::Z0OverDelta,
                    "k_delta" | "k" => GridVar::KDelta,
                    "omega" => GridVar::Omega,
                    other => {
                        return Err(err(
                            "grid.var",
                            format!("expected z0_over_delta | k_delta | omega, got '{other}'"),
                        ))
                    }
                }
            }
            "grid.start" => config.grid.start = parse_f64("grid.start", v)?,
            "grid.stop" => config.grid.stop = parse_f64("grid.stop", v)?,
            "grid.count" => config.grid.count = parse_usize("grid.count", v)?,
            "dimensionless.omega_delta_over_c" => {
                config.omega_delta_over_c =
                    parse_f64("dimensionless.omega_delta_over_c", v)?
            }
            "dimensionless.d0_list" => {
                config.d0_list = parse_list("dimensionless.d0_list", v, parse_f64)?;
            }
            "physical.sigma_cgs" => {
                physical.sigma = parse_f64("physical.sigma_cgs", v)?;
                physical_touched = true;
            }
            "physical.sigma_si" => {
                physical.sigma = parse_f64("physical.sigma_si", v)? * SIGMA_SI_TO_CGS;
                physical_touched = true;
            }
            "physical.d_cm2_s" => {
                physical.diffusion_bulk = parse_f64("physical.d_cm2_s", v)?;
                physical_touched = true;
            }
            "physical.ds_cm2_s" => {
                physical.diffusion_surface = parse_f64("physical.ds_cm2_s", v)?;
                physical_touched = true;
            }
            "physical.omega" => {
                physical.omega = Some(parse_f64("physical.omega", v)?);
                physical_touched = true;
            }
            "physical.z0" => {
                physical.z0 = Some(parse_f64("physical.z0", v)?);
                physical_touched = true;
            }
            "physical.temperature" => {
                config.temperature = Some(parse_f64("physical.temperature", v)?)
            }
            other => return Err(err(other, "unknown configuration key")),
        }
    }
    if physical_touched {
        config.physical = Some(physical);
    }
    match (fit_start, fit_stop) {
        (Some(a), Some(b)) => config.fit_window = Some((a, b)),
        (None, None) => {}
        _ => {
            return Err(err(
                "run.fit_start/run.fit_stop",
                "fit window needs both start and stop",
            ))
        }
    }
    Ok(())
}
