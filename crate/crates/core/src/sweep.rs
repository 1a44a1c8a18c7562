//! Grid sweeps, figure presets and deterministic table output.
//!
//! A sweep is planned as a flat list of jobs (one per table row), evaluated
//! pure-functionally (safe to farm out to threads), and assembled into tables
//! with a metadata echo of the resolved configuration. Byte-identical output
//! for identical configuration is part of the contract: floats are printed
//! with 17 significant digits and the row order is fixed by the plan.

use serde::Serialize;
use thiserror::Error;

use crate::fit::local_slopes;
use crate::kernels::DimensionlessMedium;
use crate::quadrature::QuadSpec;
use crate::response::{scaled_im, Channel, ResponseError};
use crate::scales::{derive_scales, MediumSpec, Model, ProbeSpec, ScaleError, C_CGS};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("config field '{field}': {reason}")]
    Config { field: &'static str, reason: String },
    #[error(transparent)]
    Response(#[from] ResponseError),
    #[error(transparent)]
    Scale(#[from] ScaleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Dimensionless,
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GridVar {
    /// z0/δ (dimensionless mode) or z0 in cm (physical mode).
    Z0OverDelta,
    /// kδ; produces a reflection-spectrum table.
    KDelta,
    /// ω in rad/s (physical mode only).
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FigurePreset {
    Fig1,
    Fig2,
}

/// Log-spaced grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        if n == 1 {
            return vec![self.start];
        }
        let la = self.start.ln();
        let lb = self.stop.ln();
        (0..n)
            .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
            .collect()
    }

    fn validate(&self) -> Result<(), SweepError> {
        if !(self.start > 0.0 && self.stop > self.start) {
            return Err(SweepError::Config {
                field: "grid",
                reason: format!(
                    "need 0 < start < stop, got start={} stop={}",
                    self.start, self.stop
                ),
            });
        }
        if self.count < 2 {
            return Err(SweepError::Config {
                field: "grid",
                reason: format!("count must be >= 2, got {}", self.count),
            });
        }
        Ok(())
    }
}

/// Physical-mode parameters (Gaussian units).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhysicalParams {
    /// σ, 1/s.
    pub sigma: f64,
    /// D, cm²/s.
    pub diffusion_bulk: f64,
    /// D_s, cm²/s.
    pub diffusion_surface: f64,
    /// Fixed ω (rad/s) when the grid runs over z0.
    pub omega: Option<f64>,
    /// Fixed z0 (cm) when the grid runs over ω.
    pub z0: Option<f64>,
}

/// Fully resolved sweep configuration. Echoed into every output table
/// (jobs/out-path are excluded: they do not affect the data bytes).
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub grid_var: GridVar,
    pub grid: GridSpec,
    pub models: Vec<Model>,
    pub channels: Vec<Channel>,
    pub d0_list: Vec<f64>,
    pub omega_delta_over_c: f64,
    pub physical: Option<PhysicalParams>,
    pub temperature: Option<f64>,
    pub rel_tol: f64,
    pub figure: Option<FigurePreset>,
    pub fit_window: Option<(f64, f64)>,
    pub format: OutputFormat,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        self.grid.validate()?;
        if self.models.is_empty() {
            return Err(SweepError::Config {
                field: "models",
                reason: "at least one model is required".into(),
            });
        }
        if self.channels.is_empty() && self.grid_var != GridVar::KDelta {
            return Err(SweepError::Config {
                field: "channels",
                reason: "at least one channel is required".into(),
            });
        }
        if !(self.omega_delta_over_c > 0.0) {
            return Err(SweepError::Config {
                field: "omega_delta_over_c",
                reason: format!("must be positive, got {}", self.omega_delta_over_c),
            });
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(SweepError::Config {
                field: "tol",
                reason: format!("must be in (0, 1e-2], got {}", self.rel_tol),
            });
        }
        for (i, d0) in self.d0_list.iter().enumerate() {
            if !(d0.is_finite() && *d0 >= 0.0) {
                return Err(SweepError::Config {
                    field: "d0_list",
                    reason: format!("entry {i} must be non-negative, got {d0}"),
                });
            }
        }
        match self.mode {
            Mode::Physical => {
                let p = self.physical.as_ref().ok_or(SweepError::Config {
                    field: "physical",
                    reason: "physical mode requires sigma and either omega or z0".into(),
                })?;
                if !(p.sigma > 0.0) {
                    return Err(SweepError::Config {
                        field: "physical.sigma",
                        reason: format!("must be positive, got {}", p.sigma),
                    });
                }
                match self.grid_var {
                    GridVar::Z0OverDelta => {
                        if p.omega.is_none() {
                            return Err(SweepError::Config {
                                field: "physical.omega",
                                reason: "z0 sweep in physical mode needs a fixed omega".into(),
                            });
                        }
                    }
                    GridVar::Omega => {
                        if p.z0.is_none() {
                            return Err(SweepError::Config {
                                field: "physical.z0",
                                reason: "omega sweep needs a fixed z0".into(),
                            });
                        }
                    }
                    GridVar::KDelta => {}
                }
            }
            Mode::Dimensionless => {
                if self.grid_var == GridVar::Omega {
                    return Err(SweepError::Config {
                        field: "grid_var",
                        reason: "omega sweeps require physical mode".into(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Fig. 1 reproduction: Im ε·Im r_p vs kδ at ωδ/c = 0.02 for the three
    /// models; the charge-layer curve's D0 defaults to 1 and is overridable.
    pub fn preset_fig1(d0: Option<f64>) -> Self {
        RunConfig {
            mode: Mode::Dimensionless,
            grid_var: GridVar::KDelta,
            grid: GridSpec {
                start: 1e-2,
                stop: 1e3,
                count: 101,
            },
            models: vec![Model::Local, Model::ChargeLayer, Model::ContinuousCharge],
            channels: vec![],
            d0_list: vec![d0.unwrap_or(1.0)],
            omega_delta_over_c: 0.02,
            physical: None,
            temperature: None,
            rel_tol: 1e-9,
            figure: Some(FigurePreset::Fig1),
            fit_window: None,
            format: OutputFormat::Csv,
        }
    }

    /// Fig. 2 reproduction: scaled Im α_zz vs z0/δ at ωδ/c = 1e-6 for the
    /// local curve plus charge-layer curves with D0 ∈ {0, 10, 100}.
    pub fn preset_fig2() -> Self {
        RunConfig {
            mode: Mode::Dimensionless,
            grid_var: GridVar::Z0OverDelta,
            grid: GridSpec {
                start: 1e-2,
                stop: 1e2,
                count: 81,
            },
            models: vec![Model::Local, Model::ChargeLayer],
            channels: vec![Channel::AlphaZz],
            d0_list: vec![0.0, 10.0, 100.0],
            omega_delta_over_c: 1e-6,
            physical: None,
            temperature: None,
            rel_tol: 1e-9,
            figure: Some(FigurePreset::Fig2),
            fit_window: None,
            format: OutputFormat::Csv,
        }
    }
}

/// One planned table row.
#[derive(Debug, Clone, Copy)]
pub struct Job {
    pub model: Model,
    pub d0: f64,
    pub channel: Option<Channel>,
    pub grid_value: f64,
}

/// Deterministic job list: model → D0 → channel → grid point.
pub fn plan(config: &RunConfig) -> Result<Vec<Job>, SweepError> {
    config.validate()?;
    let points = config.grid.points();
    let mut jobs = Vec::new();
    for &model in &config.models {
        let d0s: Vec<f64> = match model {
            Model::Local => vec![0.0],
            _ => config.d0_list.clone(),
        };
        for &d0 in &d0s {
            if config.grid_var == GridVar::KDelta {
                for &g in &points {
                    jobs.push(Job {
                        model,
                        d0,
                        channel: None,
                        grid_value: g,
                    });
                }
            } else {
                for &channel in &config.channels {
                    for &g in &points {
                        jobs.push(Job {
                            model,
                            d0,
                            channel: Some(channel),
                            grid_value: g,
                        });
                    }
                }
            }
        }
    }
    Ok(jobs)
}

/// Evaluated row of an electric/magnetic sweep table.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub grid_value: f64,
    pub model: &'static str,
    #[serde(rename = "D0")]
    pub d0: f64,
    pub channel: &'static str,
    pub im_scaled: f64,
    pub im_raw_cgs: f64,
    pub quad_rel_err: f64,
    pub local_slope: f64,
    #[serde(skip)]
    pub nonconverged: bool,
}

/// Evaluated row of a reflection-spectrum (fig1-style) table.
#[derive(Debug, Clone, Serialize)]
pub struct ReflectionRow {
    pub k_delta: f64,
    pub model: &'static str,
    #[serde(rename = "D0")]
    pub d0: f64,
    pub im_eps_im_r: f64,
}

#[derive(Debug, Clone)]
pub enum Row {
    Sweep(SweepRow),
    Reflection(ReflectionRow),
}

fn medium_for(model: Model, w: f64, d0: f64) -> DimensionlessMedium {
    // the swept D0 feeds the diffusion constant the model actually uses
    match model {
        Model::Local => DimensionlessMedium::new(model, w, 0.0, 0.0),
        Model::ChargeLayer => DimensionlessMedium::new(model, w, d0, 0.0),
        Model::ContinuousCharge => DimensionlessMedium::new(model, w, 0.0, d0),
    }
}

/// Evaluate one job (pure; thread-safe).
pub fn eval_job(config: &RunConfig, job: &Job) -> Result<Row, SweepError> {
    let quad = QuadSpec {
        rel_tol: config.rel_tol,
        ..QuadSpec::default()
    };
    match config.grid_var {
        GridVar::KDelta => {
            let med = medium_for(job.model, config.omega_delta_over_c, job.d0);
            let r = med.reflect_tm_z(job.grid_value).map_err(ResponseError::from)?;
            Ok(Row::Reflection(ReflectionRow {
                k_delta: job.grid_value,
                model: job.model.name(),
                d0: job.d0,
                im_eps_im_r: med.eps.im * r.im,
            }))
        }
        GridVar::Z0OverDelta => {
            let channel = job.channel.expect("planned with channel");
            let (w, zeta, delta) = match config.mode {
                Mode::Dimensionless => (config.omega_delta_over_c, job.grid_value, 1.0),
                Mode::Physical => {
                    let p = config.physical.as_ref().expect("validated");
                    let medium = MediumSpec::new(
                        p.sigma,
                        p.diffusion_bulk,
                        p.diffusion_surface,
                        job.model,
                    )?;
                    let probe = ProbeSpec::new(p.omega.expect("validated"), job.grid_value, None)?;
                    let scales = derive_scales(&medium, &probe)?;
                    (
                        scales.omega_delta_over_c,
                        job.grid_value / scales.skin_depth,
                        scales.skin_depth,
                    )
                }
            };
            let med = match config.mode {
                Mode::Dimensionless => medium_for(job.model, w, job.d0),
                Mode::Physical => {
                    let p = config.physical.as_ref().expect("validated");
                    let omega = p.omega.expect("validated");
                    let d2 = delta * delta;
                    DimensionlessMedium::new(
                        job.model,
                        w,
                        p.diffusion_surface / (omega * d2),
                        p.diffusion_bulk / (omega * d2),
                    )
                }
            };
            let (im_scaled, diag) = scaled_im(channel, &med, zeta, &quad)?;
            let d3 = delta * delta * delta;
            let im_raw = if channel.is_electric() {
                im_scaled * w * w / (4.0 * d3)
            } else {
                im_scaled / (C_CGS * d3)
            };
            Ok(Row::Sweep(SweepRow {
                grid_value: zeta,
                model: job.model.name(),
                d0: job.d0,
                channel: channel.name(),
                im_scaled,
                im_raw_cgs: im_raw,
                quad_rel_err: diag.rel_error,
                local_slope: f64::NAN,
                nonconverged: diag.flags.nonconverged,
            }))
        }
        GridVar::Omega => {
            let channel = job.channel.expect("planned with channel");
            let p = config.physical.as_ref().expect("validated");
            let medium =
                MediumSpec::new(p.sigma, p.diffusion_bulk, p.diffusion_surface, job.model)?;
            let probe = ProbeSpec::new(job.grid_value, p.z0.expect("validated"), None)?;
            let scales = derive_scales(&medium, &probe)?;
            let med = DimensionlessMedium::from_scales(job.model, &scales);
            let zeta = probe.z0 / scales.skin_depth;
            let (im_scaled, diag) = scaled_im(channel, &med, zeta, &quad)?;
            let d3 = scales.skin_depth.powi(3);
            let w = scales.omega_delta_over_c;
            let im_raw = if channel.is_electric() {
                im_scaled * w * w / (4.0 * d3)
            } else {
                im_scaled / (C_CGS * d3)
            };
            Ok(Row::Sweep(SweepRow {
                grid_value: job.grid_value,
                model: job.model.name(),
                d0: scales.d0_surface,
                channel: channel.name(),
                im_scaled,
                im_raw_cgs: im_raw,
                quad_rel_err: diag.rel_error,
                local_slope: f64::NAN,
                nonconverged: diag.flags.nonconverged,
            }))
        }
    }
}

/// A finished table: metadata echo plus rows of one kind.
#[derive(Debug, Clone)]
pub struct SweepTable {
    /// Base name for output files ("fig1", "sweep_local_alpha_zz", ...).
    pub name: String,
    pub meta: Vec<(String, String)>,
    pub rows: TableRows,
}

#[derive(Debug, Clone)]
pub enum TableRows {
    Sweep(Vec<SweepRow>),
    Reflection(Vec<ReflectionRow>),
}

impl SweepTable {
    pub fn any_nonconverged(&self) -> bool {
        match &self.rows {
            TableRows::Sweep(rows) => rows.iter().any(|r| r.nonconverged),
            TableRows::Reflection(_) => false,
        }
    }
}

fn meta_lines(config: &RunConfig) -> Vec<(String, String)> {
    let mut m = Vec::new();
    let mut push = |k: &str, v: String| m.push((k.to_string(), v));
    push("generator", "surfnoise".into());
    push("version", env!("CARGO_PKG_VERSION").into());
    push("unit_system", "gaussian-cgs (delta = 1 cm in dimensionless mode)".into());
    push(
        "scaling_convention",
        "electric: (8 pi sigma / omega) delta^3 Im alpha; magnetic: c delta^3 Im B".into(),
    );
    push(
        "mode",
        match config.mode {
            Mode::Dimensionless => "dimensionless".into(),
            Mode::Physical => "physical".into(),
        },
    );
    push(
        "grid_var",
        match config.grid_var {
            GridVar::Z0OverDelta => "z0_over_delta".into(),
            GridVar::KDelta => "k_delta".into(),
            GridVar::Omega => "omega".into(),
        },
    );
    push("grid_start", fmt17(config.grid.start));
    push("grid_stop", fmt17(config.grid.stop));
    push("grid_count", config.grid.count.to_string());
    push(
        "models",
        config
            .models
            .iter()
            .map(|m| m.name())
            .collect::<Vec<_>>()
            .join(","),
    );
    push(
        "channels",
        config
            .channels
            .iter()
            .map(|c| c.name())
            .collect::<Vec<_>>()
            .join(","),
    );
    push(
        "d0_list",
        config
            .d0_list
            .iter()
            .map(|v| fmt17(*v))
            .collect::<Vec<_>>()
            .join(","),
    );
    push("omega_delta_over_c", fmt17(config.omega_delta_over_c));
    if let Some(p) = &config.physical {
        push("physical.sigma", fmt17(p.sigma));
        push("physical.diffusion_bulk", fmt17(p.diffusion_bulk));
        push("physical.diffusion_surface", fmt17(p.diffusion_surface));
        if let Some(o) = p.omega {
            push("physical.omega", fmt17(o));
        }
        if let Some(z) = p.z0 {
            push("physical.z0", fmt17(z));
        }
    }
    if let Some(t) = config.temperature {
        push("temperature", fmt17(t));
    }
    push("rel_tol", fmt17(config.rel_tol));
    if let Some(f) = config.figure {
        push(
            "figure",
            match f {
                FigurePreset::Fig1 => "fig1".into(),
                FigurePreset::Fig2 => "fig2".into(),
            },
        );
    }
    if let Some((a, b)) = config.fit_window {
        push("fit_window", format!("{},{}", fmt17(a), fmt17(b)));
    }
    m
}

/// Assemble output tables from evaluated rows (in plan order).
///
/// Figure presets produce a single table; generic sweeps produce one table
/// per (model, channel) pair. Pointwise log-slopes are filled per
/// (model, D0, channel) group.
pub fn build_tables(config: &RunConfig, rows: Vec<Row>) -> Vec<SweepTable> {
    let meta = meta_lines(config);
    match config.grid_var {
        GridVar::KDelta => {
            let rows: Vec<ReflectionRow> = rows
                .into_iter()
                .map(|r| match r {
                    Row::Reflection(x) => x,
                    Row::Sweep(_) => unreachable!("k-delta plan produces reflection rows"),
                })
                .collect();
            let name = match config.figure {
                Some(FigurePreset::Fig1) => "fig1".to_string(),
                _ => "reflection".to_string(),
            };
            vec![SweepTable {
                name,
                meta,
                rows: TableRows::Reflection(rows),
            }]
        }
        _ => {
            let mut rows: Vec<SweepRow> = rows
                .into_iter()
                .map(|r| match r {
                    Row::Sweep(x) => x,
                    Row::Reflection(_) => unreachable!(),
                })
                .collect();
            // fill pointwise slopes within each (model, D0, channel) group;
            // plan order guarantees grid-contiguous groups
            let mut start = 0;
            while start < rows.len() {
                let key = (rows[start].model, rows[start].d0, rows[start].channel);
                let mut end = start + 1;
                while end < rows.len()
                    && (rows[end].model, rows[end].d0, rows[end].channel) == key
                {
                    end += 1;
                }
                let xs: Vec<f64> = rows[start..end].iter().map(|r| r.grid_value).collect();
                let ys: Vec<f64> = rows[start..end].iter().map(|r| r.im_scaled).collect();
                for (row, s) in rows[start..end].iter_mut().zip(local_slopes(&xs, &ys)) {
                    row.local_slope = s;
                }
                start = end;
            }
            if let Some(FigurePreset::Fig2) = config.figure {
                return vec![SweepTable {
                    name: "fig2".to_string(),
                    meta,
                    rows: TableRows::Sweep(rows),
                }];
            }
            // one table per (model, channel)
            let mut tables: Vec<SweepTable> = Vec::new();
            for &model in &config.models {
                for &channel in &config.channels {
                    let subset: Vec<SweepRow> = rows
                        .iter()
                        .filter(|r| r.model == model.name() && r.channel == channel.name())
                        .cloned()
                        .collect();
                    if subset.is_empty() {
                        continue;
                    }
                    tables.push(SweepTable {
                        name: format!("sweep_{}_{}", model.name(), channel.name()),
                        meta: meta.clone(),
                        rows: TableRows::Sweep(subset),
                    });
                }
            }
            tables
        }
    }
}

/// 17-significant-digit float formatting; round-trips f64 exactly.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "NONCONVERGED".to_string()
    }
}

impl SweepTable {
    /// CSV with '#'-prefixed metadata lines; comma-separated, '.' decimal.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        match &self.rows {
            TableRows::Sweep(rows) => {
                let var = self
                    .meta
                    .iter()
                    .find(|(k, _)| k == "grid_var")
                    .map(|(_, v)| v.as_str())
                    .unwrap_or("z0_over_delta");
                let first_col = if var == "omega" {
                    "omega_rad_s"
                } else {
                    "z0_over_delta"
                };
                out.push_str(&format!(
                    "{first_col},model,D0,channel,im_scaled,im_raw_cgs,quad_rel_err,local_slope\n"
                ));
                for r in rows {
                    out.push_str(&format!(
                        "{},{},{},{},{},{},{},{}\n",
                        fmt17(r.grid_value),
                        r.model,
                        fmt17(r.d0),
                        r.channel,
                        fmt17(r.im_scaled),
                        fmt17(r.im_raw_cgs),
                        fmt17(r.quad_rel_err),
                        fmt17(r.local_slope),
                    ));
                }
            }
            TableRows::Reflection(rows) => {
                out.push_str("k_delta,model,D0,im_eps_im_r\n");
                for r in rows {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        fmt17(r.k_delta),
                        r.model,
                        fmt17(r.d0),
                        fmt17(r.im_eps_im_r),
                    ));
                }
            }
        }
        out
    }

    /// JSON object with `meta` (resolved config) and `rows`.
    pub fn to_json(&self, config: &RunConfig) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            meta: &'a RunConfig,
            rows: RowsRef<'a>,
        }
        #[derive(Serialize)]
        #[serde(untagged)]
        enum RowsRef<'a> {
            Sweep(&'a [SweepRow]),
            Reflection(&'a [ReflectionRow]),
        }
        let doc = Doc {
            meta: config,
            rows: match &self.rows {
                TableRows::Sweep(r) => RowsRef::Sweep(r),
                TableRows::Reflection(r) => RowsRef::Reflection(r),
            },
        };
        serde_json::to_string_pretty(&doc).expect("table serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_names_offending_field() {
        let mut c = RunConfig::preset_fig2();
        c.channels.clear();
        match c.validate() {
            Err(SweepError::Config { field, .. }) => assert_eq!(field, "channels"),
            other => panic!("expected config error, got {other:?}"),
        }
        let mut c = RunConfig::preset_fig2();
        c.grid.count = 1;
        assert!(matches!(
            c.validate(),
            Err(SweepError::Config { field: "grid", .. })
        ));
        let mut c = RunConfig::preset_fig2();
        c.models.clear();
        assert!(matches!(
            c.validate(),
            Err(SweepError::Config { field: "models", .. })
        ));
    }

    #[test]
    fn plan_is_deterministic_and_grouped() {
        let c = RunConfig::preset_fig2();
        let jobs = plan(&c).unwrap();
        // local once + charge_layer x 3 D0 values, 81 points each
        assert_eq!(jobs.len(), 81 * (1 + 3));
        let jobs2 = plan(&c).unwrap();
        for (a, b) in jobs.iter().zip(&jobs2) {
            assert_eq!(a.grid_value, b.grid_value);
            assert_eq!(a.d0, b.d0);
        }
    }

    #[test]
    fn grid_is_log_spaced_sorted() {
        let g = GridSpec {
            start: 0.01,
            stop: 100.0,
            count: 5,
        };
        let p = g.points();
        assert_eq!(p.len(), 5);
        assert!((p[2] - 1.0).abs() < 1e-12);
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn csv_roundtrip_17_digits() {
        let v = 0.123456789012345678;
        let s = fmt17(v);
        let back: f64 = s.parse().unwrap();
        assert_eq!(v, back);
        assert_eq!(fmt17(f64::NAN), "NONCONVERGED");
    }

    #[test]
    fn small_sweep_end_to_end() {
        let mut c = RunConfig::preset_fig2();
        c.grid.count = 5;
        c.d0_list = vec![0.0, 10.0];
        c.rel_tol = 1e-7;
        let jobs = plan(&c).unwrap();
        let rows: Vec<Row> = jobs.iter().map(|j| eval_job(&c, j).unwrap()).collect();
        let tables = build_tables(&c, rows);
        assert_eq!(tables.len(), 1, "fig2 preset emits one table");
        let csv = tables[0].to_csv();
        assert!(csv.contains("z0_over_delta,model,D0,channel"));
        assert!(csv.contains("charge_layer"));
        // determinism
        let rows2: Vec<Row> = jobs.iter().map(|j| eval_job(&c, j).unwrap()).collect();
        let csv2 = build_tables(&c, rows2)[0].to_csv();
        assert_eq!(csv, csv2);
        // json carries meta + rows
        let json = tables[0].to_json(&c);
        assert!(json.contains("\"meta\""));
        assert!(json.contains("\"rows\""));
    }

    #[test]
    fn fig1_table_shape() {
        let mut c = RunConfig::preset_fig1(None);
        c.grid.count = 7;
        let jobs = plan(&c).unwrap();
        assert_eq!(jobs.len(), 7 * 3);
        let rows: Vec<Row> = jobs.iter().map(|j| eval_job(&c, j).unwrap()).collect();
        let tables = build_tables(&c, rows);
        assert_eq!(tables.len(), 1);
        let csv = tables[0].to_csv();
        assert!(csv.starts_with("# generator = surfnoise"));
        assert!(csv.contains("k_delta,model,D0,im_eps_im_r"));
        assert!(csv.contains("continuous_charge"));
    }
}
