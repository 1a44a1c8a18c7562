//! `surfnoise` — sweeps of field-noise response functions above a diffusive
//! metal surface, with CSV/JSON output and power-law fits.
//!
//! Exit status: 0 success, 2 configuration error, 3 success with
//! non-converged rows (flagged in the data).

mod config;

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use surfnoise::fit::fit_power_law;
use surfnoise::response::Channel;
use surfnoise::scales::{derive_scales, validity_report, MediumSpec, Model, ProbeSpec};
use surfnoise::sweep::{
    build_tables, eval_job, plan, FigurePreset, GridVar, Job, Mode, OutputFormat, Row, RunConfig,
    SweepError, SweepTable, TableRows,
};

#[derive(Parser)]
#[command(name = "surfnoise", version, about = "Field noise above a diffusive metal surface")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a sweep and write one table per (model, channel).
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Configuration file (key = value with [section] headers); flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Models: local | charge_layer | continuous_charge (comma separated).
    #[arg(long, value_delimiter = ',')]
    model: Vec<String>,
    /// Channels: alpha_zz | alpha_xx | b_zz | delta_b_xx (comma separated).
    #[arg(long, value_delimiter = ',')]
    channel: Vec<String>,
    /// Figure preset: fig1 | fig2.
    #[arg(long)]
    figure: Option<String>,
    /// Power-law fit window over the grid variable: START STOP.
    #[arg(long, num_args = 2, value_names = ["START", "STOP"])]
    fit: Option<Vec<f64>>,
    /// Output format: csv | json.
    #[arg(long)]
    format: Option<String>,
    /// Output directory (default "out").
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: number of processors).
    #[arg(long)]
    jobs: Option<usize>,
    /// Quadrature relative tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// D0 values for the diffusive models (comma separated).
    #[arg(long, value_delimiter = ',')]
    d0: Vec<f64>,
    /// omega*delta/c for dimensionless sweeps.
    #[arg(long)]
    omega_delta_over_c: Option<f64>,
    /// Grid start / stop / count overrides (log-spaced grid).
    #[arg(long)]
    grid_start: Option<f64>,
    #[arg(long)]
    grid_stop: Option<f64>,
    #[arg(long)]
    grid_count: Option<usize>,
    /// Grid variable: z0_over_delta | k_delta | omega.
    #[arg(long)]
    grid_var: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Run(args) => run(args),
    };
    std::process::exit(code);
}

fn config_fail(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn resolve_config(args: &RunArgs) -> Result<RunConfig, i32> {
    let mut cfg = config::default_config();

    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_fail(format!("config file {}: {e}", path.display())))?;
        let pairs = config::parse_pairs(&text).map_err(|e| config_fail(e))?;
        config::apply_pairs(&mut cfg, &pairs).map_err(|e| config_fail(e))?;
    }

    // figure preset resets the baseline; explicit flags still override below
    if let Some(f) = &args.figure {
        cfg = match f.as_str() {
            "fig1" => RunConfig::preset_fig1(args.d0.first().copied()),
            "fig2" => RunConfig::preset_fig2(),
            other => {
                return Err(config_fail(format!(
                    "field 'figure': expected fig1 | fig2, got '{other}'"
                )))
            }
        };
    } else if let Some(FigurePreset::Fig1) = cfg.figure {
        cfg = RunConfig::preset_fig1(cfg.d0_list.first().copied());
    } else if let Some(FigurePreset::Fig2) = cfg.figure {
        cfg = RunConfig::preset_fig2();
    }

    if !args.model.is_empty() {
        cfg.models = args
            .model
            .iter()
            .map(|s| s.parse::<Model>())
            .collect::<Result<_, _>>()
            .map_err(|e| config_fail(format!("field 'model': {e}")))?;
    }
    if !args.channel.is_empty() {
        cfg.channels = args
            .channel
            .iter()
            .map(|s| s.parse::<Channel>())
            .collect::<Result<_, _>>()
            .map_err(|e| config_fail(format!("field 'channel': {e}")))?;
    }
    if !args.d0.is_empty() && args.figure.as_deref() != Some("fig1") {
        cfg.d0_list = args.d0.clone();
    }
    if let Some(w) = args.omega_delta_over_c {
        cfg.omega_delta_over_c = w;
    }
    if let Some(v) = args.grid_start {
        cfg.grid.start = v;
    }
    if let Some(v) = args.grid_stop {
        cfg.grid.stop = v;
    }
    if let Some(v) = args.grid_count {
        cfg.grid.count = v;
    }
    if let Some(v) = &args.grid_var {
        cfg.grid_var = match v.as_str() {
            "z0_over_delta" | "z0" => GridVar::Z0OverDelta,
            "k_delta" | "k" => GridVar::KDelta,
            "omega" => GridVar::Omega,
            other => {
                return Err(config_fail(format!(
                    "field 'grid_var': expected z0_over_delta | k_delta | omega, got '{other}'"
                )))
            }
        };
    }
    if let Some(t) = args.tol {
        cfg.rel_tol = t;
    }
    if let Some(f) = &args.format {
        cfg.format = match f.as_str() {
            "csv" => OutputFormat::Csv,
            "json" => OutputFormat::Json,
            other => {
                return Err(config_fail(format!(
                    "field 'format': expected csv | json, got '{other}'"
                )))
            }
        };
    }
    if let Some(fit) = &args.fit {
        cfg.fit_window = Some((fit[0], fit[1]));
    }

    cfg.validate().map_err(|e| config_fail(e))?;
    Ok(cfg)
}

/// Fixed-order parallel map: workers pull indices from a counter, results
/// land in their slots, so the output is independent of scheduling.
fn eval_parallel(
    cfg: &RunConfig,
    jobs: &[Job],
    threads: usize,
) -> Result<Vec<Row>, SweepError> {
    let threads = threads.max(1).min(jobs.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<Row, SweepError>>>> =
        jobs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let r = eval_job(cfg, &jobs[i]);
                *slots[i].lock().expect("result slot") = Some(r);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("result slot").expect("job evaluated"))
        .collect()
}

fn print_fits(cfg: &RunConfig, table: &SweepTable, window: (f64, f64)) {
    let TableRows::Sweep(rows) = &table.rows else {
        return;
    };
    let mut start = 0;
    while start < rows.len() {
        let key = (rows[start].model, rows[start].d0, rows[start].channel);
        let mut end = start + 1;
        while end < rows.len() && (rows[end].model, rows[end].d0, rows[end].channel) == key {
            end += 1;
        }
        let xs: Vec<f64> = rows[start..end]
            .iter()
            .filter(|r| r.grid_value >= window.0 && r.grid_value <= window.1)
            .map(|r| r.grid_value)
            .collect();
        let ys: Vec<f64> = rows[start..end]
            .iter()
            .filter(|r| r.grid_value >= window.0 && r.grid_value <= window.1)
            .map(|r| r.im_scaled)
            .collect();
        match fit_power_law(&xs, &ys) {
            Ok(fit) => println!(
                "fit {} model={} D0={} channel={} window=[{}, {}]: exponent = {:.6} +/- {:.6} ({} points)",
                table.name, key.0, key.1, key.2, window.0, window.1, fit.exponent, fit.stderr, fit.points
            ),
            Err(e) => println!(
                "fit {} model={} D0={} channel={}: not fitted ({e})",
                table.name, key.0, key.1, key.2
            ),
        }
        let _ = cfg;
        start = end;
    }
}

fn warn_validity(cfg: &RunConfig) {
    // physical-mode sweeps get a regime-assumption report on stderr
    if cfg.mode != Mode::Physical {
        return;
    }
    let Some(p) = &cfg.physical else { return };
    let points = cfg.grid.points();
    let mid = points[points.len() / 2];
    for &model in &cfg.models {
        let Ok(med) = MediumSpec::new(p.sigma, p.diffusion_bulk, p.diffusion_surface, model)
        else {
            continue;
        };
        let (omega, z0) = match cfg.grid_var {
            GridVar::Omega => (mid, p.z0.unwrap_or(1e-4)),
            _ => (p.omega.unwrap_or(1e7), mid),
        };
        let Ok(probe) = ProbeSpec::new(omega, z0, cfg.temperature) else {
            continue;
        };
        if let Ok(warns) = validity_report(&med, &probe) {
            for w in warns {
                eprintln!("warning [{}]: {w}", model.name());
            }
            if let Ok(s) = derive_scales(&med, &probe) {
                eprintln!(
                    "info [{}]: delta = {:.4e} cm, lambda = {:.4e} cm, D0 = {:.4e}",
                    model.name(),
                    s.skin_depth,
                    s.wavelength,
                    s.d0_surface
                );
            }
        }
    }
}

fn run(args: RunArgs) -> i32 {
    let cfg = match resolve_config(&args) {
        Ok(c) => c,
        Err(code) => return code,
    };
    warn_validity(&cfg);

    let jobs = match plan(&cfg) {
        Ok(j) => j,
        Err(e) => return config_fail(e),
    };
    let threads = args.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    let rows = match eval_parallel(&cfg, &jobs, threads) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let tables = build_tables(&cfg, rows);

    let out_dir = args.out.clone().unwrap_or_else(|| PathBuf::from("out"));
    if let Err(e) = std::fs::create_dir_all(&out_dir) {
        eprintln!("error: cannot create {}: {e}", out_dir.display());
        return 1;
    }

    let mut nonconverged = false;
    for table in &tables {
        nonconverged |= table.any_nonconverged();
        let (ext, payload) = match cfg.format {
            OutputFormat::Csv => ("csv", table.to_csv()),
            OutputFormat::Json => ("json", table.to_json(&cfg)),
        };
        let path = out_dir.join(format!("{}.{ext}", table.name));
        if let Err(e) = std::fs::write(&path, payload) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 1;
        }
        println!("wrote {}", path.display());
        if let Some(window) = cfg.fit_window {
            print_fits(&cfg, table, window);
        }
    }

    if nonconverged {
        eprintln!("warning: some rows did not converge to the requested tolerance");
        3
    } else {
        0
    }
}
