use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oscillode::config::{config_path, Overrides, Settings};
use oscillode::formats::{
    classification_json, default_alphas, drift_table, write_a_thresholds, write_b_thresholds,
    write_drift_table, write_events, write_mean_path, write_trajectory,
};
use oscillode::parallel::{par_find_a, par_find_b, par_sweep};
use oscillode::report::{build_report, write_report};
use oscillode::{exit_code, figure, Error, Result};
use oscillode_core::averaging::solve_mean_path;
use oscillode_core::{classify, integrate, ProblemParams};

/// Numerical laboratory for y'(x) = cos(pi x y), y(0) = a.
#[derive(Parser)]
#[command(name = "oscillode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Relative integrator tolerance.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Absolute integrator tolerance.
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Integration horizon.
    #[arg(long)]
    x_max: Option<f64>,
    /// Output file (directory for `figure`); standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available cores.
    #[arg(long)]
    workers: Option<usize>,
    /// Config file; overrides OSCILLODE_CONFIG.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn settings(&self, width: Option<f64>) -> Result<Settings> {
        let file = match config_path(self.config.clone()) {
            Some(p) => Overrides::load(&p)?,
            None => Overrides::default(),
        };
        let flags = Overrides {
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            x_max: self.x_max,
            width,
            workers: self.workers,
            ..Overrides::default()
        };
        file.then(flags).resolve()
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Integrate from y(0) = a; trajectory CSV followed by a `# {json}`
    /// classification footer.
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        /// Also write the events CSV here.
        #[arg(long)]
        events: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Classify one or more initial values; one JSON object per line.
    Classify {
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',', allow_negative_numbers = true)]
        a: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Critical initial values a_n; CSV `n,a_n,width`.
    FindAn {
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long)]
        width: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Separatrix diagonal crossings b_n; CSV `n,b_n,lo_bound,hi_bound,width`.
    FindBn {
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long)]
        width: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Averaged mean path from (0, a) to the diagonal; CSV `x,y`.
    Meanpath {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Per-cycle drift and mean slopes; CSV `alpha,drift,slope_X,slope_xy`.
    DriftTable {
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        /// Comma-separated alphas; defaults to 0.05, 0.10, ..., 0.95.
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Measured a_n against 2^(5/6) sqrt(n) and 2^(1/3) b_(n-1).
    Report {
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        width: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Plot-ready data for figure 1 or 2, written into --out (a directory).
    Figure {
        id: u32,
        /// Band family for figure 2.
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Solve { a, events, common } => {
            let settings = common.settings(None)?;
            let traj = integrate(ProblemParams::new(a)?, &settings.solver)?;
            let class = classify(&traj);
            let mut out = common.output()?;
            write_trajectory(&mut out, &traj)?;
            writeln!(out, "# {}", classification_json(&class)?)?;
            out.flush()?;
            if let Some(p) = events {
                write_events(BufWriter::new(File::create(p)?), traj.events())?;
            }
            Ok(if class.settled { 0 } else { 2 })
        }
        Command::Classify { a, common } => {
            let settings = common.settings(None)?;
            let results = par_sweep(&a, &settings.solver, settings.workers);
            let mut out = common.output()?;
            let mut status = 0;
            for (a, r) in a.iter().zip(results) {
                match r {
                    Ok(c) => {
                        writeln!(out, "{}", classification_json(&c)?)?;
                        if !c.settled {
                            status = status.max(2);
                        }
                    }
                    Err(e) => {
                        eprintln!("a = {a}: {e}");
                        status = status.max(exit_code(&e.into()) as u8);
                    }
                }
            }
            out.flush()?;
            Ok(status)
        }
        Command::FindAn { n, width, common } => {
            if n.contains(&0) {
                return Err(Error::Invalid("a_n is defined for n >= 1".into()));
            }
            let settings = common.settings(width)?;
            let results = par_find_a(&n, &settings.solver, settings.width, settings.workers);
            emit_thresholds(&common, &n, results, |w, rows| write_a_thresholds(w, rows))
        }
        Command::FindBn { n, width, common } => {
            let settings = common.settings(width)?;
            let results = par_find_b(&n, &settings.solver, settings.width, settings.workers);
            emit_thresholds(&common, &n, results, |w, rows| write_b_thresholds(w, rows))
        }
        Command::Meanpath { a, common } => {
            let settings = common.settings(None)?;
            let path = solve_mean_path(a, &settings.solver)?;
            let mut out = common.output()?;
            write_mean_path(&mut out, &path)?;
            Ok(0)
        }
        Command::DriftTable { omega, alpha, common } => {
            let alphas = if alpha.is_empty() { default_alphas() } else { alpha };
            let rows = drift_table(&alphas, omega)?;
            write_drift_table(common.output()?, &rows)?;
            Ok(0)
        }
        Command::Report { n_max, width, common } => {
            let settings = common.settings(width)?;
            let rows = build_report(n_max, &settings)?;
            let mut ok = Vec::new();
            let mut status = 0;
            for (n, r) in rows {
                match r {
                    Ok(row) => ok.push(row),
                    Err(e) => {
                        eprintln!("n = {n}: {e}");
                        status = status.max(exit_code(&e.into()) as u8);
                    }
                }
            }
            write_report(common.output()?, &ok)?;
            Ok(status)
        }
        Command::Figure { id, n, common } => {
            let settings = common.settings(None)?;
            let dir = common.out.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir)?;
            let written = match id {
                1 => figure::figure1(&dir, &settings)?,
                2 => figure::figure2(&dir, n, &settings)?,
                other => return Err(Error::Invalid(format!("unknown figure id {other}; expected 1 or 2"))),
            };
            list_files(&written);
            Ok(0)
        }
    }
}

fn emit_thresholds<F>(
    common: &Common,
    ns: &[u32],
    results: Vec<std::result::Result<oscillode_core::ThresholdResult, oscillode_core::Error>>,
    write: F,
) -> Result<u8>
where
    F: FnOnce(&mut dyn Write, &[oscillode_core::ThresholdResult]) -> Result<()>,
{
    let mut rows = Vec::new();
    let mut status = 0;
    for (n, r) in ns.iter().zip(results) {
        match r {
            Ok(t) => rows.push(t),
            Err(e) => {
                eprintln!("n = {n}: {e}");
                status = status.max(exit_code(&e.into()) as u8);
            }
        }
    }
    let mut out = common.output()?;
    write(&mut out, &rows)?;
    out.flush()?;
    Ok(status)
}

fn list_files(paths: &[PathBuf]) {
    for p in paths {
        println!("{}", p.file_name().map_or_else(|| p.display().to_string(), |f| Path::new(f).display().to_string()));
    }
}
