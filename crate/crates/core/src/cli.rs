//! Command-line front end: configuration merging, dispatch and exit codes.
//!
//! A JSON config supplies defaults and command-line flags override it.
//! Single-system commands (`potential`, `spectrum`, `wh`) print CSV to
//! stdout unless `--out` names a directory; experiment commands always write
//! `<name>.csv` and `<name>.json` into the output directory (default `.`).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::disorder::{generate_pattern, matched_sigma, DisorderPattern, DisorderSpec};
use crate::ed::{solve_qubit_spectrum, EdOptions};
use crate::error::{Error, Result};
use crate::experiments::{
    run_fig2, run_fig3, run_fig4, write_experiment, Engine, EnsembleSpec, SweepSpec,
};
use crate::mbpt::{pt_walsh_rows, write_pt_walsh_csv, PtTensors, DEFAULT_DENOM_TOL};
use crate::modes::single_particle_modes;
use crate::walsh::walsh_hadamard;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SIZE_CAP: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "transmon-crosstalk", version, about = "Crosstalk of coupled transmon arrays by exact diagonalization and perturbation theory")]
pub struct Cli {
    /// JSON configuration file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Base seed for Gaussian patterns.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Site frequencies of the pattern.
    Potential(Params),
    /// Exact qubit spectrum of all 2^N bit-strings.
    Spectrum(Params),
    /// Walsh-Hadamard coefficients (full table from ED, weight ≤ 3 from PT).
    Wh(Params),
    /// Aubry-André vs Gaussian ensemble, mean nearest-neighbour |w| vs coupling.
    Fig2(Params),
    /// Weight-2 coefficients from ED and PT along the coupling grid.
    Fig3(Params),
    /// Range-binned weight-2 coefficients on a long array from PT.
    Fig4(Params),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DisorderChoice {
    Aa,
    Gaussian,
    GaussianEnsemble,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Ed,
    Pt,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Ed => Engine::Ed,
            EngineArg::Pt => Engine::Pt,
            EngineArg::Both => Engine::Both,
        }
    }
}

/// Physical and numerical parameters shared by all subcommands. Energies
/// are in GHz.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    /// Array length L (the lattice is 2 × L).
    #[arg(long = "L", alias = "length")]
    pub l: Option<usize>,
    #[arg(long)]
    pub mean: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub ec: Option<f64>,
    /// Coupling(s) J, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub j: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub engine: Option<EngineArg>,
    #[arg(long, value_enum)]
    pub disorder: Option<DisorderChoice>,
    /// Gaussian ensemble size.
    #[arg(long)]
    pub realizations: Option<usize>,
    /// Width of a single Gaussian pattern (defaults to the matched width).
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub denom_tol: Option<f64>,
    #[arg(long)]
    pub overlap_threshold: Option<f64>,
    #[arg(long)]
    pub n_max_ed: Option<usize>,
    #[arg(long)]
    pub max_sector_dim: Option<usize>,
}

/// Contents of a `--config` file. Every field is optional; unknown keys are
/// rejected.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub l: Option<usize>,
    pub mean_ghz: Option<f64>,
    pub delta_ghz: Option<f64>,
    pub ec_ghz: Option<f64>,
    pub j_grid_ghz: Option<Vec<f64>>,
    pub engine: Option<Engine>,
    pub disorder: Option<DisorderConfig>,
    pub out_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub denom_tol_ghz: Option<f64>,
    pub overlap_threshold: Option<f64>,
    pub n_max_ed: Option<usize>,
    pub max_sector_dim: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisorderConfig {
    pub kind: DisorderChoice,
    pub n_realizations: Option<usize>,
    pub base_seed: Option<u64>,
    pub sigma_ghz: Option<f64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Potential,
    Spectrum,
    Wh,
    Fig2,
    Fig3,
    Fig4,
}

/// Fully resolved inputs for one invocation.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub spec: SweepSpec,
    pub disorder: DisorderChoice,
    pub sigma: Option<f64>,
    pub base_seed: u64,
    pub out_dir: Option<PathBuf>,
    pub threads: Option<usize>,
}

fn resolve(kind: Kind, p: &Params, cfg: &RunConfig, cli: &Cli) -> Result<Resolved> {
    let mut base = match kind {
        Kind::Fig2 => SweepSpec::fig2_default(),
        Kind::Fig3 => SweepSpec::fig3_default(),
        Kind::Fig4 => SweepSpec::fig4_default(),
        Kind::Potential | Kind::Spectrum | Kind::Wh => SweepSpec {
            j_grid_ghz: vec![1e-3],
            engine: Engine::Ed,
            disorder: EnsembleSpec::Aa,
            ..SweepSpec::fig2_default()
        },
    };
    let experiment = matches!(kind, Kind::Fig2 | Kind::Fig3 | Kind::Fig4);

    base.length = match p.l.or(cfg.l) {
        Some(l) => l,
        None if experiment => base.length,
        None => return Err(Error::Config("missing lattice length: pass --L or set \"l\"".into())),
    };
    base.mean_ghz = p.mean.or(cfg.mean_ghz).unwrap_or(base.mean_ghz);
    base.delta_ghz = p.delta.or(cfg.delta_ghz).unwrap_or(base.delta_ghz);
    base.ec_ghz = p.ec.or(cfg.ec_ghz).unwrap_or(base.ec_ghz);
    if let Some(grid) = p.j.clone().or_else(|| cfg.j_grid_ghz.clone()) {
        base.j_grid_ghz = grid;
    }
    if let Some(engine) = p.engine.map(Engine::from).or(cfg.engine) {
        base.engine = engine;
    }
    base.denom_tol_ghz = p.denom_tol.or(cfg.denom_tol_ghz).unwrap_or(DEFAULT_DENOM_TOL);
    let defaults = EdOptions::default();
    base.ed = EdOptions {
        n_max_ed: p.n_max_ed.or(cfg.n_max_ed).unwrap_or(defaults.n_max_ed),
        max_sector_dim: p.max_sector_dim.or(cfg.max_sector_dim).unwrap_or(defaults.max_sector_dim),
        overlap_threshold: p
            .overlap_threshold
            .or(cfg.overlap_threshold)
            .unwrap_or(defaults.overlap_threshold),
    };

    let file_disorder = cfg.disorder.as_ref();
    let default_choice = match base.disorder {
        EnsembleSpec::Aa => DisorderChoice::Aa,
        EnsembleSpec::GaussianEnsemble { .. } => DisorderChoice::GaussianEnsemble,
    };
    let choice = p.disorder.or(file_disorder.map(|d| d.kind)).unwrap_or(default_choice);
    let base_seed = cli
        .seed
        .or(file_disorder.and_then(|d| d.base_seed))
        .unwrap_or(0);
    let sigma = p.sigma.or(file_disorder.and_then(|d| d.sigma_ghz));
    let default_n = match base.disorder {
        EnsembleSpec::GaussianEnsemble { n_realizations, .. } => n_realizations,
        EnsembleSpec::Aa => 100,
    };
    let n_realizations = p
        .realizations
        .or(file_disorder.and_then(|d| d.n_realizations))
        .unwrap_or(default_n);

    base.disorder = match (choice, experiment) {
        (DisorderChoice::Aa, _) => EnsembleSpec::Aa,
        (DisorderChoice::GaussianEnsemble, true) => EnsembleSpec::GaussianEnsemble {
            n_realizations,
            base_seed,
        },
        (DisorderChoice::Gaussian, false) => EnsembleSpec::Aa,
        (DisorderChoice::Gaussian, true) => {
            return Err(Error::Config(
                "experiments use disorder kind aa or gaussian_ensemble".into(),
            ))
        }
        (DisorderChoice::GaussianEnsemble, false) => {
            return Err(Error::Config(
                "single-system commands use disorder kind aa or gaussian".into(),
            ))
        }
    };
    if !experiment && base.j_grid_ghz.len() != 1 && kind != Kind::Potential {
        return Err(Error::Config(format!(
            "this command takes a single coupling, got {}",
            base.j_grid_ghz.len()
        )));
    }
    if let Some(s) = sigma {
        if !(s >= 0.0) {
            return Err(Error::Config(format!("sigma must be non-negative, got {s}")));
        }
    }
    base.validate()?;

    Ok(Resolved {
        spec: base,
        disorder: choice,
        sigma,
        base_seed,
        out_dir: cli.out.clone().or_else(|| cfg.out_dir.clone()),
        threads: cli.threads.or(cfg.threads),
    })
}

impl Resolved {
    fn pattern(&self) -> Result<(crate::lattice::Lattice, DisorderPattern)> {
        let lattice = self.spec.lattice()?;
        let aa = self.spec.aa_pattern(&lattice)?;
        let pattern = match self.disorder {
            DisorderChoice::Gaussian => {
                let sigma = match self.sigma {
                    Some(s) => s,
                    None => matched_sigma(&aa)?,
                };
                generate_pattern(
                    &lattice,
                    DisorderSpec::gaussian(self.spec.mean_ghz, self.spec.delta_ghz, sigma, self.base_seed),
                )?
            }
            _ => aa,
        };
        Ok((lattice, pattern))
    }

    fn single_j(&self) -> f64 {
        self.spec.j_grid_ghz[0]
    }
}

/// Maps a library error to the process exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SizeCap(_) => EXIT_SIZE_CAP,
        Error::Numerical(_) => EXIT_NUMERICAL,
        Error::Io(_) | Error::Csv(_) => EXIT_FAILURE,
        _ => EXIT_CONFIG,
    }
}

fn emit(out_dir: Option<&Path>, file: &str, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(file);
            let mut w = BufWriter::new(File::create(&path)?);
            body(&mut w)?;
            w.flush()?;
            eprintln!("wrote {}", path.display());
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn warn_all<S: AsRef<str>>(warnings: impl IntoIterator<Item = S>) {
    for w in warnings {
        eprintln!("warning: {}", w.as_ref());
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let (kind, params) = match &cli.command {
        Command::Potential(p) => (Kind::Potential, p),
        Command::Spectrum(p) => (Kind::Spectrum, p),
        Command::Wh(p) => (Kind::Wh, p),
        Command::Fig2(p) => (Kind::Fig2, p),
        Command::Fig3(p) => (Kind::Fig3, p),
        Command::Fig4(p) => (Kind::Fig4, p),
    };
    let r = resolve(kind, params, &cfg, cli)?;
    if let Some(n) = r.threads {
        if n == 0 {
            return Err(Error::Config("--threads must be at least 1".into()));
        }
        // A pool may already exist when called repeatedly in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let out = r.out_dir.as_deref();
    let experiment_dir = out.unwrap_or(Path::new("."));

    match kind {
        Kind::Potential => {
            let (lattice, pattern) = r.pattern()?;
            emit(out, "potential.csv", |w| pattern.write_csv(&lattice, w))
        }
        Kind::Spectrum => {
            if r.spec.engine != Engine::Ed {
                return Err(Error::Config("spectrum is computed by exact diagonalization (engine = ed)".into()));
            }
            let (lattice, pattern) = r.pattern()?;
            let table = solve_qubit_spectrum(&lattice, &pattern, r.single_j(), r.spec.ec_ghz, &r.spec.ed)?;
            warn_all(table.warnings().iter().map(|w| format!("state {} labeled with overlap {:.3}", w.bitstring, w.overlap)));
            emit(out, "spectrum.csv", |w| table.write_csv(w))
        }
        Kind::Wh => {
            let (lattice, pattern) = r.pattern()?;
            match r.spec.engine {
                Engine::Ed => {
                    let table = solve_qubit_spectrum(&lattice, &pattern, r.single_j(), r.spec.ec_ghz, &r.spec.ed)?;
                    warn_all(table.warnings().iter().map(|w| format!("state {} labeled with overlap {:.3}", w.bitstring, w.overlap)));
                    let wh = walsh_hadamard(table.energies())?;
                    emit(out, "wh_ed.csv", |w| wh.write_csv(w))
                }
                Engine::Pt => {
                    let modes = single_particle_modes(&lattice, &pattern, r.single_j())?;
                    warn_all(modes.warnings());
                    let tensors = PtTensors::<f64>::build(&modes, r.spec.ec_ghz, r.spec.denom_tol_ghz);
                    warn_all(tensors.resonances().iter().map(|res| {
                        format!("{:?} resonance at {:?}, denominator {:e} GHz", res.kind, res.indices, res.denominator_ghz)
                    }));
                    let rows = pt_walsh_rows(&tensors, &lattice, 3)?;
                    emit(out, "wh_pt.csv", |w| write_pt_walsh_csv(&rows, w))
                }
                Engine::Both => Err(Error::Config("wh needs a single engine (ed or pt)".into())),
            }
        }
        Kind::Fig2 => {
            let result = run_fig2(&r.spec)?;
            report(write_experiment(&result, experiment_dir)?, result.warnings.len())
        }
        Kind::Fig3 => {
            let result = run_fig3(&r.spec)?;
            report(write_experiment(&result, experiment_dir)?, result.warnings.len())
        }
        Kind::Fig4 => {
            let result = run_fig4(&r.spec)?;
            warn_all(&result.warnings);
            report(write_experiment(&result, experiment_dir)?, result.warnings.len())
        }
    }
}

fn report((csv, json): (PathBuf, PathBuf), warnings: usize) -> Result<()> {
    eprintln!("wrote {} and {}", csv.display(), json.display());
    if warnings > 0 {
        eprintln!("warning: {warnings} labeling/localization warnings recorded in the sidecar");
    }
    Ok(())
}

/// Parses `args`, runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
