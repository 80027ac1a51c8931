use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "rabi-spectra",
    version,
    about = "Spectra, Fock-space oracle runs and phase maps for squeezed-photon Jaynes-Cummings and Rabi models"
)]
pub struct Cli {
    /// File of `key=value` lines merged under the command-line flags (flags win).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form level table from the effective quadratic Hamiltonian.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of quasiparticle levels to report.
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Truncated Fock-space diagonalization with truncation doubling.
    #[command(allow_negative_numbers = true)]
    Oracle {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Also write the Hamiltonian at the final truncation as CSV.
        #[arg(long, value_name = "FILE")]
        export_matrix: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed form against the oracle, level by level.
    #[command(allow_negative_numbers = true)]
    Compare {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Coupling sweep in units of g_c: list `a,b,c` or range `start:stop:step`.
        #[arg(long = "g-over-gc", value_name = "VALUES")]
        g_over_gc: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Phase boundary, bifurcation branches, asymptotes or region maps in (κ, g/g_c).
    #[command(allow_negative_numbers = true)]
    Phase {
        #[arg(long, value_enum, conflicts_with_all = ["branches", "grid"])]
        curve: Option<Curve>,
        /// κ_∓ branches over a `--g-over-gc` range.
        #[arg(long, conflicts_with = "grid")]
        branches: bool,
        /// Region map over `--kappa` × `--g-over-gc`.
        #[arg(long)]
        grid: bool,
        /// κ values: single value, list or range.
        #[arg(long, value_name = "VALUES")]
        kappa: Option<String>,
        /// g/g_c values: single value, list or range.
        #[arg(long = "g-over-gc", value_name = "VALUES")]
        g_over_gc: Option<String>,
        /// Points per axis for ranges given without a step.
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suite and print a JSON summary.
    Validate {
        /// Restrict to groups: closed-form, asymptotics, oracle, phase.
        #[arg(long, value_delimiter = ',', value_name = "GROUP")]
        only: Vec<String>,
        /// Flip the sign of C wherever the suite reads coefficients.
        #[arg(long)]
        inject_error: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Mjc,
    Sr,
    Ar,
    Msr,
    Quadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    Boundary,
    Asymptotes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = Model::Sr)]
    pub model: Model,
    /// Cavity frequency ω_c.
    #[arg(long, default_value_t = 1.0)]
    pub wc: f64,
    /// Atomic frequency ω_a.
    #[arg(long, default_value_t = 1.0)]
    pub wa: f64,
    /// Rabi coupling g.
    #[arg(long)]
    pub g: Option<f64>,
    /// Unitary parameter k; defaults to g/(ħω_a).
    #[arg(long)]
    pub k: Option<f64>,
    /// Squeezing parameter r.
    #[arg(long)]
    pub r: Option<f64>,
    /// Jaynes-Cummings Rabi frequency Ω.
    #[arg(long = "Omega")]
    pub omega: Option<f64>,
    /// Unitary parameter v of the squeezed model.
    #[arg(long)]
    pub v: Option<f64>,
    /// Bias ε of the asymmetric model.
    #[arg(long = "eps-asym")]
    pub eps_asym: Option<f64>,
    /// Displacement α of the shifted model.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long = "A")]
    pub a: Option<f64>,
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long = "C")]
    pub c: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Number of lowest levels tracked.
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    /// Initial truncation; defaults to levels + 10.
    #[arg(long)]
    pub n0: Option<usize>,
    /// Largest truncation tried.
    #[arg(long = "n-cap", default_value_t = 2048)]
    pub n_cap: usize,
    /// Relative drift tolerance; RABI_SPECTRA_TOL overrides the default.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Report energies in units of ħω_c and couplings in units of g_c.
    #[arg(long)]
    pub reduced: bool,
}

/// Flags that take no value; a config entry `name=true` turns them on.
pub const SWITCHES: [&str; 4] = ["reduced", "branches", "grid", "inject-error"];
