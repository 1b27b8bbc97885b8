//! Command-line front end for `cdkernel`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod formats;
pub mod selftest;
pub mod svg;

use commands::CliError;
use config::{load_file, parse_potential, FileConfig, RunConfig, QUAD_ORDER_ENV};

#[derive(Parser, Debug)]
#[command(name = "cdk", version, about = "Christoffel-Darboux kernel asymptotics and finite-N oracle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Solve the endpoints and dump the equilibrium data as JSON.
    Equilibrium,
    /// Asymptotic density profile over --grid.
    Density,
    /// Leading kernel and k-vector slice at --x over --grid.
    Kernel,
    /// Exact finite-N kernel from the recurrence.
    Oracle,
    /// Probability of no eigenvalue above each grid point.
    Gap,
    /// Tracy-Widom distribution over --range.
    Tw,
    /// Moderate and large deviation formulas against the oracle.
    Deviations,
    /// Run the acceptance suite.
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Equilibrium => "equilibrium",
            Command::Density => "density",
            Command::Kernel => "kernel",
            Command::Oracle => "oracle",
            Command::Gap => "gap",
            Command::Tw => "tw",
            Command::Deviations => "deviations",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Named potential: gue or quartic.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Potential as JSON, e.g. '{"kind":"poly","coeffs":[0,0,1]}'.
    #[arg(long, global = true)]
    pub potential: Option<String>,
    /// JSON config file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<String>,
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// lo:hi:step
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// lo:hi:step
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Nyström nodes.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long = "quad-order", global = true)]
    pub quad_order: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[arg(long, global = true)]
    pub plot: Option<String>,
    #[arg(long, global = true)]
    pub table: Option<String>,
    #[arg(long, global = true)]
    pub json: Option<String>,
    /// Add asymptotic comparison columns.
    #[arg(long, global = true)]
    pub compare: bool,
}

impl Flags {
    fn to_file_config(&self) -> Result<FileConfig, CliError> {
        let potential = match &self.potential {
            None => None,
            Some(p) if p.trim_start().starts_with(['{', '"']) => Some(parse_potential(p)?),
            Some(p) => Some(config::PotentialSpec::Preset(p.trim().to_string())),
        };
        Ok(FileConfig {
            preset: self.preset.clone(),
            potential,
            n: self.n,
            n_max: self.n_max,
            delta: self.delta,
            grid: self.grid.clone(),
            range: self.range.clone(),
            m: self.m,
            x: self.x,
            quad_order: self.quad_order,
            out: self.out.clone(),
            plot: self.plot.clone(),
            table: self.table.clone(),
            json: self.json.clone(),
            compare: self.compare.then_some(true),
        })
    }
}

pub fn resolve(cli: &Cli) -> Result<RunConfig, CliError> {
    let file = cli.flags.config.as_deref().map(load_file).transpose()?;
    let env = std::env::var(QUAD_ORDER_ENV).ok();
    Ok(RunConfig::resolve(cli.command.name(), cli.flags.to_file_config()?, file, env)?)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 1;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match resolve(&cli).and_then(|cfg| commands::run(&cfg)) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "cdk: {e}");
            e.exit_code()
        }
    }
}
