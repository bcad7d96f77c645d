//! Command-line front end for `shellzeta-core`: residual tables, figure
//! series and literal M-series comparisons as CSV or JSON.

pub mod config;
pub mod error;
pub mod published;
pub mod render;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::{CommandDefaults, Format, ListValue, PartialConfig, RunConfig, PRECISION_ENV};
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "shellzeta",
    version,
    about = "Zeta residuals over polynomial sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integer row: prime count, log density and M at each limit.
    Table1(Options),
    /// Prime-shell rows for each power.
    Table2(Options),
    /// Long-format (label, x, M) series for plotting.
    FigureData(Options),
    /// Z, P and M for one polynomial at one limit.
    Residual(Options),
    /// Literal M-series terms and partial sum.
    Mseries(Options),
    /// Literal M-series against M with a verdict.
    Compare(Options),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Polynomial: `integers`, `shell:p` or ascending coefficients `1,-3,3`.
    #[arg(value_name = "SPEC")]
    pub spec: Option<String>,
    #[arg(long, value_name = "SPEC", conflicts_with = "spec")]
    pub poly: Option<String>,
    /// Comma list or `start:end[:step]` range.
    #[arg(long, value_name = "LIST")]
    pub powers: Option<String>,
    #[arg(long, value_name = "LIST")]
    pub limits: Option<String>,
    #[arg(long, value_name = "N")]
    pub x: Option<u64>,
    #[arg(long, value_name = "REAL")]
    pub s: Option<f64>,
    /// Maximum depth or `full`.
    #[arg(long, value_name = "N|full")]
    pub depth: Option<String>,
    /// `exact` or `float`; defaults to $SHELLZETA_PRECISION, then float.
    #[arg(long, value_name = "MODE")]
    pub precision: Option<String>,
    /// Same as `--precision exact`.
    #[arg(long, conflicts_with = "precision")]
    pub exact: bool,
    #[arg(long, value_name = "csv|json")]
    pub format: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Flat TOML file with any of the keys above.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

impl Options {
    fn to_partial(&self) -> PartialConfig {
        PartialConfig {
            poly: self.poly.clone().or_else(|| self.spec.clone()),
            powers: self.powers.clone().map(ListValue::Text),
            limits: self.limits.clone().map(ListValue::Text),
            x: self.x,
            s: self.s,
            precision: if self.exact {
                Some("exact".into())
            } else {
                self.precision.clone()
            },
            depth: self.depth.clone().map(config::ScalarOrText::Text),
            format: self.format.clone(),
            out: self.out.clone(),
        }
    }

    /// Flags over the config file over the environment.
    pub fn resolve(
        &self,
        defaults: &CommandDefaults,
        env_precision: Option<&str>,
    ) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => PartialConfig::from_file(path)?,
            None => PartialConfig::default(),
        };
        self.to_partial().over(file).resolve(defaults, env_precision)
    }
}

impl Command {
    pub fn options(&self) -> &Options {
        match self {
            Command::Table1(o)
            | Command::Table2(o)
            | Command::FigureData(o)
            | Command::Residual(o)
            | Command::Mseries(o)
            | Command::Compare(o) => o,
        }
    }

    pub fn defaults(&self) -> CommandDefaults {
        let (powers, limits, format) = match self {
            Command::Table1(_) | Command::Table2(_) | Command::FigureData(_) => {
                (vec![2, 3, 5, 7], vec![100, 200], Format::Csv)
            }
            Command::Residual(_) | Command::Mseries(_) | Command::Compare(_) => {
                (Vec::new(), Vec::new(), Format::Json)
            }
        };
        CommandDefaults {
            powers,
            limits,
            format,
        }
    }

    /// Runs the command and returns the rendered document plus its config.
    pub fn execute(&self) -> Result<(String, RunConfig), CliError> {
        let env = std::env::var(PRECISION_ENV).ok();
        let config = self.options().resolve(&self.defaults(), env.as_deref())?;
        let text = match self {
            Command::Table1(_) => render::table(&report::cmd_table1(&config)?, config.format)?,
            Command::Table2(_) => render::table(&report::cmd_table2(&config)?, config.format)?,
            Command::FigureData(_) => render::figure(&report::cmd_figure_data(&config)?, config.format)?,
            Command::Residual(_) => render::report(&report::cmd_residual(&config)?, config.format)?,
            Command::Mseries(_) => render::report(&report::cmd_mseries(&config)?, config.format)?,
            Command::Compare(_) => render::report(&report::cmd_compare(&config)?, config.format)?,
        };
        Ok((text, config))
    }
}
