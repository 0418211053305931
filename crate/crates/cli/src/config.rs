//! Run configuration: command-line flags, an optional JSON config file, and
//! the merge rules between them (defaults < file < flags).

use crate::error::CliError;
use chsh_core::chsh::AngleConfig;
use chsh_core::eprb::Direction;
use chsh_core::lhv::model_by_name;
use chsh_core::AngleConfig64;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Quantum,
    Lhv,
    Sweep,
    Optimize,
    Audit,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Quantum => "quantum",
            CommandKind::Lhv => "lhv",
            CommandKind::Sweep => "sweep",
            CommandKind::Optimize => "optimize",
            CommandKind::Audit => "audit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One analyzer setting in degrees: either a planar angle from +z inside the
/// x–z plane, or a full spherical (polar, azimuth) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleSpec {
    Planar(f64),
    Spherical { theta: f64, phi: f64 },
}

impl AngleSpec {
    pub fn direction(&self) -> Direction<f64> {
        match *self {
            AngleSpec::Planar(deg) => Direction::from_planar_angle(deg.to_radians()),
            AngleSpec::Spherical { theta, phi } => {
                Direction::from_spherical(theta.to_radians(), phi.to_radians())
            }
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub angles: [AngleSpec; 4],
    pub model: String,
    pub n_pairs: u64,
    pub reps: u64,
    pub seed: u64,
    pub resolution: u32,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: CommandKind::Audit,
            angles: [
                AngleSpec::Planar(0.0),
                AngleSpec::Planar(90.0),
                AngleSpec::Planar(45.0),
                AngleSpec::Planar(135.0),
            ],
            model: "sphere-sign".to_string(),
            n_pairs: 100_000,
            reps: 10,
            seed: 42,
            resolution: 16,
            output_path: None,
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn angle_config(&self) -> AngleConfig64 {
        AngleConfig::new(
            self.angles[0].direction(),
            self.angles[1].direction(),
            self.angles[2].direction(),
            self.angles[3].direction(),
        )
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.n_pairs == 0 {
            return Err(CliError::Usage("--n must be at least 1".to_string()));
        }
        if self.reps == 0 {
            return Err(CliError::Usage("--reps must be at least 1".to_string()));
        }
        if self.command == CommandKind::Sweep && self.reps < 2 {
            return Err(CliError::Usage(
                "sweep needs --reps of at least 2".to_string(),
            ));
        }
        if self.resolution < 8 {
            return Err(CliError::Usage(
                "--resolution must be at least 8".to_string(),
            ));
        }
        if model_by_name::<f64>(&self.model).is_err() {
            return Err(CliError::Usage(format!(
                "unknown model '{}'; built-ins are sphere-sign, constant, adversarial-per-set",
                self.model
            )));
        }
        Ok(())
    }
}

/// Partial configuration as read from a JSON config file; any subset of the
/// RunConfig fields may appear.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    command: Option<CommandKind>,
    angles: Option<[AngleSpec; 4]>,
    model: Option<String>,
    n_pairs: Option<u64>,
    reps: Option<u64>,
    seed: Option<u64>,
    resolution: Option<u32>,
    output_path: Option<PathBuf>,
    format: Option<OutputFormat>,
}

#[derive(Debug, Parser)]
#[command(
    name = "chsh-lab",
    version,
    about = "EPRB/CHSH numerical laboratory: quantum predictions, hidden-variable ensembles, sweeps, angle optimization and a claims audit"
)]
struct Cli {
    #[command(subcommand)]
    command: Option<CliCommand>,

    /// JSON config file; explicit flags override its values
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Analyzer settings in degrees: "A,A',B,B'" (planar) or "theta:phi" entries
    #[arg(long, global = true, value_name = "LIST")]
    angles: Option<String>,

    /// Hidden-variable model (sphere-sign, constant, adversarial-per-set)
    #[arg(long, global = true, value_name = "NAME")]
    model: Option<String>,

    /// Pairs per ensemble
    #[arg(long, global = true, value_name = "INT")]
    n: Option<u64>,

    /// Repetitions per sweep point
    #[arg(long, global = true, value_name = "INT")]
    reps: Option<u64>,

    /// Master seed for every random stream
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,

    /// Grid resolution for the optimizer (>= 8)
    #[arg(long, global = true, value_name = "INT")]
    resolution: Option<u32>,

    /// Output file; stdout when omitted
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<CliFormat>,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Quantum expectation values and operator spectrum at the given angles
    Quantum,
    /// Strong/weak CHSH estimates for a hidden-variable model
    Lhv,
    /// Weak CHSH concentration statistics over growing ensemble sizes
    Sweep,
    /// Maximize the weak CHSH value over planar angles
    Optimize,
    /// Machine-checked verdicts for the identities this laboratory implements
    Audit,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CliFormat {
    Csv,
    Json,
}

/// Parses argv plus an optional config file into a resolved RunConfig.
/// Missing pieces fall back to defaults; flags override file values.
pub fn parse_config<I, T>(args: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            CliError::Help(e.render().to_string())
        }
        _ => CliError::Usage(e.render().to_string().trim_end().to_string()),
    })?;

    let file: PartialConfig = match &cli.config {
        None => PartialConfig::default(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("malformed config file: {e}")))?
        }
    };

    let defaults = RunConfig::default();
    let command = match cli.command {
        Some(CliCommand::Quantum) => CommandKind::Quantum,
        Some(CliCommand::Lhv) => CommandKind::Lhv,
        Some(CliCommand::Sweep) => CommandKind::Sweep,
        Some(CliCommand::Optimize) => CommandKind::Optimize,
        Some(CliCommand::Audit) => CommandKind::Audit,
        None => file.command.unwrap_or(defaults.command),
    };
    let angles = match &cli.angles {
        Some(text) => parse_angle_list(text)?,
        None => file.angles.unwrap_or(defaults.angles),
    };
    let cfg = RunConfig {
        command,
        angles,
        model: cli.model.or(file.model).unwrap_or(defaults.model),
        n_pairs: cli.n.or(file.n_pairs).unwrap_or(defaults.n_pairs),
        reps: cli.reps.or(file.reps).unwrap_or(defaults.reps),
        seed: cli.seed.or(file.seed).unwrap_or(defaults.seed),
        resolution: cli
            .resolution
            .or(file.resolution)
            .unwrap_or(defaults.resolution),
        output_path: cli.out.or(file.output_path),
        format: match cli.format {
            Some(CliFormat::Csv) => OutputFormat::Csv,
            Some(CliFormat::Json) => OutputFormat::Json,
            None => file.format.unwrap_or(defaults.format),
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Parses "0,90,45,135" or per-entry "theta:phi" spherical forms (degrees).
fn parse_angle_list(text: &str) -> Result<[AngleSpec; 4], CliError> {
    let items: Vec<&str> = text.split(',').collect();
    if items.len() != 4 {
        return Err(CliError::Usage(format!(
            "--angles needs exactly 4 comma-separated entries, got {}",
            items.len()
        )));
    }
    let mut specs = [AngleSpec::Planar(0.0); 4];
    for (i, item) in items.iter().enumerate() {
        specs[i] = parse_angle(item.trim())?;
    }
    Ok(specs)
}

fn parse_angle(item: &str) -> Result<AngleSpec, CliError> {
    let bad = || CliError::Usage(format!("malformed angle '{item}'"));
    match item.split_once(':') {
        None => {
            let deg: f64 = item.parse().map_err(|_| bad())?;
            if !deg.is_finite() {
                return Err(bad());
            }
            Ok(AngleSpec::Planar(deg))
        }
        Some((theta, phi)) => {
            let theta: f64 = theta.trim().parse().map_err(|_| bad())?;
            let phi: f64 = phi.trim().parse().map_err(|_| bad())?;
            if !theta.is_finite() || !phi.is_finite() {
                return Err(bad());
            }
            Ok(AngleSpec::Spherical { theta, phi })
        }
    }
}
