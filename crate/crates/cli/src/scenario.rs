//! Command-line and scenario-file parameters, merged into a [`Scenario`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::output::Format;
use crate::CliError;

/// Seed used when neither the flags nor the scenario file set one.
pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_TRIALS: u64 = 1000;
/// Party separation in metres when `--d` is not given.
pub const DEFAULT_DISTANCE: f64 = 1000.0;

#[derive(Debug, Parser)]
#[command(
    name = "entangle",
    version,
    about = "Entanglement manipulation experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Entropy of entanglement of a·|00⟩ + b·|11⟩
    Entropy,
    /// Concentrate n copies into maximally entangled pairs
    Concentrate,
    /// Dilute Bell pairs into n copies
    Dilute,
    /// Teleport random qubit states
    Teleport,
    /// Send every two-bit message by superdense coding
    Dense,
    /// Concentrate n copies, then dilute the pairs back
    Cycle,
    /// Run a protocol over a list of n or budget points
    Sweep {
        #[arg(value_enum)]
        target: SweepTarget,
    },
    /// Time one protocol transcript at several distances
    CompareDistance {
        #[arg(value_enum)]
        protocol: Protocol,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepTarget {
    Concentrate,
    Dilute,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Concentrate,
    Dilute,
    Teleport,
    Dense,
    Cycle,
}

impl Protocol {
    pub fn name(self) -> &'static str {
        match self {
            Protocol::Concentrate => "concentrate",
            Protocol::Dilute => "dilute",
            Protocol::Teleport => "teleport",
            Protocol::Dense => "dense",
            Protocol::Cycle => "cycle",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct Flags {
    /// Squared Schmidt coefficient a² of each copy
    #[arg(long, global = true)]
    pub a2: Option<f64>,
    /// Number of copies (comma list for sweeps)
    #[arg(long, global = true, value_delimiter = ',')]
    pub n: Option<Vec<u64>>,
    /// Bell pairs available to dilution (comma list for sweeps)
    #[arg(long, global = true, value_delimiter = ',')]
    pub budget: Option<Vec<u64>>,
    /// Dilution budget as a multiple of n·E
    #[arg(long, global = true)]
    pub rate: Option<f64>,
    /// Sampled repetitions [default: 1000]
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    /// Master RNG seed [default: 24301]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Party separation in metres (comma list)
    #[arg(long, global = true, value_delimiter = ',')]
    pub d: Option<Vec<f64>>,
    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file holding any of these parameters
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,
    /// Write the channel transcript here
    #[arg(long, global = true)]
    pub transcript: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> From<OneOrMany<T>> for Vec<T> {
    fn from(v: OneOrMany<T>) -> Self {
        match v {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(xs) => xs,
        }
    }
}

/// Contents of a `--scenario` file. Keys mirror the long flags; `command`
/// names the subcommand and `target` its argument for `sweep` and
/// `compare-distance`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    command: Option<String>,
    target: Option<String>,
    a2: Option<f64>,
    n: Option<OneOrMany<u64>>,
    budget: Option<OneOrMany<u64>>,
    rate: Option<f64>,
    trials: Option<u64>,
    seed: Option<u64>,
    d: Option<OneOrMany<f64>>,
    format: Option<Format>,
    transcript: Option<PathBuf>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("scenario: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("scenario {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn command(&self) -> Result<Option<Command>, CliError> {
        let Some(name) = self.command.as_deref() else {
            return Ok(None);
        };
        let target = || {
            self.target
                .as_deref()
                .ok_or_else(|| CliError::Usage(format!("scenario: `{name}` needs a target")))
        };
        let cmd = match name {
            "entropy" => Command::Entropy,
            "concentrate" => Command::Concentrate,
            "dilute" => Command::Dilute,
            "teleport" => Command::Teleport,
            "dense" => Command::Dense,
            "cycle" => Command::Cycle,
            "sweep" => Command::Sweep {
                target: SweepTarget::from_str(target()?, false).map_err(CliError::Usage)?,
            },
            "compare-distance" => Command::CompareDistance {
                protocol: Protocol::from_str(target()?, false).map_err(CliError::Usage)?,
            },
            other => {
                return Err(CliError::Usage(format!(
                    "scenario: unknown command `{other}`"
                )))
            }
        };
        Ok(Some(cmd))
    }
}

/// Fully resolved parameters. Per-command requirements are checked when the
/// scenario runs.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub command: Command,
    pub a2: Option<f64>,
    pub n: Vec<u64>,
    pub budget: Vec<u64>,
    pub rate: Option<f64>,
    pub trials: u64,
    pub seed: u64,
    pub d: Vec<f64>,
    pub format: Format,
    pub transcript: Option<PathBuf>,
}

impl Scenario {
    /// Flags win over the scenario file, which wins over defaults.
    pub fn resolve(
        command: Option<Command>,
        flags: Flags,
        file: Option<ScenarioFile>,
    ) -> Result<Self, CliError> {
        let file = file.unwrap_or_default();
        let command = match command {
            Some(c) => c,
            None => file
                .command()?
                .ok_or_else(|| CliError::Usage("no command given".into()))?,
        };
        let scenario = Scenario {
            command,
            a2: flags.a2.or(file.a2),
            n: flags.n.or(file.n.map(Into::into)).unwrap_or_default(),
            budget: flags
                .budget
                .or(file.budget.map(Into::into))
                .unwrap_or_default(),
            rate: flags.rate.or(file.rate),
            trials: flags.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS),
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            d: flags.d.or(file.d.map(Into::into)).unwrap_or_default(),
            format: flags.format.or(file.format).unwrap_or_default(),
            transcript: flags.transcript.or(file.transcript),
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let file = cli
            .flags
            .scenario
            .as_deref()
            .map(ScenarioFile::load)
            .transpose()?;
        Self::resolve(cli.command, cli.flags, file)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Usage(msg));
        if let Some(a2) = self.a2 {
            if !(0.0..=1.0).contains(&a2) {
                return bad(format!("--a2 {a2} is outside [0, 1]"));
            }
        }
        if self.n.contains(&0) {
            return bad("--n must be at least 1".into());
        }
        if self.trials == 0 {
            return bad("--trials must be at least 1".into());
        }
        if let Some(rate) = self.rate {
            if !(rate.is_finite() && rate > 0.0) {
                return bad(format!("--rate {rate} must be positive"));
            }
        }
        if let Some(d) = self.d.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
            return bad(format!("--d {d} must be a positive distance"));
        }
        if self.rate.is_some() && !self.budget.is_empty() {
            return bad("--rate and --budget are mutually exclusive".into());
        }
        Ok(())
    }

    pub fn require_a2(&self) -> Result<f64, CliError> {
        self.a2
            .ok_or_else(|| CliError::Usage("--a2 is required".into()))
    }

    /// The list of copy counts, which must be non-empty.
    pub fn require_n(&self) -> Result<&[u64], CliError> {
        if self.n.is_empty() {
            Err(CliError::Usage("--n is required".into()))
        } else {
            Ok(&self.n)
        }
    }

    /// The single copy count of a non-sweep command.
    pub fn single_n(&self) -> Result<u64, CliError> {
        match self.require_n()? {
            [n] => Ok(*n),
            _ => Err(CliError::Usage("give one --n value, or use `sweep`".into())),
        }
    }

    /// The first distance, the one used for timing columns.
    pub fn distance(&self) -> f64 {
        self.d.first().copied().unwrap_or(DEFAULT_DISTANCE)
    }

    /// Distances for `compare-distance`, defaulting to d and 2d.
    pub fn distances(&self) -> Vec<f64> {
        if self.d.is_empty() {
            vec![DEFAULT_DISTANCE, 2.0 * DEFAULT_DISTANCE]
        } else {
            self.d.clone()
        }
    }
}
