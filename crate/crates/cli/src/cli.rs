use std::path::PathBuf;

use brw_core::group::DEFAULT_MAX_ORDER;
use clap::{Args, Parser, Subcommand};

use crate::checks::{lemma_suite, oracle_suite, suite_failure, unitary_suite, SuiteResult, DEFAULT_TRIPLES};
use crate::commands::local::{build_character, parse_exponents, parse_phase};
use crate::commands::{chartable, corpus, gutkin, info, local, orbits};
use crate::config::{Format, Mode, RunConfig, DEFAULT_CAP_SCAN};
use crate::failure::Failure;
use crate::input::load;
use crate::report::{emit, json_artifact, Outcome};

#[derive(Debug, Parser)]
#[command(
    name = "brw",
    version,
    about = "Exact unit-group character computations for split basic algebras over F_p"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Largest unit-group order to enumerate.
    #[arg(long, global = true, env = "BRW_CAP_ORDER", default_value_t = DEFAULT_MAX_ORDER,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_order: u64,
    /// Largest number of closure steps in subalgebra enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP_SCAN, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap_scan: u64,
    /// Seed for randomized checks; recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory for reports; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure of an algebra: radical series, idempotents, group orders.
    Info {
        /// Spec files, or `corpus:<id>`.
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Exact character table of the unit group.
    Chartable {
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Induction witnesses for every irreducible character of the unit group.
    Gutkin {
        #[arg(required = true)]
        specs: Vec<String>,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
    /// Orbits of the unit group on the linear characters of `1 + I`.
    Orbits {
        #[arg(required = true)]
        specs: Vec<String>,
        /// `J`, `J^n`, `power:n`, or `basis:v1;v2;...`.
        #[arg(long, default_value = "J")]
        ideal: String,
    },
    /// Smooth characters of a local field, modelled at finite level.
    Local {
        #[command(subcommand)]
        command: LocalCommand,
    },
    /// The built-in corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Verification suites.
    Check {
        #[command(subcommand)]
        command: CheckCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum LocalCommand {
    /// Split a character into a unitary part and an unramified positive twist.
    Factor {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Exponents on the unit-group generators listed by `chargroup`.
        #[arg(long, default_value = "")]
        unit: String,
        /// Positive rational modulus at the uniformizer.
        #[arg(long, default_value = "1")]
        r: String,
        /// Phase `m:e` at the uniformizer, meaning `z_m^e`.
        #[arg(long, default_value = "1:0")]
        phase: String,
    },
    /// Structure of the group of characters trivial on `1 + p^k`.
    Chargroup {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: u32,
    },
    /// Admissible-shape predicate for each witness of a gutkin report.
    Admissible {
        /// A JSON report written by `brw gutkin`.
        witness: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    /// List the shipped specs.
    List,
    /// Write the shipped specs as JSON files into --out.
    Export,
    /// Gutkin verification over the corpus; gated entries run when --cap-order admits them.
    Run {
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Structural lemmas on the default corpus.
    Lemmas,
    /// Character-table health and random induction triples.
    Oracle {
        #[arg(long, default_value_t = DEFAULT_TRIPLES)]
        triples: usize,
    },
    /// Round trips of the unitary factorization on the fixed grid.
    Unitary,
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let g = &self.global;
        let mut cfg = RunConfig::new(self.command_name());
        cfg.out = g.out.clone();
        cfg.cap_order = g.cap_order;
        cfg.cap_scan = g.cap_scan;
        cfg.seed = g.seed;
        cfg.format = g.format;
        match &self.command {
            Command::Info { specs } | Command::Chartable { specs } => cfg.inputs = specs.clone(),
            Command::Gutkin { specs, mode } => {
                cfg.inputs = specs.clone();
                cfg.mode = Some(*mode);
            }
            Command::Orbits { specs, ideal } => {
                cfg.inputs = specs.clone();
                cfg.ideal = Some(ideal.clone());
            }
            Command::Local {
                command: LocalCommand::Admissible { witness },
            } => cfg.inputs = vec![witness.display().to_string()],
            Command::Corpus {
                command: CorpusCommand::Run { mode },
            } => cfg.mode = Some(*mode),
            _ => {}
        }
        cfg
    }

    fn command_name(&self) -> String {
        match &self.command {
            Command::Info { .. } => "info".into(),
            Command::Chartable { .. } => "chartable".into(),
            Command::Gutkin { .. } => "gutkin".into(),
            Command::Orbits { .. } => "orbits".into(),
            Command::Local { command } => match command {
                LocalCommand::Factor { .. } => "local factor".into(),
                LocalCommand::Chargroup { .. } => "local chargroup".into(),
                LocalCommand::Admissible { .. } => "local admissible".into(),
            },
            Command::Corpus { command } => match command {
                CorpusCommand::List => "corpus list".into(),
                CorpusCommand::Export => "corpus export".into(),
                CorpusCommand::Run { .. } => "corpus run".into(),
            },
            Command::Check { command } => match command {
                CheckCommand::Lemmas => "check lemmas".into(),
                CheckCommand::Oracle { .. } => "check oracle".into(),
                CheckCommand::Unitary => "check unitary".into(),
            },
        }
    }
}

fn per_spec(
    cfg: &RunConfig,
    f: impl Fn(&crate::input::LoadedSpec) -> Result<Outcome, Failure>,
) -> Result<Outcome, Failure> {
    let mut out = Outcome::default();
    for source in &cfg.inputs {
        let spec = load(source)?;
        out.merge(f(&spec)?);
    }
    Ok(out)
}

fn suite(cfg: &RunConfig, name: &str, s: SuiteResult) -> Result<Outcome, Failure> {
    cfg.require_json()?;
    let failures = suite_failure(&s).map(|f| vec![f.to_string()]).unwrap_or_default();
    Ok(Outcome {
        artifacts: vec![json_artifact(format!("check_{name}.json"), cfg, None, s.passed(), s)],
        failures,
    })
}

/// Runs the command and writes its reports. Verification failures are
/// reported after every artifact has been written.
pub fn execute(cli: &Cli) -> Result<(), Failure> {
    let cfg = cli.config();
    cfg.validate()?;
    let outcome = match &cli.command {
        Command::Info { .. } => per_spec(&cfg, |s| info::run(&cfg, s))?,
        Command::Chartable { .. } => per_spec(&cfg, |s| chartable::run(&cfg, s))?,
        Command::Gutkin { mode, .. } => per_spec(&cfg, |s| gutkin::run(&cfg, s, *mode))?,
        Command::Orbits { ideal, .. } => {
            let choice = orbits::parse_ideal(ideal)?;
            per_spec(&cfg, |s| orbits::run(&cfg, s, &choice))?
        }
        Command::Local { command } => match command {
            LocalCommand::Factor { p, k, unit, r, phase } => {
                let chi = build_character(*p, *k, &parse_exponents(unit)?, r, parse_phase(phase)?)?;
                local::run_factor(&cfg, &chi)?
            }
            LocalCommand::Chargroup { p, k } => local::run_chargroup(&cfg, *p, *k)?,
            LocalCommand::Admissible { witness } => local::run_admissible(&cfg, witness)?,
        },
        Command::Corpus { command } => match command {
            CorpusCommand::List => corpus::run_list(&cfg)?,
            CorpusCommand::Export => corpus::run_export(&cfg)?,
            CorpusCommand::Run { mode } => corpus::run_corpus(&cfg, *mode)?,
        },
        Command::Check { command } => match command {
            CheckCommand::Lemmas => suite(&cfg, "lemmas", lemma_suite(cfg.seed, cfg.cap_order))?,
            CheckCommand::Oracle { triples } => suite(&cfg, "oracle", oracle_suite(cfg.seed, *triples, cfg.cap_order))?,
            CheckCommand::Unitary => suite(&cfg, "unitary", unitary_suite())?,
        },
    };
    emit(cfg.out.as_deref(), &outcome.artifacts)?;
    if outcome.verified() {
        Ok(())
    } else {
        Err(Failure::Verification(outcome.failures.join("; ")))
    }
}
