use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use cyclic_matroids::cyclic::{SearchMode, StParams};
use cyclic_matroids::limits::enumeration_cap;
use cyclic_matroids_cli::commands::{self, load_document, load_index_list, GenBase, Outcome};
use cyclic_matroids_cli::document::ConstructionKind;
use cyclic_matroids_cli::error::{exit, CliError, CliResult};
use cyclic_matroids_cli::suite::{Family, SuiteConfig, DEFAULT_MAX_N, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "cymat", version, about = "Cyclic orderings, weak maps and transversal duals of small matroids")]
struct Cli {
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Largest ground set accepted (suite: largest fixture).
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Seed for randomised fixtures and sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Nearly,
    Full,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Nearly => SearchMode::Nearly,
            Mode::Full => SearchMode::Full,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a matroid document.
    #[command(group(ArgGroup::new("base").required(true).args(["psi", "uniform", "wheel", "whirl", "spike"])))]
    Gen {
        #[arg(long, num_args = 2, value_names = ["N", "S"])]
        psi: Option<Vec<usize>>,
        #[arg(long, num_args = 2, value_names = ["R", "N"])]
        uniform: Option<Vec<usize>>,
        #[arg(long, value_name = "R")]
        wheel: Option<usize>,
        #[arg(long, value_name = "R")]
        whirl: Option<usize>,
        /// Rank-r free spike.
        #[arg(long, value_name = "R")]
        spike: Option<usize>,
        /// Wrap the construction in this many truncations.
        #[arg(long, value_name = "I")]
        truncate: Option<usize>,
    },
    /// Rank of a set (default: the whole ground set).
    Rank {
        doc: PathBuf,
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
    },
    /// List circuits or cocircuits.
    Circuits {
        doc: PathBuf,
        #[arg(long)]
        cocircuits: bool,
    },
    /// Certify an ordering (default: the natural one).
    VerifyOrdering {
        doc: PathBuf,
        /// JSON array of one-based indices.
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Enumerate orderings up to rotation and reversal.
    FindOrderings {
        doc: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Check a weak map from the first matroid onto the second, or with
    /// --quotient whether the second is a quotient of the first.
    Weakmap {
        source: PathBuf,
        target: PathBuf,
        /// JSON array: element i of the source goes to map[i] of the target.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        quotient: bool,
    },
    /// Run every check over the fixture grid.
    Suite {
        /// Comma-separated subset of: psi, truncation, wheel, whirl, spike,
        /// uniform, random, counterexample.
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        /// Add a deliberately broken fixture.
        #[arg(long)]
        mutant: bool,
        /// Record wall-clock time per entry (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Two-block circuits, the forced-circuit ledger and the rank
    /// contradiction for Psi(n, s).
    Counterexample { n: usize, s: usize },
}

fn pair(v: &[usize]) -> (usize, usize) {
    (v[0], v[1])
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let max_n = cli.max_n.unwrap_or_else(enumeration_cap);
    let params = |s, t| -> CliResult<StParams> { Ok(StParams::new(s, t)?) };
    match &cli.command {
        Command::Gen {
            psi,
            uniform,
            wheel,
            whirl,
            spike,
            truncate,
        } => {
            let base = if let Some(v) = psi {
                let (n, s) = pair(v);
                GenBase::Psi { n, s }
            } else if let Some(v) = uniform {
                let (r, n) = pair(v);
                GenBase::Uniform { r, n }
            } else if let Some(r) = wheel {
                GenBase::Construction { kind: ConstructionKind::Wheel, r: *r }
            } else if let Some(r) = whirl {
                GenBase::Construction { kind: ConstructionKind::Whirl, r: *r }
            } else if let Some(r) = spike {
                GenBase::Construction { kind: ConstructionKind::FreeSpike, r: *r }
            } else {
                return Err(CliError::Invalid("no construction given".into()));
            };
            commands::gen(base, *truncate)
        }
        Command::Rank { doc, set } => commands::rank(&load_document(doc, max_n)?, set.as_deref()),
        Command::Circuits { doc, cocircuits } => commands::circuits(&load_document(doc, max_n)?, *cocircuits),
        Command::VerifyOrdering { doc, order, s, t, mode } => {
            let order = order.as_deref().map(load_index_list).transpose()?;
            commands::verify_ordering(&load_document(doc, max_n)?, order.as_deref(), params(*s, *t)?, (*mode).into())
        }
        Command::FindOrderings { doc, s, t, mode, limit } => {
            commands::find_orderings(&load_document(doc, max_n)?, params(*s, *t)?, (*mode).into(), *limit)
        }
        Command::Weakmap {
            source,
            target,
            map,
            quotient,
        } => {
            let map = map.as_deref().map(load_index_list).transpose()?;
            commands::weakmap(
                &load_document(source, max_n)?,
                &load_document(target, max_n)?,
                map.as_deref(),
                *quotient,
            )
        }
        Command::Suite {
            families,
            mutant,
            timings,
        } => {
            let mut cfg = SuiteConfig {
                max_n: cli.max_n.unwrap_or(DEFAULT_MAX_N),
                seed: cli.seed.unwrap_or(DEFAULT_SEED),
                mutant: *mutant,
                timings: *timings,
                ..SuiteConfig::default()
            };
            if let Some(names) = families {
                cfg.families = names.iter().map(|s| s.parse::<Family>()).collect::<CliResult<_>>()?;
            }
            commands::suite(&cfg)
        }
        Command::Counterexample { n, s } => commands::counterexample(*n, *s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INVALID as u8);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.json) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(exit::INVALID as u8);
            }
        }
        None => print!("{}", outcome.json),
    }
    if let Some(msg) = &outcome.message {
        eprintln!("{msg}");
    }
    ExitCode::from(outcome.code as u8)
}
