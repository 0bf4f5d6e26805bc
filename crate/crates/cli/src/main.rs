use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use germlab::verify::{DEFAULT_RANDOM_GERMS, DEFAULT_RANDOM_UNFOLDINGS, DEFAULT_SEED};
use germlab::{analyze_germ, analyze_unfolding, render_human, verify_catalog, AnalysisReport, VerifyOptions};
use germlab_core::algebra::Rational;
use germlab_core::equisingularity::{default_mu_samples, DEFAULT_DEPTH};
use germlab_core::germ::{bundled_catalog, load_catalog, Catalog, CatalogEntry};

#[derive(Parser)]
#[command(name = "germlab", version, about = "Double point curves and equisingularity of map germs (C^2,0) -> (C^3,0)")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a germ from a catalog file.
    Analyze { file: PathBuf, name: String },
    /// Analyze a one-parameter unfolding from a catalog file.
    Unfolding {
        file: PathBuf,
        name: String,
        /// Nonzero parameter values to sample, e.g. `1,-1,1/2`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        samples: Option<Vec<String>>,
        /// Number of Hilbert-Samuel lengths to compute.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Work with the bundled catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Check the catalog invariants over catalog entries and seeded random germs.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Check this catalog file instead of the bundled one.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_RANDOM_GERMS)]
        germs: usize,
        #[arg(long, default_value_t = DEFAULT_RANDOM_UNFOLDINGS)]
        unfoldings: usize,
    },
    /// List the entries of the bundled catalog (or of `--file`).
    List {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

struct Failure {
    code: String,
    message: String,
}

impl Failure {
    fn new(code: &str, message: impl Into<String>) -> Self {
        Failure {
            code: code.to_string(),
            message: message.into(),
        }
    }
}

impl From<germlab_core::germ::CatalogError> for Failure {
    fn from(e: germlab_core::germ::CatalogError) -> Self {
        let e = germlab_core::Error::from(e);
        Failure {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct ListEntry {
    name: String,
    kind: &'static str,
    base: Option<String>,
    components: [String; 3],
}

fn load(file: Option<&PathBuf>) -> Result<Catalog, Failure> {
    match file {
        Some(path) => Ok(load_catalog(path)?),
        None => Ok(bundled_catalog()),
    }
}

fn parse_samples(raw: Option<Vec<String>>) -> Result<Vec<Rational>, Failure> {
    let Some(raw) = raw else {
        return Ok(default_mu_samples());
    };
    let mut out = Vec::new();
    for s in raw {
        let t: Rational = s
            .trim()
            .parse()
            .map_err(|_| Failure::new("cli::InvalidSample", format!("not a rational number: {s:?}")))?;
        if t == Rational::from_integer(0.into()) {
            return Err(Failure::new("cli::InvalidSample", "samples must be nonzero"));
        }
        out.push(t);
    }
    Ok(out)
}

fn emit_report(r: &AnalysisReport, format: Format) -> Result<u8, Failure> {
    match format {
        Format::Human => print!("{}", render_human(r)),
        Format::Json => println!("{}", to_json(r)?),
    }
    Ok(r.exit_code() as u8)
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| Failure::new("cli::Serialization", e.to_string()))
}

fn entry<'a>(cat: &'a Catalog, name: &str) -> Result<&'a CatalogEntry, Failure> {
    cat.get(name)
        .ok_or_else(|| Failure::new("cli::UnknownEntry", format!("no entry named {name:?}")))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { file, name } => {
            let cat = load(Some(&file))?;
            match entry(&cat, &name)? {
                CatalogEntry::Germ(g) => emit_report(&analyze_germ(g), cli.format),
                CatalogEntry::Unfolding(_) => Err(Failure::new(
                    "cli::WrongKind",
                    format!("{name:?} is an unfolding; use `germlab unfolding`"),
                )),
            }
        }
        Command::Unfolding {
            file,
            name,
            samples,
            depth,
        } => {
            let samples = parse_samples(samples)?;
            if depth < 4 {
                return Err(Failure::new("cli::InvalidDepth", "depth must be at least 4"));
            }
            let cat = load(Some(&file))?;
            match entry(&cat, &name)? {
                CatalogEntry::Unfolding(u) => emit_report(&analyze_unfolding(u, &samples, depth), cli.format),
                CatalogEntry::Germ(_) => Err(Failure::new(
                    "cli::WrongKind",
                    format!("{name:?} is a germ; use `germlab analyze`"),
                )),
            }
        }
        Command::Catalog {
            command:
                CatalogCommand::Verify {
                    seed,
                    file,
                    germs,
                    unfoldings,
                },
        } => {
            let cat = load(file.as_ref())?;
            let opts = VerifyOptions {
                seed,
                random_germs: germs,
                random_unfoldings: unfoldings,
            };
            let summary = verify_catalog(&cat, &opts);
            match cli.format {
                Format::Human => print!("{}", summary.render_human()),
                Format::Json => println!("{}", to_json(&summary)?),
            }
            Ok(if summary.passed() { 0 } else { 1 })
        }
        Command::Catalog {
            command: CatalogCommand::List { file },
        } => {
            let cat = load(file.as_ref())?;
            let entries: Vec<ListEntry> = cat
                .entries
                .iter()
                .map(|e| match e {
                    CatalogEntry::Germ(g) => ListEntry {
                        name: g.name().to_string(),
                        kind: "germ",
                        base: None,
                        components: g.components().clone().map(|p| p.to_string()),
                    },
                    CatalogEntry::Unfolding(u) => ListEntry {
                        name: u.name().to_string(),
                        kind: "unfolding",
                        base: Some(u.base().name().to_string()),
                        components: u.components().clone().map(|p| p.to_string()),
                    },
                })
                .collect();
            match cli.format {
                Format::Human => {
                    let width = entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
                    for e in &entries {
                        let of = e.base.as_ref().map_or(String::new(), |b| format!(" of {b}"));
                        let pad = " ".repeat(width - e.name.chars().count());
                        println!(
                            "{}{pad}  {}{of}: ({}, {}, {})",
                            e.name, e.kind, e.components[0], e.components[1], e.components[2]
                        );
                    }
                }
                Format::Json => println!("{}", to_json(&entries)?),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error [{}]: {}", f.code, f.message);
            ExitCode::from(1)
        }
    }
}
