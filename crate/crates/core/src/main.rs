use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use topolab::function_space::{carrier_maps, set_open_topology};
use topolab::harness::{self, Parameters, Suite};
use topolab::hyperspace::{closeds, compacts, hyperspace};
use topolab::io::{self, FileError, FuncSpaceFile, HyperFile, SpaceFile, SubbaseFile};
use topolab::{limits, CarrierChoice, Error, FiniteSpace, SetFamily, SubsetBits, Variant};

/// Finite topology computation and verification.
#[derive(Parser)]
#[command(name = "topolab", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest ground set swept by `verify` and `corpus`.
    #[arg(long, global = true, default_value_t = 3)]
    max_n: usize,
    /// Largest ground set any construction may produce.
    #[arg(long, global = true)]
    limit_points: Option<usize>,
    /// Largest number of open sets a materialized topology may have.
    #[arg(long, global = true, env = limits::LIMIT_OPENS_ENV)]
    limit_opens: Option<usize>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate, describe or generate space files.
    Space {
        #[command(subcommand)]
        action: SpaceAction,
    },
    /// Write every topology on `n` points to a directory.
    Corpus {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute a hyperspace topology.
    Hyper {
        #[arg(long)]
        space: PathBuf,
        /// all | compacts | closeds | @file.json
        #[arg(long, default_value = "all", value_parser = parse_family)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "vietoris")]
        variant: VariantArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a set-open function space.
    Funcspace {
        #[arg(long)]
        dom: PathBuf,
        #[arg(long)]
        cod: PathBuf,
        #[arg(long, value_enum, default_value = "continuous")]
        carrier: CarrierArg,
        /// compacts | all | closeds | @file.json (subsets of the domain)
        #[arg(long, default_value = "compacts", value_parser = parse_family)]
        family: FamilyArg,
        /// Also list every open set.
        #[arg(long)]
        materialize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Test hook: flip one open set so that the suite must fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Subcommand)]
enum SpaceAction {
    /// Check the topology axioms.
    Validate { file: PathBuf },
    /// Print separation and compactness properties.
    Describe { file: PathBuf },
    /// Generate the topology of a subbase file.
    Generate {
        #[arg(long)]
        subbase: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Lower,
    Upper,
    Vietoris,
}

#[derive(Clone, Copy, ValueEnum)]
enum CarrierArg {
    Continuous,
    All,
}

#[derive(Clone, Debug)]
enum FamilyArg {
    All,
    Compacts,
    Closeds,
    File(PathBuf),
}

fn parse_family(s: &str) -> Result<FamilyArg, String> {
    match s {
        "all" => Ok(FamilyArg::All),
        "compacts" => Ok(FamilyArg::Compacts),
        "closeds" => Ok(FamilyArg::Closeds),
        _ => s
            .strip_prefix('@')
            .map(|p| FamilyArg::File(PathBuf::from(p)))
            .ok_or_else(|| format!("expected all, compacts, closeds or @file, got {s:?}")),
    }
}

enum Failure {
    /// Input violates an axiom or a check failed: exit 1.
    Invalid(String),
    /// I/O, parse or size-limit problem: exit 2.
    Input(String),
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimitExceeded { .. } => Failure::Input(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::CorpusError> for Failure {
    fn from(e: io::CorpusError) -> Self {
        match e {
            io::CorpusError::File(e) => e.into(),
            io::CorpusError::Compute(e) => e.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    if let Some(v) = g.limit_points {
        limits::set_max_points(v);
    }
    if let Some(v) = g.limit_opens {
        limits::set_max_opens(v);
    }
    limits::set_max_enumerate(limits::max_enumerate().max(g.max_n));
    if let Some(jobs) = g.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Invalid(msg)) => {
            eprintln!("invalid: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), Failure> {
    match out {
        Some(path) => io::write_json(path, value)?,
        None => print!("{}", io::to_json_string(value)),
    }
    Ok(())
}

fn load_space(path: &Path) -> Result<FiniteSpace, Failure> {
    let file: SpaceFile = io::read_json(path)?;
    Ok(file.to_space()?)
}

fn resolve_family(arg: &FamilyArg, space: &FiniteSpace) -> Result<SetFamily, Failure> {
    Ok(match arg {
        FamilyArg::All => SetFamily::nonempty_subsets(space.n()),
        FamilyArg::Compacts => compacts(space),
        FamilyArg::Closeds => closeds(space),
        FamilyArg::File(path) => {
            let sets: Vec<SubsetBits> = io::read_json(path)?;
            SetFamily::new(sets)
        }
    })
}

fn dispatch(cli: &Cli) -> Result<u8, Failure> {
    let report = cli.global.report.as_deref();
    match &cli.command {
        Command::Space { action } => match action {
            SpaceAction::Validate { file } => {
                let space = load_space(file)?;
                emit(report, &json!({"valid": true, "n": space.n(), "opens": space.opens().len()}))?;
                Ok(0)
            }
            SpaceAction::Describe { file } => {
                let space = load_space(file)?;
                let nbhds: Vec<SubsetBits> = space.minimal_open_nbhds().to_vec();
                emit(
                    report,
                    &json!({
                        "n": space.n(),
                        "opens": space.opens().len(),
                        "minimal_neighbourhoods": nbhds,
                        "properties": space.report(),
                    }),
                )?;
                Ok(0)
            }
            SpaceAction::Generate { subbase, out } => {
                let file: SubbaseFile = io::read_json(subbase)?;
                let space = file.to_space()?;
                emit(out.as_deref().or(report), &SpaceFile::from_space(&space))?;
                Ok(0)
            }
        },
        Command::Corpus { n, out } => {
            let n = n.unwrap_or(cli.global.max_n);
            limits::set_max_enumerate(limits::max_enumerate().max(n));
            let paths = io::write_corpus(out, n)?;
            eprintln!("wrote {} spaces to {}", paths.len(), out.display());
            Ok(0)
        }
        Command::Hyper {
            space,
            family,
            variant,
            out,
        } => {
            let space = load_space(space)?;
            let family = resolve_family(family, &space)?;
            let variant = match variant {
                VariantArg::Lower => Variant::Lower,
                VariantArg::Upper => Variant::Upper,
                VariantArg::Vietoris => Variant::Vietoris,
            };
            let h = hyperspace(&space, &family, variant)?;
            emit(out.as_deref().or(report), &HyperFile::from_hyperspace(&h))?;
            Ok(0)
        }
        Command::Funcspace {
            dom,
            cod,
            carrier,
            family,
            materialize,
            out,
        } => {
            let dom = load_space(dom)?;
            let cod = load_space(cod)?;
            let family = resolve_family(family, &dom)?;
            let choice = match carrier {
                CarrierArg::Continuous => CarrierChoice::Continuous,
                CarrierArg::All => CarrierChoice::All,
            };
            let fs = set_open_topology(&dom, &cod, carrier_maps(&dom, &cod, choice)?, &family)?;
            let opens = if *materialize { Some(fs.materialize()?) } else { None };
            emit(
                out.as_deref().or(report),
                &FuncSpaceFile::from_function_space(&fs, choice, opens.as_ref()),
            )?;
            Ok(0)
        }
        Command::Verify { suite, inject_fault } => {
            if *inject_fault && !suite.supports_fault_injection() {
                return Err(Failure::Input(format!("suite {} has no fault-injection hook", suite.name())));
            }
            let params = Parameters {
                max_n: cli.global.max_n,
                inject_fault: *inject_fault,
            };
            let run = harness::run(*suite, params).map_err(|e| Failure::Input(e.to_string()))?;
            emit(report, &run)?;
            eprintln!(
                "{}: checked {}, passed {}, failed {} ({} ms)",
                run.suite, run.totals.checked, run.totals.passed, run.totals.failed, run.wall_time_ms
            );
            Ok(if run.passed() { 0 } else { 1 })
        }
    }
}
