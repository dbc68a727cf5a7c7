//! The `tilecheck` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use tilecheck_core::counting::{diamond_enumeration, explicit_config_count, worst_case_config_count, CountError};
use tilecheck_core::ctl::{parse_formula, CtlError, FormulaParseError, ModelChecker};
use tilecheck_core::petri::{explore, translate, PetriError};
use tilecheck_core::transition::{
    build_with, random_assembly_sequence, BuildError, BuildOptions, DEFAULT_STATE_BUDGET,
};
use tilecheck_core::verify::{
    configuration_budget, verify_with, LocalDeterminismViolation, RectilinearityViolation, Verdict,
    VerifyError, VerifyOptions, Violation,
};
use tilecheck_core::TileAssemblySystem;

use crate::ingest::{self, ElaborateError, NativeError, ParseDiagnostics};
use crate::report::{Report, TraceBlock};
use crate::smart::export_smart;

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const NOT_RECTILINEAR: i32 = 2;
    pub const NON_UNIQUE_TERMINAL: i32 = 3;
    pub const NOT_LOCALLY_DETERMINISTIC: i32 = 4;
    pub const BUDGET_EXCEEDED: i32 = 5;
    pub const FORMULA_FALSE: i32 = 6;
}

#[derive(Debug, Parser)]
#[command(name = "tilecheck", version, about = "Verification toolkit for tile assembly systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// ISU-TAS tile file, or a native `TASV1` file (which carries its own seed).
    #[arg(long)]
    pub tileset: PathBuf,
    /// Seed file with one `name x y` per line.
    #[arg(long)]
    pub seed: Option<PathBuf>,
    /// Side length of the square surface.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub size: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the system has a unique terminal assembly.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Flag unattached west (not east) glues away from the south edge.
        #[arg(long)]
        strict_paper_rectilinearity: bool,
    },
    /// Check a CTL formula against the explicit transition system.
    Modelcheck {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Formula text, e.g. `AF terminal` or `AG !t[3][0][0]`.
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: usize,
    },
    /// Worst-case configuration counts, plus the explicit count when a system is given.
    Count {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        size: u64,
        #[arg(long)]
        tileset: Option<PathBuf>,
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the guarded Petri net as a SMART model.
    ExportSmart {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value = "TAS")]
        model_name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample one maximal assembly sequence.
    Simulate {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
    /// Print the explicit transition system as an edge list.
    Graph {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play the token game of the Petri net and count reachable and terminal markings.
    Explore {
        #[command(flatten)]
        system: SystemArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        state_budget: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse { path: PathBuf, source: ParseDiagnostics },
    #[error("{path}: {source}")]
    Native { path: PathBuf, source: NativeError },
    #[error("{0}")]
    Elaborate(#[from] ElaborateError),
    #[error("--seed is required with an ISU-TAS tile file")]
    MissingSeed,
    #[error("native system files carry their own seed; drop --seed")]
    UnexpectedSeed,
    #[error("surface size {0} is too large")]
    SizeTooLarge(u64),
    #[error("formula: {0}")]
    Formula(#[from] FormulaParseError),
    #[error(transparent)]
    Ctl(#[from] CtlError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Petri(#[from] PetriError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Build(BuildError::StateBudgetExceeded(_))
            | CliError::Petri(PetriError::StateBudgetExceeded(_)) => exit::BUDGET_EXCEEDED,
            _ => exit::USAGE,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a system from an ISU-TAS tile file plus seed file, or from a
/// native file alone.
pub fn load_system(tileset: &Path, seed: Option<&Path>) -> Result<TileAssemblySystem, CliError> {
    let bytes = read(tileset)?;
    if ingest::is_native(&bytes) {
        if seed.is_some() {
            return Err(CliError::UnexpectedSeed);
        }
        return ingest::parse_native(&bytes).map_err(|source| CliError::Native {
            path: tileset.to_path_buf(),
            source,
        });
    }
    let seed = seed.ok_or(CliError::MissingSeed)?;
    let doc = ingest::parse_tileset(&bytes).map_err(|source| CliError::Parse {
        path: tileset.to_path_buf(),
        source,
    })?;
    let seed_doc = ingest::parse_seed(&read(seed)?).map_err(|source| CliError::Parse {
        path: seed.to_path_buf(),
        source,
    })?;
    Ok(ingest::elaborate(&doc, &seed_doc)?)
}

fn size_of(n: u64) -> Result<usize, CliError> {
    // the surface must be indexable; beyond this nothing would fit in memory anyway
    usize::try_from(n)
        .ok()
        .filter(|&n| n <= 1 << 16)
        .ok_or(CliError::SizeTooLarge(n))
}

fn load(args: &SystemArgs) -> Result<(TileAssemblySystem, usize), CliError> {
    let n = size_of(args.size)?;
    Ok((load_system(&args.tileset, args.seed.as_deref())?, n))
}

struct Output {
    text: String,
    code: i32,
    warnings: Vec<String>,
}

fn describe(sys: &TileAssemblySystem, v: &Violation) -> String {
    match v {
        Violation::Ambiguous { loc, candidates } => {
            let names: Vec<&str> = candidates.iter().map(|&t| sys.name(t)).collect();
            format!("tiles {} can all attach at {loc}", names.join(", "))
        }
        Violation::Rectilinearity(RectilinearityViolation::BoundThrough { loc, side }) => {
            format!("tile at {loc} binds through its {side} side")
        }
        Violation::Rectilinearity(RectilinearityViolation::ExposedGlue { loc, side }) => {
            format!("tile at {loc} exposes an unattached full-strength {side} glue")
        }
        Violation::Rectilinearity(RectilinearityViolation::EnablesBackwardGrowth { loc, placement }) => {
            format!(
                "tile at {loc} lets {} attach at {}",
                sys.name(placement.tile),
                placement.loc
            )
        }
        Violation::LocalDeterminism { placement, kind } => match kind {
            LocalDeterminismViolation::OverBinding { strength } => format!(
                "{} at {} binds with strength {strength}",
                sys.name(placement.tile),
                placement.loc
            ),
            LocalDeterminismViolation::Competing { others } => {
                let names: Vec<&str> = others.iter().map(|&t| sys.name(t)).collect();
                format!(
                    "{} at {} competes with {}",
                    sys.name(placement.tile),
                    placement.loc,
                    names.join(", ")
                )
            }
        },
    }
}

fn human_trace(out: &mut String, title: &str, block: &TraceBlock) {
    writeln!(out, "{title}:").unwrap();
    if block.steps.is_empty() {
        out.push_str("  (seed only)\n");
    }
    for (i, s) in block.steps.iter().enumerate() {
        writeln!(out, "  step {}: {} @ ({},{})", i + 1, s.tile, s.x, s.y).unwrap();
    }
}

fn emit(format: Format, report: &Report, human: String) -> String {
    match format {
        Format::Human => human,
        Format::Structured => report.render(),
    }
}

fn cmd_verify(system: &SystemArgs, format: Format, strict: bool) -> Result<Output, CliError> {
    let (sys, n) = load(system)?;
    let opts = VerifyOptions {
        strict_paper_rectilinearity: strict,
        ..VerifyOptions::default()
    };
    let r = verify_with(&sys, n, opts)?;
    let mut rep = Report::new();
    rep.field("command", "verify")
        .field("verdict", r.verdict)
        .field("surface", r.surface)
        .field("configurations_evaluated", r.configurations_evaluated)
        .field("configuration_budget", configuration_budget(n));
    let mut human = String::new();
    writeln!(human, "verdict: {}", r.verdict).unwrap();
    writeln!(human, "surface: {n}x{n}").unwrap();
    writeln!(
        human,
        "configurations evaluated: {} (budget {})",
        r.configurations_evaluated,
        configuration_budget(n)
    )
    .unwrap();
    if let Some(v) = &r.violation {
        let d = describe(&sys, v);
        rep.field("violation", &d).field("violation_location", v.loc());
        writeln!(human, "violation: {d}").unwrap();
    }
    if let Some(t) = &r.terminal {
        rep.field("terminal_tiles", t.tile_count());
        writeln!(human, "terminal assembly: {} tiles", t.tile_count()).unwrap();
    }
    for (i, w) in r.witnesses.iter().enumerate() {
        let block = TraceBlock::from_sequence(format!("witness-{}", i + 1), &sys, w);
        human_trace(&mut human, &format!("witness {}", i + 1), &block);
        rep.trace(block);
    }
    let code = match r.verdict {
        Verdict::UniqueTerminal => exit::OK,
        Verdict::NotRectilinear => exit::NOT_RECTILINEAR,
        Verdict::NonUniqueTerminal => exit::NON_UNIQUE_TERMINAL,
        Verdict::NotLocallyDeterministic => exit::NOT_LOCALLY_DETERMINISTIC,
    };
    Ok(Output {
        text: emit(format, &rep, human),
        code,
        warnings: Vec::new(),
    })
}

fn cmd_modelcheck(system: &SystemArgs, format: Format, formula: &str, budget: usize) -> Result<Output, CliError> {
    let (sys, n) = load(system)?;
    let f = parse_formula(formula, n)?;
    let ts = build_with(&sys, n, BuildOptions { state_budget: budget })?;
    let out = ModelChecker::new(&ts).check(&f)?;
    let mut rep = Report::new();
    rep.field("command", "modelcheck")
        .field("formula", &f)
        .field("holds", out.holds)
        .field("states", ts.state_count())
        .field("satisfying_states", out.satisfied_states().len());
    let mut human = String::new();
    writeln!(human, "formula: {f}").unwrap();
    writeln!(human, "holds at the initial state: {}", out.holds).unwrap();
    writeln!(
        human,
        "satisfied in {} of {} states",
        out.satisfied_states().len(),
        ts.state_count()
    )
    .unwrap();
    if let Some(trace) = &out.trace {
        let label = if out.holds { "witness" } else { "counterexample" };
        let seq = ts.sequence_along(&trace.states).expect("traces start at the initial state");
        let block = TraceBlock::from_sequence(label, &sys, &seq);
        human_trace(&mut human, label, &block);
        if let Some(l) = trace.loop_start {
            rep.field("loop_start", l);
            writeln!(human, "  then loops from step {l} forever").unwrap();
        }
        rep.trace(block);
    }
    Ok(Output {
        text: emit(format, &rep, human),
        code: if out.holds { exit::OK } else { exit::FORMULA_FALSE },
        warnings: Vec::new(),
    })
}

/// Largest surface for which the diamond is enumerated cell by cell.
pub const DIAMOND_LIMIT: u64 = 2000;

fn cmd_count(
    size: u64,
    tileset: Option<&Path>,
    seed: Option<&Path>,
    budget: usize,
    format: Format,
) -> Result<Output, CliError> {
    let formula = worst_case_config_count(size);
    let mut rep = Report::new();
    rep.field("command", "count").field("size", size).field("formula", &formula);
    let mut line = format!("formula={formula}");
    let mut warnings = Vec::new();
    if size <= DIAMOND_LIMIT {
        let diamond = diamond_enumeration(size as usize).total;
        rep.field("diamond", &diamond);
        write!(line, " diamond={diamond}").unwrap();
    } else {
        warnings.push(format!("diamond enumeration skipped above n={DIAMOND_LIMIT}"));
    }
    if let Some(tileset) = tileset {
        let n = size_of(size)?;
        let sys = load_system(tileset, seed)?;
        match explicit_config_count(&sys, n, BuildOptions { state_budget: budget }) {
            Ok(c) => {
                rep.field("explicit", &c);
                write!(line, " explicit={c}").unwrap();
            }
            Err(CountError::Build(BuildError::StateBudgetExceeded(b))) => {
                warnings.push(format!("explicit count skipped: more than {b} states"));
            }
            Err(CountError::NotApplicable(v)) => {
                warnings.push(format!("explicit count skipped: system verifies as {v}"));
            }
            Err(CountError::Verify(e)) => return Err(e.into()),
            Err(CountError::Build(e)) => return Err(e.into()),
        }
    }
    line.push('\n');
    Ok(Output {
        text: emit(format, &rep, line),
        code: exit::OK,
        warnings,
    })
}

fn cmd_simulate(system: &SystemArgs, format: Format, rng_seed: u64) -> Result<Output, CliError> {
    let (sys, n) = load(system)?;
    let seq = random_assembly_sequence(&sys, n, rng_seed)?;
    let block = TraceBlock::from_sequence("assembly", &sys, &seq);
    let mut rep = Report::new();
    rep.field("command", "simulate")
        .field("rng_seed", rng_seed)
        .field("surface", n)
        .field("steps", seq.len());
    let mut human = String::new();
    human_trace(&mut human, &format!("assembly ({} steps, rng seed {rng_seed})", seq.len()), &block);
    rep.trace(block);
    Ok(Output {
        text: emit(format, &rep, human),
        code: exit::OK,
        warnings: Vec::new(),
    })
}

/// `states N` and `edges M`, then one `source target tile x y` line per edge.
pub fn edge_list(sys: &TileAssemblySystem, ts: &tilecheck_core::TransitionSystem) -> String {
    let mut out = String::new();
    writeln!(out, "states {}", ts.state_count()).unwrap();
    writeln!(out, "edges {}", ts.edge_count()).unwrap();
    for s in 0..ts.state_count() {
        for e in ts.successors(s) {
            let p = e.placement;
            writeln!(out, "{s} {} {} {} {}", e.target, sys.name(p.tile), p.loc.x, p.loc.y).unwrap();
        }
    }
    out
}

fn cmd_graph(system: &SystemArgs, budget: usize) -> Result<Output, CliError> {
    let (sys, n) = load(system)?;
    let ts = build_with(&sys, n, BuildOptions { state_budget: budget })?;
    Ok(Output {
        text: edge_list(&sys, &ts),
        code: exit::OK,
        warnings: Vec::new(),
    })
}

fn cmd_explore(system: &SystemArgs, format: Format, budget: usize) -> Result<Output, CliError> {
    let (sys, n) = load(system)?;
    let net = translate(&sys, n)?;
    let e = explore(&net, budget, false)?;
    let mut rep = Report::new();
    rep.field("command", "explore")
        .field("places", net.place_count())
        .field("transitions", net.transition_count())
        .field("reachable", &e.reachable)
        .field("terminal", &e.terminal)
        .field("edges", &e.edges);
    let human = format!(
        "places={} transitions={} reachable={} terminal={} edges={}\n",
        net.place_count(),
        net.transition_count(),
        e.reachable,
        e.terminal,
        e.edges
    );
    Ok(Output {
        text: emit(format, &rep, human),
        code: exit::OK,
        warnings: Vec::new(),
    })
}

fn dispatch(cmd: &Command) -> Result<(Output, Option<&Path>), CliError> {
    Ok(match cmd {
        Command::Verify {
            system,
            output,
            strict_paper_rectilinearity,
        } => (
            cmd_verify(system, output.format, *strict_paper_rectilinearity)?,
            output.out.as_deref(),
        ),
        Command::Modelcheck {
            system,
            output,
            formula,
            state_budget,
        } => (
            cmd_modelcheck(system, output.format, formula, *state_budget)?,
            output.out.as_deref(),
        ),
        Command::Count {
            size,
            tileset,
            seed,
            state_budget,
            output,
        } => (
            cmd_count(*size, tileset.as_deref(), seed.as_deref(), *state_budget, output.format)?,
            output.out.as_deref(),
        ),
        Command::ExportSmart {
            system,
            model_name,
            out,
        } => {
            let (sys, n) = load(system)?;
            let text = export_smart(&sys, n, model_name)?;
            (
                Output {
                    text,
                    code: exit::OK,
                    warnings: Vec::new(),
                },
                out.as_deref(),
            )
        }
        Command::Simulate {
            system,
            output,
            rng_seed,
        } => (cmd_simulate(system, output.format, *rng_seed)?, output.out.as_deref()),
        Command::Graph {
            system,
            state_budget,
            out,
        } => (cmd_graph(system, *state_budget)?, out.as_deref()),
        Command::Explore {
            system,
            output,
            state_budget,
        } => (cmd_explore(system, output.format, *state_budget)?, output.out.as_deref()),
    })
}

/// Runs the command line given by `args` (including the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((out, path)) => {
            for w in &out.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let written = match path {
                Some(p) => std::fs::write(p, &out.text).map_err(|source| CliError::Io {
                    path: p.to_path_buf(),
                    source,
                }),
                None => stdout.write_all(out.text.as_bytes()).map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                }),
            };
            match written {
                Ok(()) => out.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
