//! Command-line front end: parse an input file, run the analyses, emit
//! deterministic JSON or a human-readable report.
//!
//! Exit codes: 0 completed, 2 soundness-coupling violation (a theorem's
//! hypotheses all hold yet the direct verification contradicts it),
//! 3 budget exceeded, 4 input error, 1 other failure.

use clap::{Parser, Subcommand, ValueEnum};
use reeslab::bourbaki::BourbakiMode;
use reeslab::error::Error;
use reeslab::input::{load_input, InputSpec};
use reeslab::report::{self, AnalyzeFlags};
use reeslab::{modlib, rees};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "reeslab", version, about = "Rees algebras of modules: invariants and Cohen-Macaulay certification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Linear,
    Cm,
    Minrank,
    Cm2,
    Cm3,
}

impl TheoremArg {
    fn name(self) -> &'static str {
        match self {
            TheoremArg::Linear => "linear",
            TheoremArg::Cm => "cm",
            TheoremArg::Minrank => "minrank",
            TheoremArg::Cm2 => "cm2",
            TheoremArg::Cm3 => "cm3",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: invariants plus theorem pipelines.
    Analyze {
        file: PathBuf,
        /// Run a single pipeline instead of all applicable ones.
        #[arg(long)]
        theorem: Option<TheoremArg>,
        /// Override the seed from the input file.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the Bourbaki construction mode.
        #[arg(long)]
        mode: Option<ModeArg>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Emit the symmetric and Rees algebra presentations.
    Rees {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the generic Bourbaki ideal.
    Bourbaki {
        file: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        mode: Option<ModeArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ErrorObject {
    error: String,
    kind: String,
}

fn error_kind(err: &Error) -> (&'static str, u8) {
    match err {
        Error::BudgetExceeded(_) => ("budget-exceeded", 3),
        Error::Input(_) | Error::UnknownVariable { .. } | Error::Syntax { .. } => {
            ("input-error", 4)
        }
        _ => ("computation-error", 1),
    }
}

fn fail(err: Error) -> ExitCode {
    let (kind, code) = error_kind(&err);
    let obj = ErrorObject {
        error: err.to_string(),
        kind: kind.into(),
    };
    eprintln!("{}", serde_json::to_string(&obj).unwrap());
    ExitCode::from(code)
}

fn emit(content: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load(path: &PathBuf) -> Result<InputSpec, Error> {
    let mut spec = load_input(path)?;
    if let Ok(cap) = std::env::var("REESLAB_TIME_CAP") {
        let secs: u64 = cap
            .parse()
            .map_err(|_| Error::Input("REESLAB_TIME_CAP must be a number of seconds".into()))?;
        spec.config.budget.time_cap_seconds = secs;
    }
    Ok(spec)
}

fn mode_of(arg: Option<ModeArg>) -> Option<BourbakiMode> {
    arg.map(|m| match m {
        ModeArg::Symbolic => BourbakiMode::Symbolic,
        ModeArg::Random => BourbakiMode::Random,
    })
}

#[derive(Serialize)]
struct AlgebraPresentation {
    variables: Vec<String>,
    symmetric_ideal: Vec<String>,
    rees_ideal: Vec<String>,
    linear_type: bool,
}

fn run_rees(spec: &InputSpec) -> Result<String, Error> {
    let budget = spec.config.budget.clone();
    let e = spec.build_module(&budget)?;
    let p = rees::rees_algebra(&e, &budget)?;
    let pres = AlgebraPresentation {
        variables: p.rees.ring.vars.clone(),
        symmetric_ideal: p.sym.defining_ideal.gens.iter().map(|g| g.render()).collect(),
        rees_ideal: p.rees.defining_ideal.gens.iter().map(|g| g.render()).collect(),
        linear_type: rees::is_linear_type(&p, &budget)?,
    };
    report::to_canonical_json(&pres)
}

#[derive(Serialize)]
struct BourbakiOutput {
    mode: String,
    seed: u64,
    height: i64,
    generators: Vec<String>,
    quotient_is_torsion_free: bool,
}

fn run_bourbaki(
    spec: &InputSpec,
    seed: Option<u64>,
    mode: Option<BourbakiMode>,
) -> Result<String, Error> {
    let mut config = spec.config.clone();
    if let Some(s) = seed {
        config.seed = s;
    }
    let budget = config.budget.clone();
    let mode = mode.unwrap_or(spec.bourbaki_mode);
    let e = spec.build_module(&budget)?;
    let b = reeslab::bourbaki::generic_bourbaki(
        &e,
        spec.submodule_u.as_deref(),
        mode,
        &config,
        &budget,
    )?;
    let out = BourbakiOutput {
        mode: match b.mode {
            BourbakiMode::Symbolic => "symbolic".into(),
            BourbakiMode::Random => "random".into(),
        },
        seed: b.seed,
        height: b.height,
        generators: b.ideal.gens.iter().map(|g| g.render()).collect(),
        quotient_is_torsion_free: modlib::is_torsion_free(&b.quotient, &budget)?,
    };
    report::to_canonical_json(&out)
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            file,
            theorem,
            seed,
            mode,
            out,
            format,
        } => {
            let spec = load(&file)?;
            let flags = AnalyzeFlags {
                theorem: theorem.map(|t| t.name().to_string()),
                seed,
                mode: mode_of(mode),
            };
            let rep = report::analyze(&spec, &flags)?;
            let content = match format {
                FormatArg::Json => report::to_canonical_json(&rep)?,
                FormatArg::Text => report::render_text(&rep),
            };
            emit(&content, out.as_ref())?;
            if rep.soundness_violation() {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rees { file, out } => {
            let spec = load(&file)?;
            let content = run_rees(&spec)?;
            emit(&content, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bourbaki {
            file,
            seed,
            mode,
            out,
        } => {
            let spec = load(&file)?;
            let content = run_bourbaki(&spec, seed, mode_of(mode))?;
            emit(&content, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => fail(err),
    }
}
