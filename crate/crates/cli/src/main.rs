//! `catlevy` — exact-arithmetic pipelines for categorical Lévy processes.
//!
//! Three subcommands:
//!
//! * `laws` runs the randomized coherence and independence suites for one
//!   instance (or all of them) with a fixed seed.
//! * `levy` reads a semigroup spec file, builds the inductive-limit process
//!   over its time window, and emits marginal tables, increment tables, or
//!   the full verification report.
//! * `uniprod` evaluates joint moments of two moment functionals under the
//!   tensor, free, boolean and monotone products.
//!
//! Stdout is byte-deterministic for a fixed invocation; timing goes to
//! stderr. Exit codes: 0 success, 1 a law or value-level check failed,
//! 2 bad usage or unparseable input.

mod specfile;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use catlevy_core::instances::{BoolProd, FreeProd, MonoProd, ProductPolicy, ProbOp, TensorAlg};
use catlevy_core::rat::format_rat;
use catlevy_core::uniprod::words_up_to;
use catlevy_core::{
    convolution_powers, cyclic_system_from_marginals, cyclic_walk_marginals, increment_law,
    increment_moment, multiplicative_state, run_suite, state_system_from_semigroup,
    ComonoidalSystem, LevyProcess, MomentFunctional, MonoidValue, ProductKind, Rat, Report,
    INSTANCE_NAMES,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};

use specfile::{Carrier, SemigroupSpec, SpecError, StepTable, Steps};

// ---------------------------------------------------------------------------
// Command line surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "catlevy",
    version,
    about = "Exact law suites, Lévy-process pipelines and universal products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the categorical law suites for one instance, or for all of them.
    Laws {
        /// Instance name, or `all`.
        #[arg(long, default_value = "all")]
        instance: String,
        /// Randomized cases per law.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Seed for the case generator.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a Lévy process from a semigroup spec file.
    Levy {
        /// Path to the spec file.
        spec: PathBuf,
        /// Override the horizon given in the spec file.
        #[arg(long)]
        horizon: Option<usize>,
        /// What to print.
        #[arg(long, value_enum, default_value = "verify")]
        emit: Emit,
        /// Largest tuple length for the increment-independence check.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate joint moments of two functionals under the universal products.
    Uniprod {
        /// Functional file for the left factor (its letters get leg 0).
        phi1: PathBuf,
        /// Functional file for the right factor (its letters get leg 1).
        phi2: PathBuf,
        /// Word file: one word per line, `1` for the empty word.
        words: PathBuf,
        /// Restrict to a single product; default is all four.
        #[arg(long, value_enum)]
        product: Option<ProductArg>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Marginals,
    Increments,
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductArg {
    Tensor,
    Free,
    Boolean,
    Monotone,
}

impl ProductArg {
    fn kind(self) -> ProductKind {
        match self {
            ProductArg::Tensor => ProductKind::Tensor,
            ProductArg::Free => ProductKind::Free,
            ProductArg::Boolean => ProductKind::Boolean,
            ProductArg::Monotone => ProductKind::Monotone,
        }
    }
}

/// Failures split by exit code: `Data` is a value-level or law failure
/// (exit 1), `Usage` is a malformed invocation or input file (exit 2).
enum CliError {
    Data(String),
    Usage(String),
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> CliError {
        CliError::Usage(e.to_string())
    }
}

fn data(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Laws { instance, cases, seed, format } => cmd_laws(&instance, cases, seed, format),
        Command::Levy { spec, horizon, emit, max_n, format } => {
            cmd_levy(&spec, horizon, emit, max_n, format)
        }
        Command::Uniprod { phi1, phi2, words, product, format } => {
            cmd_uniprod(&phi1, &phi2, &words, product, format)
        }
    };
    eprintln!("# wall time: {} ms", start.elapsed().as_millis());
    match outcome {
        Ok(code) => code,
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// laws
// ---------------------------------------------------------------------------

fn cmd_laws(instance: &str, cases: usize, seed: u64, format: Format) -> Result<ExitCode, CliError> {
    let names: Vec<&str> = if instance == "all" {
        INSTANCE_NAMES.to_vec()
    } else {
        vec![instance]
    };
    let mut reports = Vec::with_capacity(names.len());
    for name in &names {
        let report = run_suite(name, seed, cases).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown instance `{name}`; known instances: all, {}",
                INSTANCE_NAMES.join(", ")
            ))
        })?;
        reports.push((*name, report));
    }
    let failed = reports.iter().any(|(_, r)| !r.failures.is_empty());
    match format {
        Format::Json => {
            let list: Vec<&Report> = reports.iter().map(|(_, r)| r).collect();
            println!("{}", serde_json::to_string_pretty(&list).map_err(data)?);
        }
        Format::Text => {
            for (name, report) in &reports {
                println!("{}", report.render_text());
                if *name == "mixvec" {
                    println!(
                        "note: mixvec keeps duplicate basis labels, so independence \
                         morphisms exist but need not be unique"
                    );
                }
            }
        }
    }
    Ok(ExitCode::from(if failed { 1 } else { 0 }))
}

// ---------------------------------------------------------------------------
// levy
// ---------------------------------------------------------------------------

fn cmd_levy(
    path: &Path,
    horizon: Option<usize>,
    emit: Emit,
    max_n: usize,
    format: Format,
) -> Result<ExitCode, CliError> {
    let text = read_file(path)?;
    let spec = specfile::parse_spec(&text)?;
    let horizon = resolve_horizon(&spec, horizon)?;
    match &spec.carrier {
        Carrier::Cyclic { .. } => run_prob(&spec, horizon, emit, max_n, format),
        Carrier::Generated { .. } => match spec.instance.as_str() {
            "qps-tensor" => run_qps::<TensorAlg>(&spec, horizon, emit, max_n, format),
            "qps-free" => run_qps::<FreeProd>(&spec, horizon, emit, max_n, format),
            "qps-boolean" => run_qps::<BoolProd>(&spec, horizon, emit, max_n, format),
            "qps-monotone" => run_qps::<MonoProd>(&spec, horizon, emit, max_n, format),
            other => Err(CliError::Usage(format!("unknown instance `{other}`"))),
        },
    }
}

fn resolve_horizon(spec: &SemigroupSpec, flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(h) = flag {
        return Ok(h);
    }
    if let Some(h) = spec.horizon {
        return Ok(h);
    }
    if let Steps::PerStep(tables) = &spec.steps {
        return Ok(tables.len());
    }
    Err(CliError::Usage(
        "the spec file gives a one-step generator without a horizon; add `horizon = …` to \
         [monoid] or pass --horizon"
            .into(),
    ))
}

fn run_prob(
    spec: &SemigroupSpec,
    horizon: usize,
    emit: Emit,
    max_n: usize,
    format: Format,
) -> Result<ExitCode, CliError> {
    let order = match &spec.carrier {
        Carrier::Cyclic { order } => *order,
        Carrier::Generated { .. } => unreachable!("the parser pairs carriers with step tables"),
    };
    let marginals = match &spec.steps {
        Steps::OneStep(StepTable::Dist(step)) => cyclic_walk_marginals(step, horizon),
        Steps::PerStep(tables) => {
            if tables.len() < horizon {
                return Err(CliError::Usage(format!(
                    "the spec file provides tables up to time {}, but the horizon is {horizon}",
                    tables.len()
                )));
            }
            let mut point = vec![Rat::zero(); order];
            point[0] = Rat::one();
            let mut out = vec![point];
            for table in &tables[..horizon] {
                match table {
                    StepTable::Dist(d) => out.push(d.clone()),
                    StepTable::Moments(_) => {
                        unreachable!("the parser pairs carriers with step tables")
                    }
                }
            }
            out
        }
        Steps::OneStep(StepTable::Moments(_)) => {
            unreachable!("the parser pairs carriers with step tables")
        }
    };
    let system =
        cyclic_system_from_marginals(spec.monoid.clone(), &marginals).map_err(data)?;
    match emit {
        Emit::Marginals => {
            let rows = prob_marginal_rows(&system)?;
            print_rows(spec, horizon, "marginals", rows, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Emit::Increments => {
            let process = LevyProcess::build(system).map_err(data)?;
            let mut rows = Vec::new();
            for (i, s) in process.window().iter().enumerate() {
                for t in &process.window()[i..] {
                    let law =
                        increment_law(&process, &[(s.clone(), t.clone())]).map_err(data)?;
                    let values = law.outcomes[0]
                        .iter()
                        .zip(&law.weights)
                        .map(|(o, w)| (format!("P({o})"), format_rat(w)))
                        .collect();
                    rows.push((increment_label(spec, s, t), values));
                }
            }
            print_rows(spec, horizon, "increments", rows, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Emit::Verify => verify_process(horizon, LevyProcess::build(system), max_n, format),
    }
}

fn prob_marginal_rows(
    system: &ComonoidalSystem<ProbOp>,
) -> Result<Vec<(String, Vec<(String, String)>)>, CliError> {
    let mut rows = Vec::new();
    for t in system.window() {
        let obj = system.obj(&t).map_err(data)?;
        let values = obj
            .outcomes
            .iter()
            .zip(&obj.weights)
            .map(|(o, w)| (format!("P({o})"), format_rat(w)))
            .collect();
        rows.push((format!("t={}", system.monoid.show(&t)), values));
    }
    Ok(rows)
}

fn run_qps<P: ProductPolicy>(
    spec: &SemigroupSpec,
    horizon: usize,
    emit: Emit,
    max_n: usize,
    format: Format,
) -> Result<ExitCode, CliError> {
    let (comult, degree, eps) = match &spec.carrier {
        Carrier::Generated { comult, degree, eps } => (comult, *degree, eps),
        Carrier::Cyclic { .. } => unreachable!("the parser pairs carriers with step tables"),
    };
    let states: Vec<MomentFunctional> = match &spec.steps {
        Steps::OneStep(StepTable::Moments(values)) => {
            let phi = MomentFunctional::new(comult.symbols.clone(), degree, values.clone())
                .map_err(|e| CliError::Usage(format!("[phi] table: {e}")))?;
            convolution_powers(P::KIND, &phi, comult, eps, horizon).map_err(data)?
        }
        Steps::PerStep(tables) => {
            if tables.len() < horizon {
                return Err(CliError::Usage(format!(
                    "the spec file provides tables up to time {}, but the horizon is {horizon}",
                    tables.len()
                )));
            }
            let mut states =
                vec![multiplicative_state(comult.symbols.clone(), degree, eps).map_err(data)?];
            for (k, table) in tables[..horizon].iter().enumerate() {
                match table {
                    StepTable::Moments(values) => states.push(
                        MomentFunctional::new(comult.symbols.clone(), degree, values.clone())
                            .map_err(|e| {
                                CliError::Usage(format!("[phi {}] table: {e}", k + 1))
                            })?,
                    ),
                    StepTable::Dist(_) => {
                        unreachable!("the parser pairs carriers with step tables")
                    }
                }
            }
            states
        }
        Steps::OneStep(StepTable::Dist(_)) => {
            unreachable!("the parser pairs carriers with step tables")
        }
    };
    let system = state_system_from_semigroup::<P>(spec.monoid.clone(), comult, eps, &states)
        .map_err(data)?;
    let symbols = comult.symbols.clone();
    match emit {
        Emit::Marginals => {
            let mut rows = Vec::new();
            for t in system.window() {
                let obj = system.obj(&t).map_err(data)?;
                let phi = &obj.legs[0];
                let mut values = vec![("phi(1)".to_string(), "1".to_string())];
                for w in words_up_to(symbols.len(), degree) {
                    let v = phi.eval(&w).map_err(data)?;
                    values.push((format!("phi({})", word_label(&symbols, &w)), format_rat(&v)));
                }
                rows.push((format!("t={}", system.monoid.show(&t)), values));
            }
            print_rows(spec, horizon, "marginals", rows, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Emit::Increments => {
            let process = LevyProcess::build(system).map_err(data)?;
            let mut rows = Vec::new();
            for (i, s) in process.window().iter().enumerate() {
                for t in &process.window()[i..] {
                    let mut values = vec![(
                        "phi(1)".to_string(),
                        format_rat(&increment_moment(&process, s, t, &[]).map_err(data)?),
                    )];
                    for w in words_up_to(symbols.len(), degree) {
                        let v = increment_moment(&process, s, t, &w).map_err(data)?;
                        values.push((format!("phi({})", word_label(&symbols, &w)), format_rat(&v)));
                    }
                    rows.push((increment_label(spec, s, t), values));
                }
            }
            print_rows(spec, horizon, "increments", rows, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Emit::Verify => verify_process(horizon, LevyProcess::build(system), max_n, format),
    }
}

fn verify_process<C: catlevy_core::TensorCategory>(
    horizon: usize,
    process: Result<LevyProcess<C>, catlevy_core::CatError>,
    max_n: usize,
    format: Format,
) -> Result<ExitCode, CliError> {
    if horizon == 0 {
        return Err(CliError::Usage(
            "verification needs a horizon of at least 1".into(),
        ));
    }
    let process = process.map_err(data)?;
    let levy_report = process.verify(max_n);
    let checkpoints: Vec<MonoidValue> = process.window()[1..].to_vec();
    let interval_report = process.check_interval_limits(&checkpoints).map_err(data)?;
    let failed = !levy_report.failures.is_empty() || !interval_report.failures.is_empty();
    match format {
        Format::Json => {
            let list = vec![&levy_report, &interval_report];
            println!("{}", serde_json::to_string_pretty(&list).map_err(data)?);
        }
        Format::Text => {
            println!("{}", levy_report.render_text());
            println!("{}", interval_report.render_text());
        }
    }
    Ok(ExitCode::from(if failed { 1 } else { 0 }))
}

// ---------------------------------------------------------------------------
// uniprod
// ---------------------------------------------------------------------------

fn cmd_uniprod(
    phi1: &Path,
    phi2: &Path,
    words: &Path,
    product: Option<ProductArg>,
    format: Format,
) -> Result<ExitCode, CliError> {
    let left = specfile::parse_functional(&read_file(phi1)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", phi1.display())))?;
    let right = specfile::parse_functional(&read_file(phi2)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", phi2.display())))?;
    if left.degree != right.degree {
        return Err(CliError::Usage(format!(
            "the functionals must share one degree bound, got {} and {}",
            left.degree, right.degree
        )));
    }
    let word_list = specfile::parse_words(&read_file(words)?, &left, &right)
        .map_err(|e| CliError::Usage(format!("{}: {e}", words.display())))?;
    let kinds: Vec<ProductKind> = match product {
        Some(p) => vec![p.kind()],
        None => ProductKind::ALL.to_vec(),
    };

    let mut rows: Vec<(String, Vec<(String, String)>)> = Vec::new();
    for (label, word) in &word_list {
        let mut values = Vec::with_capacity(kinds.len());
        for kind in &kinds {
            let joint = catlevy_core::JointFunctional {
                kind: *kind,
                factors: vec![left.clone(), right.clone()],
            };
            let v = joint.eval(word).map_err(data)?;
            values.push((kind.name().to_string(), format_rat(&v)));
        }
        rows.push((label.clone(), values));
    }

    match format {
        Format::Json => {
            let list: Vec<serde_json::Value> = rows
                .iter()
                .map(|(word, values)| {
                    serde_json::json!({
                        "word": word,
                        "values": values
                            .iter()
                            .map(|(k, v)| serde_json::json!([k, v]))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&list).map_err(data)?);
        }
        Format::Text => {
            for (word, values) in &rows {
                let cells: Vec<String> =
                    values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{word}: {}", cells.join(", "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// Shared output plumbing
// ---------------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn word_label(symbols: &[String], w: &[usize]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|&s| symbols[s].as_str()).collect::<Vec<_>>().join(" ")
    }
}

fn increment_label(spec: &SemigroupSpec, s: &MonoidValue, t: &MonoidValue) -> String {
    format!("j({},{})", spec.monoid.show(s), spec.monoid.show(t))
}

fn print_rows(
    spec: &SemigroupSpec,
    horizon: usize,
    command: &str,
    rows: Vec<(String, Vec<(String, String)>)>,
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let body = serde_json::json!({
                "command": command,
                "instance": spec.instance,
                "monoid": spec.monoid.kind.to_string(),
                "horizon": horizon,
                "rows": rows
                    .iter()
                    .map(|(at, values)| {
                        serde_json::json!({
                            "at": at,
                            "values": values
                                .iter()
                                .map(|(k, v)| serde_json::json!([k, v]))
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&body).map_err(data)?);
        }
        Format::Text => {
            println!(
                "{command} instance={} monoid={} horizon={horizon}",
                spec.instance, spec.monoid.kind
            );
            for (at, values) in &rows {
                let cells: Vec<String> =
                    values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                println!("{at}: {}", cells.join(", "));
            }
        }
    }
    Ok(())
}
