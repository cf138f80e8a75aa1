use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cdlab::constructions::{
    a4_zero_divisor, a5_family, build_octonion_automorphism, double_zero_divisor,
    element_with_ann_dim, scale_pair, top_zero_divisor, Certificate,
};
use cdlab::document::{CertificateDocument, ElementDocument};
use cdlab::element::{
    conjugate, hermitian_inner_product, inner_product_real, multiply, set_max_level, Element,
};
use cdlab::error::Error;
use cdlab::linalg::Subspace;
use cdlab::operators::{alternator_space, annihilator, associator_space};
use cdlab::rational::format_rational;
use cdlab::verify::report::{failures_from_json, run_all, run_suite_with_jobs, DEFAULT_COEFFICIENT_BOUND};
use cdlab::verify::{replay, spectrum_search, SpectrumResult, SpectrumSpec, Strategy, SuiteSpec, Target};

mod input;

use input::{parse_complex, parse_sign, parse_signs, Operands};

/// Exit status 1: a verification or self-check failed. Exit status 2: bad input.
#[derive(Debug)]
pub enum CliError {
    Failure(String),
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CertificateMismatch(_) => CliError::Failure(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "cd-lab", version, about = "Exact computation in Cayley-Dickson algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product of two elements.
    Mul(Operands),
    /// Conjugate of an element.
    Conj(Operands),
    /// Real inner product <x, y>.
    Inner(Operands),
    /// Hermitian form <x, y>_H as a complex number over span{1, i_n}.
    Herm(Operands),
    /// Annihilator of an element.
    Ann(SpaceArgs),
    /// Alternator space {y : [x, x, y] = 0}.
    Alt(SpaceArgs),
    /// Kernel of z -> [a, z, b], or of z -> (az)b + a(zb) with --anti.
    Assoc(AssocArgs),
    /// Certified zero-divisor constructions.
    Construct(ConstructArgs),
    /// Seeded property suites and failure replay.
    Verify(VerifyArgs),
    /// Histogram of annihilator or alternator dimensions at one level.
    Spectrum(SpectrumArgs),
    /// Spectrum search over a range of levels, as one table.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct SpaceArgs {
    #[command(flatten)]
    operands: Operands,
    /// Also print a basis (reduced echelon form).
    #[arg(long)]
    basis: bool,
}

#[derive(Args, Debug)]
struct AssocArgs {
    #[command(flatten)]
    operands: Operands,
    #[arg(long)]
    anti: bool,
    #[arg(long)]
    basis: bool,
}

#[derive(Args, Debug)]
#[group(id = "mode", required = true, multiple = false)]
struct ConstructMode {
    /// Element with annihilator of this dimension (needs --level).
    #[arg(long, value_name = "D", group = "mode")]
    ann_dim: Option<usize>,
    /// (a, +-i_n a) from one operand a; sign from --sign.
    #[arg(long, group = "mode")]
    double: bool,
    /// (alpha a, beta a) from one operand a; scalars from --alpha and --beta.
    #[arg(long, group = "mode")]
    scale_pair: bool,
    /// (a1, a2) in A_4 from two octonion operands.
    #[arg(long, group = "mode")]
    a4: bool,
    /// Top-dimensional zero-divisor (needs --level; --signs, optional seed operands).
    #[arg(long, group = "mode")]
    top: bool,
    /// The A_5 family member for a quaternion operand alpha.
    #[arg(long, group = "mode")]
    a5_alpha: bool,
    /// Octonion automorphism sending i, j, t to three operands x, y, z.
    #[arg(long, group = "mode")]
    automorphism: bool,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    mode: ConstructMode,
    #[command(flatten)]
    operands: Operands,
    /// Sign for --double: + or -.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    sign: String,
    /// Complex scalar RE[,IM] for --scale-pair.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Complex scalar RE[,IM] for --scale-pair.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// Sign sequence for --top, e.g. "+-+" (defaults to all +).
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
    /// Write the document here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all` for every suite supporting --level.
    #[arg(long, required_unless_present_any = ["replay", "list"])]
    suite: Option<String>,
    #[arg(long, required_unless_present_any = ["replay", "list"])]
    level: Option<u32>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Coefficients are drawn uniformly from [-bound, bound].
    #[arg(long, default_value_t = DEFAULT_COEFFICIENT_BOUND)]
    bound: i64,
    /// Fraction of dense coefficients forced to zero, e.g. 3/4.
    #[arg(long)]
    sparsity: Option<String>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Write one replay document per failure into this directory.
    #[arg(long)]
    failures_dir: Option<PathBuf>,
    /// Re-run the failures recorded in a replay document or report.
    #[arg(long, value_name = "FAILURE_FILE", conflicts_with_all = ["suite", "list"])]
    replay: Option<PathBuf>,
    /// List the suites and their levels.
    #[arg(long)]
    list: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TargetArg {
    Ann,
    Alt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Random,
    Structured,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "ann")]
    target: TargetArg,
    #[arg(long, value_enum, default_value = "structured")]
    strategy: StrategyArg,
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_COEFFICIENT_BOUND)]
    bound: i64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write one element file per observed dimension into this directory.
    #[arg(long)]
    exemplar_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    level: u32,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    from: u32,
    #[arg(long)]
    to: u32,
    #[command(flatten)]
    search: SearchArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = apply_level_cap() {
        return report_error(e);
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => report_error(e),
    }
}

fn report_error(e: CliError) -> ExitCode {
    match e {
        CliError::Failure(msg) => {
            eprintln!("failure: {msg}");
            ExitCode::from(1)
        }
        CliError::Input(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn apply_level_cap() -> CliResult {
    if let Ok(text) = std::env::var("CD_LAB_MAX_LEVEL") {
        let cap: u32 = text.trim().parse().map_err(|_| {
            CliError::Input(format!("CD_LAB_MAX_LEVEL={text:?} is not a non-negative integer"))
        })?;
        set_max_level(cap);
    }
    Ok(())
}

fn run(command: Command) -> CliResult<ExitCode> {
    match command {
        Command::Mul(ops) => {
            let [x, y] = ops.exactly("mul")?;
            print_value(&element_value(&multiply(&x, &y)?));
        }
        Command::Conj(ops) => {
            let [x] = ops.exactly("conj")?;
            print_value(&element_value(&conjugate(&x)));
        }
        Command::Inner(ops) => {
            let [x, y] = ops.exactly("inner")?;
            print_value(&json!({ "inner_product": format_rational(&inner_product_real(&x, &y)?) }));
        }
        Command::Herm(ops) => {
            let [x, y] = ops.exactly("herm")?;
            let h = hermitian_inner_product(&x, &y)?;
            print_value(&json!({ "re": format_rational(&h.re), "im": format_rational(&h.im) }));
        }
        Command::Ann(args) => {
            let [x] = args.operands.exactly("ann")?;
            print_value(&space_value(&annihilator(&x), args.basis));
        }
        Command::Alt(args) => {
            let [x] = args.operands.exactly("alt")?;
            print_value(&space_value(&alternator_space(&x), args.basis));
        }
        Command::Assoc(args) => {
            let [a, b] = args.operands.exactly("assoc")?;
            print_value(&space_value(&associator_space(&a, &b, args.anti)?, args.basis));
        }
        Command::Construct(args) => construct(args)?,
        Command::Verify(args) => return verify(args),
        Command::Spectrum(args) => {
            let result = search(args.level, &args.search)?;
            emit_table(&[result], &args.search)?;
        }
        Command::Sweep(args) => {
            if args.from > args.to {
                return Err(CliError::Input(format!(
                    "--from {} exceeds --to {}",
                    args.from, args.to
                )));
            }
            let results = (args.from..=args.to)
                .map(|level| search(level, &args.search))
                .collect::<CliResult<Vec<_>>>()?;
            emit_table(&results, &args.search)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn element_value(x: &Element) -> Value {
    serde_json::to_value(ElementDocument::from_element(x)).expect("documents serialize")
}

fn space_value(space: &Subspace, with_basis: bool) -> Value {
    let mut v = json!({ "level": space.level(), "dimension": space.dim() });
    if with_basis {
        v["basis"] = space.basis().iter().map(element_value).collect();
    }
    v
}

fn print_value(v: &Value) {
    emit(&serde_json::to_string_pretty(v).expect("values serialize"));
}

/// Prints a line to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("cannot write to stdout: {e}");
    }
}

fn write_or_print(text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            emit(text);
            Ok(())
        }
    }
}

fn construct(args: ConstructArgs) -> CliResult {
    let mode = &args.mode;
    let ops = &args.operands;
    if mode.automorphism {
        let [x, y, z] = ops.exactly("construct --automorphism")?;
        let m = build_octonion_automorphism(&x, &y, &z)?;
        let rows: Vec<Vec<String>> = m
            .rows()
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        let images: Vec<Value> = (0..m.side()).map(|q| element_value(&m.column(q))).collect();
        let text = serde_json::to_string_pretty(&json!({ "matrix": rows, "images": images }))
            .expect("values serialize");
        eprintln!("self-check: pass (multiplicative on all 64 basis products)");
        return write_or_print(&text, args.out.as_deref());
    }
    let cert: Certificate = if let Some(d) = mode.ann_dim {
        let level = ops
            .level
            .ok_or_else(|| CliError::Input("--ann-dim needs --level".into()))?;
        element_with_ann_dim(level, d)?
    } else if mode.double {
        let [a] = ops.exactly("construct --double")?;
        double_zero_divisor(&a, parse_sign(&args.sign)?)?
    } else if mode.scale_pair {
        let [a] = ops.exactly("construct --scale-pair")?;
        let alpha = parse_complex(args.alpha.as_deref().unwrap_or("1"))?;
        let beta = parse_complex(args.beta.as_deref().unwrap_or("1"))?;
        scale_pair(&a, &alpha, &beta)?
    } else if mode.a4 {
        let [a1, a2] = ops.exactly("construct --a4")?;
        a4_zero_divisor(&a1, &a2)?
    } else if mode.top {
        let level = ops
            .level
            .ok_or_else(|| CliError::Input("--top needs --level".into()))?;
        let signs = match &args.signs {
            Some(text) => parse_signs(text)?,
            None => vec![1; level.saturating_sub(4) as usize],
        };
        let files: Vec<Element> = ops
            .elems
            .iter()
            .map(|e| input::read_element(e))
            .collect::<CliResult<_>>()?;
        let (a1, a2) = match files.as_slice() {
            [] => (Element::basis(3, 1)?, Element::basis(3, 2)?),
            [a1, a2] => (a1.clone(), a2.clone()),
            other => {
                return Err(CliError::Input(format!(
                    "--top takes zero or two seed operands, got {}",
                    other.len()
                )))
            }
        };
        top_zero_divisor(level, &signs, (&a1, &a2))?
    } else if mode.a5_alpha {
        let [alpha] = ops.exactly("construct --a5-alpha")?;
        a5_family(&alpha)?
    } else {
        unreachable!("clap requires exactly one mode");
    };
    cert.verify()?;
    eprintln!("self-check: pass (dim Ann = {})", cert.claimed_ann_dim);
    let text = serde_json::to_string_pretty(&CertificateDocument::from_certificate(&cert))
        .expect("certificates serialize");
    write_or_print(&text, args.out.as_deref())
}

fn verify(args: VerifyArgs) -> CliResult<ExitCode> {
    if args.list {
        for def in cdlab::verify::suites::SUITES {
            let note = if def.in_all { "" } else { " (not in all)" };
            emit(&format!(
                "{:<20} levels {}..={}{}  {}",
                def.name,
                def.levels.start(),
                def.levels.end(),
                note,
                def.about
            ));
        }
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(path) = &args.replay {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let records = failures_from_json(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        if records.is_empty() {
            return Err(CliError::Input(format!("{}: no failures to replay", path.display())));
        }
        let outcomes = records.iter().map(replay).collect::<Result<Vec<_>, _>>()?;
        let still_failing = outcomes.iter().any(|o| !o.passed);
        print_value(&serde_json::to_value(&outcomes).expect("outcomes serialize"));
        return Ok(if still_failing { ExitCode::from(1) } else { ExitCode::SUCCESS });
    }
    let suite = args.suite.expect("clap requires --suite");
    let level = args.level.expect("clap requires --level");
    let template = SuiteSpec {
        suite: suite.clone(),
        level,
        trials: args.trials,
        seed: args.seed,
        coefficient_bound: args.bound,
        sparsity: args.sparsity.clone(),
    };
    let reports = if suite == "all" {
        let reports = run_all(&template, args.jobs)?;
        if reports.is_empty() {
            return Err(CliError::Input(format!("no suite supports level {level}")));
        }
        reports
    } else {
        vec![run_suite_with_jobs(&template, args.jobs)?]
    };
    if let Some(dir) = &args.failures_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
        for report in &reports {
            for (k, doc) in report.replay_documents().iter().enumerate() {
                let name = format!("{}-L{}-seed{}-{:04}.json", report.suite, report.level, report.seed, k);
                let text = serde_json::to_string_pretty(doc).expect("documents serialize");
                let path = dir.join(name);
                fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
        }
    }
    for r in &reports {
        eprintln!(
            "{} level {}: {}/{} checks passed in {:.2?}",
            r.suite,
            r.level,
            r.passed,
            r.checks_run,
            r.elapsed
        );
    }
    let text = if suite == "all" {
        serde_json::to_string_pretty(&reports).expect("reports serialize")
    } else {
        reports[0].to_json()
    };
    write_or_print(&text, args.out.as_deref())?;
    let failed = reports.iter().any(|r| !r.all_passed());
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn search(level: u32, args: &SearchArgs) -> CliResult<SpectrumResult> {
    let spec = SpectrumSpec {
        level,
        target: match args.target {
            TargetArg::Ann => Target::Ann,
            TargetArg::Alt => Target::Alt,
        },
        strategy: match args.strategy {
            StrategyArg::Random => Strategy::Random,
            StrategyArg::Structured => Strategy::Structured,
        },
        budget: args.budget,
        seed: args.seed,
        coefficient_bound: args.bound,
    };
    Ok(spectrum_search(&spec)?)
}

/// Writes one file per exemplar and returns `(dimension, path)` pairs.
fn write_exemplars(result: &SpectrumResult, dir: &Path) -> CliResult<Vec<(usize, String)>> {
    fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut paths = Vec::new();
    for (dim, doc) in &result.exemplars {
        let path = dir.join(format!("{}-L{}-dim{}.json", result.target, result.level, dim));
        let text = serde_json::to_string(doc).expect("documents serialize");
        fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        paths.push((*dim, path.display().to_string()));
    }
    Ok(paths)
}

fn emit_table(results: &[SpectrumResult], args: &SearchArgs) -> CliResult {
    let mut files = Vec::new();
    for r in results {
        files.push(match &args.exemplar_dir {
            Some(dir) => write_exemplars(r, dir)?,
            None => Vec::new(),
        });
    }
    match args.format {
        Format::Json => {
            let text = if results.len() == 1 {
                serde_json::to_string_pretty(&results[0])
            } else {
                serde_json::to_string_pretty(results)
            }
            .expect("results serialize");
            emit(&text);
        }
        Format::Csv => {
            emit("level,dimension,count,exemplar_file");
            for (r, paths) in results.iter().zip(&files) {
                for (dim, count) in &r.histogram {
                    let file = paths
                        .iter()
                        .find(|(d, _)| d == dim)
                        .map(|(_, p)| csv_field(p))
                        .unwrap_or_default();
                    emit(&format!("{},{},{},{}", r.level, dim, count, file));
                }
            }
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
