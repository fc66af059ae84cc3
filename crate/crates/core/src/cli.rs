//! Command-line front end.
//!
//! Exit codes: 0 success, 1 internal error, 2 input or corpus error,
//! 3 configuration or compatibility error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bayes::Smoothing;
use crate::corpus::{
    corpus_stats, generate_fixture_corpus, load_corpus, write_corpus, Corpus, FixtureParams,
    Layout, NormalizerConfig, Stemming,
};
use crate::error::Error;
use crate::evaluate::{
    make_stratified_folds, paired_t_test, sweep_attributes, AggregateResult, AttributeRange,
    ClassifierConfig, DEFAULT_FOLDS,
};
use crate::report::{self, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "spamfilter", version, about = "Cost-sensitive anti-spam filter experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print corpus composition.
    Stats(CorpusArgs),
    /// 10-fold cross-validation of one configuration.
    Evaluate(EvaluateArgs),
    /// Cross-validation over a range of attribute counts.
    Sweep(SweepArgs),
    /// Paired one-tailed t-test on the per-fold WAcc of two reports.
    Compare(CompareArgs),
    /// Write a synthetic corpus in the Ling-Spam directory layout.
    Fixture(FixtureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LayoutArg {
    Lingspam,
    Fixture,
}

impl From<LayoutArg> for Layout {
    fn from(l: LayoutArg) -> Self {
        match l {
            LayoutArg::Lingspam => Layout::LingSpam,
            LayoutArg::Fixture => Layout::Fixture,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StemmingArg {
    None,
    Light,
}

impl From<StemmingArg> for Stemming {
    fn from(s: StemmingArg) -> Self {
        match s {
            StemmingArg::None => Stemming::None,
            StemmingArg::Light => Stemming::LightSuffix,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifierArg {
    Nb,
    Mb,
    #[value(hide = true)]
    Oracle,
    #[value(hide = true)]
    Legit,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, value_enum, default_value = "lingspam")]
    layout: LayoutArg,
    #[arg(long, value_enum, default_value = "none")]
    stemming: StemmingArg,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value = "nb")]
    classifier: ClassifierArg,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Neighborhood size (mb only).
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 100)]
    m: usize,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long = "m-range", default_value = "50:700:50")]
    m_range: String,
}

#[derive(Debug, Args)]
struct CompareArgs {
    a: PathBuf,
    b: PathBuf,
}

#[derive(Debug, Args)]
struct FixtureArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long = "n-legit", default_value_t = 90)]
    n_legit: usize,
    #[arg(long = "n-spam", default_value_t = 10)]
    n_spam: usize,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io { .. }
            | Error::EmptyCorpus
            | Error::EmptyMessage
            | Error::Parse(_)
            | Error::InsufficientTokens { .. }
            | Error::InsufficientDocuments { .. }
            | Error::DegenerateTrainingSet => EXIT_INPUT,
            Error::InvalidLambda(_)
            | Error::InvalidK
            | Error::InvalidRange { .. }
            | Error::ZeroAttributes
            | Error::UnknownLayout(_)
            | Error::EmptyFixture
            | Error::InvalidFoldPlan(_) => EXIT_CONFIG,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Stats(args) => cmd_stats(&args, out),
        Command::Evaluate(args) => cmd_evaluate(&args, out),
        Command::Sweep(args) => cmd_sweep(&args, out),
        Command::Compare(args) => cmd_compare(&args, out),
        Command::Fixture(args) => cmd_fixture(&args, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_INTERNAL,
        message: format!("cannot write {}: {e}", path.display()),
    }
}

fn load(args: &CorpusArgs) -> Result<Corpus, Failure> {
    let config = NormalizerConfig::with_stemming(args.stemming.into());
    Ok(load_corpus(&args.corpus, args.layout.into(), &config)?)
}

fn cmd_stats(args: &CorpusArgs, out: &mut dyn Write) -> CmdResult {
    let corpus = load(args)?;
    let _ = writeln!(out, "{}", corpus_stats(&corpus));
    Ok(())
}

fn classifier(model: &ModelArgs) -> Result<ClassifierConfig, Failure> {
    Ok(match model.classifier {
        ClassifierArg::Nb => ClassifierConfig::NaiveBayes {
            smoothing: Smoothing::Laplace,
        },
        ClassifierArg::Mb => {
            if model.k == 0 {
                return Err(Failure::config("k must be at least 1"));
            }
            ClassifierConfig::MemoryBased { k: model.k }
        }
        ClassifierArg::Oracle => ClassifierConfig::Oracle,
        ClassifierArg::Legit => ClassifierConfig::AlwaysLegitimate,
    })
}

fn check_lambda(lambda: f64) -> CmdResult {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidLambda(lambda).into())
    }
}

/// Config echo written into every report header.
fn config_echo(
    corpus: &CorpusArgs,
    model: &ModelArgs,
    classifier: &ClassifierConfig,
    attributes: String,
) -> Vec<(String, String)> {
    let mut echo = vec![
        ("corpus", corpus.corpus.display().to_string()),
        ("layout", Layout::from(corpus.layout).to_string()),
        ("stemming", Stemming::from(corpus.stemming).to_string()),
        ("lowercase", "true".to_string()),
        ("classifier", classifier.id().to_string()),
        ("lambda", model.lambda.to_string()),
        ("attributes", attributes),
        ("k", classifier.k().map(|k| k.to_string()).unwrap_or_default()),
        ("seed", model.seed.to_string()),
        ("folds", DEFAULT_FOLDS.to_string()),
        ("fold_protocol", "stratified round-robin".to_string()),
        ("attribute_selection", "per-fold mutual information".to_string()),
    ];
    if let ClassifierConfig::NaiveBayes { smoothing } = classifier {
        let name = match smoothing {
            Smoothing::Laplace => "laplace",
            Smoothing::None => "none",
        };
        echo.push(("smoothing", name.to_string()));
    }
    echo.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn run_experiments(
    corpus_args: &CorpusArgs,
    model: &ModelArgs,
    range: AttributeRange,
) -> Result<(ClassifierConfig, Vec<AggregateResult>), Failure> {
    check_lambda(model.lambda)?;
    let classifier = classifier(model)?;
    let corpus = load(corpus_args)?;
    let plan = make_stratified_folds(&corpus, DEFAULT_FOLDS, model.seed)?;
    let results = sweep_attributes(&corpus, &classifier, model.lambda, range, &plan)?;
    Ok((classifier, results))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn percent(x: f64) -> String {
    format!("{:.3}%", 100.0 * x)
}

fn summary(r: &AggregateResult) -> String {
    let sp = r
        .spam_precision
        .map_or_else(|| "inf".to_string(), percent);
    let tcr = if r.tcr.is_infinite() {
        "inf".to_string()
    } else {
        format!("{:.2}", r.tcr)
    };
    format!(
        "{} lambda={} m={} SR={} SP={} WAcc={} baseline WAcc={} TCR={}",
        r.classifier,
        r.lambda,
        r.m,
        percent(r.spam_recall),
        sp,
        percent(r.mean_wacc),
        percent(r.baseline_wacc),
        tcr
    )
}

fn cmd_evaluate(args: &EvaluateArgs, out: &mut dyn Write) -> CmdResult {
    let range = AttributeRange::single(args.m)?;
    let (classifier, results) = run_experiments(&args.corpus, &args.model, range)?;
    let echo = config_echo(&args.corpus, &args.model, &classifier, args.m.to_string());
    emit(&report::render(&echo, &results), args.model.out.as_deref(), out)?;
    for r in &results {
        let _ = writeln!(out, "{}", summary(r));
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> CmdResult {
    let range: AttributeRange = args.m_range.parse()?;
    let (classifier, results) = run_experiments(&args.corpus, &args.model, range)?;
    let echo = config_echo(&args.corpus, &args.model, &classifier, range.to_string());
    emit(&report::render(&echo, &results), args.model.out.as_deref(), out)?;
    if args.model.out.is_some() {
        for r in &results {
            let _ = writeln!(out, "{}", summary(r));
        }
    }
    Ok(())
}

fn read_report(path: &Path) -> Result<Report, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::from(Error::io(path, e)))?;
    Ok(Report::parse(&text)?)
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> CmdResult {
    let a = read_report(&args.a)?;
    let b = read_report(&args.b)?;
    if !a.same_fold_plan(&b) {
        return Err(Failure::config("fold plans differ"));
    }
    let (Some(row_a), Some(row_b)) = (a.rows.first(), b.rows.first()) else {
        return Err(Failure {
            code: EXIT_INPUT,
            message: "report has no result rows".to_string(),
        });
    };
    if row_a.fold_waccs.len() != row_b.fold_waccs.len() {
        return Err(Failure::config("fold plans differ"));
    }
    let test = paired_t_test(&row_a.fold_waccs, &row_b.fold_waccs)?;
    let t = if test.t_statistic.is_infinite() {
        if test.t_statistic > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{:.4}", test.t_statistic)
    };
    let _ = writeln!(
        out,
        "t={t} df={} {} (one-tailed, p < 0.05)",
        test.degrees_of_freedom,
        test.verdict()
    );
    Ok(())
}

fn cmd_fixture(args: &FixtureArgs, out: &mut dyn Write) -> CmdResult {
    let params = FixtureParams::default();
    let corpus = generate_fixture_corpus(args.seed, args.n_legit, args.n_spam, &params)?;
    write_corpus(&corpus, &args.out, params.subject_len)?;
    let _ = writeln!(
        out,
        "wrote {} messages to {}",
        corpus.len(),
        args.out.display()
    );
    Ok(())
}
