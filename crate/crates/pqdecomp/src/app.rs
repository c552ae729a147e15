//! Argument handling, dispatch and output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use pqdecomp_core::canon::format_factors;
use pqdecomp_core::classify::{
    classify_matrix, indecomposable_atlas, Certificate, ClassifyOptions, IndecomposableBlock, Mode, QuadraticPair,
    Verdict,
};
use pqdecomp_core::construct::{build_witness, combine};
use pqdecomp_core::field::Fp;
use pqdecomp_core::oracle::{compare_with_classifier, enumerate_reachable, ClassCache, DEFAULT_MATRIX_CAP};
use pqdecomp_core::poly::factor::FactorOptions;
use pqdecomp_core::quadform::IsotropyOptions;
use pqdecomp_core::{Error as CoreError, Matrix};
use serde::Serialize;
use thiserror::Error;

use crate::input::{parse, AnyProblem, EntryField, ParseError, Problem, Render};
use crate::report::*;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_NO_WITNESS: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

/// Output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Decide and construct splittings `M = A - B` or `M = A B^-1` with
/// `p(A) = 0` and `q(B) = 0`.
#[derive(Debug, Parser)]
#[command(name = "pqdecomp", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed of the randomized factorization splitting.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run sequentially so that outputs are reproducible (every mode of this
    /// build is sequential already).
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Candidates the fallback witness search may try.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub search_budget: u64,
    /// Coefficient degree bound of the factor search over `F_p(s)`.
    #[arg(long, global = true, default_value_t = 4)]
    pub fps_bound: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the verdict and the certificate (exit 0 YES, 1 NO, 2 Unknown).
    Classify { file: PathBuf },
    /// Classify, then print a verified pair `A`, `B` in the input format.
    Witness { file: PathBuf },
    /// Check the `a` and `b` blocks of the file (exit 0 valid, 1 invalid).
    Verify { file: PathBuf },
    /// List the indecomposable blocks of size at most the bound.
    Atlas {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Compare the classifier with exhaustive enumeration for sizes 1..=n
    /// over a prime field (exit 0 when they agree everywhere).
    OracleCompare {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

/// Failures that end a command before it produces a result.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_NO_INPUT,
            CliError::Parse { .. } => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Core(e) => match e {
                CoreError::SearchExhausted { .. } => EXIT_NO_WITNESS,
                CoreError::NotInvertible
                | CoreError::NonInvertibleConstant
                | CoreError::BadPair(_)
                | CoreError::NotPrime(_)
                | CoreError::Dimension(_)
                | CoreError::Unsupported(_)
                | CoreError::BudgetExceeded(_) => EXIT_DATA,
                _ => EXIT_INTERNAL,
            },
        }
    }
}

/// Run with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_to(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Run with explicit output and diagnostic streams; returns the exit code.
pub fn run_to<I, T>(args: I, out: &mut dyn Write, diag: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let rendered = e.render().to_string();
            let _ =
                if e.use_stderr() { diag.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return EXIT_INTERNAL;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(diag, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_problem(path: &PathBuf) -> Result<AnyProblem, CliError> {
    let name = path.display().to_string();
    let mut src = String::new();
    let read = if name == "-" {
        std::io::stdin().read_to_string(&mut src).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| src = s)
    };
    read.map_err(|source| CliError::Io { path: name.clone(), source })?;
    parse(&src).map_err(|source| CliError::Parse { path: name, source })
}

fn options(cli: &Cli) -> ClassifyOptions {
    let factor = FactorOptions { fps_bound: cli.fps_bound, seed: cli.seed, ..FactorOptions::default() };
    ClassifyOptions {
        factor: factor.clone(),
        isotropy: IsotropyOptions { factor, ..IsotropyOptions::default() },
        transition: true,
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let file = match &cli.command {
        Command::Classify { file }
        | Command::Witness { file }
        | Command::Verify { file }
        | Command::Atlas { file, .. }
        | Command::OracleCompare { file, .. } => file,
    };
    match read_problem(file)? {
        AnyProblem::Prime(pr) => {
            if let Command::OracleCompare { n, .. } = cli.command {
                return oracle_compare(cli, &pr, n);
            }
            dispatch(cli, &pr)
        }
        AnyProblem::Rationals(pr) => dispatch(cli, &pr),
        AnyProblem::RationalFunctions(pr) => dispatch(cli, &pr),
    }
}

fn dispatch<F: EntryField>(cli: &Cli, pr: &Problem<F>) -> Result<(String, i32), CliError> {
    match &cli.command {
        Command::Classify { .. } => classify(cli, pr),
        Command::Witness { .. } => witness(cli, pr),
        Command::Verify { .. } => verify(cli, pr),
        Command::Atlas { bound, .. } => atlas(cli, pr, *bound),
        Command::OracleCompare { .. } => {
            Err(CliError::Data("oracle-compare needs a prime field (`field Fp <prime>`)".into()))
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Yes => EXIT_YES,
        Verdict::No => EXIT_NO,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn pair_of<F: EntryField>(cli: &Cli, pr: &Problem<F>) -> Result<QuadraticPair<F>, CliError> {
    QuadraticPair::new(pr.p.clone(), pr.q.clone(), pr.mode, &options(cli).factor).map_err(|e| match e {
        CoreError::NonInvertibleConstant => CliError::Data("quotient mode needs p(0) and q(0) nonzero".into()),
        other => other.into(),
    })
}

fn matrix_of<F: EntryField>(pr: &Problem<F>) -> Result<&Matrix<F>, CliError> {
    let m = pr.matrix.as_ref().ok_or_else(|| CliError::Data("the file has no `matrix` block".into()))?;
    if pr.mode == Mode::Quotient && !m.is_invertible() {
        return Err(CliError::Data("quotient mode needs an invertible matrix".into()));
    }
    Ok(m)
}

fn header<F: EntryField>(out: &mut String, pr: &Problem<F>) {
    let _ = writeln!(out, "field: {}", F::descriptor(&pr.ctx));
    let _ = writeln!(out, "mode: {}", pr.mode);
    let _ = writeln!(out, "p: {}", pr.p);
    let _ = writeln!(out, "q: {}", pr.q);
}

fn block_line<F: EntryField>(b: &IndecomposableBlock<F>) -> String {
    let mut s = format!("{} n={} epsilon={}", b.label, b.n, b.epsilon);
    if let Some(t) = b.type_tag {
        let _ = write!(s, " type={t}");
    }
    let _ = write!(s, ": {}", format_factors(&b.factors));
    s
}

fn indent_matrix<F: EntryField>(out: &mut String, m: &Matrix<F>) {
    for row in m.to_rows() {
        let words: Vec<String> = row.iter().map(|x| x.render_entry()).collect();
        let _ = writeln!(out, "  {}", words.join(" "));
    }
}

fn certificate_text<F: EntryField>(out: &mut String, c: &Certificate<F>) {
    let _ = writeln!(out, "case: {}", c.case);
    if let Some(r) = reduction_name(c.reduction) {
        let _ = writeln!(out, "reduction: {r} and swap p with q");
    }
    let _ = writeln!(out, "invariant factors: {}", format_factors(&c.invariant_factors));
    for (name, part) in [("exceptional part", &c.exceptional_part), ("regular part", &c.regular_part)] {
        let _ = writeln!(out, "{name}:{}", if part.is_empty() { " none" } else { "" });
        for b in part {
            let _ = writeln!(out, "  {}", block_line(b));
        }
    }
    if let Some(f) = &c.failure {
        let _ = writeln!(out, "failure: {f}");
    }
    if let Some(u) = &c.unknown_reason {
        let _ = writeln!(out, "unknown: {u}");
    }
    if let Some(t) = &c.transition {
        let _ = writeln!(out, "transition:");
        indent_matrix(out, t);
    }
}

fn classify<F: EntryField>(cli: &Cli, pr: &Problem<F>) -> Result<(String, i32), CliError> {
    let pair = pair_of(cli, pr)?;
    let m = matrix_of(pr)?;
    let cert = classify_matrix(m, &pair, &options(cli))?;
    let text = match cli.format {
        Format::Json => json(&ClassifyReport {
            problem: ProblemView::new(pr),
            matrix: matrix_view(m),
            certificate: CertificateView::new(&cert),
        }),
        Format::Text => {
            let mut s = format!("verdict: {}\n", cert.verdict);
            header(&mut s, pr);
            certificate_text(&mut s, &cert);
            s
        }
    };
    Ok((text, verdict_code(cert.verdict)))
}

fn witness<F: EntryField>(cli: &Cli, pr: &Problem<F>) -> Result<(String, i32), CliError> {
    let pair = pair_of(cli, pr)?;
    let m = matrix_of(pr)?;
    let opts = options(cli);
    let cert = classify_matrix(m, &pair, &opts)?;
    let w = match cert.verdict {
        Verdict::Yes => Some(build_witness(m, &pair, &cert, &opts, cli.search_budget)?),
        _ => None,
    };
    if let Some(w) = &w {
        if !w.verified {
            return Err(CoreError::Internal("the built pair failed verification".into()).into());
        }
    }
    let text = match cli.format {
        Format::Json => json(&WitnessReport {
            problem: ProblemView::new(pr),
            matrix: matrix_view(m),
            verdict: cert.verdict.to_string(),
            witness: w.as_ref().map(|w| WitnessView {
                a: matrix_view(&w.a),
                b: matrix_view(&w.b),
                verified: w.verified,
            }),
        }),
        Format::Text => {
            let mut s = format!("# verdict: {}\n", cert.verdict);
            let full = Problem { a: w.as_ref().map(|w| w.a.clone()), b: w.as_ref().map(|w| w.b.clone()), ..pr.clone() };
            let _ = write!(s, "{}", Render(&full));
            s
        }
    };
    Ok((text, verdict_code(cert.verdict)))
}

fn verify<F: EntryField>(cli: &Cli, pr: &Problem<F>) -> Result<(String, i32), CliError> {
    let m = pr.matrix.as_ref().ok_or_else(|| CliError::Data("the file has no `matrix` block".into()))?;
    let (Some(a), Some(b)) = (&pr.a, &pr.b) else {
        return Err(CliError::Data("verify needs `a` and `b` blocks".into()));
    };
    let p_ok = a.eval_poly(&pr.p).is_zero();
    let q_ok = b.eval_poly(&pr.q).is_zero();
    let combined = combine(a, b, pr.mode);
    let m_ok = combined.as_ref() == Some(m);
    let valid = p_ok && q_ok && m_ok;
    let relation = match pr.mode {
        Mode::Difference => "matrix = a - b",
        Mode::Quotient => "matrix = a b^-1",
    };
    let text = match cli.format {
        Format::Json => json(&VerifyReport {
            problem: ProblemView::new(pr),
            p_annihilates_a: p_ok,
            q_annihilates_b: q_ok,
            recombines: m_ok,
            valid,
        }),
        Format::Text => {
            let word = |ok: bool| if ok { "holds" } else { "fails" };
            let mut s = String::new();
            let _ = writeln!(s, "p(a) = 0: {}", word(p_ok));
            let _ = writeln!(s, "q(b) = 0: {}", word(q_ok));
            if combined.is_none() {
                let _ = writeln!(s, "{relation}: fails (b is singular)");
            } else {
                let _ = writeln!(s, "{relation}: {}", word(m_ok));
            }
            let _ = writeln!(s, "{}", if valid { "valid" } else { "invalid" });
            s
        }
    };
    Ok((text, if valid { EXIT_YES } else { EXIT_NO }))
}

fn atlas<F: EntryField>(cli: &Cli, pr: &Problem<F>, bound: usize) -> Result<(String, i32), CliError> {
    let pair = pair_of(cli, pr)?;
    let entries = indecomposable_atlas(&pair, bound, &options(cli))?;
    let text = match cli.format {
        Format::Json => json(&AtlasReport {
            problem: ProblemView::new(pr),
            bound,
            entries: entries.iter().map(AtlasEntryView::new).collect(),
        }),
        Format::Text => {
            let mut s = String::new();
            header(&mut s, pr);
            let _ = writeln!(s, "bound: {bound}");
            let _ = writeln!(s, "blocks: {}", entries.len());
            for e in &entries {
                let _ = writeln!(s, "{} {}", e.label, format_factors(&e.factors));
                indent_matrix(&mut s, &e.matrix);
            }
            s
        }
    };
    Ok((text, EXIT_YES))
}

fn oracle_compare(cli: &Cli, pr: &Problem<Fp>, nmax: usize) -> Result<(String, i32), CliError> {
    let pair = pair_of(cli, pr)?;
    let opts = options(cli);
    let mut cache = ClassCache::new();
    let mut sizes = Vec::new();
    for n in 1..=nmax {
        let table = enumerate_reachable(&pair, n, DEFAULT_MATRIX_CAP, &mut cache)?;
        let mismatches = compare_with_classifier(&table, &opts)?;
        sizes.push(SizeReport {
            n,
            classes: table.classes.len(),
            reachable: table.classes.iter().filter(|c| c.reachable()).count(),
            mismatches: mismatches
                .iter()
                .map(|m| MismatchView {
                    factors: m.factors.iter().map(poly_view).collect(),
                    reachable: m.reachable,
                    verdict: m.verdict.to_string(),
                })
                .collect(),
        });
    }
    let clean = sizes.iter().all(|s| s.mismatches.is_empty());
    let text = match cli.format {
        Format::Json => json(&OracleReport { problem: ProblemView::new(pr), sizes }),
        Format::Text => {
            let mut s = String::new();
            header(&mut s, pr);
            for size in &sizes {
                let _ = writeln!(
                    s,
                    "n = {}: {} of {} classes reachable, {} mismatches",
                    size.n,
                    size.reachable,
                    size.classes,
                    size.mismatches.len()
                );
                for m in &size.mismatches {
                    let fs: Vec<String> = m.factors.iter().map(|f| f.join(" ")).collect();
                    let _ = writeln!(
                        s,
                        "  class [{}]: enumeration says {}, classifier says {}",
                        fs.join("; "),
                        if m.reachable { "reachable" } else { "unreachable" },
                        m.verdict
                    );
                }
            }
            let _ = writeln!(s, "{}", if clean { "agreement" } else { "disagreement" });
            s
        }
    };
    Ok((text, if clean { EXIT_YES } else { EXIT_NO }))
}
