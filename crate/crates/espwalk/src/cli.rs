//! Command-line front end.
//!
//! Exit-code contract: 0 on success, 2 on input errors (malformed files,
//! invalid connection sets, unsupported parameters), 3 when a closed-form
//! verdict and the numeric oracle disagree (or the verify suite fails).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::cayley::ConnectionSet;
use crate::criteria::{spread_predict, DyadicPi, FrCase, SpreadPrediction};
use crate::gf2::{GF2Vector, PartialSpread};
use crate::group::IsoType;
use crate::report::{analyze, AnalysisReport, AnalyzeOptions, SCHEMA_VERSION};
use crate::search::{run_search, SearchOptions};
use crate::verify::{run_suite, CheckOutcome, VerifyLevel};

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 2;
const EXIT_DISAGREEMENT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "espwalk",
    version,
    about = "Quantum-walk state transfer on normal Cayley graphs of extraspecial 2-groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one connection set: spectrum, transfer criteria, oracle checks
    Analyze(AnalyzeArgs),
    /// Exhaustively classify all connection sets for n = 1 or 2
    Search(SearchArgs),
    /// Build connection sets from partial spreads and analyze them
    Spread(SpreadArgs),
    /// Run the verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Group parameter n; the group has order 2^(2n+1)
    #[arg(long, required_unless_present = "file")]
    n: Option<u32>,
    /// Comma-separated class representatives as bit-strings (e.g. 1100,0011)
    #[arg(long, value_delimiter = ',')]
    classes: Vec<String>,
    /// Include the central involution z in S
    #[arg(long)]
    include_z: bool,
    /// Read the connection set from a JSON file instead
    #[arg(long, conflicts_with_all = ["n", "classes", "include_z"])]
    file: Option<PathBuf>,
    /// Isomorphism type of the group (the verdicts do not depend on it)
    #[arg(long, default_value = "plus")]
    iso_type: IsoType,
    /// Cross-check every verdict against the numeric oracle
    #[arg(long)]
    verify: bool,
    /// Oracle tolerance
    #[arg(long, default_value_t = crate::walk::DEFAULT_VERDICT_TOL)]
    tol: f64,
    /// Extra oracle evaluation times as dyadic fractions of pi, e.g. 3/2^2
    #[arg(long = "extra-time")]
    extra_time: Vec<DyadicPi>,
    /// Accept non-generating (disconnected) connection sets
    #[arg(long)]
    allow_disconnected: bool,
    /// Emit the full report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Group parameter n (1 or 2)
    #[arg(long)]
    n: u32,
    /// Oracle-verify this many randomly sampled valid sets
    #[arg(long, default_value_t = 0)]
    verify_sample: usize,
    /// Seed for the verification sample
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Group type used by the oracle sample
    #[arg(long, default_value = "plus")]
    iso_type: IsoType,
    /// Oracle tolerance
    #[arg(long, default_value_t = crate::walk::DEFAULT_VERDICT_TOL)]
    tol: f64,
    /// Emit the summary as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SpreadArgs {
    /// Group parameter n; the regular spread lives in F_2^(2n)
    #[arg(long)]
    n: u32,
    /// Spread member dimension; defaults to n (the regular spread)
    #[arg(long)]
    k: Option<u32>,
    /// Use the first TAKE members of the spread
    #[arg(long, conflicts_with = "members")]
    take: Option<usize>,
    /// Use the members at these indices (comma-separated)
    #[arg(long, value_delimiter = ',')]
    members: Vec<usize>,
    /// Read the spread from a file instead of the regular spread
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value = "plus")]
    iso_type: IsoType,
    /// Cross-check the prediction against the numeric oracle
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = crate::walk::DEFAULT_VERDICT_TOL)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite level: quick (n = 1 exhaustive) or full (adds n = 2 samples,
    /// spread fixtures, odd-prime mixing table)
    #[arg(default_value = "quick")]
    level: VerifyLevel,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Emit all outcomes as JSON
    #[arg(long)]
    json: bool,
}

impl clap::builder::ValueParserFactory for VerifyLevel {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<VerifyLevel>().map_err(|e| e.to_string()))
    }
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Search(args) => cmd_search(args),
        Command::Spread(args) => cmd_spread(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn disagreement(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DISAGREEMENT,
        message: message.into(),
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Inconsistency(_) | crate::Error::Contract(_) => disagreement(e.to_string()),
            _ => input_error(e.to_string()),
        }
    }
}

fn max_oracle_order() -> u64 {
    std::env::var("ESPWALK_MAX_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(512)
}

fn load_connection(args: &AnalyzeArgs) -> Result<ConnectionSet, Failure> {
    if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        return serde_json::from_str(&text)
            .map_err(|e| input_error(format!("{}: {e}", path.display())));
    }
    let n = args.n.expect("clap enforces n unless --file");
    let classes: Vec<GF2Vector> = args
        .classes
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.parse())
        .collect::<crate::Result<_>>()
        .map_err(Failure::from)?;
    ConnectionSet::new(n, classes, args.include_z).map_err(Failure::from)
}

fn emit_analysis_text(report: &AnalysisReport) {
    let g = &report.group;
    println!(
        "group: n={} order={} type={}",
        g.n, g.order, g.iso_type
    );
    println!("connection: {}", report.connection);
    println!(
        "validation: ok (connected: {})",
        report.validation.connected
    );
    let spectrum: Vec<String> = report
        .spectrum
        .eigenvalues
        .iter()
        .rev()
        .map(|(theta, info)| format!("{theta}^{}", info.multiplicity))
        .collect();
    println!(
        "spectrum (degree {}): {}",
        report.spectrum.degree,
        spectrum.join(" ")
    );
    let fmt_set = |s: &std::collections::BTreeSet<i64>| {
        let items: Vec<String> = s.iter().map(|t| t.to_string()).collect();
        format!("{{{}}}", items.join(","))
    };
    println!(
        "phi+: {}  phi-: {}  disjoint: {}",
        fmt_set(&report.phi.plus),
        fmt_set(&report.phi.minus),
        report.phi.disjoint
    );
    if report.pst.admits {
        println!(
            "pst: admits, minimum time {} (m={}), gcd={}, strongly cospectral",
            report.pst.min_time, report.pst.min_time_exponent, report.pst.d_or_c
        );
    } else {
        println!(
            "pst: does not admit ({:?}); strongly cospectral: {}",
            report.pst.reason, report.pst.strongly_cospectral
        );
    }
    let fr = &report.fr;
    let case = match fr.case {
        FrCase::Neither => "neither",
        FrCase::PstOnly => "pst_only",
        FrCase::ProperFr => "proper_fr",
    };
    print!("fr: case={case} alpha={} g={}", fr.alpha, fr.g);
    if let Some(h) = fr.h {
        print!(" h={h}");
    }
    if let Some(t) = fr.fr_min_time {
        print!(" fr_min_time={t}");
    }
    if let Some(t) = fr.balanced_time {
        print!(" balanced_time={t}");
    }
    println!();
    println!(
        "uniform mixing: impossible (min character support {} < bound {:.4})",
        report.mixing.min_support, report.mixing.bound
    );
    if let Some(oracle) = &report.oracle {
        println!("oracle (tol {:.0e}):", oracle.tol);
        for c in &oracle.confirmations {
            let scheme = match c.scheme_form {
                Some(true) => ", scheme form U = lambda*L(z)",
                Some(false) => ", scheme form VIOLATED",
                None => "",
            };
            println!(
                "  [{}] {} at {}: expected {}, observed {} (residual {:.2e}{scheme})",
                if c.agrees { "agree" } else { "DISAGREE" },
                c.label,
                c.time,
                c.expected,
                c.observed,
                c.residual
            );
        }
        let cs = &oracle.cospectrality;
        println!(
            "  [{}] strong cospectrality: decision={} brute-force={}{}",
            if cs.agrees { "agree" } else { "DISAGREE" },
            cs.decision,
            cs.brute_force,
            cs.witness
                .map(|w| format!(" (witness eigenvalue {w})"))
                .unwrap_or_default()
        );
        println!(
            "  [{}] eigenvalue support of every vertex is the full spectrum",
            if oracle.support_full { "agree" } else { "DISAGREE" }
        );
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<i32, Failure> {
    let connection = load_connection(&args)?;
    let options = AnalyzeOptions {
        iso_type: args.iso_type,
        verify: args.verify,
        tol: args.tol,
        extra_times: args.extra_time.clone(),
        strict: !args.allow_disconnected,
        max_order: max_oracle_order(),
    };
    let report = analyze(&connection, &options)?;

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
    } else {
        emit_analysis_text(&report);
    }

    if let Some(oracle) = &report.oracle {
        if !oracle.all_agree {
            let mut diffs: Vec<String> = oracle
                .confirmations
                .iter()
                .filter(|c| !c.agrees)
                .map(|c| {
                    format!(
                        "{} at {}: expected {}, observed {}",
                        c.label, c.time, c.expected, c.observed
                    )
                })
                .collect();
            if !oracle.cospectrality.agrees {
                diffs.push("strong cospectrality decision".into());
            }
            if !oracle.support_full {
                diffs.push("eigenvalue support".into());
            }
            return Err(disagreement(format!(
                "criteria/oracle disagreement: {}",
                diffs.join("; ")
            )));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_search(args: SearchArgs) -> Result<i32, Failure> {
    let options = SearchOptions {
        n: args.n,
        iso_type: args.iso_type,
        verify_sample: args.verify_sample,
        seed: args.seed,
        tol: args.tol,
    };
    let summary = run_search(&options)?;

    if args.json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("serializable summary"));
    } else {
        println!(
            "n={}: {} candidates, {} valid",
            summary.n, summary.total_candidates, summary.total_valid
        );
        println!(
            "  pst & proper fr: {}\n  pst only:        {}\n  cospectral, no pst: {}\n  not cospectral:  {}",
            summary.counts.pst_and_proper_fr,
            summary.counts.pst_only,
            summary.counts.cospectral_no_pst,
            summary.counts.not_cospectral
        );
        for (class, exemplar) in &summary.exemplars {
            println!("  exemplar {class}: {exemplar}");
        }
        for check in &summary.oracle_sample {
            println!(
                "  sample [{}] {} ({:?}): {} at {} (residual {:.2e})",
                if check.agrees { "agree" } else { "DISAGREE" },
                check.connection,
                check.classification,
                check.observed,
                check.time,
                check.residual
            );
        }
    }

    if summary.oracle_sample.iter().any(|c| !c.agrees) {
        return Err(disagreement(
            "an oracle sample disagreed with the closed-form classification",
        ));
    }
    Ok(EXIT_OK)
}

/// JSON document emitted by the spread command.
#[derive(Serialize)]
struct SpreadDocument {
    schema: u32,
    n: u32,
    k: u32,
    members_total: usize,
    members_used: usize,
    member_bases: Vec<Vec<GF2Vector>>,
    prediction: SpreadPrediction,
    analysis: AnalysisReport,
}

fn cmd_spread(args: SpreadArgs) -> Result<i32, Failure> {
    let source: PartialSpread = match &args.file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            let spread = PartialSpread::parse(&text)
                .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            if spread.ambient() != 2 * args.n {
                return Err(input_error(format!(
                    "spread file has ambient dimension {}, expected {}",
                    spread.ambient(),
                    2 * args.n
                )));
            }
            spread
        }
        None => {
            if let Some(k) = args.k {
                if k != args.n {
                    return Err(input_error(format!(
                        "the regular spread has members of dimension n = {}; \
                         use --file for k = {k}",
                        args.n
                    )));
                }
            }
            crate::gf2::regular_spread(args.n)?
        }
    };
    let k = args
        .k
        .unwrap_or_else(|| source.members().first().map_or(args.n, |m| m.dim() as u32));
    if !source.is_valid(k) {
        return Err(input_error(format!(
            "not a valid partial {k}-spread: members differ in dimension or overlap"
        )));
    }

    let total = source.len();
    let selection = if !args.members.is_empty() {
        source.select(&args.members)?
    } else if let Some(take) = args.take {
        source.take(take)?
    } else {
        source.clone()
    };
    let used = selection.len();

    let connection = crate::criteria::spread_connection(&selection)?;
    let prediction = spread_predict(used as u64, k, args.n);
    let options = AnalyzeOptions {
        iso_type: args.iso_type,
        verify: args.verify,
        tol: args.tol,
        extra_times: Vec::new(),
        strict: true,
        max_order: max_oracle_order(),
    };
    let analysis = analyze(&connection, &options)?;

    // The sufficiency theorems must agree with the general criterion.
    let mut conflicts = Vec::new();
    match prediction {
        SpreadPrediction::Pst { min_time } => {
            if !analysis.pst.admits || analysis.pst.min_time != min_time {
                conflicts.push(format!(
                    "spread theorem promises PST at {min_time}, criterion says {:?} at {}",
                    analysis.pst.admits, analysis.pst.min_time
                ));
            }
        }
        SpreadPrediction::PstAndBalancedFr { min_time } => {
            if !analysis.pst.admits || analysis.pst.min_time != min_time {
                conflicts.push(format!(
                    "spread theorem promises PST at {min_time}, criterion says {:?} at {}",
                    analysis.pst.admits, analysis.pst.min_time
                ));
            }
            if analysis.fr.case != FrCase::ProperFr {
                conflicts.push(format!(
                    "spread theorem promises balanced FR, classification is {:?}",
                    analysis.fr.case
                ));
            }
        }
        SpreadPrediction::NoClaim => {}
    }

    let document = SpreadDocument {
        schema: SCHEMA_VERSION,
        n: args.n,
        k,
        members_total: total,
        members_used: used,
        member_bases: selection
            .members()
            .iter()
            .map(|m| m.basis().to_vec())
            .collect(),
        prediction,
        analysis,
    };

    if args.json {
        println!("{}", serde_json::to_string_pretty(&document).expect("serializable document"));
    } else {
        println!(
            "spread: n={} k={k}, using {used} of {total} members, l={}",
            args.n,
            document.analysis.connection.ell()
        );
        match prediction {
            SpreadPrediction::NoClaim => println!("prediction: no claim (theorem hypotheses not met)"),
            SpreadPrediction::Pst { min_time } => println!("prediction: PST at {min_time}"),
            SpreadPrediction::PstAndBalancedFr { min_time } => {
                println!("prediction: PST at {min_time} and balanced fractional revival")
            }
        }
        emit_analysis_text(&document.analysis);
    }

    if !conflicts.is_empty() {
        return Err(disagreement(conflicts.join("; ")));
    }
    if let Some(oracle) = &document.analysis.oracle {
        if !oracle.all_agree {
            return Err(disagreement("oracle disagreed with the spread analysis"));
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    schema: u32,
    level: &'a str,
    seed: u64,
    outcomes: &'a [CheckOutcome],
    passed: bool,
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, Failure> {
    let outcomes = run_suite(args.level, args.seed);
    let passed = outcomes.iter().all(|o| o.passed);
    let level = match args.level {
        VerifyLevel::Quick => "quick",
        VerifyLevel::Full => "full",
    };

    if args.json {
        let doc = VerifyDocument {
            schema: SCHEMA_VERSION,
            level,
            seed: args.seed,
            outcomes: &outcomes,
            passed,
        };
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable outcomes"));
    } else {
        for outcome in &outcomes {
            println!(
                "[{}] {}: {}",
                if outcome.passed { "PASS" } else { "FAIL" },
                outcome.name,
                outcome.details
            );
        }
        if !passed {
            // Machine-readable failure list for CI.
            let failures: Vec<&CheckOutcome> =
                outcomes.iter().filter(|o| !o.passed).collect();
            println!(
                "{}",
                serde_json::to_string(&serde_json::json!({
                    "schema": SCHEMA_VERSION,
                    "failures": failures,
                }))
                .expect("serializable failures")
            );
        }
    }

    if passed {
        Ok(EXIT_OK)
    } else {
        Err(disagreement("verification suite failed"))
    }
}
