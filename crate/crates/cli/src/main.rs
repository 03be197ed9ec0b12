//! `das`: command-line workbench for differential algebras, free DAs terms
//! and finite-dimensional DAs algebras with their rewriting envelopes.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use das_core::basis::{dim_das, dim_nov, enumerate_weight_minus1, tau_preimage};
use das_core::dasterm::{identity_suite, tau, tau_poly};
use das_core::envelope::{
    confluence_check, critical_pair_report, embedding_check, Bounds, ContextBounds, Envelope,
    Strategy,
};
use das_core::experiments::independence_experiments;
use das_core::fdalgebra::{matrix_inner, AlgebraSpec};
use das_core::parse::{parse_dasterm, parse_diffpoly, parse_monomial};
use das_core::rational::parse_rational;
use das_core::{Alphabet, DasAlgebra, Generator};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "das",
    version,
    about = "Differential algebras and their DAs envelopes"
)]
struct Cli {
    /// Algebra spec file (JSON).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    #[arg(long, global = true)]
    max_length: Option<usize>,
    #[arg(long, global = true)]
    max_order: Option<u32>,
    /// Seeded strategies per word in confluence sweeps.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print a JSON summary instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker thread cap.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of multilinear Nov(n) and DAs(n).
    Dims { n: usize },
    /// Weight -1 basis words with their preimage terms.
    Basis {
        /// Comma-separated generator names.
        #[arg(long, default_value = "x1,x2,x3,x4")]
        alphabet: String,
    },
    /// Image of a DAs term in the differential algebra.
    Tau { term: String },
    /// DAs term mapping onto a weight -1 word.
    Preimage { word: String },
    /// Check the defining identities in the free algebra.
    Identities,
    /// Normal form of a polynomial in the envelope of --spec.
    Reduce { poly: String },
    /// Weight -1 confluence sweep.
    Confluence,
    /// Identities, terminal letters and confluence together.
    EmbedCheck,
    /// Critical pairs of principal words.
    CriticalPairs {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        context_length: usize,
    },
    /// Matrix algebra with an inner derivation by diag(a1..an).
    MatrixExample {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        diag: Vec<String>,
    },
    /// Rank of prec-only, succ-only and commutator terms.
    Experiments { degree: usize },
}

#[derive(Debug)]
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

type Outcome = Result<bool, Usage>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Dims { n } => dims(cli, *n),
        Command::Basis { alphabet } => basis(cli, alphabet),
        Command::Tau { term } => tau_cmd(cli, term),
        Command::Preimage { word } => preimage(cli, word),
        Command::Identities => identities(cli),
        Command::Reduce { poly } => reduce(cli, poly),
        Command::Confluence => confluence(cli),
        Command::EmbedCheck => embed(cli),
        Command::CriticalPairs {
            n,
            m,
            context_length,
        } => critical(cli, *n, *m, *context_length),
        Command::MatrixExample { n, diag } => matrix(cli, *n, diag),
        Command::Experiments { degree } => experiments(cli, *degree),
    }
}

fn default_alphabet() -> Alphabet {
    Alphabet::indexed("x", 4)
}

fn emit(value: serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(&value).expect("json value")
    );
}

/// Loads --spec, reporting identity violations as findings.
fn load_algebra(cli: &Cli) -> Result<Option<DasAlgebra>, Usage> {
    let path = cli
        .spec
        .as_ref()
        .ok_or_else(|| Usage("--spec FILE is required".into()))?;
    let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let a = AlgebraSpec::from_json(&text)?.build_unchecked()?;
    let violations = a.validate();
    if violations.is_empty() {
        return Ok(Some(a));
    }
    if cli.json {
        emit(
            json!({ "valid": false, "violations": violations.iter().map(ToString::to_string).collect::<Vec<_>>() }),
        );
    } else {
        println!("{}: not a DAs algebra", path.display());
        for v in &violations {
            println!("  {v}");
        }
    }
    Ok(None)
}

fn bounds(cli: &Cli) -> Bounds {
    let d = Bounds::default();
    Bounds {
        max_length: cli.max_length.unwrap_or(d.max_length),
        max_order: cli.max_order.unwrap_or(d.max_order),
        trials: cli.trials.unwrap_or(d.trials),
        seed: cli.seed.unwrap_or(d.seed),
    }
}

fn dims(cli: &Cli, n_max: usize) -> Outcome {
    let rows: Vec<(usize, usize, usize)> =
        (1..=n_max).map(|n| (n, dim_nov(n), dim_das(n))).collect();
    if cli.json {
        emit(json!(rows
            .iter()
            .map(|&(n, nov, das)| json!({ "n": n, "nov": nov, "das": das }))
            .collect::<Vec<_>>()));
    } else {
        println!("n\tNov(n)\tDAs(n)");
        for (n, nov, das) in rows {
            println!("{n}\t{nov}\t{das}");
        }
    }
    Ok(true)
}

fn basis(cli: &Cli, names: &str) -> Outcome {
    let names: Vec<&str> = names
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Usage("empty alphabet".into()));
    }
    let alphabet = Alphabet::new(names.iter().copied());
    let words = enumerate_weight_minus1(names.len(), cli.max_length.unwrap_or(3));
    let mut rows = Vec::with_capacity(words.len());
    for u in &words {
        rows.push((u.display(&alphabet), tau_preimage(u)?.display(&alphabet)));
    }
    if cli.json {
        emit(json!(rows
            .iter()
            .map(|(w, t)| json!({ "word": w, "preimage": t }))
            .collect::<Vec<_>>()));
    } else {
        for (w, t) in &rows {
            println!("{w}\t{t}");
        }
        println!("{} words", rows.len());
    }
    Ok(true)
}

fn tau_cmd(cli: &Cli, text: &str) -> Outcome {
    let mut alphabet = default_alphabet();
    let t = parse_dasterm(text, &mut alphabet, false)?;
    let image = tau(&t).display(&alphabet);
    if cli.json {
        emit(json!({ "term": t.display(&alphabet), "tau": image }));
    } else {
        println!("{image}");
    }
    Ok(true)
}

fn preimage(cli: &Cli, text: &str) -> Outcome {
    let mut alphabet = default_alphabet();
    let u = parse_monomial(text, &mut alphabet, false)?;
    let f = tau_preimage(&u)?;
    let round_trip = tau_poly(&f) == das_core::DiffPoly::monomial(u.clone());
    if cli.json {
        emit(
            json!({ "word": u.display(&alphabet), "preimage": f.display(&alphabet), "round_trip": round_trip }),
        );
    } else {
        println!("{}", f.display(&alphabet));
    }
    Ok(round_trip)
}

fn identities(cli: &Cli) -> Outcome {
    let [x, y, z, b] = [0, 1, 2, 3].map(Generator);
    let results: Vec<(&str, bool)> = identity_suite(x, y, z, b)
        .iter()
        .map(|i| (i.label, tau_poly(&i.lhs.sub(&i.rhs)).is_zero()))
        .collect();
    if cli.json {
        emit(json!(results
            .iter()
            .map(|(l, ok)| json!({ "identity": l, "holds": ok }))
            .collect::<Vec<_>>()));
    } else {
        for (label, ok) in &results {
            println!("{label} {}", if *ok { "OK" } else { "FAILED" });
        }
    }
    Ok(results.iter().all(|r| r.1))
}

fn reduce(cli: &Cli, text: &str) -> Outcome {
    let Some(a) = load_algebra(cli)? else {
        return Ok(false);
    };
    let env = Envelope::new(a);
    let mut alphabet = env.alphabet().clone();
    let f = parse_diffpoly(text, &mut alphabet, true)?;
    let strategy = cli.seed.map_or(Strategy::Deterministic, Strategy::Seeded);
    let nf = env.normal_form(&f, strategy)?;
    let (input, output) = (f.display(&alphabet), nf.display(&alphabet));
    if cli.json {
        emit(json!({ "input": input, "normal_form": output }));
    } else {
        println!("{output}");
    }
    Ok(true)
}

fn print_confluence(r: &das_core::envelope::ConfluenceReport) {
    println!("words checked: {}", r.words_checked);
    println!("divergences: {}", r.divergences.len());
    for d in &r.divergences {
        println!("  {}: {} | {}", d.word, d.nf_a, d.nf_b);
    }
}

fn confluence(cli: &Cli) -> Outcome {
    let Some(a) = load_algebra(cli)? else {
        return Ok(false);
    };
    let report = confluence_check(&Envelope::new(a), &bounds(cli));
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print_confluence(&report);
    }
    Ok(report.is_confluent())
}

fn embed(cli: &Cli) -> Outcome {
    let Some(a) = load_algebra(cli)? else {
        return Ok(false);
    };
    let report = embedding_check(&Envelope::new(a), &bounds(cli));
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("identities hold: {}", report.identities_hold);
        println!("letters terminal: {}", report.letters_terminal);
        print_confluence(&report.confluence);
        println!(
            "embedding check: {}",
            if report.passed() { "passed" } else { "FAILED" }
        );
    }
    Ok(report.passed())
}

fn critical(cli: &Cli, n: u32, m: u32, context_length: usize) -> Outcome {
    let Some(a) = load_algebra(cli)? else {
        return Ok(false);
    };
    let b = ContextBounds {
        max_context_length: context_length,
        max_order: cli.max_order.unwrap_or(3),
    };
    let report = critical_pair_report(&Envelope::new(a), n, m, &b)?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "pairs checked: {} (right-left {}, left-right {})",
            report.pairs_checked, report.right_left_pairs, report.left_right_pairs
        );
        println!("divergences: {}", report.divergences.len());
        for d in &report.divergences {
            println!("  {:?} {}: {} | {}", d.family, d.word, d.nf_a, d.nf_b);
        }
    }
    Ok(report.all_converge())
}

fn matrix(cli: &Cli, n: usize, diag: &[String]) -> Outcome {
    if diag.len() != n {
        return Err(Usage(format!(
            "expected {n} diagonal entries, got {}",
            diag.len()
        )));
    }
    let diag = diag
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| Usage(format!("not a rational: {s}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let a = matrix_inner(n, &diag)?;
    let violations = a.validate();
    if cli.json {
        println!("{}", a.to_spec().to_json());
    } else {
        println!("dimension: {}", a.dim());
        println!(
            "identities: {}",
            if violations.is_empty() {
                "OK"
            } else {
                "FAILED"
            }
        );
        println!("simple: {}", if a.is_simple() { "yes" } else { "no" });
        println!(
            "commutator algebra zero: {}",
            if a.commutator_algebra().is_zero() {
                "yes"
            } else {
                "no"
            }
        );
    }
    Ok(violations.is_empty())
}

fn experiments(cli: &Cli, degree: usize) -> Outcome {
    if degree == 0 {
        return Err(Usage("degree must be positive".into()));
    }
    let results = independence_experiments(degree);
    if cli.json {
        emit(json!(results
            .iter()
            .map(|e| json!({ "label": e.label, "terms": e.terms, "rank": e.rank }))
            .collect::<Vec<_>>()));
    } else {
        for e in &results {
            println!("{} rank {} of {} terms", e.label, e.rank, e.terms);
        }
    }
    Ok(true)
}
