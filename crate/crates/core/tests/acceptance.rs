//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use das_core::basis::{
    dim_das, dim_nov, enumerate_weight_minus1, preimage_rank, preimage_round_trips,
};
use das_core::dasterm::{identity_suite, tau_poly};
use das_core::envelope::{
    check_sector_shape, embedding_check, sample_words, Bounds, Envelope, Sector, Strategy,
};
use das_core::experiments::{independence_experiments, tau_rank};
use das_core::fdalgebra::{matrix_inner, truncated_polynomials};
use das_core::rational::int;
use das_core::{DiffMonomial, DiffPoly, Generator, Rational};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

type Outcome = Result<String, String>;
type WeightFilter = fn(i64) -> bool;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, ok: String, fail: String) -> Outcome {
    if cond {
        Ok(ok)
    } else {
        Err(fail)
    }
}

fn potential_example() -> Outcome {
    // x' x'' x x' x^(3) x'' x'
    let u = DiffMonomial::from_pairs(&[(0, 1), (0, 2), (0, 0), (0, 1), (0, 3), (0, 2), (0, 1)]);
    let p = u.potential();
    check(
        p.counts() == [1, 3, 2, 1] && p.to_string() == "t^3+2t^2+3t+1",
        format!("pt = {p}"),
        format!("pt = {p}"),
    )
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn dimension_identity() -> Outcome {
    // frozen from the enumeration oracle; the closed form n!·C(2n-2, n-1)
    // is an independent count of permutations times weak compositions
    const DAS: [usize; 5] = [1, 4, 36, 480, 8400];
    const NOV: [usize; 5] = [1, 2, 6, 20, 70];
    let mut rows = Vec::new();
    for n in 1..=5usize {
        let (das, nov) = (dim_das(n), dim_nov(n));
        let fact: usize = (1..=n).product();
        let closed = fact as u64 * binomial(2 * n as u64 - 2, n as u64 - 1);
        if das != DAS[n - 1] || nov != NOV[n - 1] || das != fact * nov || das as u64 != closed {
            return Err(format!("n={n}: dim DAs {das}, dim Nov {nov}"));
        }
        rows.push(format!("{n}:{das}={fact}*{nov}"));
    }
    Ok(rows.join(" "))
}

fn identity_suite_vanishes() -> Outcome {
    let ids = identity_suite(Generator(0), Generator(1), Generator(2), Generator(3));
    let bad: Vec<_> = ids
        .iter()
        .filter(|i| !tau_poly(&i.lhs.sub(&i.rhs)).is_zero())
        .map(|i| i.label)
        .collect();
    check(
        bad.is_empty(),
        "(4) (5) (6) (7) all map to 0".into(),
        format!("nonzero images for {bad:?}"),
    )
}

fn preimage_round_trip() -> Outcome {
    let words = enumerate_weight_minus1(2, 5);
    for u in &words {
        if !preimage_round_trips(u).map_err(|e| e.to_string())? {
            return Err(format!("round trip fails on {u:?}"));
        }
    }
    let ranks: Vec<(usize, usize)> = (1..=4).map(|n| (preimage_rank(n), dim_das(n))).collect();
    let ok = ranks.iter().all(|(r, d)| r == d);
    check(
        ok && words.len() == 2618,
        format!(
            "{} words round-trip; preimage ranks {:?}",
            words.len(),
            ranks.iter().map(|r| r.0).collect::<Vec<_>>()
        ),
        format!("{} words; ranks vs dims {ranks:?}", words.len()),
    )
}

fn tau_injectivity() -> Outcome {
    const TERMS: [usize; 4] = [1, 4, 48, 960];
    let mut out = Vec::new();
    for n in 1..=4 {
        let e = tau_rank(n);
        if e.terms != TERMS[n - 1] || e.rank != dim_das(n) {
            return Err(format!("n={n}: rank {} of {} terms", e.rank, e.terms));
        }
        out.push(format!("n={n}: {}/{}", e.rank, e.terms));
    }
    check(
        out.len() == 4 && dim_das(4) == 480,
        out.join(", "),
        "unreachable".into(),
    )
}

fn matrix_example() -> Outcome {
    let a = matrix_inner(3, &ints(&[0, 1, 2])).map_err(|e| e.to_string())?;
    let v = a.validate();
    let simple = a.is_simple();
    check(
        v.is_empty() && simple,
        "M_3 with a = diag(0,1,2): identities hold, simple".into(),
        format!("violations {}, simple {simple}", v.len()),
    )
}

fn rewriting_sectors() -> Outcome {
    let env = Envelope::new(matrix_inner(3, &ints(&[0, 1, 2])).map_err(|e| e.to_string())?);
    let dim = env.algebra().dim();
    let sweeps: [(&str, WeightFilter); 4] = [
        ("-1", |w| w == -1),
        ("<-1", |w| w < -1),
        ("0", |w| w == 0),
        (">0", |w| w > 0),
    ];
    let mut summary = Vec::new();
    for (i, (label, pred)) in sweeps.iter().enumerate() {
        let words = sample_words(dim, 5, 3, 200, 1000 + i as u64, |u| pred(u.weight()));
        for u in &words {
            let f = DiffPoly::monomial(u.clone());
            let nf = env
                .normal_form(&f, Strategy::Deterministic)
                .map_err(|e| e.to_string())?;
            if !check_sector_shape(&nf, Sector::of_weight(u.weight())) {
                return Err(format!(
                    "sector {label}: normal form of {} has wrong shape: {}",
                    u.display(env.alphabet()),
                    nf.display(env.alphabet())
                ));
            }
        }
        summary.push(format!("{label}: 200 ok"));
    }
    Ok(summary.join(", "))
}

fn confluence_and_embedding() -> Outcome {
    let algebras = [
        ("M_2 a=(0,1)", matrix_inner(2, &ints(&[0, 1]))),
        ("M_3 a=(0,1,2)", matrix_inner(3, &ints(&[0, 1, 2]))),
        (
            "Q[x]/(x^3), x d/dx",
            truncated_polynomials(3, 1).map(|a| a.derived()),
        ),
    ];
    let bounds = Bounds {
        max_length: 4,
        max_order: 3,
        trials: 8,
        seed: 2024,
    };
    let mut out = Vec::new();
    for (name, a) in algebras {
        let env = Envelope::new(a.map_err(|e| e.to_string())?);
        let r = embedding_check(&env, &bounds);
        if !r.passed() {
            return Err(format!(
                "{name}: {} divergences, letters terminal {}, first {:?}",
                r.confluence.divergences.len(),
                r.letters_terminal,
                r.confluence.divergences.first()
            ));
        }
        out.push(format!("{name}: {} words", r.confluence.words_checked));
    }
    Ok(out.join(", "))
}

fn negative_control() -> Outcome {
    let a = matrix_inner(2, &ints(&[0, 1])).map_err(|e| e.to_string())?;
    // e12 ≻ e21 gets an extra +e11
    let bad = a.perturbed_succ(1, 2, 0, &int(1));
    let v = bad.validate();
    let fives = v.iter().filter(|x| x.identity == "(5)").count();
    check(
        fives > 0,
        format!("{} violations, {fives} of identity (5)", v.len()),
        "perturbation passed validation".into(),
    )
}

fn independence_ranks() -> Outcome {
    let e = independence_experiments(3);
    let get = |l: &str| e.iter().find(|x| x.label == l).map(|x| (x.rank, x.terms));
    let prec = get("prec-only");
    let comm = get("commutator");
    check(
        prec == Some((12, 12)) && comm == Some((12, 12)),
        format!("prec-only {prec:?}, commutator {comm:?}"),
        format!("prec-only {prec:?}, commutator {comm:?}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("potential example", potential_example),
        ("dim DAs(n) = n! dim Nov(n), n = 1..5", dimension_identity),
        (
            "identities (4)-(7) vanish under tau",
            identity_suite_vanishes,
        ),
        ("basis preimage round trip", preimage_round_trip),
        ("tau injective up to degree 4", tau_injectivity),
        ("simple matrix example", matrix_example),
        ("rewriting sector shapes", rewriting_sectors),
        ("confluence and embedding", confluence_and_embedding),
        ("negative control", negative_control),
        ("degree-3 independence ranks", independence_ranks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name} ({secs:.2}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2}. {name} ({secs:.2}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
