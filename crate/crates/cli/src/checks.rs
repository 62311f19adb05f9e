use std::fmt::Write as _;

use wordlen_core::bounds::{bound_table, dominance_grid, ratio_f64, BoundReport, GridReport};
use wordlen_core::oracles::DEFAULT_ENUMERATION_BUDGET;
use wordlen_core::algebra::DEFAULT_WORD_BUDGET;
use wordlen_core::verify::{
    oracle_suite, sweep_algebra, sweep_mh, sweep_mhgen, sweep_shape, sweep_shift, sweep_tc,
    ExhaustiveConfig, SampleConfig, SweepReport,
};

use crate::{print_json, resolve_budget, BoundsArgs, Failure, Outcome, Sweep, VerifyArgs};

const PRIMES: [u64; 3] = [5, 7, 11];
const SIZES: [usize; 3] = [2, 3, 4];

/// JSON: one line per counterexample, then the summary line. Tables: one
/// `FAIL` line per counterexample, then the summary.
fn emit(report: &SweepReport, json: bool) {
    if json {
        for c in &report.counterexamples {
            print_json(c);
        }
        print_json(&report.summary);
    } else {
        let mut s = String::new();
        for c in &report.counterexamples {
            writeln!(s, "FAIL  {:<14} {}  {}", c.check, c.input, c.detail).unwrap();
        }
        let r = &report.summary;
        writeln!(
            s,
            "{:<16} words {:>10}  checks {:>11}  max_length {:>4}  alphabet {:>2}  skipped {:>4}  counterexamples {}",
            r.sweep,
            r.words_checked,
            r.checks,
            r.max_length,
            r.alphabet_size,
            r.skipped,
            r.counterexamples
        )
        .unwrap();
        print!("{s}");
    }
}

pub fn verify(args: &VerifyArgs, json: bool) -> Outcome {
    let budget = resolve_budget(args.budget, DEFAULT_ENUMERATION_BUDGET)?;
    let exhaustive = ExhaustiveConfig {
        alphabet_size: args.alphabet.unwrap_or(2),
        max_length: args.maxlen.unwrap_or(10),
        threads: args.threads,
        budget,
    };
    let sample = |default| SampleConfig {
        count: args.count.unwrap_or(default),
        seed: args.seed,
        threads: args.threads,
    };
    if exhaustive.alphabet_size == 0 || exhaustive.max_length == 0 {
        return Err(Failure::Usage("--alphabet and --maxlen must be positive".into()));
    }
    let report = match args.sweep {
        Sweep::Mh => sweep_mh(&exhaustive)?,
        Sweep::Mhgen => sweep_mhgen(&exhaustive)?,
        Sweep::Tc => sweep_tc(&exhaustive)?,
        Sweep::Shape => {
            let max_len = args.maxlen.unwrap_or(200);
            let max_alpha = args.alphabet.unwrap_or(4);
            sweep_shape(&sample(10_000), 1..=max_len, 2.min(max_alpha)..=max_alpha)?
        }
        Sweep::Shift => sweep_shift(&sample(500), &PRIMES, &SIZES)?,
        Sweep::Algebra => {
            let word_budget = resolve_budget(args.budget, DEFAULT_WORD_BUDGET)?;
            sweep_algebra(&sample(200), &PRIMES, &SIZES, 2..=3, 10, word_budget)?.report
        }
    };
    emit(&report, json);
    Ok(report.passed())
}

pub fn oracle(seed: u64, threads: Option<usize>, budget: Option<u64>, json: bool) -> Outcome {
    let budget = resolve_budget(budget, DEFAULT_ENUMERATION_BUDGET)?;
    let reports = oracle_suite(seed, threads, budget)?;
    for r in &reports {
        emit(r, json);
    }
    Ok(reports.iter().all(SweepReport::passed))
}

fn table(r: &BoundReport) -> String {
    let mut s = String::new();
    let n = r.n.map_or(String::new(), |n| format!("  n = {n}"));
    writeln!(s, "d = {}  m = {}{n}", r.d, r.m).unwrap();
    writeln!(s, "{:<22} {:>12} {:>12}", "bound", "exact", "value").unwrap();
    let row = |s: &mut String, name: &str, exact: String, value: f64| {
        writeln!(s, "{name:<22} {exact:>12} {value:>12.4}").unwrap();
    };
    row(&mut s, "trivial d-1", r.trivial.to_string(), r.trivial as f64);
    row(
        &mut s,
        "max(m-1, d/2)",
        format!("{}", r.kh),
        ratio_f64(&r.kh),
    );
    if let Some(paz) = r.paz {
        row(&mut s, "paz ceil((n^2+2)/3)", paz.to_string(), paz as f64);
    }
    row(
        &mut s,
        "pappacena",
        format!("floor {}", r.pappacena_floor),
        r.pappacena,
    );
    let b = &r.best_main;
    row(
        &mut s,
        &format!("main, best k = {}", b.k_star),
        format!("{}", b.value),
        ratio_f64(&b.value),
    );
    writeln!(s, "{:<22} {:>12}", "main floor", b.integer_value).unwrap();
    writeln!(
        s,
        "{:<22} {:>12}",
        "below pappacena", r.pappacena_exceeds_main
    )
    .unwrap();
    writeln!(s, "{:>4} {:>12} {:>12}", "k", "main(k)", "value").unwrap();
    for (k, v) in &r.main_at_k {
        writeln!(s, "{k:>4} {:>12} {:>12.4}", v.to_string(), ratio_f64(v)).unwrap();
    }
    s
}

fn grid_table(g: &GridReport) -> String {
    let mut s = String::new();
    for f in &g.failures {
        writeln!(s, "FAIL  d = {}  m = {}  {}", f.d, f.m, f.reason).unwrap();
    }
    writeln!(
        s,
        "grid m in [2, {}], d in [m, {}], n in [2, {}]: {} cells, {} failures",
        g.m_max,
        g.d_max,
        g.n_max,
        g.cells,
        g.failures.len()
    )
    .unwrap();
    s
}

pub fn bounds(args: &BoundsArgs, json: bool) -> Outcome {
    if args.grid {
        let g = dominance_grid(args.m_max, args.d_max, args.n_max)?;
        if json {
            print_json(&g);
        } else {
            print!("{}", grid_table(&g));
        }
        return Ok(g.passed());
    }
    let (d, m) = match (args.dim, args.m, args.n) {
        (Some(d), Some(m), _) => (d, m),
        (None, None, Some(n)) => (n * n, n),
        _ => {
            return Err(Failure::Usage(
                "give --dim and --m, or --n alone, or --grid".into(),
            ))
        }
    };
    let r = bound_table(d, m, args.n)?;
    if json {
        print_json(&r);
    } else {
        print!("{}", table(&r));
    }
    Ok(true)
}
