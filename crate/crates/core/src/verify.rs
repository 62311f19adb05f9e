//! Theorem sweeps: exhaustive over small word spaces, seeded samples
//! elsewhere. Every sweep reports its counterexamples instead of stopping at
//! the first one, and its output does not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    check_main_bound, length_trace, liw_complexity_report, liw_table, power_free_report,
    AlgebraError, GeneratorSet, SpanLadder,
};
use crate::linalg::{min_poly, shift_to_invertible, FMatrix, LinalgError, PrimeField};
use crate::oracles::{
    brute_length, brute_min_qpt, naive_max_exponent, naive_profile, OracleError, WordSpace,
};
use crate::powers::{max_factor_exponent, verify_tc, verify_tc_integer};
use crate::structure::{
    corollary_general_max_profile, corollary_max_profile, minimal_qpt, mh_equivalence,
    mh_general_equivalence, profile_shape,
};
use crate::word::{complexity_profile, Alphabet, Word};

const SHARD: u64 = 4096;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

impl VerifyError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            VerifyError::Oracle(OracleError::BudgetExceeded { .. })
                | VerifyError::Algebra(AlgebraError::SearchBudgetExceeded { .. })
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub input: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub sweep: String,
    pub words_checked: u64,
    pub max_length: usize,
    pub alphabet_size: usize,
    /// individual statements evaluated
    pub checks: u64,
    pub counterexamples: usize,
    /// inputs not checked because a search budget was exceeded
    pub skipped: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub summary: SweepSummary,
    pub counterexamples: Vec<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveConfig {
    pub alphabet_size: usize,
    pub max_length: usize,
    /// `None` uses every core
    pub threads: Option<usize>,
    pub budget: u64,
}

#[derive(Default)]
struct Tally {
    words: u64,
    checks: u64,
    skipped: u64,
    found: Vec<Counterexample>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.words += other.words;
        self.checks += other.checks;
        self.skipped += other.skipped;
        self.found.extend(other.found);
        self
    }

    fn fail(&mut self, check: &str, input: String, detail: String) {
        self.found.push(Counterexample {
            check: check.to_string(),
            input,
            detail,
        });
    }

    fn into_report(self, sweep: &str, max_length: usize, alphabet_size: usize) -> SweepReport {
        SweepReport {
            summary: SweepSummary {
                sweep: sweep.to_string(),
                words_checked: self.words,
                max_length,
                alphabet_size,
                checks: self.checks,
                counterexamples: self.found.len(),
                skipped: self.skipped,
            },
            counterexamples: self.found,
        }
    }
}

fn run_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T, VerifyError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    let pool = builder.build().map_err(|e| VerifyError::Pool(e.to_string()))?;
    Ok(pool.install(job))
}

/// Runs `check_word` on every word of the space, sharded by index; shard
/// results are concatenated in index order.
fn exhaustive(
    cfg: &ExhaustiveConfig,
    sweep: &str,
    check_word: impl Fn(&Word, &mut Tally) + Sync,
) -> Result<SweepReport, VerifyError> {
    let space = WordSpace::new(cfg.alphabet_size, cfg.max_length, cfg.budget)?;
    let shards = space.count().div_ceil(SHARD);
    let tally = run_pool(cfg.threads, || {
        (0..shards)
            .into_par_iter()
            .map(|s| {
                let mut t = Tally::default();
                for w in space.iter_range(s * SHARD..(s + 1) * SHARD) {
                    t.words += 1;
                    check_word(&w, &mut t);
                }
                t
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(Tally::default(), Tally::merge)
    })?;
    Ok(tally.into_report(sweep, cfg.max_length, cfg.alphabet_size))
}

fn render(w: &Word, alphabet: &Alphabet) -> String {
    alphabet.render(w)
}

/// `f(n) <= n` iff minimal cost `<= n`, for all `n` in `[1, l/2]`, plus the
/// corollary that such an `n` bounds the whole profile.
pub fn sweep_mh(cfg: &ExhaustiveConfig) -> Result<SweepReport, VerifyError> {
    let alphabet = Alphabet::standard(cfg.alphabet_size);
    exhaustive(cfg, "mh", |w, t| {
        for n in 1..=w.len() / 2 {
            let eq = mh_equivalence(w, n).expect("n in range");
            t.checks += 1;
            if !eq.holds() {
                t.fail(
                    "mh",
                    render(w, &alphabet),
                    format!("n={n} lhs={} rhs={}", eq.lhs, eq.rhs),
                );
            }
            if eq.lhs {
                t.checks += 1;
                if !corollary_max_profile(w, n).expect("precondition holds") {
                    t.fail("mh_corollary", render(w, &alphabet), format!("n={n}"));
                }
            }
        }
    })
}

/// The `(n, m)` generalization and its corollary over every window
/// `1 <= m <= n <= l-m`.
pub fn sweep_mhgen(cfg: &ExhaustiveConfig) -> Result<SweepReport, VerifyError> {
    let alphabet = Alphabet::standard(cfg.alphabet_size);
    exhaustive(cfg, "mhgen", |w, t| {
        let l = w.len();
        for m in 1..=l / 2 {
            for n in m..=l - m {
                let eq = mh_general_equivalence(w, n, m).expect("window in range");
                t.checks += 1;
                if !eq.holds() {
                    t.fail(
                        "mhgen",
                        render(w, &alphabet),
                        format!("n={n} m={m} lhs={} rhs={}", eq.lhs, eq.rhs),
                    );
                }
                if eq.lhs {
                    t.checks += 1;
                    if !corollary_general_max_profile(w, n, m).expect("precondition holds") {
                        t.fail("cor_gen", render(w, &alphabet), format!("n={n} m={m}"));
                    }
                }
            }
        }
    })
}

/// The total-complexity bound with its lemmas for every admissible `k`
/// (rational `d` = the word's max exponent), and the integer-`d` variant
/// for every admissible `(k, d)`.
pub fn sweep_tc(cfg: &ExhaustiveConfig) -> Result<SweepReport, VerifyError> {
    let alphabet = Alphabet::standard(cfg.alphabet_size);
    exhaustive(cfg, "tc", |w, t| {
        let l = w.len() as u64;
        let e = max_factor_exponent(w).expect("non-empty").exponent;
        for k in 1..=w.len() / 2 {
            // l > k * e
            if l * e.den <= k as u64 * e.num {
                continue;
            }
            let r = verify_tc(w, k).expect("hypotheses checked");
            t.checks += 1;
            if !r.all_ok() {
                t.fail("tc", render(w, &alphabet), format!("{r:?}"));
            }
        }
        let d_min = e.num.div_ceil(e.den);
        for k in 1..w.len() {
            for d in d_min..=(l - 1) / k as u64 {
                let r = verify_tc_integer(w, k, d).expect("hypotheses checked");
                t.checks += 1;
                if !r.all_ok() {
                    t.fail("tc_integer", render(w, &alphabet), format!("{r:?}"));
                }
            }
        }
    })
}

/// Runs `job` over `count` seeded cases; case `i` gets its own generator
/// seeded from `(seed, i)`, so the draw does not depend on scheduling.
fn sampled<T: Send>(
    threads: Option<usize>,
    count: u64,
    seed: u64,
    job: impl Fn(u64, &mut ChaCha8Rng) -> T + Sync,
) -> Result<Vec<T>, VerifyError> {
    run_pool(threads, || {
        (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = case_rng(seed, i);
                job(i, &mut rng)
            })
            .collect()
    })
}

pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

pub fn random_word<R: Rng>(rng: &mut R, len: usize, alphabet_size: usize) -> Word {
    Word::new(
        (0..len)
            .map(|_| rng.gen_range(0..alphabet_size as u32))
            .collect(),
    )
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: PrimeField, n: usize) -> FMatrix {
    let data: Vec<i64> = (0..n * n)
        .map(|_| rng.gen_range(0..field.modulus()) as i64)
        .collect();
    FMatrix::from_row_major(field, n, &data).expect("n*n entries")
}

/// Draws `size` random matrices until they generate all of `M_n(GF(p))`.
pub fn random_generating_set<R: Rng>(
    rng: &mut R,
    field: PrimeField,
    n: usize,
    size: usize,
) -> Result<GeneratorSet, VerifyError> {
    loop {
        let gens = (0..size).map(|_| random_matrix(rng, field, n)).collect();
        let set = GeneratorSet::new(field, n, gens)?;
        if length_trace(&set, n * n)?.generated_dim == n * n {
            return Ok(set);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub count: u64,
    pub seed: u64,
    pub threads: Option<usize>,
}

/// Profile shape on random words with lengths in `lengths` over alphabets
/// of size in `alphabets`.
pub fn sweep_shape(
    cfg: &SampleConfig,
    lengths: std::ops::RangeInclusive<usize>,
    alphabets: std::ops::RangeInclusive<usize>,
) -> Result<SweepReport, VerifyError> {
    let max_alpha = *alphabets.end();
    let alphabet = Alphabet::standard(max_alpha);
    let results = sampled(cfg.threads, cfg.count, cfg.seed, |_, rng| {
        let len = rng.gen_range(lengths.clone());
        let k = rng.gen_range(alphabets.clone());
        let w = random_word(rng, len, k);
        profile_shape(&w)
            .err()
            .map(|e| (render(&w, &alphabet), e.to_string()))
    })?;
    let mut t = Tally {
        words: cfg.count,
        checks: cfg.count,
        ..Tally::default()
    };
    for (input, detail) in results.into_iter().flatten() {
        t.fail("shape", input, detail);
    }
    Ok(t.into_report("shape", *lengths.end(), max_alpha))
}

/// Suffix-automaton profiles against hash-set profiles on random words.
pub fn sweep_factor_oracle(
    cfg: &SampleConfig,
    max_len: usize,
    alphabets: std::ops::RangeInclusive<usize>,
) -> Result<SweepReport, VerifyError> {
    let max_alpha = *alphabets.end();
    let alphabet = Alphabet::standard(max_alpha);
    let results = sampled(cfg.threads, cfg.count, cfg.seed, |_, rng| {
        let len = rng.gen_range(1..=max_len);
        let k = rng.gen_range(alphabets.clone());
        let w = random_word(rng, len, k);
        let fast = complexity_profile(&w);
        let slow = naive_profile(&w);
        (fast != slow).then(|| {
            (
                render(&w, &alphabet),
                format!("fast={} naive={}", fast.total, slow.total),
            )
        })
    })?;
    let mut t = Tally {
        words: cfg.count,
        checks: cfg.count,
        ..Tally::default()
    };
    for (input, detail) in results.into_iter().flatten() {
        t.fail("factor_oracle", input, detail);
    }
    Ok(t.into_report("factor_oracle", max_len, max_alpha))
}

/// `(p, n)` pairs with `p > n`, visited round-robin by case index.
fn field_grid(primes: &[u64], sizes: &[usize]) -> Vec<(u64, usize)> {
    primes
        .iter()
        .flat_map(|&p| sizes.iter().map(move |&n| (p, n)))
        .filter(|&(p, n)| p > n as u64)
        .collect()
}

/// `shift_to_invertible` on random matrices: `(x + lambda I) * inverse = I`
/// exactly, the certificate evaluates to the inverse, and its degree is
/// below `deg mu_x`.
pub fn sweep_shift(
    cfg: &SampleConfig,
    primes: &[u64],
    sizes: &[usize],
) -> Result<SweepReport, VerifyError> {
    let grid = field_grid(primes, sizes);
    let results = sampled(cfg.threads, cfg.count, cfg.seed, |i, rng| {
        let (p, n) = grid[(i as usize) % grid.len()];
        let field = PrimeField::new(p).expect("grid primes are prime");
        let x = random_matrix(rng, field, n);
        let input = format!("p={p} n={n} x={:?}", x.as_vector());
        match shift_to_invertible(&x) {
            Err(e) => Some((input, e.to_string())),
            Ok(s) => {
                let y = x.shift(s.lambda);
                let id = FMatrix::identity(field, n);
                let deg = min_poly(&x).degree();
                if y.mul(&s.inverse) != id || s.inverse.mul(&y) != id {
                    Some((input, format!("lambda={} product is not I", s.lambda)))
                } else if s.certificate.eval_matrix(&x) != s.inverse {
                    Some((input, "certificate does not evaluate to the inverse".into()))
                } else if s.cert_degree() + 1 > deg {
                    Some((input, format!("certificate degree {} vs deg mu {deg}", s.cert_degree())))
                } else {
                    None
                }
            }
        }
    })?;
    let mut t = Tally {
        words: cfg.count,
        checks: cfg.count,
        ..Tally::default()
    };
    for (input, detail) in results.into_iter().flatten() {
        t.fail("shift", input, detail);
    }
    Ok(t.into_report("shift", sizes.iter().copied().max().unwrap_or(0), 0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraSample {
    pub p: u64,
    pub n: usize,
    pub generators: usize,
    pub length: usize,
    pub bound: i64,
    /// LIW checks ran (length and search budget permitting)
    pub liw_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraSweep {
    pub report: SweepReport,
    pub samples: Vec<AlgebraSample>,
}

/// Random generating sets of `M_n(GF(p))`: `l(S)` against the main bound
/// with `(d, m) = (n^2, n)`, and, when `l(S) <= liw_max_len` and
/// `|S|^{l(S)} <= budget`, the complexity and power-freeness of every
/// `LIW_i`.
pub fn sweep_algebra(
    cfg: &SampleConfig,
    primes: &[u64],
    sizes: &[usize],
    generators: std::ops::RangeInclusive<usize>,
    liw_max_len: usize,
    budget: u64,
) -> Result<AlgebraSweep, VerifyError> {
    let grid = field_grid(primes, sizes);
    let results = sampled(cfg.threads, cfg.count, cfg.seed, |i, rng| {
        let (p, n) = grid[(i as usize) % grid.len()];
        let field = PrimeField::new(p).expect("grid primes are prime");
        let size = rng.gen_range(generators.clone());
        let set = random_generating_set(rng, field, n, size)?;
        let ladder = SpanLadder::build(&set)?;
        let trace = ladder.trace();
        let nn = n as u64;
        let check = check_main_bound(&set, &trace, nn * nn, nn, false)?
            .expect("n >= 2 so the bound applies");
        let input = format!(
            "p={p} n={n} S={:?}",
            set.gens().iter().map(|g| g.as_vector().to_vec()).collect::<Vec<_>>()
        );
        let mut found = Vec::new();
        if !check.holds {
            found.push(Counterexample {
                check: "main_bound".into(),
                input: input.clone(),
                detail: format!("l(S)={} bound={}", trace.length, check.bound.integer_value),
            });
        }
        let liw_checked = trace.length <= liw_max_len && set.word_count(trace.length) <= budget;
        if liw_checked {
            let table = liw_table(&set, &ladder, budget)?;
            for e in liw_complexity_report(&ladder, &table).violations() {
                found.push(Counterexample {
                    check: "liw_complexity".into(),
                    input: input.clone(),
                    detail: format!("i={} c={} dim={}", e.i, e.c, e.dim),
                });
            }
            for e in power_free_report(&set, &table, nn)?.violations() {
                found.push(Counterexample {
                    check: "liw_power_free".into(),
                    input: input.clone(),
                    detail: format!("i={} max_exponent={}", e.i, e.max_exponent),
                });
            }
        }
        let sample = AlgebraSample {
            p,
            n,
            generators: size,
            length: trace.length,
            bound: check.bound.integer_value,
            liw_checked,
        };
        Ok::<_, VerifyError>((sample, found))
    })?;

    let mut t = Tally {
        words: cfg.count,
        ..Tally::default()
    };
    let mut samples = Vec::new();
    for r in results {
        let (sample, found) = r?;
        t.checks += 1 + 2 * sample.liw_checked as u64 * sample.length as u64;
        t.skipped += !sample.liw_checked as u64;
        t.found.extend(found);
        samples.push(sample);
    }
    let max_n = sizes.iter().copied().max().unwrap_or(0);
    Ok(AlgebraSweep {
        report: t.into_report("algebra", max_n, *generators.end()),
        samples,
    })
}

/// Every oracle against its fast path: suffix automaton vs hash sets on
/// random words, `(q, p, t)` search on all binary words to length 16,
/// max exponent on all binary words to length 14, span lengths on random
/// 2x2 generating sets.
pub fn oracle_suite(seed: u64, threads: Option<usize>, budget: u64) -> Result<Vec<SweepReport>, VerifyError> {
    let sample = SampleConfig {
        count: 10_000,
        seed,
        threads,
    };
    let factor = sweep_factor_oracle(&sample, 500, 1..=4)?;

    let binary = |max_length| ExhaustiveConfig {
        alphabet_size: 2,
        max_length,
        threads,
        budget,
    };
    let ab = Alphabet::standard(2);
    let qpt = exhaustive(&binary(16), "qpt_oracle", |w, t| {
        t.checks += 1;
        let fast = minimal_qpt(w).expect("non-empty");
        let slow = brute_min_qpt(w).expect("length within oracle limit");
        if fast != slow {
            t.fail("qpt_oracle", render(w, &ab), format!("fast={fast:?} brute={slow:?}"));
        }
    })?;
    let exponent = exhaustive(&binary(14), "exponent_oracle", |w, t| {
        t.checks += 1;
        let fast = max_factor_exponent(w).expect("non-empty");
        let (e, witness) = naive_max_exponent(w).expect("non-empty");
        if fast.exponent != e || fast.witness != witness {
            t.fail(
                "exponent_oracle",
                render(w, &ab),
                format!("fast={} {:?} brute={e} {witness:?}", fast.exponent, fast.witness),
            );
        }
    })?;

    let field = PrimeField::new(5).expect("5 is prime");
    let results = sampled(threads, 50, seed, |_, rng| {
        let gens = (0..2).map(|_| random_matrix(rng, field, 2)).collect();
        let set = GeneratorSet::new(field, 2, gens)?;
        let fast = length_trace(&set, 4)?;
        let slow = brute_length(&set, 4, budget)?;
        Ok::<_, VerifyError>((fast != slow).then(|| {
            (
                format!("{:?}", set.gens().iter().map(|g| g.as_vector().to_vec()).collect::<Vec<_>>()),
                format!("fast={:?} brute={:?}", fast.dims, slow.dims),
            )
        }))
    })?;
    let mut t = Tally {
        words: 50,
        checks: 50,
        ..Tally::default()
    };
    for r in results {
        if let Some((input, detail)) = r? {
            t.fail("length_oracle", input, detail);
        }
    }
    let length = t.into_report("length_oracle", 2, 2);

    Ok(vec![factor, qpt, exponent, length])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(k: usize, l: usize, threads: Option<usize>) -> ExhaustiveConfig {
        ExhaustiveConfig {
            alphabet_size: k,
            max_length: l,
            threads,
            budget: 1_000_000,
        }
    }

    #[test]
    fn small_sweeps_pass() {
        for r in [
            sweep_mh(&small(2, 8, None)).unwrap(),
            sweep_mhgen(&small(2, 8, None)).unwrap(),
            sweep_tc(&small(3, 5, None)).unwrap(),
        ] {
            assert!(r.passed(), "{:?}", r.counterexamples);
        }
    }

    #[test]
    fn summary_counts_words() {
        let r = sweep_mh(&small(2, 6, Some(2))).unwrap();
        assert_eq!(r.summary.words_checked, 126);
        assert_eq!(r.summary.max_length, 6);
        assert_eq!(r.summary.alphabet_size, 2);
    }

    #[test]
    fn output_independent_of_threads() {
        let cfg = SampleConfig {
            count: 64,
            seed: 9,
            threads: Some(1),
        };
        let a = sweep_algebra(&cfg, &[5], &[2], 2..=2, 10, 10_000).unwrap();
        let b = sweep_algebra(&SampleConfig { threads: Some(3), ..cfg }, &[5], &[2], 2..=2, 10, 10_000)
            .unwrap();
        assert_eq!(a, b);
        assert!(a.report.passed());
    }

    #[test]
    fn seeded_words_are_reproducible() {
        let a = random_word(&mut case_rng(1, 5), 20, 3);
        let b = random_word(&mut case_rng(1, 5), 20, 3);
        let c = random_word(&mut case_rng(1, 6), 20, 3);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn budget_errors_are_flagged() {
        let err = sweep_mh(&ExhaustiveConfig {
            budget: 10,
            ..small(2, 8, None)
        })
        .unwrap_err();
        assert!(err.is_budget());
    }
}
