//! Lengths of generating sets of matrix algebras over `GF(p)`.
//!
//! `L_i(S)` is the span of all products of at most `i` generators (the
//! empty product is the identity) and `l(S)` is the least `i` with
//! `L_i(S) = L(S)`. Words over `S` are sequences of generator indices; index
//! order is the letter order for shortlex comparisons.

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{best_main_bound, BestMain, BoundsError};
use crate::linalg::{min_poly, FMatrix, LinalgError, MatrixFile, PrimeField, SpanBasis};
use crate::powers::{max_factor_exponent, Exponent};
use crate::word::{count_distinct_factors, Word};

/// Default cap on the number of words a single search may enumerate.
pub const DEFAULT_WORD_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator set must be non-empty")]
    EmptyGeneratorSet,
    #[error("generator {index} is not a {n}x{n} matrix over GF({p})")]
    InconsistentGenerator { index: usize, n: usize, p: u64 },
    #[error("span still growing at length cap {0}")]
    CapExceeded(usize),
    #[error("generator index {index} out of range for {size} generators")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("word must be non-empty")]
    EmptyWord,
    #[error("search needs {needed} words, budget is {budget}")]
    SearchBudgetExceeded { needed: u64, budget: u64 },
    #[error("field GF({p}) too small: need p > {m}")]
    FieldTooSmall { p: u64, m: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    field: PrimeField,
    n: usize,
    gens: Vec<FMatrix>,
}

impl GeneratorSet {
    pub fn new(field: PrimeField, n: usize, gens: Vec<FMatrix>) -> Result<Self, AlgebraError> {
        if gens.is_empty() {
            return Err(AlgebraError::EmptyGeneratorSet);
        }
        if let Some(index) = gens.iter().position(|g| g.n() != n || g.field() != field) {
            return Err(AlgebraError::InconsistentGenerator {
                index,
                n,
                p: field.modulus(),
            });
        }
        Ok(GeneratorSet { field, n, gens })
    }

    pub fn from_file(file: &MatrixFile) -> Result<Self, AlgebraError> {
        let (field, gens) = file.load()?;
        GeneratorSet::new(field, file.n, gens)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[FMatrix] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Product of the word's generators, left to right.
    pub fn product(&self, word: &[usize]) -> Result<FMatrix, AlgebraError> {
        if let Some(&index) = word.iter().find(|&&i| i >= self.gens.len()) {
            return Err(AlgebraError::IndexOutOfRange {
                index,
                size: self.gens.len(),
            });
        }
        Ok(FMatrix::word_product(&self.gens, word).expect("indices checked"))
    }

    /// `|S|^len`, saturating.
    pub fn word_count(&self, len: usize) -> u64 {
        (self.gens.len() as u64).saturating_pow(len.min(u32::MAX as usize) as u32)
    }
}

/// Dimensions `dim L_0, dim L_1, ..., dim L_{l(S)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthTrace {
    pub dims: Vec<usize>,
    pub length: usize,
    pub generated_dim: usize,
}

/// Grows `L_0 ⊆ L_1 ⊆ ...`, calling `on_level` with each new `L_i`.
///
/// Only products of the previous step's independent words with the
/// generators can enlarge the span, so each step multiplies the frontier
/// alone.
fn grow_spans(
    set: &GeneratorSet,
    max_len: usize,
    mut on_level: impl FnMut(&SpanBasis),
) -> Result<(), AlgebraError> {
    let identity = FMatrix::identity(set.field, set.n);
    let mut basis = SpanBasis::for_matrices(set.field, set.n);
    basis.insert(&identity)?;
    on_level(&basis);
    let mut frontier = vec![identity];
    let mut step = 0;
    while !basis.is_full() {
        step += 1;
        let mut next = Vec::new();
        for word in &frontier {
            for g in &set.gens {
                let prod = word.mul(g);
                if basis.insert(&prod)? {
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        if step > max_len {
            return Err(AlgebraError::CapExceeded(max_len));
        }
        on_level(&basis);
        frontier = next;
    }
    Ok(())
}

pub fn length_trace(set: &GeneratorSet, max_len: usize) -> Result<LengthTrace, AlgebraError> {
    let mut dims = Vec::new();
    grow_spans(set, max_len, |b| dims.push(b.dim()))?;
    Ok(LengthTrace {
        length: dims.len() - 1,
        generated_dim: *dims.last().expect("L_0 is always recorded"),
        dims,
    })
}

/// Snapshots of every `L_i(S)` up to `L(S)`, for reducibility tests.
#[derive(Debug, Clone)]
pub struct SpanLadder {
    levels: Vec<SpanBasis>,
}

impl SpanLadder {
    /// `l(S) <= n^2 - 1` always holds, so `n^2` is a safe default cap.
    pub fn build(set: &GeneratorSet) -> Result<Self, AlgebraError> {
        Self::build_capped(set, set.n * set.n)
    }

    pub fn build_capped(set: &GeneratorSet, max_len: usize) -> Result<Self, AlgebraError> {
        let mut levels = Vec::new();
        grow_spans(set, max_len, |b| levels.push(b.clone()))?;
        Ok(SpanLadder { levels })
    }

    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    /// `L_i(S)`; indices past `l(S)` give `L(S)`.
    pub fn level(&self, i: usize) -> &SpanBasis {
        &self.levels[i.min(self.levels.len() - 1)]
    }

    pub fn generated(&self) -> &SpanBasis {
        self.levels.last().expect("ladder has L_0")
    }

    pub fn trace(&self) -> LengthTrace {
        let dims: Vec<usize> = self.levels.iter().map(SpanBasis::dim).collect();
        LengthTrace {
            length: dims.len() - 1,
            generated_dim: *dims.last().unwrap(),
            dims,
        }
    }

    /// A word of length `j` is reducible iff its product lies in `L_{j-1}`.
    pub fn is_product_reducible(&self, product: &FMatrix, len: usize) -> Result<bool, AlgebraError> {
        assert!(len >= 1);
        Ok(self.level(len - 1).contains(product)?)
    }
}

pub fn is_reducible(word: &[usize], set: &GeneratorSet) -> Result<bool, AlgebraError> {
    if word.is_empty() {
        return Err(AlgebraError::EmptyWord);
    }
    let product = set.product(word)?;
    SpanLadder::build(set)?.is_product_reducible(&product, word.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiwResult {
    pub i: usize,
    pub word: Vec<usize>,
    /// total complexity of the word over the generator-index alphabet
    pub complexity_total: u64,
}

impl LiwResult {
    pub fn as_word(&self) -> Word {
        Word::new(self.word.iter().map(|&i| i as u32).collect())
    }
}

/// Renders generator indices as a digit string (`"010"`) when there are at
/// most ten generators, comma-separated otherwise.
pub fn render_indices(word: &[usize], generator_count: usize) -> String {
    if generator_count <= 10 {
        word.iter().map(|i| i.to_string()).collect()
    } else {
        word.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn check_budget(set: &GeneratorSet, len: usize, budget: u64) -> Result<(), AlgebraError> {
    let needed = set.word_count(len);
    if needed > budget {
        return Err(AlgebraError::SearchBudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Lexicographically least irreducible word of length `i`, found by a
/// depth-first search in generator order.
///
/// A word with a reducible prefix is reducible, so reducible prefixes are
/// pruned; the first full-length irreducible word reached is the minimum.
pub fn liw_with_ladder(
    set: &GeneratorSet,
    ladder: &SpanLadder,
    i: usize,
    budget: u64,
) -> Result<Option<LiwResult>, AlgebraError> {
    if i == 0 {
        return Err(AlgebraError::EmptyWord);
    }
    check_budget(set, i, budget)?;

    fn search(
        set: &GeneratorSet,
        ladder: &SpanLadder,
        target: usize,
        prefix: &mut Vec<usize>,
        product: &FMatrix,
    ) -> Result<bool, AlgebraError> {
        if prefix.len() == target {
            return Ok(true);
        }
        for (g_index, g) in set.gens.iter().enumerate() {
            let next = product.mul(g);
            prefix.push(g_index);
            if !ladder.is_product_reducible(&next, prefix.len())?
                && search(set, ladder, target, prefix, &next)?
            {
                return Ok(true);
            }
            prefix.pop();
        }
        Ok(false)
    }

    let mut prefix = Vec::with_capacity(i);
    let identity = FMatrix::identity(set.field, set.n);
    if search(set, ladder, i, &mut prefix, &identity)? {
        let complexity_total =
            count_distinct_factors(&Word::new(prefix.iter().map(|&x| x as u32).collect()));
        Ok(Some(LiwResult {
            i,
            word: prefix,
            complexity_total,
        }))
    } else {
        Ok(None)
    }
}

pub fn liw(set: &GeneratorSet, i: usize, budget: u64) -> Result<Option<LiwResult>, AlgebraError> {
    let ladder = SpanLadder::build(set)?;
    liw_with_ladder(set, &ladder, i, budget)
}

/// `LIW_1, ..., LIW_{l(S)}`.
pub fn liw_table(
    set: &GeneratorSet,
    ladder: &SpanLadder,
    budget: u64,
) -> Result<Vec<LiwResult>, AlgebraError> {
    (1..=ladder.length())
        .map(|i| {
            liw_with_ladder(set, ladder, i, budget)
                .map(|r| r.expect("an irreducible word exists for every i <= l(S)"))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiwComplexityEntry {
    pub i: usize,
    pub word: Vec<usize>,
    pub c: u64,
    pub dim: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiwComplexityReport {
    pub generated_dim: usize,
    pub length: usize,
    pub entries: Vec<LiwComplexityEntry>,
}

impl LiwComplexityReport {
    pub fn violations(&self) -> impl Iterator<Item = &LiwComplexityEntry> {
        self.entries.iter().filter(|e| !e.ok)
    }

    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Checks `c(LIW_i) <= dim L(S)` for every `i` in `[1, l(S)]`.
pub fn check_liw_complexity(
    set: &GeneratorSet,
    budget: u64,
) -> Result<LiwComplexityReport, AlgebraError> {
    let ladder = SpanLadder::build(set)?;
    let table = liw_table(set, &ladder, budget)?;
    Ok(liw_complexity_report(&ladder, &table))
}

pub fn liw_complexity_report(ladder: &SpanLadder, table: &[LiwResult]) -> LiwComplexityReport {
    let dim = ladder.generated().dim();
    LiwComplexityReport {
        generated_dim: dim,
        length: ladder.length(),
        entries: table
            .iter()
            .map(|r| LiwComplexityEntry {
                i: r.i,
                word: r.word.clone(),
                c: r.complexity_total,
                dim,
                ok: r.complexity_total <= dim as u64,
            })
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerFreeEntry {
    pub i: usize,
    pub word: Vec<usize>,
    pub max_exponent: Exponent,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerFreeReport {
    pub m: u64,
    pub entries: Vec<PowerFreeEntry>,
}

impl PowerFreeReport {
    pub fn violations(&self) -> impl Iterator<Item = &PowerFreeEntry> {
        self.entries.iter().filter(|e| !e.ok)
    }

    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Checks that every `LIW_i` avoids `(m-1)+`-powers (needs `p > m`).
pub fn check_irreducible_power_free(
    set: &GeneratorSet,
    m: u64,
    budget: u64,
) -> Result<PowerFreeReport, AlgebraError> {
    let ladder = SpanLadder::build(set)?;
    let table = liw_table(set, &ladder, budget)?;
    power_free_report(set, &table, m)
}

pub fn power_free_report(
    set: &GeneratorSet,
    table: &[LiwResult],
    m: u64,
) -> Result<PowerFreeReport, AlgebraError> {
    let p = set.field.modulus();
    if p <= m {
        return Err(AlgebraError::FieldTooSmall { p, m });
    }
    let limit = Exponent::new(m.saturating_sub(1), 1);
    let entries = table
        .iter()
        .map(|r| {
            let e = max_factor_exponent(&r.as_word())
                .expect("LIW_i is non-empty")
                .exponent;
            PowerFreeEntry {
                i: r.i,
                word: r.word.clone(),
                max_exponent: e,
                ok: e <= limit,
            }
        })
        .collect();
    Ok(PowerFreeReport { m, entries })
}

/// Largest minimal-polynomial degree among all words of length at most
/// `word_len_cap`.
///
/// A lower estimate of the maximum over all words; `n` bounds it from above.
pub fn estimate_m_star(
    set: &GeneratorSet,
    word_len_cap: usize,
    budget: u64,
) -> Result<usize, AlgebraError> {
    let needed = (0..=word_len_cap).fold(0u64, |acc, j| acc.saturating_add(set.word_count(j)));
    if needed > budget {
        return Err(AlgebraError::SearchBudgetExceeded { needed, budget });
    }
    let mut best = 1;
    let mut layer = vec![FMatrix::identity(set.field, set.n)];
    for _ in 0..word_len_cap {
        if best == set.n {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * set.gens.len());
        for w in &layer {
            for g in &set.gens {
                let prod = w.mul(g);
                best = best.max(min_poly(&prod).degree());
                next.push(prod);
            }
        }
        layer = next;
    }
    Ok(best)
}

/// Main length bound evaluated at a computed `l(S)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainBoundCheck {
    pub length: usize,
    pub d: u64,
    pub m: u64,
    pub bound: BestMain,
    pub holds: bool,
    /// `m` came from a capped search rather than a known value
    pub conditional: bool,
}

/// Compares `l(S)` with `floor(min_k max(k(m-1), d/(k+1) + k - 1))`.
///
/// Returns `None` when `m < 2`, where the bound does not apply.
pub fn check_main_bound(
    set: &GeneratorSet,
    trace: &LengthTrace,
    d: u64,
    m: u64,
    conditional: bool,
) -> Result<Option<MainBoundCheck>, AlgebraError> {
    if m < 2 {
        return Ok(None);
    }
    let p = set.field.modulus();
    if p <= m {
        return Err(AlgebraError::FieldTooSmall { p, m });
    }
    let bound = best_main_bound(d, m)?;
    Ok(Some(MainBoundCheck {
        length: trace.length,
        d,
        m,
        holds: trace.length as i64 <= bound.integer_value,
        bound,
        conditional,
    }))
}

/// Picks `(d, m)` for the main bound: `(n^2, n)` when `S` generates the full
/// matrix algebra, otherwise `(dim L(S), estimated m)` flagged conditional.
pub fn main_bound_inputs(
    set: &GeneratorSet,
    trace: &LengthTrace,
    word_len_cap: usize,
    budget: u64,
) -> Result<(u64, u64, bool), AlgebraError> {
    let n = set.n as u64;
    if trace.generated_dim == set.n * set.n {
        Ok((n * n, n, false))
    } else {
        let m = estimate_m_star(set, word_len_cap, budget)? as u64;
        Ok((trace.generated_dim as u64, m, true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m2_pair() -> GeneratorSet {
        let f = gf(5);
        GeneratorSet::new(f, 2, vec![FMatrix::unit(f, 2, 0, 1), FMatrix::unit(f, 2, 1, 0)]).unwrap()
    }

    fn identity_set() -> GeneratorSet {
        let f = gf(5);
        GeneratorSet::new(f, 2, vec![FMatrix::identity(f, 2)]).unwrap()
    }

    #[test]
    fn trace_examples() {
        let t = length_trace(&m2_pair(), 10).unwrap();
        assert_eq!(t.dims, vec![1, 3, 4]);
        assert_eq!(t.length, 2);
        assert_eq!(t.generated_dim, 4);

        let t = length_trace(&identity_set(), 10).unwrap();
        assert_eq!(t.dims, vec![1]);
        assert_eq!(t.length, 0);

        let f = gf(5);
        let units = (0..4).map(|k| FMatrix::unit(f, 2, k / 2, k % 2)).collect();
        let t = length_trace(&GeneratorSet::new(f, 2, units).unwrap(), 10).unwrap();
        assert_eq!(t.dims, vec![1, 4]);
        assert_eq!(t.length, 1);
    }

    #[test]
    fn trace_cap() {
        assert_eq!(length_trace(&m2_pair(), 1), Err(AlgebraError::CapExceeded(1)));
        assert!(length_trace(&m2_pair(), 2).is_ok());
    }

    #[test]
    fn generator_set_validation() {
        let f = gf(5);
        assert_eq!(
            GeneratorSet::new(f, 2, vec![]),
            Err(AlgebraError::EmptyGeneratorSet)
        );
        assert_eq!(
            GeneratorSet::new(f, 2, vec![FMatrix::identity(f, 3)]),
            Err(AlgebraError::InconsistentGenerator { index: 0, n: 2, p: 5 })
        );
    }

    #[test]
    fn reducibility_examples() {
        let s = m2_pair();
        assert!(is_reducible(&[0, 0], &s).unwrap());
        assert!(!is_reducible(&[0, 1], &s).unwrap());
        assert!(!is_reducible(&[1], &s).unwrap());
        assert!(is_reducible(&[0, 1, 0], &s).unwrap());
        assert_eq!(
            is_reducible(&[0, 2], &s),
            Err(AlgebraError::IndexOutOfRange { index: 2, size: 2 })
        );
        assert_eq!(is_reducible(&[], &s), Err(AlgebraError::EmptyWord));
    }

    #[test]
    fn liw_examples() {
        let s = m2_pair();
        let r = liw(&s, 2, DEFAULT_WORD_BUDGET).unwrap().unwrap();
        assert_eq!(r.word, vec![0, 1]);
        assert_eq!(r.complexity_total, 4);
        assert_eq!(liw(&s, 1, DEFAULT_WORD_BUDGET).unwrap().unwrap().word, vec![0]);
        assert_eq!(liw(&s, 3, DEFAULT_WORD_BUDGET).unwrap(), None);
        assert_eq!(liw(&identity_set(), 1, DEFAULT_WORD_BUDGET).unwrap(), None);
        assert_eq!(
            liw(&s, 3, 7),
            Err(AlgebraError::SearchBudgetExceeded { needed: 8, budget: 7 })
        );
    }

    #[test]
    fn liw_complexity_example() {
        let r = check_liw_complexity(&m2_pair(), DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(r.generated_dim, 4);
        assert_eq!(r.entries.len(), 2);
        assert_eq!(r.entries[1].c, 4);
        assert!(r.all_ok());

        let r = check_liw_complexity(&identity_set(), DEFAULT_WORD_BUDGET).unwrap();
        assert!(r.entries.is_empty());
    }

    #[test]
    fn power_free_examples() {
        let r = check_irreducible_power_free(&m2_pair(), 2, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(r.entries[1].max_exponent, Exponent::new(1, 1));
        assert!(r.all_ok());
        assert_eq!(
            check_irreducible_power_free(&m2_pair(), 5, DEFAULT_WORD_BUDGET),
            Err(AlgebraError::FieldTooSmall { p: 5, m: 5 })
        );
    }

    #[test]
    fn one_generator_algebra_has_length_deg_minus_one() {
        // single nilpotent Jordan block of size 3: deg x = 3, l(S) = 2
        let f = gf(7);
        let x = FMatrix::from_row_major(f, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        let s = GeneratorSet::new(f, 3, vec![x]).unwrap();
        let t = length_trace(&s, 10).unwrap();
        assert_eq!(t.length, 2);
        let r = check_irreducible_power_free(&s, 3, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert_eq!(r.entries[1].word, vec![0, 0]);
        assert!(r.all_ok());
    }

    #[test]
    fn m_star_examples() {
        assert_eq!(estimate_m_star(&m2_pair(), 2, DEFAULT_WORD_BUDGET).unwrap(), 2);
        assert_eq!(estimate_m_star(&identity_set(), 3, DEFAULT_WORD_BUDGET).unwrap(), 1);
        assert!(matches!(
            estimate_m_star(&m2_pair(), 10, 100),
            Err(AlgebraError::SearchBudgetExceeded { .. })
        ));
    }

    #[test]
    fn main_bound_check_full_algebra() {
        let s = m2_pair();
        let t = length_trace(&s, 10).unwrap();
        let (d, m, conditional) = main_bound_inputs(&s, &t, 4, DEFAULT_WORD_BUDGET).unwrap();
        assert_eq!((d, m, conditional), (4, 2, false));
        let c = check_main_bound(&s, &t, d, m, conditional).unwrap().unwrap();
        assert_eq!(c.bound.integer_value, 2);
        assert!(c.holds);
        assert_eq!(check_main_bound(&identity_set(), &t, 1, 1, true).unwrap(), None);
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_indices(&[0, 1, 0], 2), "010");
        assert_eq!(render_indices(&[0, 11], 12), "0,11");
    }
}
