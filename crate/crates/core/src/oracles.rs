//! Brute-force reference implementations.
//!
//! Nothing here calls into the fast paths: substrings are collected into
//! hash sets, periods are found by trying every shift, and spans are
//! recomputed from scratch by plain Gaussian elimination. Only the domain
//! types are shared, so a bug on one side cannot cancel out on the other.

use std::collections::HashSet;
use std::ops::Range;

use thiserror::Error;

use crate::algebra::{GeneratorSet, LengthTrace};
use crate::powers::Exponent;
use crate::structure::QptDecomposition;
use crate::word::{ComplexityProfile, Word};

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;
pub const BRUTE_QPT_MAX_LEN: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("enumeration needs {needed} items, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("word length {len} exceeds oracle limit {max}")]
    LengthTooLarge { len: usize, max: usize },
    #[error("alphabet size and maximum length must be at least 1")]
    EmptySpace,
    #[error("word must be non-empty")]
    EmptyWord,
    #[error("span still growing at length cap {0}")]
    CapExceeded(usize),
}

/// All words of length `1..=max_length` over `{0, ..., alphabet_size-1}`,
/// indexed in (length, lex) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordSpace {
    alphabet_size: usize,
    max_length: usize,
    total: u64,
}

impl WordSpace {
    pub fn new(alphabet_size: usize, max_length: usize, budget: u64) -> Result<Self, OracleError> {
        if alphabet_size == 0 || max_length == 0 {
            return Err(OracleError::EmptySpace);
        }
        let k = alphabet_size as u64;
        let mut total = 0u64;
        let mut layer = 1u64;
        for _ in 0..max_length {
            layer = layer.saturating_mul(k);
            total = total.saturating_add(layer);
        }
        if total > budget {
            return Err(OracleError::BudgetExceeded {
                needed: total,
                budget,
            });
        }
        Ok(WordSpace {
            alphabet_size,
            max_length,
            total,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn count(&self) -> u64 {
        self.total
    }

    /// The `idx`-th word, `idx < count()`.
    pub fn word_at(&self, mut idx: u64) -> Word {
        assert!(idx < self.total, "word index out of range");
        let k = self.alphabet_size as u64;
        let mut len = 1;
        let mut layer = k;
        while idx >= layer {
            idx -= layer;
            len += 1;
            layer *= k;
        }
        let mut letters = vec![0u32; len];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % k) as u32;
            idx /= k;
        }
        Word::new(letters)
    }

    /// Words with indices in `range`, in order; shards of a partition
    /// concatenate to the full enumeration.
    pub fn iter_range(&self, range: Range<u64>) -> impl Iterator<Item = Word> + '_ {
        let end = range.end.min(self.total);
        let start = range.start.min(end);
        let mut current = (start < end).then(|| self.word_at(start).into_letters());
        let k = self.alphabet_size as u32;
        (start..end).map(move |_| {
            let cur = current.as_mut().expect("range is non-empty");
            let out = Word::new(cur.clone());
            // odometer step; rolling over moves to the next length
            let mut i = cur.len();
            loop {
                if i == 0 {
                    *cur = vec![0; cur.len() + 1];
                    break;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < k {
                    break;
                }
                cur[i] = 0;
            }
            out
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = Word> + '_ {
        self.iter_range(0..self.total)
    }
}

pub fn enumerate_words(space: &WordSpace) -> impl Iterator<Item = Word> + '_ {
    space.iter()
}

/// Profile by collecting every substring of every length into a hash set.
pub fn naive_profile(w: &Word) -> ComplexityProfile {
    let l = w.len();
    let counts = (0..=l)
        .map(|n| {
            let set: HashSet<&[u32]> = (0..=l - n).map(|i| &w[i..i + n]).collect();
            set.len()
        })
        .collect();
    ComplexityProfile::from_counts(counts)
}

fn has_period(u: &[u32], p: usize) -> bool {
    (0..u.len()).all(|i| i + p >= u.len() || u[i] == u[i + p])
}

/// Smallest `p >= 1` with `u[i] = u[i+p]` wherever defined.
pub fn naive_min_period(u: &[u32]) -> Result<usize, OracleError> {
    if u.is_empty() {
        return Err(OracleError::EmptyWord);
    }
    Ok((1..=u.len())
        .find(|&p| has_period(u, p))
        .expect("p = |u| always works"))
}

/// Max exponent over all factors, witness leftmost then shortest.
pub fn naive_max_exponent(w: &Word) -> Result<(Exponent, Range<usize>), OracleError> {
    if w.is_empty() {
        return Err(OracleError::EmptyWord);
    }
    let mut best: Option<(Exponent, Range<usize>)> = None;
    for start in 0..w.len() {
        for end in start + 1..=w.len() {
            let p = naive_min_period(&w[start..end])?;
            let e = Exponent::new((end - start) as u64, p as u64);
            if best.as_ref().is_none_or(|(b, _)| e > *b) {
                best = Some((e, start..end));
            }
        }
    }
    Ok(best.expect("word is non-empty"))
}

/// Exhaustive search over every `(q, p, t)` with `q + t <= l` and
/// `1 <= p <= l`, checking each candidate directly.
///
/// Candidates are visited by `q`, then `t`, then `p`, and replaced only on a
/// strictly lower cost, which reproduces the fast search's tie-break.
pub fn brute_min_qpt(w: &Word) -> Result<QptDecomposition, OracleError> {
    let l = w.len();
    if l == 0 {
        return Err(OracleError::EmptyWord);
    }
    if l > BRUTE_QPT_MAX_LEN {
        return Err(OracleError::LengthTooLarge {
            len: l,
            max: BRUTE_QPT_MAX_LEN,
        });
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for q in 0..=l {
        for t in 0..=l - q {
            for p in 1..=l {
                let end = l - t;
                let valid = (q..end).all(|i| i + p >= end || w[i] == w[i + p]);
                if valid && best.is_none_or(|(bq, bp, bt)| q + p + t < bq + bp + bt) {
                    best = Some((q, p, t));
                }
            }
        }
    }
    let (q, p, t) = best.expect("(0, l, 0) is always valid");
    Ok(QptDecomposition { q, p, t, l })
}

fn naive_mul(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0u64;
            for k in 0..n {
                s = (s + a[i * n + k] * b[k * n + j]) % p;
            }
            out[i * n + j] = s;
        }
    }
    out
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rank by textbook elimination on a fresh copy.
fn naive_rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inv(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim L_i(S)` for each `i`, multiplying out every word of length `<= i`
/// from scratch; stops at the first `i` with `L_{i+1} = L_i`.
pub fn brute_length(set: &GeneratorSet, cap: usize, budget: u64) -> Result<LengthTrace, OracleError> {
    let n = set.n();
    let p = set.field().modulus();
    let gens: Vec<&[u64]> = set.gens().iter().map(|g| g.as_vector()).collect();
    let mut identity = vec![0u64; n * n];
    for i in 0..n {
        identity[i * n + i] = 1 % p;
    }

    let mut spent = 0u64;
    let mut dims = Vec::new();
    for i in 0..=cap + 1 {
        let mut vectors = Vec::new();
        for len in 0..=i {
            let count = (gens.len() as u64).saturating_pow(len as u32);
            spent = spent.saturating_add(count);
            if spent > budget {
                return Err(OracleError::BudgetExceeded {
                    needed: spent,
                    budget,
                });
            }
            for idx in 0..count {
                let mut word = vec![0usize; len];
                let mut rest = idx;
                for slot in word.iter_mut().rev() {
                    *slot = (rest % gens.len() as u64) as usize;
                    rest /= gens.len() as u64;
                }
                let prod = word
                    .iter()
                    .fold(identity.clone(), |acc, &g| naive_mul(&acc, gens[g], n, p));
                vectors.push(prod);
            }
        }
        let dim = naive_rank(vectors, p);
        if dims.last() == Some(&dim) {
            return Ok(LengthTrace {
                length: dims.len() - 1,
                generated_dim: dim,
                dims,
            });
        }
        dims.push(dim);
    }
    Err(OracleError::CapExceeded(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{FMatrix, PrimeField};

    #[test]
    fn enumeration_examples() {
        let s = WordSpace::new(2, 2, 100).unwrap();
        let words: Vec<String> = s.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["a", "b", "aa", "ab", "ba", "bb"]);

        let s = WordSpace::new(1, 3, 100).unwrap();
        let words: Vec<String> = s.iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["a", "aa", "aaa"]);

        assert_eq!(WordSpace::new(3, 4, 1000).unwrap().count(), 120);
        assert_eq!(
            WordSpace::new(3, 4, 119),
            Err(OracleError::BudgetExceeded {
                needed: 120,
                budget: 119
            })
        );
    }

    #[test]
    fn sharding_matches_full_enumeration() {
        let s = WordSpace::new(3, 5, 1000).unwrap();
        let full: Vec<Word> = s.iter().collect();
        let mut sharded = Vec::new();
        for lo in (0..s.count()).step_by(17) {
            sharded.extend(s.iter_range(lo..lo + 17));
        }
        assert_eq!(full, sharded);
        for (i, w) in full.iter().enumerate() {
            assert_eq!(&s.word_at(i as u64), w);
        }
        for len in 1..=5 {
            let c = full.iter().filter(|w| w.len() == len).count();
            assert_eq!(c, 3usize.pow(len as u32));
        }
    }

    #[test]
    fn naive_profile_example() {
        let w = Word::new(vec![0, 1, 1, 0, 1, 1, 0, 1, 1, 1]);
        let p = naive_profile(&w);
        assert_eq!(p.total, 32);
        assert_eq!(p.counts[0], 1);
    }

    #[test]
    fn brute_qpt_examples() {
        let w = Word::new(vec![0, 1, 1, 0, 1, 1, 0, 1, 0, 0]);
        assert_eq!(brute_min_qpt(&w).unwrap().cost(), 5);
        assert_eq!(brute_min_qpt(&Word::new(vec![0; 4])).unwrap().cost(), 1);
        assert_eq!(
            brute_min_qpt(&Word::new(vec![0; 31])),
            Err(OracleError::LengthTooLarge { len: 31, max: 30 })
        );
    }

    #[test]
    fn naive_exponent_example() {
        let w = Word::new(vec![0, 1, 2, 3, 1, 2, 3, 4, 5]);
        let (e, witness) = naive_max_exponent(&w).unwrap();
        assert_eq!(e, Exponent::new(6, 3));
        assert_eq!(witness, 1..7);
    }

    #[test]
    fn brute_length_examples() {
        let f = PrimeField::new(5).unwrap();
        let s = GeneratorSet::new(f, 2, vec![FMatrix::unit(f, 2, 0, 1), FMatrix::unit(f, 2, 1, 0)])
            .unwrap();
        let t = brute_length(&s, 5, 1000).unwrap();
        assert_eq!(t.dims, vec![1, 3, 4]);
        assert_eq!(t.length, 2);

        let s = GeneratorSet::new(f, 2, vec![FMatrix::identity(f, 2)]).unwrap();
        assert_eq!(brute_length(&s, 5, 1000).unwrap().length, 0);
    }
}
