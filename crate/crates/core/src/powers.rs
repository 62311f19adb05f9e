//! Periods, exact power exponents, power avoidance, and the total-complexity
//! lower bound `c(W) >= (k+1)(l-k+1)` for power-free words.
//!
//! Everything here is exact: exponents are pairs of integers compared by
//! cross-multiplication, because `d`-power versus `d+`-power avoidance is
//! decided on ties.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::word::{complexity_profile, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PowersError {
    #[error("word must be non-empty")]
    EmptyWord,
    #[error("avoidance exponent must be at least 1, got {0}")]
    InvalidExponent(Ratio<u64>),
    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(Hypothesis),
}

/// The hypothesis of the total-complexity theorem that failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `k >= 1`
    KPositive,
    /// `k <= l/2`
    KAtMostHalfLength,
    /// `l > k*d`
    LengthExceedsKd,
    /// `d >= 1`
    DPositive,
    /// the word avoids `d+`-powers
    AvoidsDPlus,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Hypothesis::KPositive => "k >= 1",
            Hypothesis::KAtMostHalfLength => "k <= l/2",
            Hypothesis::LengthExceedsKd => "l > k*d",
            Hypothesis::DPositive => "d >= 1",
            Hypothesis::AvoidsDPlus => "word avoids d+-powers",
        };
        f.write_str(s)
    }
}

/// Exponent `|U| / period(U)` of a factor `U`, kept as the unreduced pair.
///
/// Equality and ordering compare rational values, so `9/3 == 3/1`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Exponent {
    pub num: u64,
    pub den: u64,
}

impl Exponent {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den >= 1, "exponent denominator must be positive");
        Exponent { num, den }
    }

    pub fn value(&self) -> Ratio<u64> {
        Ratio::new(self.num, self.den)
    }

    /// `self <= r` exactly.
    pub fn at_most(&self, r: Ratio<u64>) -> bool {
        u128::from(self.num) * u128::from(*r.denom())
            <= u128::from(*r.numer()) * u128::from(self.den)
    }
}

impl PartialEq for Exponent {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Exponent {}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl fmt::Display for Exponent {
    /// Prints the reduced value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        write!(f, "{}/{}", v.numer(), v.denom())
    }
}

/// KMP failure function: `border[i]` is the length of the longest proper
/// border of `s[..=i]`.
pub fn border_array(s: &[u32]) -> Vec<usize> {
    let mut border = vec![0usize; s.len()];
    for i in 1..s.len() {
        let mut b = border[i - 1];
        while b > 0 && s[i] != s[b] {
            b = border[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        border[i] = b;
    }
    border
}

pub fn minimal_period(w: &Word) -> Result<usize, PowersError> {
    let border = border_array(w);
    match border.last() {
        None => Err(PowersError::EmptyWord),
        Some(&b) => Ok(w.len() - b),
    }
}

/// Largest factor exponent of a word with its leftmost witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxExponent {
    pub exponent: Exponent,
    pub witness: Range<usize>,
}

impl MaxExponent {
    pub fn factor_len(&self) -> usize {
        self.witness.len()
    }
}

/// Max over all non-empty factors of `|U| / period(U)`.
///
/// One border-array sweep per start position, `O(l^2)` total. The witness
/// is the factor with the smallest start, then the shortest length.
pub fn max_factor_exponent(w: &Word) -> Result<MaxExponent, PowersError> {
    if w.is_empty() {
        return Err(PowersError::EmptyWord);
    }
    let mut best = MaxExponent {
        exponent: Exponent::new(1, 1),
        witness: 0..1,
    };
    for start in 0..w.len() {
        // a suffix of length r has exponent at most r; no gain possible
        let remaining = (w.len() - start) as u64;
        if best.exponent >= Exponent::new(remaining, 1) {
            break;
        }
        let border = border_array(&w[start..]);
        for (i, &b) in border.iter().enumerate() {
            let len = i + 1;
            let e = Exponent::new(len as u64, (len - b) as u64);
            if e > best.exponent {
                best = MaxExponent {
                    exponent: e,
                    witness: start..start + len,
                };
            }
        }
    }
    Ok(best)
}

/// With `strict_plus`, true iff the word avoids `d+`-powers (every exponent
/// `<= d`); otherwise true iff it avoids `d`-powers (every exponent `< d`).
pub fn avoids(w: &Word, d: Ratio<u64>, strict_plus: bool) -> Result<bool, PowersError> {
    if d < Ratio::from_integer(1) {
        return Err(PowersError::InvalidExponent(d));
    }
    if w.is_empty() {
        return Ok(true);
    }
    let max = max_factor_exponent(w)?.exponent;
    let d_exp = Exponent::new(*d.numer(), *d.denom());
    Ok(if strict_plus { max <= d_exp } else { max < d_exp })
}

/// Outcome of checking the total-complexity bound and its three lemmas.
///
/// Lemma flags are `None` when the lemmas do not apply (integer-`d` variant
/// with `k > l/2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcReport {
    pub l: usize,
    pub k: usize,
    pub d: Exponent,
    /// `f(n) >= n+1` on `[0, k]`
    pub lemma1_ok: Option<bool>,
    /// `f(n) >= k+1` on `[k, l-k]`
    pub lemma2_ok: Option<bool>,
    /// `f(n) = l-n+1` on `[l-k, l]`
    pub lemma3_ok: Option<bool>,
    pub theorem_ok: bool,
    pub c: u64,
    pub bound: u64,
}

impl TcReport {
    pub fn all_ok(&self) -> bool {
        self.theorem_ok
            && self.lemma1_ok != Some(false)
            && self.lemma2_ok != Some(false)
            && self.lemma3_ok != Some(false)
    }
}

fn tc_bound(l: usize, k: usize) -> u64 {
    (k as u64 + 1) * (l as u64 + 1 - k as u64)
}

fn lemma_flags(counts: &[usize], l: usize, k: usize) -> (bool, bool, bool) {
    let lemma1 = (0..=k).all(|n| counts[n] > n);
    let lemma2 = (k..=l - k).all(|n| counts[n] > k);
    let lemma3 = (l - k..=l).all(|n| counts[n] == l - n + 1);
    (lemma1, lemma2, lemma3)
}

/// Checks the rational-`d` theorem with `d` instantiated as the word's own
/// maximal factor exponent, the tightest admissible choice.
pub fn verify_tc(w: &Word, k: usize) -> Result<TcReport, PowersError> {
    let l = w.len();
    let d = max_factor_exponent(w)?.exponent;
    if k < 1 {
        return Err(PowersError::HypothesisUnmet(Hypothesis::KPositive));
    }
    if 2 * k > l {
        return Err(PowersError::HypothesisUnmet(Hypothesis::KAtMostHalfLength));
    }
    // l > k * num/den  <=>  l*den > k*num
    if (l as u128) * u128::from(d.den) <= (k as u128) * u128::from(d.num) {
        return Err(PowersError::HypothesisUnmet(Hypothesis::LengthExceedsKd));
    }
    let profile = complexity_profile(w);
    let (lemma1, lemma2, lemma3) = lemma_flags(&profile.counts, l, k);
    let bound = tc_bound(l, k);
    Ok(TcReport {
        l,
        k,
        d,
        lemma1_ok: Some(lemma1),
        lemma2_ok: Some(lemma2),
        lemma3_ok: Some(lemma3),
        theorem_ok: profile.total >= bound,
        c: profile.total,
        bound,
    })
}

/// Integer-`d` variant, which drops the `k <= l/2` hypothesis.
pub fn verify_tc_integer(w: &Word, k: usize, d: u64) -> Result<TcReport, PowersError> {
    let l = w.len();
    if d < 1 {
        return Err(PowersError::HypothesisUnmet(Hypothesis::DPositive));
    }
    if k < 1 {
        return Err(PowersError::HypothesisUnmet(Hypothesis::KPositive));
    }
    if (l as u128) <= (k as u128) * u128::from(d) {
        return Err(PowersError::HypothesisUnmet(Hypothesis::LengthExceedsKd));
    }
    if !avoids(w, Ratio::from_integer(d), true)? {
        return Err(PowersError::HypothesisUnmet(Hypothesis::AvoidsDPlus));
    }
    let profile = complexity_profile(w);
    let (lemma1, lemma2, lemma3) = if 2 * k <= l {
        let (a, b, c) = lemma_flags(&profile.counts, l, k);
        (Some(a), Some(b), Some(c))
    } else {
        (None, None, None)
    };
    let bound = tc_bound(l, k);
    Ok(TcReport {
        l,
        k,
        d: Exponent::new(d, 1),
        lemma1_ok: lemma1,
        lemma2_ok: lemma2,
        lemma3_ok: lemma3,
        theorem_ok: profile.total >= bound,
        c: profile.total,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, Alphabet};

    fn w(s: &str) -> Word {
        parse_word(s, &Alphabet::standard(26)).unwrap()
    }

    #[test]
    fn border_array_known_values() {
        let s = w("aababbabbbabbaabaaa");
        assert_eq!(
            border_array(&s),
            vec![0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 2, 3, 4, 2, 2]
        );
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(minimal_period(&w("abcabca")).unwrap(), 3);
        assert_eq!(minimal_period(&w("aaaa")).unwrap(), 1);
        assert_eq!(minimal_period(&w("abcd")).unwrap(), 4);
        assert_eq!(minimal_period(&Word::empty()), Err(PowersError::EmptyWord));
    }

    #[test]
    fn exponent_ordering_is_by_value() {
        assert_eq!(Exponent::new(9, 3), Exponent::new(3, 1));
        assert!(Exponent::new(8, 3) < Exponent::new(3, 1));
        assert_eq!(Exponent::new(6, 3).to_string(), "2/1");
    }

    #[test]
    fn max_exponent_examples() {
        let m = max_factor_exponent(&w("abcdbcdef")).unwrap();
        assert_eq!(m.exponent, Exponent::new(2, 1));
        assert_eq!(m.witness, 1..7);
        assert_eq!(m.exponent.num, 6);
        assert_eq!(m.exponent.den, 3);

        let m = max_factor_exponent(&w("abcdefg")).unwrap();
        assert_eq!(m.exponent, Exponent::new(1, 1));
        assert_eq!(m.witness, 0..1);

        // (abb)^3 at the front ties with bbb at the back; leftmost wins
        let m = max_factor_exponent(&w("abbabbabbb")).unwrap();
        assert_eq!(m.exponent, Exponent::new(3, 1));
        assert_eq!(m.witness, 0..9);
    }

    #[test]
    fn avoidance_examples() {
        let word = w("abcdbcdef");
        assert!(avoids(&word, Ratio::from_integer(2), true).unwrap());
        assert!(!avoids(&word, Ratio::from_integer(2), false).unwrap());
        assert!(avoids(&w("ab"), Ratio::from_integer(1), true).unwrap());
        assert_eq!(
            avoids(&word, Ratio::new(1, 2), true),
            Err(PowersError::InvalidExponent(Ratio::new(1, 2)))
        );
    }

    #[test]
    fn verify_tc_worked_example() {
        let r = verify_tc(&w("abbabbabbb"), 3).unwrap();
        assert_eq!(r.c, 32);
        assert_eq!(r.bound, 32);
        assert!(r.theorem_ok);
        assert!(r.all_ok());
        assert_eq!(r.d, Exponent::new(3, 1));
    }

    #[test]
    fn verify_tc_distinct_letters() {
        let r = verify_tc(&w("abcdefgh"), 4).unwrap();
        assert_eq!(r.c, 37);
        assert_eq!(r.bound, 25);
        assert!(r.all_ok());
    }

    #[test]
    fn verify_tc_hypotheses() {
        let word = w("abbabbabbb");
        assert_eq!(
            verify_tc(&word, 0),
            Err(PowersError::HypothesisUnmet(Hypothesis::KPositive))
        );
        assert_eq!(
            verify_tc(&word, 6),
            Err(PowersError::HypothesisUnmet(Hypothesis::KAtMostHalfLength))
        );
        // d = 3, k = 4: 10 > 12 fails
        assert_eq!(
            verify_tc(&word, 4),
            Err(PowersError::HypothesisUnmet(Hypothesis::LengthExceedsKd))
        );
    }

    #[test]
    fn verify_tc_integer_examples() {
        let r = verify_tc_integer(&w("abcdefgh"), 7, 1).unwrap();
        assert_eq!((r.c, r.bound), (37, 16));
        assert!(r.theorem_ok);
        assert_eq!(r.lemma1_ok, None);

        let r = verify_tc_integer(&w("abbabbabbb"), 3, 3).unwrap();
        assert_eq!((r.c, r.bound), (32, 32));
        assert!(r.all_ok());

        assert_eq!(
            verify_tc_integer(&w("abbabbabbb"), 3, 2),
            Err(PowersError::HypothesisUnmet(Hypothesis::AvoidsDPlus))
        );
        assert_eq!(
            verify_tc_integer(&w("abc"), 1, 0),
            Err(PowersError::HypothesisUnmet(Hypothesis::DPositive))
        );
    }
}
