//! Finite words, alphabets, fractional powers and subword complexity.
//!
//! Letters are plain `u32` ids bound to an [`Alphabet`]; the alphabet order
//! is the input order and is also the letter order used by shortlex
//! comparisons elsewhere in the crate.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::SuffixAutomaton;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate alphabet symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("token at position {0} is not in the alphabet")]
    UnknownToken(usize),
    #[error("exponent denominator {den} does not match base length {base_len}")]
    DenominatorMismatch { den: usize, base_len: usize },
    #[error("exponent denominator must be at least 1")]
    ZeroDenominator,
    #[error("factor length {n} exceeds word length {len}")]
    LengthOutOfRange { n: usize, len: usize },
    #[error("factor must be non-empty")]
    EmptyFactor,
}

/// Splits word text into tokens: comma-separated when the text contains a
/// comma, otherwise one token per character.
pub fn tokenize(text: &str) -> Vec<&str> {
    if text.is_empty() {
        return Vec::new();
    }
    if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.char_indices()
            .map(|(i, c)| &text[i..i + c.len_utf8()])
            .collect()
    }
}

/// Ordered set of distinct symbols; position defines the letter id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Vec::new();
        let mut index = HashMap::new();
        for s in symbols {
            let s: String = s.into();
            if index.contains_key(&s) {
                return Err(WordError::DuplicateSymbol(s));
            }
            index.insert(s.clone(), out.len() as u32);
            out.push(s);
        }
        if out.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        Ok(Alphabet {
            symbols: out,
            index,
        })
    }

    /// Parses an alphabet declaration using the same token rules as words
    /// (`"abc"` or `"x1,x2,x3"`).
    pub fn parse(spec: &str) -> Result<Self, WordError> {
        Alphabet::new(tokenize(spec))
    }

    /// Alphabet of the tokens of `text` in first-appearance order.
    pub fn infer(text: &str) -> Result<Self, WordError> {
        let mut seen = Vec::new();
        for tok in tokenize(text) {
            if !seen.contains(&tok) {
                seen.push(tok);
            }
        }
        Alphabet::new(seen)
    }

    /// `a, b, c, ...` for `k <= 26`, otherwise `x0, x1, ...`.
    pub fn standard(k: usize) -> Self {
        if k <= 26 {
            Alphabet::new((0..k).map(|i| ((b'a' + i as u8) as char).to_string()))
        } else {
            Alphabet::new((0..k).map(|i| format!("x{i}")))
        }
        .expect("standard alphabet is non-empty and distinct")
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, id: u32) -> Option<&str> {
        self.symbols.get(id as usize).map(String::as_str)
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.index.get(token).copied()
    }

    /// Renders a word; symbols are concatenated when they are all single
    /// characters and comma-joined otherwise.
    pub fn render(&self, w: &Word) -> String {
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let parts = w.iter().map(|&c| self.symbol(c).unwrap_or("?"));
        if single {
            parts.collect()
        } else {
            parts.collect::<Vec<_>>().join(",")
        }
    }
}

/// A finite word, stored as letter ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    /// Number of distinct letters occurring in the word.
    pub fn distinct_letters(&self) -> usize {
        self.0.iter().collect::<BTreeSet<_>>().len()
    }
}

impl Deref for Word {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for Word {
    fn from(letters: Vec<u32>) -> Self {
        Word(letters)
    }
}

impl From<&[u32]> for Word {
    fn from(letters: &[u32]) -> Self {
        Word(letters.to_vec())
    }
}

impl fmt::Display for Word {
    /// Letters `0..26` print as `a..z`; larger ids print as `<id>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for &c in &self.0 {
            if c < 26 {
                write!(f, "{}", (b'a' + c as u8) as char)?;
            } else {
                write!(f, "<{c}>")?;
            }
        }
        Ok(())
    }
}

pub fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, WordError> {
    tokenize(text)
        .into_iter()
        .enumerate()
        .map(|(pos, tok)| alphabet.id(tok).ok_or(WordError::UnknownToken(pos)))
        .collect::<Result<Vec<_>, _>>()
        .map(Word)
}

/// A power written as a fraction `num/den` where `den` is the base length.
///
/// Deliberately not reduced: `6/3` and `2/1` are different exponents, since
/// the denominator pins the base word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FracExponent {
    pub num: usize,
    pub den: usize,
}

impl FracExponent {
    pub fn new(num: usize, den: usize) -> Result<Self, WordError> {
        if den == 0 {
            return Err(WordError::ZeroDenominator);
        }
        Ok(FracExponent { num, den })
    }
}

impl fmt::Display for FracExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `base^(num/den)`: the length-`num` word with `result[i] = base[i mod den]`.
pub fn fractional_power(base: &Word, exp: FracExponent) -> Result<Word, WordError> {
    if exp.den == 0 {
        return Err(WordError::ZeroDenominator);
    }
    if exp.den != base.len() {
        return Err(WordError::DenominatorMismatch {
            den: exp.den,
            base_len: base.len(),
        });
    }
    Ok(Word(base.iter().copied().cycle().take(exp.num).collect()))
}

/// `f_W(n)` plus the total complexity `c(W)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub counts: Vec<usize>,
    pub total: u64,
}

impl ComplexityProfile {
    pub fn from_counts(counts: Vec<usize>) -> Self {
        let total = counts.iter().map(|&c| c as u64).sum();
        ComplexityProfile { counts, total }
    }

    /// Word length the profile was computed for.
    pub fn word_len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(1)
    }
}

pub fn complexity_profile(w: &Word) -> ComplexityProfile {
    ComplexityProfile::from_counts(SuffixAutomaton::build(w).factor_counts())
}

pub fn factor_count(w: &Word, n: usize) -> Result<usize, WordError> {
    if n > w.len() {
        return Err(WordError::LengthOutOfRange { n, len: w.len() });
    }
    Ok(complexity_profile(w).counts[n])
}

/// Total complexity `c(W)`, counting the empty factor.
pub fn count_distinct_factors(w: &Word) -> u64 {
    SuffixAutomaton::build(w).distinct_nonempty_factors() + 1
}

fn occurrences<'a>(w: &'a [u32], factor: &'a [u32]) -> impl Iterator<Item = usize> + 'a {
    w.windows(factor.len())
        .enumerate()
        .filter(move |(_, win)| *win == factor)
        .map(|(i, _)| i)
}

/// True iff `factor` occurs at two or more start positions.
pub fn is_repeated(w: &Word, factor: &Word) -> Result<bool, WordError> {
    if factor.is_empty() {
        return Err(WordError::EmptyFactor);
    }
    if factor.len() > w.len() {
        return Ok(false);
    }
    Ok(occurrences(w, factor).nth(1).is_some())
}

/// True iff two occurrences of `factor` are followed by distinct letters.
pub fn is_right_special(w: &Word, factor: &Word) -> Result<bool, WordError> {
    if factor.is_empty() {
        return Err(WordError::EmptyFactor);
    }
    if factor.len() >= w.len() {
        return Ok(false);
    }
    let mut first = None;
    for start in occurrences(w, factor) {
        let Some(&next) = w.get(start + factor.len()) else {
            continue;
        };
        match first {
            None => first = Some(next),
            Some(f) if f != next => return Ok(true),
            Some(_) => {}
        }
    }
    Ok(false)
}
