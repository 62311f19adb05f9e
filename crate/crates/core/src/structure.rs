//! `(q, p, t)` decompositions of finite words and the checks built on them.
//!
//! A word of length `l` decomposes as `prefix(q) · (w[q..q+p])^((l-q-t)/p) ·
//! suffix(t)`. Words with low subword complexity are exactly those with a
//! cheap decomposition; this module searches for the cheapest one and
//! exposes both sides of each equivalence so callers can look for
//! counterexamples instead of assuming there are none.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::powers::border_array;
use crate::word::{complexity_profile, FracExponent, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("decomposition length {dec_len} does not match word length {word_len}")]
    LengthMismatch { dec_len: usize, word_len: usize },
    #[error("invalid decomposition: q + t exceeds l or p is zero")]
    InvalidDecomposition,
    #[error("parameters out of range: {0}")]
    RangeViolation(String),
    #[error("complexity profile breaks the three-phase shape at n = {0}")]
    ShapeViolation(usize),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("word must be non-empty")]
    EmptyWord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QptDecomposition {
    pub q: usize,
    pub p: usize,
    pub t: usize,
    pub l: usize,
}

impl QptDecomposition {
    pub fn new(q: usize, p: usize, t: usize, l: usize) -> Result<Self, StructureError> {
        if p == 0 || q + t > l {
            return Err(StructureError::InvalidDecomposition);
        }
        Ok(QptDecomposition { q, p, t, l })
    }

    pub fn cost(&self) -> usize {
        self.q + self.p + self.t
    }

    /// `(l - q - t) / p`, unreduced.
    pub fn exponent(&self) -> FracExponent {
        FracExponent {
            num: self.l - self.q - self.t,
            den: self.p,
        }
    }
}

/// True iff `w[i] == w[i+p]` for every `i` in `[q, l-t-p)`; an empty range
/// passes, which admits exponents below one.
pub fn decompose_check(w: &Word, dec: &QptDecomposition) -> Result<bool, StructureError> {
    if dec.l != w.len() {
        return Err(StructureError::LengthMismatch {
            dec_len: dec.l,
            word_len: w.len(),
        });
    }
    if dec.p == 0 || dec.q + dec.t > dec.l {
        return Err(StructureError::InvalidDecomposition);
    }
    let end = (dec.l - dec.t).saturating_sub(dec.p);
    Ok((dec.q..end).all(|i| w[i] == w[i + dec.p]))
}

/// Cheapest decomposition; ties go to the smallest `q`, then the smallest `t`.
///
/// For fixed `(q, t)` the best `p` is the smallest period of the middle
/// segment, and one border array of `w[q..]` yields that period for every
/// `t` at once, so the search is `O(l^2)`.
pub fn minimal_qpt(w: &Word) -> Result<QptDecomposition, StructureError> {
    let l = w.len();
    if l == 0 {
        return Err(StructureError::EmptyWord);
    }
    let mut best = QptDecomposition { q: 0, p: l, t: 0, l };
    for q in 0..l {
        if q >= best.cost() {
            break;
        }
        let border = border_array(&w[q..]);
        for t in 0..l - q {
            if q + t >= best.cost() {
                break;
            }
            let middle = l - q - t;
            let p = middle - border[middle - 1];
            if q + p + t < best.cost() {
                best = QptDecomposition { q, p, t, l };
            }
        }
    }
    Ok(best)
}

/// Both sides of an "if and only if", evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equivalence {
    pub lhs: bool,
    pub rhs: bool,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `lhs = f(n) <= n`, `rhs = minimal cost <= n`, for `1 <= n <= l/2`.
pub fn mh_equivalence(w: &Word, n: usize) -> Result<Equivalence, StructureError> {
    let l = w.len();
    if n < 1 || 2 * n > l {
        return Err(StructureError::RangeViolation(format!(
            "need 1 <= n <= l/2, got n = {n}, l = {l}"
        )));
    }
    let f = complexity_profile(w).counts[n];
    let cost = minimal_qpt(w)?.cost();
    Ok(Equivalence {
        lhs: f <= n,
        rhs: cost <= n,
    })
}

/// `lhs = f(n) <= m`, `rhs = minimal cost <= m`, for `1 <= m <= n <= l-m`.
pub fn mh_general_equivalence(
    w: &Word,
    n: usize,
    m: usize,
) -> Result<Equivalence, StructureError> {
    let l = w.len();
    if m < 1 || m > n || n + m > l {
        return Err(StructureError::RangeViolation(format!(
            "need 1 <= m <= n <= l-m, got n = {n}, m = {m}, l = {l}"
        )));
    }
    let f = complexity_profile(w).counts[n];
    let cost = minimal_qpt(w)?.cost();
    Ok(Equivalence {
        lhs: f <= m,
        rhs: cost <= m,
    })
}

/// Three-phase description of a complexity profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileShape {
    /// least `n` with `f(n+1) <= f(n)`
    pub m_star: usize,
    /// `l - f(m_star) + 1`
    pub plateau_end: usize,
    /// `f(m_star)`
    pub peak: usize,
}

/// Computes the shape and checks that the profile increases strictly up to
/// `m_star`, stays flat up to `plateau_end`, then drops by one per step.
pub fn profile_shape(w: &Word) -> Result<ProfileShape, StructureError> {
    let l = w.len();
    if l == 0 {
        return Err(StructureError::EmptyWord);
    }
    let f = complexity_profile(w).counts;
    let m_star = (0..l)
        .find(|&n| f[n + 1] <= f[n])
        .expect("f(l) = 1 <= f(l-1), so a non-increase exists");
    let peak = f[m_star];
    if peak > l + 1 {
        return Err(StructureError::ShapeViolation(m_star));
    }
    let plateau_end = l + 1 - peak;
    if plateau_end < m_star {
        return Err(StructureError::ShapeViolation(m_star));
    }
    for n in 0..m_star {
        if f[n + 1] <= f[n] {
            return Err(StructureError::ShapeViolation(n + 1));
        }
    }
    if let Some(off) = f[m_star..=plateau_end].iter().position(|&x| x != peak) {
        return Err(StructureError::ShapeViolation(m_star + off));
    }
    for n in plateau_end..l {
        if f[n + 1] + 1 != f[n] {
            return Err(StructureError::ShapeViolation(n + 1));
        }
    }
    Ok(ProfileShape {
        m_star,
        plateau_end,
        peak,
    })
}

/// Given `n <= l/2` and `f(n) <= n`, reports whether `f(i) <= n` for every `i`.
pub fn corollary_max_profile(w: &Word, n: usize) -> Result<bool, StructureError> {
    let l = w.len();
    let profile = complexity_profile(w);
    if 2 * n > l || profile.counts[n] > n {
        return Err(StructureError::PreconditionUnmet(format!(
            "need n <= l/2 and f(n) <= n, got n = {n}, l = {l}"
        )));
    }
    Ok(profile.max_count() <= n)
}

/// Given `1 <= m <= n <= l-m` and `f(n) <= m`, reports whether `f(i) <= m`
/// for every `i`.
pub fn corollary_general_max_profile(
    w: &Word,
    n: usize,
    m: usize,
) -> Result<bool, StructureError> {
    let l = w.len();
    if m < 1 || m > n || n + m > l {
        return Err(StructureError::PreconditionUnmet(format!(
            "need 1 <= m <= n <= l-m, got n = {n}, m = {m}, l = {l}"
        )));
    }
    let profile = complexity_profile(w);
    if profile.counts[n] > m {
        return Err(StructureError::PreconditionUnmet(format!(
            "f({n}) = {} exceeds m = {m}",
            profile.counts[n]
        )));
    }
    Ok(profile.max_count() <= m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, Alphabet};

    fn w(s: &str) -> Word {
        parse_word(s, &Alphabet::standard(26)).unwrap()
    }

    fn dec(q: usize, p: usize, t: usize, l: usize) -> QptDecomposition {
        QptDecomposition::new(q, p, t, l).unwrap()
    }

    #[test]
    fn decompose_check_examples() {
        assert!(decompose_check(&w("abbabbabaa"), &dec(0, 3, 2, 10)).unwrap());
        assert!(decompose_check(&w("aaaa"), &dec(0, 1, 0, 4)).unwrap());
        assert!(!decompose_check(&w("abab"), &dec(0, 3, 0, 4)).unwrap());
        // empty comparison range
        assert!(decompose_check(&w("abcd"), &dec(1, 3, 1, 4)).unwrap());
        assert_eq!(
            decompose_check(&w("abc"), &dec(0, 1, 0, 4)),
            Err(StructureError::LengthMismatch {
                dec_len: 4,
                word_len: 3
            })
        );
        assert_eq!(
            QptDecomposition::new(3, 1, 2, 4),
            Err(StructureError::InvalidDecomposition)
        );
    }

    #[test]
    fn exponent_of_worked_example() {
        let d = dec(0, 3, 2, 10);
        assert_eq!(d.exponent(), FracExponent { num: 8, den: 3 });
        assert_eq!(d.cost(), 5);
    }

    #[test]
    fn minimal_qpt_examples() {
        assert_eq!(minimal_qpt(&w("abbabbabaa")).unwrap(), dec(0, 3, 2, 10));
        assert_eq!(minimal_qpt(&w("aaaa")).unwrap(), dec(0, 1, 0, 4));
        let d = minimal_qpt(&w("abcd")).unwrap();
        assert_eq!(d.cost(), 4);
        assert_eq!(d, dec(0, 4, 0, 4));
        assert_eq!(minimal_qpt(&Word::empty()), Err(StructureError::EmptyWord));
    }

    #[test]
    fn mh_equivalence_examples() {
        let r = mh_equivalence(&w("abbabbabaa"), 5).unwrap();
        assert_eq!((r.lhs, r.rhs), (true, true));
        let r = mh_equivalence(&w("aaaa"), 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (true, true));
        let r = mh_equivalence(&w("abcabc"), 2).unwrap();
        assert_eq!((r.lhs, r.rhs), (false, false));
        assert!(matches!(
            mh_equivalence(&w("abcd"), 3),
            Err(StructureError::RangeViolation(_))
        ));
        assert!(matches!(
            mh_equivalence(&w("abcd"), 0),
            Err(StructureError::RangeViolation(_))
        ));
    }

    #[test]
    fn mh_general_examples() {
        let r = mh_general_equivalence(&w("abbabbabaa"), 5, 5).unwrap();
        assert_eq!((r.lhs, r.rhs), (true, true));
        let r = mh_general_equivalence(&w("aaaaaa"), 3, 1).unwrap();
        assert_eq!((r.lhs, r.rhs), (true, true));
        assert!(matches!(
            mh_general_equivalence(&w("aaaaaa"), 2, 3),
            Err(StructureError::RangeViolation(_))
        ));
        assert!(matches!(
            mh_general_equivalence(&w("aaaaaa"), 5, 2),
            Err(StructureError::RangeViolation(_))
        ));
    }

    #[test]
    fn profile_shape_examples() {
        let s = profile_shape(&w("abbabbabbb")).unwrap();
        assert_eq!(
            s,
            ProfileShape {
                m_star: 3,
                plateau_end: 7,
                peak: 4
            }
        );
        let s = profile_shape(&w("aaaa")).unwrap();
        assert_eq!(
            s,
            ProfileShape {
                m_star: 0,
                plateau_end: 4,
                peak: 1
            }
        );
        let s = profile_shape(&w("a")).unwrap();
        assert_eq!(s.m_star, 0);
        assert_eq!(s.plateau_end, 1);
    }

    #[test]
    fn corollary_examples() {
        assert!(corollary_max_profile(&w("abbabbabaa"), 5).unwrap());
        assert!(corollary_max_profile(&w("aaaaaa"), 1).unwrap());
        assert!(matches!(
            corollary_max_profile(&w("abcdef"), 2),
            Err(StructureError::PreconditionUnmet(_))
        ));
        assert!(corollary_general_max_profile(&w("abbabbabaa"), 5, 5).unwrap());
        assert!(matches!(
            corollary_general_max_profile(&w("abcdef"), 3, 2),
            Err(StructureError::PreconditionUnmet(_))
        ));
    }
}
