//! Closed-form upper bounds on the length of a finite-dimensional algebra
//! and exact comparisons among them.
//!
//! `d` is the algebra dimension, `m` the largest degree of a minimal
//! polynomial, `n` the matrix size for the `M_n` specific bound. All values
//! are exact rationals; the one bound containing a square root is compared
//! by isolating the radical and squaring in integer arithmetic.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid inputs: {0}")]
    InvalidInputs(String),
    #[error("bound invariant violated: {0}")]
    InvariantViolated(String),
}

fn check_dm(d: u64, m: u64) -> Result<(), BoundsError> {
    if m < 2 {
        return Err(BoundsError::InvalidInputs(format!("need m >= 2, got {m}")));
    }
    if d < m {
        return Err(BoundsError::InvalidInputs(format!(
            "need d >= m, got d = {d}, m = {m}"
        )));
    }
    Ok(())
}

fn int(x: u64) -> i64 {
    i64::try_from(x).expect("bound input exceeds i64")
}

/// `ceil((n^2 + 2) / 3)`
pub fn paz_bound(n: u64) -> u64 {
    (n * n + 2).div_ceil(3)
}

/// `d - 1`
pub fn trivial_bound(d: u64) -> u64 {
    d.saturating_sub(1)
}

/// `max(m - 1, d / 2)`
pub fn kh_bound(d: u64, m: u64) -> Result<Rational, BoundsError> {
    if m < 2 {
        return Err(BoundsError::InvalidInputs(format!("need m >= 2, got {m}")));
    }
    Ok(Rational::from_integer(int(m) - 1).max(Rational::new(int(d), 2)))
}

/// `max(k(m-1), d/(k+1) + k - 1)`
pub fn main_bound(d: u64, m: u64, k: u64) -> Result<Rational, BoundsError> {
    check_dm(d, m)?;
    let (d, m, k) = (int(d), int(m), int(k));
    let first = Rational::from_integer(k * (m - 1));
    let second = Rational::new(d, k + 1) + Rational::from_integer(k - 1);
    Ok(first.max(second))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BestMain {
    pub k_star: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub value: Rational,
    /// floor of `value`; lengths are integers
    pub integer_value: i64,
}

/// Largest `k` examined by [`best_main_bound`]: `ceil(sqrt d) + m`.
pub fn k_search_cap(d: u64, m: u64) -> u64 {
    ceil_sqrt(d) + m
}

/// Minimizes the main bound over `k` in `[0, ceil(sqrt d) + m]`; ties go to
/// the smallest `k`.
pub fn best_main_bound(d: u64, m: u64) -> Result<BestMain, BoundsError> {
    check_dm(d, m)?;
    // d/(k+1) + k - 1 is non-decreasing once (k+1)^2 >= d and k(m-1) always
    // is, so nothing past k = ceil(sqrt d) can lower the maximum.
    let cap = k_search_cap(d, m);
    let mut best: Option<(u64, Rational)> = None;
    for k in 0..=cap {
        let v = main_bound(d, m, k)?;
        if best.is_none_or(|(_, b)| v < b) {
            best = Some((k, v));
        }
    }
    let (k_star, value) = best.expect("k range is non-empty");
    Ok(BestMain {
        k_star,
        value,
        integer_value: value.floor().to_integer(),
    })
}

pub fn isqrt(x: u64) -> u64 {
    x.isqrt()
}

pub fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// Compares `r` with `m * sqrt(2d/(m-1) + 1/4) + m/2 - 2` exactly.
pub fn compare_with_pappacena(r: Rational, d: u64, m: u64) -> Result<Ordering, BoundsError> {
    check_dm(d, m)?;
    // lhs = r - m/2 + 2 against m * sqrt(X), X = (8d + m - 1) / (4(m - 1))
    let lhs = r - Rational::new(int(m), 2) + Rational::from_integer(2);
    let (d, m) = (i128::from(int(d)), i128::from(int(m)));
    // the radical is strictly positive
    if lhs.is_negative() || lhs.is_zero() {
        return Ok(Ordering::Less);
    }
    let a = i128::from(*lhs.numer());
    let b = i128::from(*lhs.denom());
    // lhs^2 vs m^2 X  <=>  4(m-1) a^2  vs  m^2 (8d + m - 1) b^2
    let overflow = || BoundsError::InvalidInputs("operands too large for exact comparison".into());
    let left = a
        .checked_mul(a)
        .and_then(|x| x.checked_mul(4 * (m - 1)))
        .ok_or_else(overflow)?;
    let right = (m * m)
        .checked_mul(8 * d + m - 1)
        .and_then(|x| x.checked_mul(b * b))
        .ok_or_else(overflow)?;
    Ok(left.cmp(&right))
}

/// Floating-point value of the Pappacena expression, for display only.
pub fn pappacena_value(d: u64, m: u64) -> f64 {
    let (d, m) = (d as f64, m as f64);
    m * (2.0 * d / (m - 1.0) + 0.25).sqrt() + m / 2.0 - 2.0
}

/// Exact floor of the Pappacena expression.
pub fn pappacena_floor(d: u64, m: u64) -> Result<i64, BoundsError> {
    check_dm(d, m)?;
    let mut z = pappacena_value(d, m).floor() as i64;
    while compare_with_pappacena(Rational::from_integer(z), d, m)? == Ordering::Greater {
        z -= 1;
    }
    while compare_with_pappacena(Rational::from_integer(z + 1), d, m)? != Ordering::Greater {
        z += 1;
    }
    Ok(z)
}

/// True iff the main bound at `k = floor(sqrt(d/m))` is strictly below the
/// Pappacena expression.
pub fn pappacena_exceeds_main(d: u64, m: u64) -> Result<bool, BoundsError> {
    check_dm(d, m)?;
    let k = isqrt(d / m);
    let v = main_bound(d, m, k)?;
    Ok(compare_with_pappacena(v, d, m)? == Ordering::Less)
}

pub fn ser_ratio<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

fn ser_ratio_pairs<S: Serializer>(v: &[(u64, Rational)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (k, r) in v {
        seq.serialize_element(&(k, format!("{}/{}", r.numer(), r.denom())))?;
    }
    seq.end()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub d: u64,
    pub m: u64,
    pub n: Option<u64>,
    pub trivial: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub kh: Rational,
    pub paz: Option<u64>,
    pub pappacena: f64,
    pub pappacena_floor: i64,
    pub pappacena_exceeds_main: bool,
    /// main bound for every `k` in the search range
    #[serde(serialize_with = "ser_ratio_pairs")]
    pub main_at_k: Vec<(u64, Rational)>,
    pub best_main: BestMain,
}

pub fn bound_table(d: u64, m: u64, n: Option<u64>) -> Result<BoundReport, BoundsError> {
    check_dm(d, m)?;
    if let Some(n) = n {
        if n < 1 {
            return Err(BoundsError::InvalidInputs("need n >= 1".into()));
        }
    }
    let best = best_main_bound(d, m)?;
    let cap = k_search_cap(d, m);
    let main_at_k = (0..=cap)
        .map(|k| main_bound(d, m, k).map(|v| (k, v)))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some((k, v)) = main_at_k.iter().find(|(_, v)| *v < best.value) {
        return Err(BoundsError::InvariantViolated(format!(
            "main bound at k = {k} is {v}, below the reported minimum {}",
            best.value
        )));
    }
    let trivial = trivial_bound(d);
    if best.value > Rational::from_integer(int(trivial)) {
        return Err(BoundsError::InvariantViolated(format!(
            "best main bound {} exceeds the trivial bound {trivial}",
            best.value
        )));
    }
    Ok(BoundReport {
        d,
        m,
        n,
        trivial,
        kh: kh_bound(d, m)?,
        paz: n.map(paz_bound),
        pappacena: pappacena_value(d, m),
        pappacena_floor: pappacena_floor(d, m)?,
        pappacena_exceeds_main: pappacena_exceeds_main(d, m)?,
        main_at_k,
        best_main: best,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridFailure {
    pub d: u64,
    pub m: u64,
    pub reason: String,
}

/// Dominance sweep over `m` in `[2, m_max]`, `d` in `[m, d_max]`, plus the
/// Paz identity for `n` in `[2, n_max]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub m_max: u64,
    pub d_max: u64,
    pub n_max: u64,
    pub cells: u64,
    pub failures: Vec<GridFailure>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// At every cell: `k = 0` gives the trivial bound, `k = 1` gives the
/// bound `max(m-1, d/2)`, and the main bound at
/// `k = floor(sqrt(d/m))` lies strictly below the Pappacena expression.
/// For each `n`: `floor(main_bound(n^2, n, 2))` equals the Paz bound.
pub fn dominance_grid(m_max: u64, d_max: u64, n_max: u64) -> Result<GridReport, BoundsError> {
    let mut failures = Vec::new();
    let mut cells = 0;
    for m in 2..=m_max {
        for d in m..=d_max {
            cells += 1;
            let mut fail = |reason: String| failures.push(GridFailure { d, m, reason });
            if main_bound(d, m, 0)? != Rational::from_integer(int(trivial_bound(d))) {
                fail("k = 0 differs from the trivial bound".into());
            }
            if main_bound(d, m, 1)? != kh_bound(d, m)? {
                fail("k = 1 differs from max(m-1, d/2)".into());
            }
            if !pappacena_exceeds_main(d, m)? {
                fail("Pappacena expression does not exceed the main bound".into());
            }
        }
    }
    for n in 2..=n_max {
        let v = main_bound(n * n, n, 2)?.floor().to_integer();
        if v != int(paz_bound(n)) {
            failures.push(GridFailure {
                d: n * n,
                m: n,
                reason: format!("floor of main bound at k = 2 is {v}, Paz bound is {}", paz_bound(n)),
            });
        }
    }
    Ok(GridReport {
        m_max,
        d_max,
        n_max,
        cells,
        failures,
    })
}

/// Rational as `f64`, for tables.
pub fn ratio_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn paz_examples() {
        assert_eq!(paz_bound(2), 2);
        assert_eq!(paz_bound(3), 4);
        assert_eq!(paz_bound(10), 34);
        assert_eq!(paz_bound(1), 1);
    }

    #[test]
    fn main_bound_examples() {
        assert_eq!(main_bound(4, 2, 2).unwrap(), q(7, 3));
        assert_eq!(main_bound(9, 3, 2).unwrap(), q(4, 1));
        assert_eq!(main_bound(17, 3, 0).unwrap(), q(16, 1));
        assert!(main_bound(4, 1, 2).is_err());
        assert!(main_bound(2, 3, 2).is_err());
    }

    #[test]
    fn best_main_examples() {
        let b = best_main_bound(9, 3).unwrap();
        assert_eq!(b.value, q(4, 1));
        assert_eq!(b.k_star, 2);
        assert_eq!(best_main_bound(4, 2).unwrap().integer_value, 2);
    }

    #[test]
    fn kh_examples() {
        assert_eq!(kh_bound(4, 2).unwrap(), q(2, 1));
        assert_eq!(kh_bound(2, 2).unwrap(), q(1, 1));
        assert_eq!(kh_bound(3, 2).unwrap(), q(3, 2));
    }

    #[test]
    fn pappacena_comparison_signs() {
        // d = 4, m = 2: 2*sqrt(8 + 1/4) - 1 = sqrt(33) - 1 ~ 4.745
        let d = 4;
        let m = 2;
        assert_eq!(compare_with_pappacena(q(4, 1), d, m).unwrap(), Ordering::Less);
        assert_eq!(compare_with_pappacena(q(19, 4), d, m).unwrap(), Ordering::Greater);
        assert_eq!(compare_with_pappacena(q(5, 1), d, m).unwrap(), Ordering::Greater);
        assert_eq!(compare_with_pappacena(q(-5, 1), d, m).unwrap(), Ordering::Less);
        assert_eq!(pappacena_floor(d, m).unwrap(), 4);
    }

    #[test]
    fn pappacena_exact_tie() {
        // m = 2, 8d + 1 = 81 at d = 10: 2*sqrt(81/4) - 1 = 8 exactly
        assert_eq!(compare_with_pappacena(q(8, 1), 10, 2).unwrap(), Ordering::Equal);
        assert_eq!(pappacena_floor(10, 2).unwrap(), 8);
    }

    #[test]
    fn dominance_examples() {
        assert!(pappacena_exceeds_main(9, 3).unwrap());
        assert!(pappacena_exceeds_main(4, 2).unwrap());
    }

    #[test]
    fn table_examples() {
        let t = bound_table(4, 2, Some(2)).unwrap();
        assert_eq!(t.trivial, 3);
        assert_eq!(t.kh, q(2, 1));
        assert_eq!(t.paz, Some(2));
        assert_eq!(t.best_main.integer_value, 2);

        let t = bound_table(9, 3, Some(3)).unwrap();
        assert_eq!(t.paz, Some(4));
        assert_eq!(t.best_main.integer_value, 4);

        let t = bound_table(16, 4, Some(4)).unwrap();
        assert_eq!(t.paz, Some(6));
        assert!(t.best_main.integer_value <= 6);
    }

    #[test]
    fn small_grid_passes() {
        let g = dominance_grid(4, 40, 6).unwrap();
        assert_eq!(g.cells, 39 + 38 + 37);
        assert!(g.passed(), "{:?}", g.failures);
    }
}
