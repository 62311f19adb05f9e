use serde::{Deserialize, Serialize};

use super::LinalgError;

/// The prime field `GF(p)` with `2 <= p < 2^31`, so products of two
/// residues fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces any signed integer into `[0, p)`.
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, x: u64) -> Result<u64, LinalgError> {
        if x.is_multiple_of(self.p) {
            return Err(LinalgError::DivisionByZero(self.p));
        }
        Ok(self.pow(x, self.p - 2))
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = LinalgError;

    fn try_from(p: u64) -> Result<Self, Self::Error> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes() {
        for n in [0, 1, 4, 9, 15, 1 << 31] {
            assert_eq!(PrimeField::new(n), Err(LinalgError::NotPrime(n)));
        }
        assert!(PrimeField::new(2147483647).is_ok());
    }

    #[test]
    fn inverse_examples() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert_eq!(f5.inv(1).unwrap(), 1);
        assert_eq!(f7.inv(4).unwrap(), 2);
        assert_eq!(f7.inv(0), Err(LinalgError::DivisionByZero(7)));
    }

    #[test]
    fn inverse_of_every_residue() {
        let f = PrimeField::new(101).unwrap();
        for x in 1..101 {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
    }

    #[test]
    fn reduce_handles_negatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.reduce(15), 1);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.neg(3), 4);
    }

    #[test]
    fn large_prime_products_do_not_overflow() {
        let f = PrimeField::new(2147483647).unwrap();
        let a = f.modulus() - 1;
        assert_eq!(f.mul(a, a), 1);
    }
}
