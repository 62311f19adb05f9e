use std::fmt;

use super::{LinalgError, PrimeField};

/// Dense `n x n` matrix over `GF(p)`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    field: PrimeField,
    n: usize,
    entries: Vec<u64>,
}

impl FMatrix {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        FMatrix {
            field,
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: PrimeField, n: usize, lambda: u64) -> Self {
        let mut m = Self::zero(field, n);
        let lambda = lambda % field.modulus();
        for i in 0..n {
            m.entries[i * n + i] = lambda;
        }
        m
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(field: PrimeField, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(field, n);
        m.entries[i * n + j] = 1;
        m
    }

    /// Builds from row-major integers, reducing every entry mod `p`.
    pub fn from_row_major(field: PrimeField, n: usize, data: &[i64]) -> Result<Self, LinalgError> {
        if data.len() != n * n {
            return Err(LinalgError::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(FMatrix {
            field,
            n,
            entries: data.iter().map(|&x| field.reduce(x)).collect(),
        })
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let flat: Vec<i64> = rows
            .iter()
            .map(|r| {
                if r.len() == n {
                    Ok(r.iter().copied())
                } else {
                    Err(LinalgError::DimensionMismatch {
                        expected: n,
                        got: r.len(),
                    })
                }
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        Self::from_row_major(field, n, &flat)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    /// Row-major vectorization.
    pub fn as_vector(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    fn check_compatible(&self, other: &FMatrix) {
        assert_eq!(self.field, other.field, "matrices over different fields");
        assert_eq!(self.n, other.n, "matrices of different sizes");
    }

    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        self.check_compatible(other);
        let n = self.n;
        let p = self.field.modulus();
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &other.entries[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = (*d + a * b) % p;
                }
            }
        }
        FMatrix {
            field: self.field,
            n,
            entries: out,
        }
    }

    pub fn add(&self, other: &FMatrix) -> FMatrix {
        self.check_compatible(other);
        let f = self.field;
        FMatrix {
            field: f,
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> FMatrix {
        let f = self.field;
        let c = c % f.modulus();
        FMatrix {
            field: f,
            n: self.n,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self + lambda * I`
    pub fn shift(&self, lambda: u64) -> FMatrix {
        self.add(&FMatrix::scalar(self.field, self.n, lambda))
    }

    pub fn pow(&self, mut exp: u64) -> FMatrix {
        let mut acc = FMatrix::identity(self.field, self.n);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Product of the generators indexed by `word`, left to right; the
    /// empty word gives the identity.
    pub fn word_product(gens: &[FMatrix], word: &[usize]) -> Option<FMatrix> {
        let first = gens.first()?;
        let mut acc = FMatrix::identity(first.field, first.n);
        for &i in word {
            acc = acc.mul(gens.get(i)?);
        }
        Some(acc)
    }
}

impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn unit_products() {
        let f = gf(5);
        let e12 = FMatrix::unit(f, 2, 0, 1);
        let e21 = FMatrix::unit(f, 2, 1, 0);
        assert_eq!(e12.mul(&e21), FMatrix::unit(f, 2, 0, 0));
        assert_eq!(e21.mul(&e12), FMatrix::unit(f, 2, 1, 1));
        assert!(e12.mul(&e12).is_zero());
    }

    #[test]
    fn entries_reduced_on_load() {
        let f = gf(5);
        let m = FMatrix::from_row_major(f, 2, &[7, -1, 5, 0]).unwrap();
        assert_eq!(m.as_vector(), &[2, 4, 0, 0]);
        assert_eq!(
            FMatrix::from_row_major(f, 2, &[1, 2, 3]),
            Err(LinalgError::DimensionMismatch {
                expected: 4,
                got: 3
            })
        );
        let r = FMatrix::from_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(r.get(1, 0), 3);
        assert!(FMatrix::from_rows(f, &[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = gf(7);
        let m = FMatrix::from_row_major(f, 3, &[1, 2, 3, 0, 4, 5, 6, 0, 1]).unwrap();
        let mut acc = FMatrix::identity(f, 3);
        for e in 0..6 {
            assert_eq!(m.pow(e), acc);
            acc = acc.mul(&m);
        }
    }

    #[test]
    fn word_product_order() {
        let f = gf(5);
        let gens = [FMatrix::unit(f, 2, 0, 1), FMatrix::unit(f, 2, 1, 0)];
        assert_eq!(
            FMatrix::word_product(&gens, &[0, 1]).unwrap(),
            FMatrix::unit(f, 2, 0, 0)
        );
        assert_eq!(
            FMatrix::word_product(&gens, &[]).unwrap(),
            FMatrix::identity(f, 2)
        );
        assert!(FMatrix::word_product(&gens, &[2]).is_none());
    }
}
