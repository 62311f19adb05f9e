use super::{FMatrix, LinalgError, PrimeField};

/// Reduced row-echelon basis of a subspace of `GF(p)^ambient_dim`.
///
/// Every row has a leading 1 at its pivot column and zeros at every other
/// row's pivot column; rows are kept sorted by pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    field: PrimeField,
    ambient_dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(field: PrimeField, ambient_dim: usize) -> Self {
        SpanBasis {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Empty span sized for `n x n` matrices.
    pub fn for_matrices(field: PrimeField, n: usize) -> Self {
        Self::new(field, n * n)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, len: usize) -> Result<(), LinalgError> {
        if len != self.ambient_dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient_dim,
                got: len,
            });
        }
        Ok(())
    }

    fn check_matrix(&self, m: &FMatrix) -> Result<(), LinalgError> {
        if m.field() != self.field {
            return Err(LinalgError::FieldMismatch {
                expected: self.field.modulus(),
                got: m.field().modulus(),
            });
        }
        self.check_len(m.n() * m.n())
    }

    /// Subtracts basis multiples so `v` is zero at every pivot column.
    fn reduce_in_place(&self, v: &mut [u64]) {
        let f = self.field;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let factor = v[c];
            if factor == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row).skip(c) {
                *x = f.sub(*x, f.mul(factor, r));
            }
        }
    }

    pub fn contains_vector(&self, v: &[u64]) -> Result<bool, LinalgError> {
        self.check_len(v.len())?;
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        Ok(v.iter().all(|&x| x == 0))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert_vector(&mut self, v: &[u64]) -> Result<bool, LinalgError> {
        self.check_len(v.len())?;
        let f = self.field;
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        let Some(pivot) = v.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        let inv = f.inv(v[pivot])?;
        for x in v.iter_mut().skip(pivot) {
            *x = f.mul(*x, inv);
        }
        for row in &mut self.rows {
            let factor = row[pivot];
            if factor == 0 {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v).skip(pivot) {
                *x = f.sub(*x, f.mul(factor, r));
            }
        }
        let at = self.pivots.partition_point(|&c| c < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        Ok(true)
    }

    /// Inserts the vectorized matrix; returns whether the dimension grew.
    pub fn insert(&mut self, m: &FMatrix) -> Result<bool, LinalgError> {
        self.check_matrix(m)?;
        self.insert_vector(m.as_vector())
    }

    pub fn contains(&self, m: &FMatrix) -> Result<bool, LinalgError> {
        self.check_matrix(m)?;
        self.contains_vector(m.as_vector())
    }
}
