use serde::{Deserialize, Serialize};

use super::{FMatrix, LinalgError, PrimeField};

/// One matrix in a matrix file: a flat row-major list of `n^2` integers, or
/// a list of `n` rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixData {
    Flat(Vec<i64>),
    Rows(Vec<Vec<i64>>),
}

/// `{"p": prime, "n": dim, "matrices": [[row-major ints], ...]}`; entries
/// are reduced mod `p` on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub p: u64,
    pub n: usize,
    pub matrices: Vec<MatrixData>,
}

impl MatrixFile {
    pub fn from_json(text: &str) -> Result<Self, LinalgError> {
        serde_json::from_str(text).map_err(|e| LinalgError::BadData(e.to_string()))
    }

    pub fn from_matrices(field: PrimeField, n: usize, mats: &[FMatrix]) -> Self {
        MatrixFile {
            p: field.modulus(),
            n,
            matrices: mats
                .iter()
                .map(|m| MatrixData::Flat(m.as_vector().iter().map(|&x| x as i64).collect()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix file serializes")
    }

    pub fn load(&self) -> Result<(PrimeField, Vec<FMatrix>), LinalgError> {
        let field = PrimeField::new(self.p)?;
        let mats = self
            .matrices
            .iter()
            .map(|m| {
                let mat = match m {
                    MatrixData::Flat(v) => FMatrix::from_row_major(field, self.n, v)?,
                    MatrixData::Rows(rows) => FMatrix::from_rows(field, rows)?,
                };
                if mat.n() != self.n {
                    return Err(LinalgError::DimensionMismatch {
                        expected: self.n,
                        got: mat.n(),
                    });
                }
                Ok(mat)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((field, mats))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_flat_and_nested() {
        let f = MatrixFile::from_json(
            r#"{"p": 5, "n": 2, "matrices": [[0, 1, 0, 0], [[0, 0], [6, 0]]]}"#,
        )
        .unwrap();
        let (field, mats) = f.load().unwrap();
        assert_eq!(field.modulus(), 5);
        assert_eq!(mats[0], FMatrix::unit(field, 2, 0, 1));
        assert_eq!(mats[1], FMatrix::unit(field, 2, 1, 0));
    }

    #[test]
    fn rejects_bad_input() {
        let f = MatrixFile::from_json(r#"{"p": 6, "n": 1, "matrices": [[1]]}"#).unwrap();
        assert_eq!(f.load(), Err(LinalgError::NotPrime(6)));
        let f = MatrixFile::from_json(r#"{"p": 5, "n": 2, "matrices": [[1, 2, 3]]}"#).unwrap();
        assert!(f.load().is_err());
        let f = MatrixFile::from_json(r#"{"p": 5, "n": 3, "matrices": [[[1, 0], [0, 1]]]}"#)
            .unwrap();
        assert!(f.load().is_err());
        assert!(MatrixFile::from_json("{").is_err());
    }

    #[test]
    fn json_round_trip() {
        let field = PrimeField::new(7).unwrap();
        let mats = vec![FMatrix::identity(field, 2), FMatrix::unit(field, 2, 1, 0)];
        let file = MatrixFile::from_matrices(field, 2, &mats);
        let back = MatrixFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back.load().unwrap().1, mats);
    }
}
