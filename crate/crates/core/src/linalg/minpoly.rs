use super::{FMatrix, LinalgError, PrimeField};

/// Polynomial over `GF(p)`, coefficients from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= field.modulus();
        }
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Poly { field, coeffs }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval_matrix(&self, x: &FMatrix) -> FMatrix {
        let n = x.n();
        self.coeffs
            .iter()
            .rev()
            .fold(FMatrix::zero(self.field, n), |acc, &c| {
                acc.mul(x).shift(c)
            })
    }

    /// `g(t) = self(t + lambda)`.
    pub fn compose_shift(&self, lambda: u64) -> Poly {
        let f = self.field;
        let mut out = vec![0u64];
        for &c in self.coeffs.iter().rev() {
            // out <- out * (t + lambda) + c
            let mut next = vec![0u64; out.len() + 1];
            for (i, &a) in out.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], a);
                next[i] = f.add(next[i], f.mul(a, lambda));
            }
            next[0] = f.add(next[0], c);
            out = next;
        }
        Poly::new(f, out)
    }
}

/// Minimal polynomial of a matrix; always monic with degree at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPoly {
    pub poly: Poly,
}

impl MinPoly {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn coeffs(&self) -> &[u64] {
        self.poly.coeffs()
    }
}

/// Inserts `I, a, a^2, ...` into an echelon basis while tracking each row as
/// a combination of powers; the first power that reduces to zero yields the
/// monic dependence.
pub fn min_poly(a: &FMatrix) -> MinPoly {
    let f = a.field();
    let n = a.n();
    // (vector, pivot, combination of powers)
    let mut rows: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
    let mut power = FMatrix::identity(f, n);
    for k in 0..=n * n {
        let mut v = power.as_vector().to_vec();
        let mut combo = vec![0u64; k + 1];
        combo[k] = 1;
        for (row, pivot, rc) in &rows {
            let factor = v[*pivot];
            if factor == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(factor, r));
            }
            for (x, &r) in combo.iter_mut().zip(rc) {
                *x = f.sub(*x, f.mul(factor, r));
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => {
                return MinPoly {
                    poly: Poly::new(f, combo),
                }
            }
            Some(pivot) => {
                let inv = f.inv(v[pivot]).expect("pivot is non-zero");
                v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                combo.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                rows.push((v, pivot, combo));
            }
        }
        power = power.mul(a);
    }
    unreachable!("n^2 + 1 powers of an n x n matrix are always dependent")
}

/// `(x + lambda I)^{-1}` written as a polynomial in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftCertificate {
    pub lambda: u64,
    pub inverse: FMatrix,
    /// `inverse = certificate(x)`
    pub certificate: Poly,
    pub min_poly_degree: usize,
}

impl ShiftCertificate {
    pub fn cert_degree(&self) -> usize {
        self.certificate.degree()
    }
}

/// Finds the first `lambda = 0, 1, 2, ...` with `mu_x(-lambda) != 0` and
/// inverts `x + lambda I` inside the algebra generated by `x`.
///
/// Needs `p > deg mu_x`, otherwise every residue may be a root.
pub fn shift_to_invertible(x: &FMatrix) -> Result<ShiftCertificate, LinalgError> {
    let f = x.field();
    let mu = min_poly(x);
    let m = mu.degree();
    if f.modulus() <= m as u64 {
        return Err(LinalgError::FieldTooSmall {
            p: f.modulus(),
            degree: m,
        });
    }
    // mu has at most m roots, so some lambda in [0, m] works
    let lambda = (0..=m as u64)
        .find(|&l| mu.poly.eval(f.neg(l)) != 0)
        .ok_or(LinalgError::NoShiftFound)?;

    // nu(s) = mu(s - lambda) annihilates y = x + lambda I, nu(0) != 0, so
    // y^{-1} = -nu(0)^{-1} * sum_{j>=1} nu_j y^{j-1}.
    let nu = mu.poly.compose_shift(f.neg(lambda));
    let nu0 = nu.coeffs()[0];
    let scale = f.neg(f.inv(nu0)?);
    let in_y: Vec<u64> = nu.coeffs()[1..].iter().map(|&c| f.mul(c, scale)).collect();
    let certificate = Poly::new(f, in_y).compose_shift(lambda);
    let inverse = certificate.eval_matrix(x);
    Ok(ShiftCertificate {
        lambda,
        inverse,
        certificate,
        min_poly_degree: m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn min_poly_examples() {
        let f = gf(5);
        let e12 = FMatrix::unit(f, 2, 0, 1);
        let mu = min_poly(&e12);
        assert_eq!(mu.coeffs(), &[0, 0, 1]);

        let mu = min_poly(&FMatrix::identity(f, 3));
        assert_eq!(mu.coeffs(), &[4, 1]);

        let d = FMatrix::from_row_major(f, 2, &[1, 0, 0, 2]).unwrap();
        let mu = min_poly(&d);
        assert_eq!(mu.coeffs(), &[2, 2, 1]);
        assert!(mu.poly.eval_matrix(&d).is_zero());
    }

    #[test]
    fn zero_matrix_min_poly_is_t() {
        let f = gf(7);
        assert_eq!(min_poly(&FMatrix::zero(f, 3)).coeffs(), &[0, 1]);
    }

    #[test]
    fn compose_shift_known_value() {
        let f = gf(7);
        // (t + 2)^2 = t^2 + 4t + 4
        let p = Poly::new(f, vec![0, 0, 1]).compose_shift(2);
        assert_eq!(p.coeffs(), &[4, 4, 1]);
        assert_eq!(Poly::new(f, vec![3, 0, 0]).degree(), 0);
    }

    #[test]
    fn shift_nilpotent() {
        let f = gf(5);
        let e12 = FMatrix::unit(f, 2, 0, 1);
        let s = shift_to_invertible(&e12).unwrap();
        assert_eq!(s.lambda, 1);
        let expected = FMatrix::identity(f, 2).add(&e12.scale(4));
        assert_eq!(s.inverse, expected);
        assert_eq!(s.cert_degree(), 1);
    }

    #[test]
    fn shift_identity_needs_no_shift() {
        let f = gf(5);
        let id = FMatrix::identity(f, 2);
        let s = shift_to_invertible(&id).unwrap();
        assert_eq!(s.lambda, 0);
        assert_eq!(s.inverse, id);
        assert_eq!(s.cert_degree(), 0);
    }

    #[test]
    fn shift_rejects_small_field() {
        let f = gf(2);
        let d = FMatrix::from_row_major(f, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!(
            shift_to_invertible(&d),
            Err(LinalgError::FieldTooSmall { p: 2, degree: 3 })
        );
    }
}
