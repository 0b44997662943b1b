//! Jacobi tuples: symbolic Jacobian matrices, exact determinants, the dual
//! θ-frame satisfying θ_j(f_i) = δ_ij, and the semigroup product by
//! simultaneous substitution.

use num_traits::{One, Zero};

use crate::error::{Error, NotJacobi, Result};
use crate::poly::{Coefficient, Polynomial};
use crate::witt::Derivation;

/// Square matrix of polynomials; dimension equals the entry arity at the
/// public surface. Minors keep the entry arity while the dimension shrinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    arity: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl PolyMatrix {
    pub fn from_rows(entries: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for e in row {
                if e.arity() != n {
                    return Err(Error::ArityMismatch {
                        expected: n,
                        found: e.arity(),
                    });
                }
            }
        }
        Ok(PolyMatrix { n, arity: n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Polynomial::one(n)
                        } else {
                            Polynomial::zero(n)
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { n, arity: n, entries }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    /// Minor with row i and column j removed.
    fn minor(&self, i: usize, j: usize) -> PolyMatrix {
        let entries: Vec<Vec<Polynomial>> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        PolyMatrix {
            n: self.n - 1,
            arity: self.arity,
            entries,
        }
    }

    /// Determinant of the minor, as a polynomial in the *original* arity.
    /// Minor entries keep their arity; only the matrix dimension shrinks.
    fn minor_det(&self, i: usize, j: usize) -> Polynomial {
        self.minor(i, j).determinant_cofactor()
    }

    /// Determinant by first-row cofactor expansion.
    pub fn determinant_cofactor(&self) -> Polynomial {
        let arity = self.arity;
        if self.n == 0 {
            return Polynomial::one(arity);
        }
        if self.n == 1 {
            return self.entries[0][0].clone();
        }
        let mut det = Polynomial::zero(arity);
        for j in 0..self.n {
            if self.entries[0][j].is_zero() {
                continue;
            }
            let cof = &self.entries[0][j] * &self.minor_det(0, j);
            if j % 2 == 0 {
                det = &det + &cof;
            } else {
                det = &det - &cof;
            }
        }
        det
    }

    /// Determinant by fraction-free (Bareiss) elimination; every division
    /// along the way is exact over the polynomial ring.
    pub fn determinant_bareiss(&self) -> Polynomial {
        let arity = self.arity;
        if self.n == 0 {
            return Polynomial::one(arity);
        }
        let mut a = self.entries.clone();
        let mut sign_flip = false;
        let mut prev_pivot = Polynomial::one(arity);
        for k in 0..self.n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..self.n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Polynomial::zero(arity),
                }
            }
            for i in k + 1..self.n {
                for j in k + 1..self.n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .exact_div(&prev_pivot)
                        .expect("Bareiss division is exact");
                }
                a[i][k] = Polynomial::zero(arity);
            }
            prev_pivot = a[k][k].clone();
        }
        let det = a[self.n - 1][self.n - 1].clone();
        if sign_flip {
            det.neg()
        } else {
            det
        }
    }

    /// Exact symbolic determinant. Cofactor expansion for small matrices,
    /// Bareiss elimination for dimension >= 4.
    pub fn determinant(&self) -> Polynomial {
        if self.n <= 3 {
            self.determinant_cofactor()
        } else {
            self.determinant_bareiss()
        }
    }

    /// (i, j)-cofactor: (-1)^(i+j) times the (i, j)-minor determinant.
    pub fn cofactor(&self, i: usize, j: usize) -> Polynomial {
        let d = self.minor_det(i, j);
        if (i + j) % 2 == 0 {
            d
        } else {
            d.neg()
        }
    }

    /// Adjugate: entry (i, j) is the (j, i)-cofactor, so that
    /// `m * adjugate(m) = det(m) * I`.
    pub fn adjugate(&self) -> PolyMatrix {
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.cofactor(j, i)).collect())
            .collect();
        PolyMatrix {
            n: self.n,
            arity: self.arity,
            entries,
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let arity = self.arity;
        let entries = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let mut sum = Polynomial::zero(arity);
                        for k in 0..self.n {
                            sum = &sum + &(&self.entries[i][k] * &other.entries[k][j]);
                        }
                        sum
                    })
                    .collect()
            })
            .collect();
        Ok(PolyMatrix {
            n: self.n,
            arity,
            entries,
        })
    }

    pub fn scale(&self, factor: &Coefficient) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            arity: self.arity,
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.scale(factor)).collect())
                .collect(),
        }
    }
}

/// Jacobi matrix of a tuple: entry (i, j) = ∂_j f_i.
pub fn jacobi_matrix(components: &[Polynomial]) -> Result<PolyMatrix> {
    let n = components.len();
    for f in components {
        if f.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: f.arity(),
            });
        }
    }
    let entries = components
        .iter()
        .map(|f| (1..=n).map(|j| f.partial_derivative(j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(entries)
}

/// A validated Jacobi tuple: components with constant nonzero Jacobian,
/// plus the cached dual θ-frame with θ_j(f_i) = δ_ij.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiTuple {
    n: usize,
    components: Vec<Polynomial>,
    constant: Coefficient,
    theta: Vec<Derivation>,
}

impl JacobiTuple {
    /// Validate a tuple: the Jacobian determinant must be a nonzero
    /// constant. Builds the θ-frame with θ_j = Σ_ℓ (C_jℓ / c) ∂_ℓ, where
    /// C_jℓ is the (j, ℓ)-cofactor of the Jacobi matrix, and asserts the
    /// Kronecker contract θ_j(f_i) = δ_ij before returning.
    pub fn try_new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        let m = jacobi_matrix(&components)?;
        let det = m.determinant();
        let constant = match det.as_constant() {
            None => return Err(Error::NotJacobi(NotJacobi::NonConstant(det.to_string()))),
            Some(c) if c.is_zero() => return Err(Error::NotJacobi(NotJacobi::Zero)),
            Some(c) => c,
        };
        let inv_c = Coefficient::one() / &constant;
        let theta: Vec<Derivation> = (0..n)
            .map(|j| {
                let coeffs = (0..n).map(|l| m.cofactor(j, l).scale(&inv_c)).collect();
                Derivation::new(coeffs)
            })
            .collect::<Result<_>>()?;
        for (j, th) in theta.iter().enumerate() {
            for (i, f) in components.iter().enumerate() {
                let v = th.apply(f)?;
                let expected = if i == j {
                    Polynomial::one(n)
                } else {
                    Polynomial::zero(n)
                };
                if v != expected {
                    return Err(Error::Internal(format!(
                        "theta_{}(f_{}) = {}, want {}",
                        j + 1,
                        i + 1,
                        v,
                        expected
                    )));
                }
            }
        }
        Ok(JacobiTuple {
            n,
            components,
            constant,
            theta,
        })
    }

    /// The identity tuple (x1, ..., xn).
    pub fn identity(n: usize) -> Self {
        let components = (1..=n)
            .map(|i| Polynomial::variable(n, i).expect("index in range"))
            .collect();
        Self::try_new(components).expect("identity tuple is Jacobi")
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// The constant value of the Jacobian determinant.
    pub fn constant(&self) -> &Coefficient {
        &self.constant
    }

    /// The dual frame θ_1, ..., θ_n.
    pub fn theta(&self) -> &[Derivation] {
        &self.theta
    }

    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, f)| *f == Polynomial::variable(self.n, i + 1).unwrap())
    }

    /// Semigroup product: (f · g)_i = g_i(f_1, ..., f_n). The chain rule
    /// guarantees the result is again a Jacobi tuple; revalidation failing
    /// would be a defect, hence `Internal` rather than `NotJacobi`.
    pub fn compose(&self, g: &JacobiTuple) -> Result<JacobiTuple> {
        if self.n != g.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: g.n,
            });
        }
        let components = g
            .components
            .iter()
            .map(|gi| gi.substitute(&self.components))
            .collect::<Result<Vec<_>>>()?;
        JacobiTuple::try_new(components).map_err(|e| match e {
            Error::NotJacobi(reason) => Error::Internal(format!(
                "composition of Jacobi tuples failed revalidation: {:?}",
                reason
            )),
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn var(n: usize, i: usize) -> Polynomial {
        Polynomial::variable(n, i).unwrap()
    }

    fn rat(a: i64, b: i64) -> Coefficient {
        Coefficient::new(BigInt::from(a), BigInt::from(b))
    }

    fn shear_tuple(p: u32) -> Vec<Polynomial> {
        // (x1, x2 + x1^p)
        vec![var(2, 1), &var(2, 2) + &var(2, 1).pow(p)]
    }

    #[test]
    fn jacobi_matrix_identity() {
        let n = 3;
        let id: Vec<_> = (1..=n).map(|i| var(n, i)).collect();
        assert_eq!(jacobi_matrix(&id).unwrap(), PolyMatrix::identity(n));
    }

    #[test]
    fn jacobi_matrix_shear() {
        // f = (x1, x2 + x1^p) -> [[1, 0], [p*x1^(p-1), 1]]
        let p = 3;
        let m = jacobi_matrix(&shear_tuple(p)).unwrap();
        assert_eq!(*m.entry(0, 0), Polynomial::one(2));
        assert_eq!(*m.entry(0, 1), Polynomial::zero(2));
        assert_eq!(*m.entry(1, 0), var(2, 1).pow(p - 1).scale(&rat(p as i64, 1)));
        assert_eq!(*m.entry(1, 1), Polynomial::one(2));
    }

    #[test]
    fn jacobi_matrix_swap() {
        let m = jacobi_matrix(&[var(2, 2), var(2, 1)]).unwrap();
        assert_eq!(*m.entry(0, 0), Polynomial::zero(2));
        assert_eq!(*m.entry(0, 1), Polynomial::one(2));
        assert_eq!(*m.entry(1, 0), Polynomial::one(2));
        assert_eq!(*m.entry(1, 1), Polynomial::zero(2));
    }

    #[test]
    fn determinant_identity() {
        assert_eq!(PolyMatrix::identity(3).determinant(), Polynomial::one(3));
    }

    #[test]
    fn determinant_triangular() {
        let m = jacobi_matrix(&shear_tuple(4)).unwrap();
        assert_eq!(m.determinant(), Polynomial::one(2));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        // A non-trivial 3x3 with polynomial entries.
        let n = 3;
        let m = PolyMatrix::from_rows(vec![
            vec![var(n, 1), var(n, 2), Polynomial::one(n)],
            vec![Polynomial::one(n), var(n, 1).pow(2), var(n, 3)],
            vec![var(n, 2), Polynomial::zero(n), &var(n, 1) + &var(n, 3)],
        ])
        .unwrap();
        assert_eq!(m.determinant_bareiss(), m.determinant_cofactor());
    }

    #[test]
    fn bareiss_singular() {
        let n = 2;
        let m = PolyMatrix::from_rows(vec![
            vec![var(n, 1), var(n, 2)],
            vec![var(n, 1), var(n, 2)],
        ])
        .unwrap();
        assert!(m.determinant_bareiss().is_zero());
    }

    #[test]
    fn adjugate_identity() {
        let m = PolyMatrix::identity(3);
        assert_eq!(m.adjugate(), m);
    }

    #[test]
    fn adjugate_shear() {
        // adj([[1, 0], [p*x1^(p-1), 1]]) = [[1, 0], [-p*x1^(p-1), 1]]
        let p = 3;
        let m = jacobi_matrix(&shear_tuple(p)).unwrap();
        let adj = m.adjugate();
        assert_eq!(*adj.entry(0, 0), Polynomial::one(2));
        assert_eq!(*adj.entry(0, 1), Polynomial::zero(2));
        assert_eq!(
            *adj.entry(1, 0),
            var(2, 1).pow(p - 1).scale(&rat(-(p as i64), 1))
        );
        assert_eq!(*adj.entry(1, 1), Polynomial::one(2));
    }

    #[test]
    fn adjugate_scaled_diagonal() {
        // adj(diag(a, 1, 1)) = diag(1, a, a)
        let n = 3;
        let a = rat(5, 2);
        let mut rows = PolyMatrix::identity(n);
        rows.entries[0][0] = Polynomial::constant(n, a.clone());
        let adj = rows.adjugate();
        assert_eq!(*adj.entry(0, 0), Polynomial::one(n));
        assert_eq!(*adj.entry(1, 1), Polynomial::constant(n, a.clone()));
        assert_eq!(*adj.entry(2, 2), Polynomial::constant(n, a));
    }

    #[test]
    fn adjugate_product_identity() {
        let n = 3;
        let m = PolyMatrix::from_rows(vec![
            vec![var(n, 1), var(n, 2), Polynomial::one(n)],
            vec![Polynomial::one(n), var(n, 1), var(n, 3)],
            vec![var(n, 2), Polynomial::zero(n), var(n, 1)],
        ])
        .unwrap();
        let det = m.determinant();
        let prod = m.mul(&m.adjugate()).unwrap();
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { det.clone() } else { Polynomial::zero(n) };
                assert_eq!(*prod.entry(i, j), expected);
            }
        }
    }

    #[test]
    fn shear_tuple_accepted_with_theta() {
        let p = 3;
        let t = JacobiTuple::try_new(shear_tuple(p)).unwrap();
        assert_eq!(*t.constant(), rat(1, 1));
        // theta_1 = d1 - p*x1^(p-1)*d2, theta_2 = d2
        let th1 = Derivation::new(vec![
            Polynomial::one(2),
            var(2, 1).pow(p - 1).scale(&rat(-(p as i64), 1)),
        ])
        .unwrap();
        assert_eq!(t.theta()[0], th1);
        assert_eq!(t.theta()[1], Derivation::partial(2, 2).unwrap());
    }

    #[test]
    fn non_constant_determinant_rejected() {
        let err = JacobiTuple::try_new(vec![var(2, 1).pow(2), var(2, 2)]).unwrap_err();
        match err {
            Error::NotJacobi(NotJacobi::NonConstant(det)) => assert_eq!(det, "2*x1"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn singular_tuple_rejected() {
        let err = JacobiTuple::try_new(vec![var(2, 1), var(2, 1)]).unwrap_err();
        assert_eq!(err, Error::NotJacobi(NotJacobi::Zero));
    }

    #[test]
    fn compose_with_identity() {
        let f = JacobiTuple::try_new(shear_tuple(2)).unwrap();
        let id = JacobiTuple::identity(2);
        assert_eq!(f.compose(&id), Ok(f.clone()));
        assert_eq!(id.compose(&f), Ok(f));
    }

    #[test]
    fn compose_shears_stack() {
        // (x1, x2 + x1^2) . (x1, x2 + x1^3) = (x1, x2 + x1^2 + x1^3)
        let f = JacobiTuple::try_new(shear_tuple(2)).unwrap();
        let g = JacobiTuple::try_new(shear_tuple(3)).unwrap();
        let h = f.compose(&g).unwrap();
        let expected = &(&var(2, 2) + &var(2, 1).pow(2)) + &var(2, 1).pow(3);
        assert_eq!(h.components(), &[var(2, 1), expected]);
        assert_eq!(*h.constant(), rat(1, 1));
    }

    #[test]
    fn degenerate_arity_one() {
        // JT_1 is the affine maps a*x1 + b with a != 0.
        let t = JacobiTuple::try_new(vec![
            &var(1, 1).scale(&rat(3, 2)) + &Polynomial::from_int(1, 7),
        ])
        .unwrap();
        assert_eq!(*t.constant(), rat(3, 2));
        let err = JacobiTuple::try_new(vec![Polynomial::from_int(1, 7)]).unwrap_err();
        assert_eq!(err, Error::NotJacobi(NotJacobi::Zero));
    }
}
