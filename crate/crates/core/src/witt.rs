//! Derivations of the polynomial algebra: elements of the rank-n Witt
//! algebra, written as sums `P_1*d1 + ... + Pn*dn`.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Coefficient, Monomial, Polynomial};

/// A derivation Σ P_i ∂_i with polynomial coefficients of matching arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    arity: usize,
    coefficients: Vec<Polynomial>,
}

impl Derivation {
    /// Build from the coefficient vector (P_1, ..., P_n); the vector length
    /// is the arity and every coefficient must share it.
    pub fn new(coefficients: Vec<Polynomial>) -> Result<Self> {
        let arity = coefficients.len();
        for p in &coefficients {
            if p.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: p.arity(),
                });
            }
        }
        Ok(Derivation { arity, coefficients })
    }

    pub fn zero(arity: usize) -> Self {
        Derivation {
            arity,
            coefficients: vec![Polynomial::zero(arity); arity],
        }
    }

    /// The basis derivation ∂_j, 1-based.
    pub fn partial(arity: usize, index: usize) -> Result<Self> {
        if index == 0 || index > arity {
            return Err(Error::IndexOutOfRange { index, arity });
        }
        let mut coefficients = vec![Polynomial::zero(arity); arity];
        coefficients[index - 1] = Polynomial::one(arity);
        Ok(Derivation { arity, coefficients })
    }

    /// The monomial basis element x^exponents ∂_index.
    pub fn monomial(arity: usize, exponents: Vec<u32>, index: usize) -> Result<Self> {
        if index == 0 || index > arity {
            return Err(Error::IndexOutOfRange { index, arity });
        }
        let mut coefficients = vec![Polynomial::zero(arity); arity];
        coefficients[index - 1] = Polynomial::term(arity, exponents, Coefficient::one())?;
        Ok(Derivation { arity, coefficients })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Polynomial::is_zero)
    }

    fn check_arity(&self, other_arity: usize) -> Result<()> {
        if self.arity != other_arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other_arity,
            });
        }
        Ok(())
    }

    /// Action on a polynomial: Σ P_i · ∂_i p.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check_arity(p.arity())?;
        let mut out = Polynomial::zero(self.arity);
        for (i, coeff) in self.coefficients.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            out = &out + &(coeff * &p.partial_derivative(i + 1)?);
        }
        Ok(out)
    }

    /// Lie bracket [self, other]. With self = Σ P_i ∂_i and other = Σ Q_i ∂_i
    /// the j-th coefficient is Σ_i (P_i ∂_i Q_j − Q_i ∂_i P_j).
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.check_arity(other.arity)?;
        let mut coefficients = Vec::with_capacity(self.arity);
        for j in 1..=self.arity {
            let qj = &other.coefficients[j - 1];
            let pj = &self.coefficients[j - 1];
            let mut c = Polynomial::zero(self.arity);
            for i in 1..=self.arity {
                let pi = &self.coefficients[i - 1];
                let qi = &other.coefficients[i - 1];
                if !pi.is_zero() {
                    c = &c + &(pi * &qj.partial_derivative(i)?);
                }
                if !qi.is_zero() {
                    c = &c - &(qi * &pj.partial_derivative(i)?);
                }
            }
            coefficients.push(c);
        }
        Ok(Derivation {
            arity: self.arity,
            coefficients,
        })
    }

    pub fn checked_add(&self, other: &Derivation) -> Result<Derivation> {
        self.check_arity(other.arity)?;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Derivation {
            arity: self.arity,
            coefficients,
        })
    }

    pub fn checked_sub(&self, other: &Derivation) -> Result<Derivation> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Derivation {
        Derivation {
            arity: self.arity,
            coefficients: self.coefficients.iter().map(Polynomial::neg).collect(),
        }
    }

    pub fn scale(&self, factor: &Coefficient) -> Derivation {
        Derivation {
            arity: self.arity,
            coefficients: self.coefficients.iter().map(|p| p.scale(factor)).collect(),
        }
    }

    /// Multiply every coefficient by a polynomial (the A_n-module action).
    pub fn module_mul(&self, p: &Polynomial) -> Result<Derivation> {
        self.check_arity(p.arity())?;
        Ok(Derivation {
            arity: self.arity,
            coefficients: self.coefficients.iter().map(|c| c * p).collect(),
        })
    }
}

/// All monomials of the given arity with total degree exactly `degree`,
/// in graded-lex descending order.
fn monomials_of_degree(arity: usize, degree: u32) -> Vec<Monomial> {
    fn rec(arity: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == arity - 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        // Descending first exponent gives graded-lex descending overall.
        for e in (0..=degree).rev() {
            prefix.push(e);
            rec(arity, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(arity, degree, &mut Vec::new(), &mut out);
    out.into_iter().map(Monomial::new).collect()
}

/// All basis elements x^k ∂_j with total degree of x^k at most `max_degree`.
/// Order: degree-major, then ∂-index ascending, then graded-lex descending on
/// the monomial. Count is n * C(n + d, n).
pub fn basis_elements(arity: usize, max_degree: u32) -> Vec<Derivation> {
    let mut out = Vec::new();
    for degree in 0..=max_degree {
        for j in 1..=arity {
            for m in monomials_of_degree(arity, degree) {
                out.push(
                    Derivation::monomial(arity, m.exponents().to_vec(), j)
                        .expect("index in range"),
                );
            }
        }
    }
    out
}

/// The generating set {∂_j, x_i^2 ∂_j : i, j} of the Lie algebra, n ≥ 2.
/// Deduplicated: the ∂_j appear once each, giving n + n^2 elements.
pub fn generating_set(arity: usize) -> Result<Vec<Derivation>> {
    if arity < 2 {
        return Err(Error::ArityTooSmall { arity, min: 2 });
    }
    let mut out = Vec::with_capacity(arity + arity * arity);
    for j in 1..=arity {
        out.push(Derivation::partial(arity, j)?);
    }
    for i in 1..=arity {
        for j in 1..=arity {
            let mut exps = vec![0; arity];
            exps[i - 1] = 2;
            out.push(Derivation::monomial(arity, exps, j)?);
        }
    }
    Ok(out)
}

fn poly_is_single_term(p: &Polynomial) -> bool {
    p.num_terms() == 1
}

/// Canonical text form: `P1*d1 + P2*d2 + ...` with zero coefficients
/// omitted; multi-term coefficients are parenthesized so the output
/// re-parses, e.g. `(x1 + 1)*d1 - x2*d2`.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, p) in self.coefficients.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if poly_is_single_term(p) {
                let (m, c) = p.leading_term().unwrap();
                let negative = num_traits::Signed::is_negative(c);
                let abs = if negative { -c.clone() } else { c.clone() };
                if first {
                    if negative {
                        write!(f, "-")?;
                    }
                } else if negative {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let single =
                    Polynomial::term(self.arity, m.exponents().to_vec(), abs.clone()).unwrap();
                if m.is_unit() && abs.is_one() {
                    write!(f, "d{}", j + 1)?;
                } else {
                    write!(f, "{}*d{}", single, j + 1)?;
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({})*d{}", p, j + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}
