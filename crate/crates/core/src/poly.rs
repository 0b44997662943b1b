//! Exact multivariate sparse polynomial arithmetic over the rationals.
//!
//! Polynomials carry their arity explicitly; every binary operation checks
//! that arities agree. Terms are kept in a `BTreeMap` keyed by graded-lex
//! monomial order (x1 > x2 > ... > xn), so iteration order is deterministic
//! and printing descending gives the canonical text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Arbitrary-precision rational coefficient, always in lowest terms with
/// positive denominator (maintained by `BigRational` itself).
pub type Coefficient = BigRational;

/// Exponent vector of fixed length = ambient arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// x_i as a monomial, `index` is 1-based.
    pub fn variable(arity: usize, index: usize) -> Result<Self> {
        if index == 0 || index > arity {
            return Err(Error::IndexOutOfRange { index, arity });
        }
        let mut exps = vec![0; arity];
        exps[index - 1] = 1;
        Ok(Monomial(exps))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, caller must ensure divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

/// Graded lexicographic order with x1 > x2 > ... > xn.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in canonical form: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Coefficient>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Coefficient::one())
    }

    pub fn constant(arity: usize, value: Coefficient) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::unit(arity), value);
        }
        Polynomial { arity, terms }
    }

    pub fn from_int(arity: usize, value: i64) -> Self {
        Self::constant(arity, Coefficient::from(BigInt::from(value)))
    }

    /// x_i, 1-based index.
    pub fn variable(arity: usize, index: usize) -> Result<Self> {
        let m = Monomial::variable(arity, index)?;
        let mut terms = BTreeMap::new();
        terms.insert(m, Coefficient::one());
        Ok(Polynomial { arity, terms })
    }

    /// A single term `coeff * x^exponents`.
    pub fn term(arity: usize, exponents: Vec<u32>, coeff: Coefficient) -> Result<Self> {
        if exponents.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: exponents.len(),
            });
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Monomial::new(exponents), coeff);
        }
        Ok(Polynomial { arity, terms })
    }

    pub fn from_terms<I>(arity: usize, iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        let mut p = Polynomial::zero(arity);
        for (m, c) in iter {
            if m.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: m.arity(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Terms in graded-lex descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter().rev()
    }

    /// Leading term in graded-lex order, if any.
    pub fn leading_term(&self) -> Option<(&Monomial, &Coefficient)> {
        self.terms.iter().next_back()
    }

    /// The constant value if the polynomial has no term of positive degree.
    /// Returns `Some(0)` for the zero polynomial.
    pub fn as_constant(&self) -> Option<Coefficient> {
        if self.terms.is_empty() {
            return Some(Coefficient::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_term(&mut self, m: Monomial, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Coefficient) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut out = Polynomial::one(self.arity);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to x_i, 1-based.
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index == 0 || index > self.arity {
            return Err(Error::IndexOutOfRange {
                index,
                arity: self.arity,
            });
        }
        let i = index - 1;
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(
                Monomial::new(exps),
                c * Coefficient::from(BigInt::from(e)),
            );
        }
        Ok(out)
    }

    /// Simultaneous substitution x_i -> fs[i-1]. All fs must share one
    /// arity, which becomes the arity of the result.
    pub fn substitute(&self, fs: &[Polynomial]) -> Result<Polynomial> {
        if fs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: fs.len(),
            });
        }
        let out_arity = if fs.is_empty() { 0 } else { fs[0].arity() };
        for f in fs {
            if f.arity() != out_arity {
                return Err(Error::ArityMismatch {
                    expected: out_arity,
                    found: f.arity(),
                });
            }
        }
        // Cache powers of each substituted polynomial across terms.
        let mut powers: Vec<Vec<Polynomial>> =
            fs.iter().map(|f| vec![Polynomial::one(out_arity), f.clone()]).collect();
        let power = |i: usize, e: u32, powers: &mut Vec<Vec<Polynomial>>| -> Polynomial {
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap() * &fs[i];
                powers[i].push(next);
            }
            powers[i][e as usize].clone()
        };
        let mut out = Polynomial::zero(out_arity);
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(out_arity, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    prod = &prod * &power(i, e, &mut powers);
                }
            }
            out = &out + &prod;
        }
        Ok(out)
    }

    /// Exact division: returns `Some(q)` with `self = q * divisor` when the
    /// division leaves no remainder, `None` otherwise.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.arity, divisor.arity, "exact_div arity mismatch");
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading_term().unwrap();
        let dm = dm.clone();
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.arity);
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return None;
            }
            let qm = dm.quotient(rm);
            let qc = rc / &dc;
            let qterm = Polynomial::term(self.arity, qm.exponents().to_vec(), qc).unwrap();
            rem = &rem - &(&qterm * divisor);
            quot = &quot + &qterm;
        }
        Some(quot)
    }
}

// Operator impls for internal use where arities are already known to agree;
// they panic on mismatch. The checked_* methods are the fallible surface.
impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial arity mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial arity mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial arity mismatch in *")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
    }
    Ok(())
}

/// Canonical text form: graded-lex descending terms, rationals as `a/b`,
/// e.g. `2*x1^2*x2 - 1/3*x3 + 5`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_unit() {
                write!(f, "{}", abs)?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", abs)?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}
