//! Tame automorphism words over swaps, scalings, and elementary shears,
//! the Nagata automorphism, and the explicit generator action on the
//! rank-2 Witt algebra with cross-checking against the tuple route.

use std::fmt;
use std::time::Instant;

use num_traits::{One, Pow, Zero};

use crate::endo::{Counterexample, VerificationReport, WittEndomorphism};
use crate::error::{Error, Result};
use crate::jacobi::JacobiTuple;
use crate::poly::{Coefficient, Polynomial};
use crate::witt::{basis_elements, Derivation};

/// One tame generator. `Swap(i)` switches x_i and x_{i+1}; `Scale(a)`
/// sends x_1 to a*x_1; `Shear { p, c }` sends x_2 to x_2 + c*x_1^p.
/// The classical ψ_p is `Shear { p, c: 1 }`; carrying a general scalar c
/// closes the alphabet under inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TameGenerator {
    Swap(usize),
    Scale(Coefficient),
    Shear { p: u32, c: Coefficient },
}

impl TameGenerator {
    pub fn psi(p: u32) -> Self {
        TameGenerator::Shear {
            p,
            c: Coefficient::one(),
        }
    }

    pub fn validate(&self, arity: usize) -> Result<()> {
        match self {
            TameGenerator::Swap(i) => {
                if *i == 0 || *i >= arity {
                    return Err(Error::IndexOutOfRange { index: *i, arity });
                }
            }
            TameGenerator::Scale(a) => {
                if a.is_zero() {
                    return Err(Error::Internal("scale factor must be nonzero".into()));
                }
            }
            TameGenerator::Shear { .. } => {
                if arity < 2 {
                    return Err(Error::ArityTooSmall { arity, min: 2 });
                }
            }
        }
        Ok(())
    }

    /// The tuple (g(x_1), ..., g(x_n)) of this generator at the given arity.
    pub fn components(&self, arity: usize) -> Result<Vec<Polynomial>> {
        self.validate(arity)?;
        let mut components: Vec<Polynomial> = (1..=arity)
            .map(|i| Polynomial::variable(arity, i))
            .collect::<Result<_>>()?;
        match self {
            TameGenerator::Swap(i) => {
                components.swap(i - 1, *i);
            }
            TameGenerator::Scale(a) => {
                components[0] = components[0].scale(a);
            }
            TameGenerator::Shear { p, c } => {
                let shift = Polynomial::variable(arity, 1)?.pow(*p).scale(c);
                components[1] = &components[1] + &shift;
            }
        }
        Ok(components)
    }

    pub fn tuple(&self, arity: usize) -> Result<JacobiTuple> {
        JacobiTuple::try_new(self.components(arity)?)
    }

    pub fn inverse(&self) -> TameGenerator {
        match self {
            TameGenerator::Swap(i) => TameGenerator::Swap(*i),
            TameGenerator::Scale(a) => TameGenerator::Scale(Coefficient::one() / a.clone()),
            TameGenerator::Shear { p, c } => TameGenerator::Shear {
                p: *p,
                c: -c.clone(),
            },
        }
    }
}

impl fmt::Display for TameGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TameGenerator::Swap(i) => write!(f, "s{}", i),
            TameGenerator::Scale(a) => write!(f, "t({})", a),
            TameGenerator::Shear { p, c } if c.is_one() => write!(f, "psi({})", p),
            TameGenerator::Shear { p, c } => write!(f, "shear({},{})", p, c),
        }
    }
}

/// A word in the tame generators, applied left to right as maps of the
/// polynomial algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameWord {
    arity: usize,
    generators: Vec<TameGenerator>,
}

impl TameWord {
    pub fn new(arity: usize, generators: Vec<TameGenerator>) -> Result<Self> {
        for g in &generators {
            g.validate(arity)?;
        }
        Ok(TameWord { arity, generators })
    }

    pub fn identity(arity: usize) -> Self {
        TameWord {
            arity,
            generators: Vec::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[TameGenerator] {
        &self.generators
    }

    pub fn concat(&self, other: &TameWord) -> Result<TameWord> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(TameWord {
            arity: self.arity,
            generators,
        })
    }

    /// The Jacobi tuple (τ(x_1), ..., τ(x_n)) of the composite map τ.
    /// Appending a generator g replaces each component by its image under
    /// g, i.e. substitutes g's tuple into it.
    pub fn to_tuple(&self) -> Result<JacobiTuple> {
        let mut components: Vec<Polynomial> = (1..=self.arity)
            .map(|i| Polynomial::variable(self.arity, i))
            .collect::<Result<_>>()?;
        for g in &self.generators {
            let gc = g.components(self.arity)?;
            components = components
                .iter()
                .map(|c| c.substitute(&gc))
                .collect::<Result<_>>()?;
        }
        JacobiTuple::try_new(components).map_err(|e| match e {
            Error::NotJacobi(reason) => Error::Internal(format!(
                "tame word produced a non-Jacobi tuple: {:?}",
                reason
            )),
            other => other,
        })
    }

    /// Group inverse: reversed sequence of inverted generators.
    pub fn invert(&self) -> TameWord {
        TameWord {
            arity: self.arity,
            generators: self
                .generators
                .iter()
                .rev()
                .map(TameGenerator::inverse)
                .collect(),
        }
    }
}

impl fmt::Display for TameWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return write!(f, "id");
        }
        let atoms: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", atoms.join("; "))
    }
}

/// The Nagata automorphism of A_3 as a validated Jacobi tuple, with
/// w = x2^2 + x1*x3:
///   x1 -> x1 - 2*w*x2 - w^2*x3,  x2 -> x2 + w*x3,  x3 -> x3.
pub fn nagata() -> JacobiTuple {
    let n = 3;
    let x1 = Polynomial::variable(n, 1).unwrap();
    let x2 = Polynomial::variable(n, 2).unwrap();
    let x3 = Polynomial::variable(n, 3).unwrap();
    let w = &x2.pow(2) + &(&x1 * &x3);
    let two = Polynomial::from_int(n, 2);
    let f1 = &(&x1 - &(&(&two * &w) * &x2)) - &(&w.pow(2) * &x3);
    let f2 = &x2 + &(&w * &x3);
    JacobiTuple::try_new(vec![f1, f2, x3]).expect("Nagata tuple is Jacobi")
}

/// The invariant polynomial w = x2^2 + x1*x3 fixed by the Nagata map.
pub fn nagata_invariant() -> Polynomial {
    let n = 3;
    let x1 = Polynomial::variable(n, 1).unwrap();
    let x2 = Polynomial::variable(n, 2).unwrap();
    let x3 = Polynomial::variable(n, 3).unwrap();
    &x2.pow(2) + &(&x1 * &x3)
}

fn w2_action_monomial(
    g: &TameGenerator,
    exps: &[u32],
    index: usize,
    unscaled: bool,
) -> Result<Derivation> {
    let n = 2;
    let (i, j) = (exps[0], exps[1]);
    match g {
        TameGenerator::Swap(1) => {
            // x1^i x2^j ∂_1 -> x2^i x1^j ∂_2 and symmetrically.
            Derivation::monomial(n, vec![j, i], 3 - index)
        }
        TameGenerator::Swap(_) => unreachable!("validated for arity 2"),
        TameGenerator::Scale(a) => {
            // Factor a^(i-1) on ∂_1 terms, a^i on ∂_2 terms: the image of
            // ∂_1 itself carries 1/a so that brackets are preserved.
            let exp = if index == 1 { i as i64 - 1 } else { i as i64 };
            let factor = Pow::pow(a.clone(), exp as i32);
            let mono = Polynomial::term(n, exps.to_vec(), factor)?;
            let mut coeffs = vec![Polynomial::zero(n); n];
            coeffs[index - 1] = mono;
            Derivation::new(coeffs)
        }
        TameGenerator::Shear { p, c } => {
            // x1^i (x2 + c x1^p)^j goes in front; a ∂_1 term additionally
            // picks up the correction -c*p*x1^(p-1) ∂_2 from the θ-frame.
            let x1 = Polynomial::variable(n, 1)?;
            let x2 = Polynomial::variable(n, 2)?;
            let moved = &x1.pow(i) * &(&x2 + &x1.pow(*p).scale(c)).pow(j);
            if index == 2 {
                return Derivation::new(vec![Polynomial::zero(n), moved]);
            }
            let correction = if *p == 0 {
                Polynomial::zero(n)
            } else if unscaled {
                // The display without the factor p; wrong for p >= 2.
                x1.pow(p - 1).scale(c)
            } else {
                x1.pow(p - 1)
                    .scale(&(c * Coefficient::from(num_bigint::BigInt::from(*p))))
            };
            Derivation::new(vec![moved.clone(), (&moved * &correction).neg()])
        }
    }
}

/// The action of a single tame generator on an element of the rank-2 Witt
/// algebra, by the closed-form formulas, extended linearly over terms.
/// `unscaled` switches the shear correction term to the variant
/// without the factor p (a negative control; it fails cross-checking for
/// p >= 2).
pub fn w2_action(g: &TameGenerator, u: &Derivation, unscaled: bool) -> Result<Derivation> {
    if u.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: u.arity(),
        });
    }
    g.validate(2)?;
    let mut out = Derivation::zero(2);
    for (jdx, coeff) in u.coefficients().iter().enumerate() {
        for (m, c) in coeff.terms() {
            let image = w2_action_monomial(g, m.exponents(), jdx + 1, unscaled)?;
            out = out.checked_add(&image.scale(c))?;
        }
    }
    Ok(out)
}

/// Compare the closed-form generator action against the endomorphism of
/// the generator's own Jacobi tuple on all basis elements of degree at
/// most `max_degree`.
pub fn cross_check_w2(
    g: &TameGenerator,
    max_degree: u32,
    unscaled: bool,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let e = WittEndomorphism::from_tuple(g.tuple(2)?);
    let mut checked = 0;
    let mut failures = 0;
    let mut counterexample = None;
    for u in basis_elements(2, max_degree) {
        let closed_form = w2_action(g, &u, unscaled)?;
        let via_sigma = e.apply(&u)?;
        checked += 1;
        if closed_form != via_sigma {
            failures += 1;
            if counterexample.is_none() {
                counterexample = Some(Counterexample {
                    inputs: vec![u.to_string()],
                    lhs: closed_form.to_string(),
                    rhs: via_sigma.to_string(),
                });
            }
        }
    }
    Ok(VerificationReport {
        checked,
        failures,
        counterexample,
        elapsed: start.elapsed(),
    })
}
