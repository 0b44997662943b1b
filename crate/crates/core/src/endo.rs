//! Witt-algebra endomorphisms attached to Jacobi tuples, and the
//! verification engine that checks the homomorphism identities on
//! bounded-degree bases.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacobi::JacobiTuple;
use crate::witt::{basis_elements, Derivation};

/// The endomorphism σ_f determined by a Jacobi tuple: on a monomial basis
/// element x^k ∂_j it acts as f^k θ_j, extended linearly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittEndomorphism {
    tuple: JacobiTuple,
}

impl WittEndomorphism {
    pub fn from_tuple(tuple: JacobiTuple) -> Self {
        WittEndomorphism { tuple }
    }

    pub fn tuple(&self) -> &JacobiTuple {
        &self.tuple
    }

    pub fn arity(&self) -> usize {
        self.tuple.arity()
    }

    /// Apply to a derivation Σ P_j ∂_j: the image is Σ P_j(f) θ_j, the
    /// closed form of the linear extension over monomials.
    pub fn apply(&self, d: &Derivation) -> Result<Derivation> {
        let n = self.tuple.arity();
        if d.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: d.arity(),
            });
        }
        let mut out = Derivation::zero(n);
        for (j, coeff) in d.coefficients().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let moved = coeff.substitute(self.tuple.components())?;
            out = out.checked_add(&self.tuple.theta()[j].module_mul(&moved)?)?;
        }
        Ok(out)
    }

    /// Composition as maps: `outer.compose(inner)` applies `inner` first.
    /// On tuples this is σ_{f·g} = σ_f ∘ σ_g with f the outer tuple.
    pub fn compose(&self, inner: &WittEndomorphism) -> Result<WittEndomorphism> {
        Ok(WittEndomorphism::from_tuple(
            self.tuple.compose(&inner.tuple)?,
        ))
    }
}

/// A failed check: the offending inputs and both sides, in canonical text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a batched identity check; failures are data, not errors.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub checked: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
    /// Wall-clock time; excluded from serialized output so that structured
    /// output stays byte-stable across runs.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// Check σ[u, v] = [σu, σv] for every ordered pair of basis elements with
/// monomial degree at most `max_degree`.
pub fn verify_endomorphism(
    e: &WittEndomorphism,
    max_degree: u32,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let basis = basis_elements(e.arity(), max_degree);
    let images: Vec<Derivation> = basis.iter().map(|u| e.apply(u)).collect::<Result<_>>()?;
    let mut checked = 0;
    let mut failures = 0;
    let mut counterexample = None;
    for (iu, u) in basis.iter().enumerate() {
        for (iv, v) in basis.iter().enumerate() {
            let lhs = e.apply(&u.bracket(v)?)?;
            let rhs = images[iu].bracket(&images[iv])?;
            checked += 1;
            if lhs != rhs {
                failures += 1;
                if counterexample.is_none() {
                    counterexample = Some(Counterexample {
                        inputs: vec![u.to_string(), v.to_string()],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
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

/// Check σ_{f·g} = σ_f ∘ σ_g on every basis element with monomial degree
/// at most `max_degree`.
pub fn verify_xi_homomorphism(
    f: &JacobiTuple,
    g: &JacobiTuple,
    max_degree: u32,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if f.arity() != g.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: g.arity(),
        });
    }
    let product = WittEndomorphism::from_tuple(f.compose(g)?);
    let sigma_f = WittEndomorphism::from_tuple(f.clone());
    let sigma_g = WittEndomorphism::from_tuple(g.clone());
    let mut checked = 0;
    let mut failures = 0;
    let mut counterexample = None;
    for u in basis_elements(f.arity(), max_degree) {
        let lhs = product.apply(&u)?;
        let rhs = sigma_f.apply(&sigma_g.apply(&u)?)?;
        checked += 1;
        if lhs != rhs {
            failures += 1;
            if counterexample.is_none() {
                counterexample = Some(Counterexample {
                    inputs: vec![u.to_string()],
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Coefficient, Polynomial};
    use num_bigint::BigInt;

    fn var(n: usize, i: usize) -> Polynomial {
        Polynomial::variable(n, i).unwrap()
    }

    fn rat(a: i64, b: i64) -> Coefficient {
        Coefficient::new(BigInt::from(a), BigInt::from(b))
    }

    fn shear(p: u32) -> JacobiTuple {
        JacobiTuple::try_new(vec![var(2, 1), &var(2, 2) + &var(2, 1).pow(p)]).unwrap()
    }

    #[test]
    fn identity_endomorphism_fixes_basis() {
        let e = WittEndomorphism::from_tuple(JacobiTuple::identity(2));
        for u in basis_elements(2, 3) {
            assert_eq!(e.apply(&u).unwrap(), u);
        }
    }

    #[test]
    fn shear_sends_partials_to_theta() {
        let p = 3;
        let e = WittEndomorphism::from_tuple(shear(p));
        let th1 = Derivation::new(vec![
            Polynomial::one(2),
            var(2, 1).pow(p - 1).scale(&rat(-(p as i64), 1)),
        ])
        .unwrap();
        assert_eq!(e.apply(&Derivation::partial(2, 1).unwrap()).unwrap(), th1);
        assert_eq!(
            e.apply(&Derivation::partial(2, 2).unwrap()).unwrap(),
            Derivation::partial(2, 2).unwrap()
        );
    }

    #[test]
    fn shear_moves_module_coefficient() {
        // σ_f(x2 d2) = (x2 + x1^p) d2 for f = (x1, x2 + x1^p)
        let p = 4;
        let e = WittEndomorphism::from_tuple(shear(p));
        let x2d2 = Derivation::new(vec![Polynomial::zero(2), var(2, 2)]).unwrap();
        let expected =
            Derivation::new(vec![Polynomial::zero(2), &var(2, 2) + &var(2, 1).pow(p)])
                .unwrap();
        assert_eq!(e.apply(&x2d2).unwrap(), expected);
    }

    /// Monomial-by-monomial application per the defining formula
    /// x^k ∂_j -> f^k θ_j; oracle for the closed-form `apply`.
    fn apply_monomialwise(e: &WittEndomorphism, d: &Derivation) -> Derivation {
        let n = e.arity();
        let mut out = Derivation::zero(n);
        for (j, coeff) in d.coefficients().iter().enumerate() {
            for (m, c) in coeff.terms() {
                let mut fk = Polynomial::constant(n, c.clone());
                for (i, &k) in m.exponents().iter().enumerate() {
                    fk = &fk * &e.tuple().components()[i].pow(k);
                }
                out = out
                    .checked_add(&e.tuple().theta()[j].module_mul(&fk).unwrap())
                    .unwrap();
            }
        }
        out
    }

    #[test]
    fn apply_matches_monomialwise_oracle() {
        let e = WittEndomorphism::from_tuple(shear(2));
        let d = Derivation::new(vec![
            &var(2, 1).pow(2) + &(&var(2, 1) * &var(2, 2)),
            &var(2, 2).pow(3) + &Polynomial::one(2),
        ])
        .unwrap();
        assert_eq!(e.apply(&d).unwrap(), apply_monomialwise(&e, &d));
    }

    #[test]
    fn compose_with_identity() {
        let e = WittEndomorphism::from_tuple(shear(2));
        let id = WittEndomorphism::from_tuple(JacobiTuple::identity(2));
        assert_eq!(e.compose(&id).unwrap(), e);
        assert_eq!(id.compose(&e).unwrap(), e);
    }

    /// The composition-order pin: with h = f·g defined by h_i = g_i(f),
    /// σ_h must equal σ_f ∘ σ_g and must differ from σ_g ∘ σ_f on the
    /// probe instance. Both directions are brute-forced over the basis.
    #[test]
    fn composition_order_is_sigma_f_then_g_inside() {
        let f = shear(2);
        let g = JacobiTuple::try_new(vec![var(2, 2), var(2, 1)]).unwrap();
        let h = WittEndomorphism::from_tuple(f.compose(&g).unwrap());
        let sf = WittEndomorphism::from_tuple(f);
        let sg = WittEndomorphism::from_tuple(g);
        let mut opposite_differs = false;
        for u in basis_elements(2, 2) {
            let via_product = h.apply(&u).unwrap();
            let via_fg = sf.apply(&sg.apply(&u).unwrap()).unwrap();
            assert_eq!(via_product, via_fg, "σ_(f·g) != σ_f ∘ σ_g at {u}");
            let via_gf = sg.apply(&sf.apply(&u).unwrap()).unwrap();
            if via_product != via_gf {
                opposite_differs = true;
            }
        }
        assert!(opposite_differs, "probe cannot distinguish composition orders");
    }

    #[test]
    fn compose_equals_tuple_product() {
        let f = shear(2);
        let g = shear(3);
        let composed = WittEndomorphism::from_tuple(f.clone())
            .compose(&WittEndomorphism::from_tuple(g.clone()))
            .unwrap();
        let expected = WittEndomorphism::from_tuple(f.compose(&g).unwrap());
        for u in basis_elements(2, 2) {
            assert_eq!(composed.apply(&u).unwrap(), expected.apply(&u).unwrap());
        }
    }

    #[test]
    fn verify_identity_counts_pairs() {
        let e = WittEndomorphism::from_tuple(JacobiTuple::identity(2));
        let report = verify_endomorphism(&e, 2).unwrap();
        assert!(report.pass());
        assert_eq!(report.checked, 144); // 12 basis elements squared
    }

    #[test]
    fn verify_shear_exhaustively() {
        let e = WittEndomorphism::from_tuple(shear(3));
        let report = verify_endomorphism(&e, 3).unwrap();
        assert!(report.pass(), "{:?}", report.counterexample);
    }

    #[test]
    fn corrupted_theta_fails_with_counterexample() {
        // Replace θ_1 by ∂_1 on f = (x1, x2 + x1^2): not a Lie homomorphism.
        let t = shear(2);
        let corrupted = CorruptedMap {
            tuple: t,
            theta1: Derivation::partial(2, 1).unwrap(),
        };
        let basis = basis_elements(2, 2);
        let mut failed = None;
        'outer: for u in &basis {
            for v in &basis {
                let lhs = corrupted.apply(&u.bracket(v).unwrap());
                let rhs = corrupted.apply(u).bracket(&corrupted.apply(v)).unwrap();
                if lhs != rhs {
                    failed = Some((u.clone(), v.clone()));
                    break 'outer;
                }
            }
        }
        assert!(failed.is_some(), "corrupted map unexpectedly a homomorphism");
    }

    struct CorruptedMap {
        tuple: JacobiTuple,
        theta1: Derivation,
    }

    impl CorruptedMap {
        fn apply(&self, d: &Derivation) -> Derivation {
            let mut out = Derivation::zero(2);
            for (j, coeff) in d.coefficients().iter().enumerate() {
                let moved = coeff.substitute(self.tuple.components()).unwrap();
                let theta = if j == 0 {
                    &self.theta1
                } else {
                    &self.tuple.theta()[j]
                };
                out = out.checked_add(&theta.module_mul(&moved).unwrap()).unwrap();
            }
            out
        }
    }

    #[test]
    fn xi_homomorphism_swap_and_shear() {
        let f = JacobiTuple::try_new(vec![var(2, 2), var(2, 1)]).unwrap();
        let g = shear(2);
        let report = verify_xi_homomorphism(&f, &g, 3).unwrap();
        assert!(report.pass(), "{:?}", report.counterexample);
        assert_eq!(report.checked, 20);
    }

    #[test]
    fn xi_homomorphism_identity_pair() {
        let id = JacobiTuple::identity(2);
        assert!(verify_xi_homomorphism(&id, &id, 2).unwrap().pass());
    }

    #[test]
    fn injectivity_on_basis() {
        let e = WittEndomorphism::from_tuple(shear(3));
        for u in basis_elements(2, 3) {
            assert!(!e.apply(&u).unwrap().is_zero(), "σ killed {u}");
        }
    }

    #[test]
    fn partials_map_to_theta_frame() {
        let t = shear(4);
        let e = WittEndomorphism::from_tuple(t.clone());
        for j in 1..=2 {
            assert_eq!(
                e.apply(&Derivation::partial(2, j).unwrap()).unwrap(),
                t.theta()[j - 1]
            );
        }
    }
}
