//! Shared helpers for the integration suites: seeded random tame words,
//! polynomials, and derivations.

use num_bigint::BigInt;
use rand::Rng;
use wittcas::autgroup::{TameGenerator, TameWord};
use wittcas::poly::{Coefficient, Polynomial};
use wittcas::witt::Derivation;

pub fn rat(a: i64, b: i64) -> Coefficient {
    Coefficient::new(BigInt::from(a), BigInt::from(b))
}

/// A small nonzero rational: numerator in ±1..=3, denominator in 1..=3.
pub fn small_nonzero_rational(rng: &mut impl Rng) -> Coefficient {
    let numer = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    let denom = rng.gen_range(1..=3);
    rat(numer, denom)
}

pub fn random_generator(rng: &mut impl Rng, n: usize) -> TameGenerator {
    match rng.gen_range(0..3) {
        0 => TameGenerator::Swap(rng.gen_range(1..n)),
        1 => TameGenerator::Scale(small_nonzero_rational(rng)),
        _ => {
            let p = rng.gen_range(0..=4);
            if rng.gen_bool(0.5) {
                TameGenerator::psi(p)
            } else {
                TameGenerator::Shear {
                    p,
                    c: small_nonzero_rational(rng),
                }
            }
        }
    }
}

/// Random word of length at most `max_len` (at least 1 generator).
pub fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> TameWord {
    let len = rng.gen_range(1..=max_len);
    let gens = (0..len).map(|_| random_generator(rng, n)).collect();
    TameWord::new(n, gens).expect("sampled generators are valid")
}

/// Random polynomial with up to `max_terms` terms, each exponent at most
/// `max_exp`, and small rational coefficients (possibly cancelling to 0).
pub fn random_polynomial(
    rng: &mut impl Rng,
    n: usize,
    max_exp: u32,
    max_terms: usize,
) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        let coeff = small_nonzero_rational(rng);
        let term = Polynomial::term(n, exps, coeff).unwrap();
        p = p.checked_add(&term).unwrap();
    }
    p
}

pub fn random_derivation(rng: &mut impl Rng, n: usize, max_exp: u32) -> Derivation {
    let coeffs = (0..n).map(|_| random_polynomial(rng, n, max_exp, 3)).collect();
    Derivation::new(coeffs).unwrap()
}
