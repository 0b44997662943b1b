//! Exact computer algebra for the rank-n Witt algebra: sparse polynomials
//! over the rationals, derivations with the Lie bracket, Jacobi tuples and
//! their dual θ-frames, the induced Witt-algebra endomorphisms, tame
//! automorphism words, the Nagata automorphism, and a verification engine
//! for the homomorphism identities on bounded-degree bases.

pub mod autgroup;
pub mod endo;
pub mod error;
pub mod jacobi;
pub mod parse;
pub mod poly;
pub mod witt;

pub use autgroup::{nagata, nagata_invariant, TameGenerator, TameWord};
pub use endo::{verify_endomorphism, verify_xi_homomorphism, VerificationReport, WittEndomorphism};
pub use error::{Error, NotJacobi};
pub use jacobi::{jacobi_matrix, JacobiTuple, PolyMatrix};
pub use poly::{Coefficient, Monomial, Polynomial};
pub use witt::{basis_elements, generating_set, Derivation};
