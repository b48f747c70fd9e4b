//! Exact arithmetic for global function fields given by explicit curves over
//! finite fields: divisor class groups, unramified characters and their
//! L-polynomials, Hecke eigenvalue structure on Eisenstein derivative
//! families, and toroidal period values — all at desk scale, with every
//! analytic quantity reduced to finite exact data plus controlled `f64`
//! evaluation.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`] — `F_{p^k}` with exp/log tables and subfield embeddings.
//! * [`poly`] — dense univariate polynomials over a finite field.
//! * [`curve`] — curve models (`P^1`, imaginary hyperelliptic), point counts,
//!   and places as Frobenius orbits.
//! * [`picard`] — Mumford representation, Cantor arithmetic, and the divisor
//!   class group as an explicit abelian group with invariant factors.
//! * [`character`] — unramified characters as exact roots of unity, plus the
//!   sign twist and complex shifts.
//! * [`function_field`] — the bundle of cached curve data every analytic
//!   routine consumes.
//! * [`lfun`] — L-polynomials by divisor sums, Euler-product cross-checks,
//!   functional equation data, and zero pairing.
//! * [`hecke`] — eigenvalues `λ_x`, Jordan blocks on derivative families,
//!   temperedness windows.
//! * [`periods`] — toroidal orders and dimension, split/nonsplit period
//!   values, residue classification, and quadratic twist searches.
//! * [`analysis`] — JSON curve specs, the full report, and the verification
//!   suite behind the CLI.
//!
//! The `examples/` directory is the guided tour: each example is a runnable
//! walkthrough of one capability.

pub mod analysis;
pub mod character;
pub mod curve;
pub mod error;
pub mod field;
pub mod function_field;
pub mod hecke;
pub mod lfun;
pub mod periods;
pub mod picard;
pub mod poly;
pub mod roots;

pub use error::{Error, Result};
