//! Finite-dimensional representations of the Askey-Wilson algebra.
//!
//! The Askey-Wilson algebra `AW_q(A1, A2, A3)` is the complex associative
//! algebra on generators `I1`, `I2`, `I3` subject to the q-commutator
//! relations
//!
//! ```text
//! q^{1/2} I1 I2 - q^{-1/2} I2 I1 = I3 + A3,
//! q^{1/2} I2 I3 - q^{-1/2} I3 I2 = I1 + A1,
//! q^{1/2} I3 I1 - q^{-1/2} I1 I3 = I2 + A2,
//! ```
//!
//! with complex parameters `A1`, `A2`, `A3` and `q` not a root of unity.
//! This crate constructs, verifies and classifies its finite-dimensional
//! representations and extracts the associated Leonard-pair and q-Racah
//! polynomial data. It is organised in two layers:
//!
//! * an **exact layer** ([`awsym`]) working over rational coefficients
//!   times integer powers of `v = q^{1/2}` and polynomial symbols
//!   `A1, A2, A3`: normal ordering of noncommutative words, confluence of
//!   the rewrite system, Casimir centrality and the algebra isomorphisms
//!   are verified with no floating point involved;
//! * a **numeric layer** ([`qkernel`], [`repbuild`], [`repverify`],
//!   [`leonard`]) building dense complex matrices for every explicit
//!   representation family and checking relations, spectra, shift-operator
//!   action, equivalence and the q-Racah recurrences against tolerances.
//!
//! All representation-level formulas are evaluated in terms of stored
//! half-powers (`q^{1/2}`, `q^mu`, `q^{j_i/2}`), never raw exponents, so
//! branch cuts of the complex power cannot introduce internal
//! inconsistencies. [`qkernel::qpow`] exists only at the input boundary.

pub mod awsym;
pub mod error;
pub mod io;
pub mod leonard;
pub mod matrix;
pub mod qkernel;
pub mod repbuild;
pub mod repverify;
pub mod scalar;

pub use error::{Error, Result};
pub use qkernel::{FieldCfg, Scalar};
