//! Exact twisted cohomology of finite-dimensional models of locally
//! conformally Kähler manifolds.
//!
//! The crate computes Morse–Novikov cohomology (the cohomology of
//! `d − α·θ∧`), Dolbeault and Bott-Chern cohomology with values in the flat
//! bundle `L_α`, the twisted Frölicher spectral sequence, and the weights
//! `α` where any of these jump. Alongside it ships the jet calculus behind
//! the spectral vanishing argument (truncated power-series automorphisms and
//! the resolvent of `t − λ`) and an exact monomial computation of
//! `H^q(M, Ω^p ⊗ L_α)` on diagonal Hopf manifolds.
//!
//! All arithmetic is exact over `ℚ(i)`; there is no floating point anywhere.

pub mod bigraded;
pub mod error;
pub mod exterior;
pub mod format;
pub mod frolicher;
pub mod hopf;
pub mod jets;
pub mod matrix;
pub mod model;
pub mod pencil;
pub mod poly;
pub mod scalar;
pub mod subspace;
pub mod twisted;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use model::{builtin, Model};
pub use pencil::{pencil_exceptional_set, ExceptionalSet, Pencil};
pub use poly::Poly;
pub use scalar::{Rational, Scalar};
pub use subspace::{quotient_dim, Subspace};
pub use twisted::Weight;
