//! Exact-arithmetic computation of knot and link invariants from Seifert
//! matrices.
//!
//! The library computes, entirely over the rationals (with algebraic-number
//! extensions where signatures at algebraic circle points require them):
//!
//! * the Alexander polynomial and the Smith normal form of `tS - S^T` over
//!   `Q[t, t^-1]`,
//! * a reduction of any rational Seifert matrix to a block sum of a zero
//!   matrix and an invertible matrix, with a replayable move log,
//! * the real Hermitian variation structure of an invertible Seifert matrix
//!   and its decomposition into indecomposable summands (Hodge numbers),
//! * the Blanchfield linking form and its decomposition into elementary
//!   on-circle and off-circle summands over `R[t, t^-1]`,
//! * Tristram-Levine signatures and their jumps, evaluated exactly,
//! * the mod-2 spectrum for structures whose eigenvalues are roots of unity.
//!
//! Two independent pipelines (variation-structure classification and
//! linking-form decomposition) compute the same invariants and are
//! cross-validated against each other.

pub mod algebraic;
pub mod blanchfield;
pub mod cli;
pub mod error;
pub mod fieldctx;
pub mod fixtures;
pub mod hvs;
pub mod invariants;
pub mod laurent;
pub mod plot;
pub mod polymat;
pub mod qmat;
pub mod qpoly;
pub mod report;
pub mod seifert;
pub mod symfactor;
pub mod zfactor;

pub use error::{Error, Result};
