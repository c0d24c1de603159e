//! Exact distribution of the DNA random-access retrieval time `tau_i(G)`.
//!
//! Columns of a rank-`k` generator matrix `G` are drawn uniformly with
//! replacement until the standard basis vector `e_i` lies in their span.
//! Everything about that stopping time (expectation, raw moments, variance,
//! point masses, survival function) is a function of the recovery-set counts
//! `alpha_i(G, s)`, which this crate computes either by enumeration or from
//! closed forms for classical code families, then evaluates exactly.

pub mod cli;
pub mod combinat;
pub mod error;
pub mod families;
pub mod field;
pub mod matrix;
pub mod moments;
pub mod recovery;
pub mod simulate;

pub use error::{Error, Result};
