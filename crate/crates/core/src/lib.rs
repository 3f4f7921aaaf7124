//! Exact topology of generalized projective Stiefel manifolds `P_l W_{n,k}`.
//!
//! The crate computes mod-p cohomology presentations, Chern and Pontrjagin classes as
//! truncated power series in the degree-2 class `x`, and emits certificates for upper
//! bounds on span, non-immersion dimensions and lower bounds on ranks of complementary
//! bundles. Every number is exact ([`num_bigint::BigInt`]).

pub mod cli;
pub mod cohomology;
pub mod error;
pub mod geometry;
pub mod ring;
pub mod series;
pub mod weights;

pub use error::{Error, Result};
pub use ring::{Modulus, Residue};
pub use series::TruncatedSeries;
pub use weights::WeightTuple;
