//! Exact moments of Haar-distributed unitary matrices, computed from explicit
//! matrix units of the symmetric group algebra.
//!
//! ```
//! use haar_units::haar::{moment, MomentQuery};
//! use haar_units::rational::rat;
//!
//! // ∫ |u₁₁|⁴ dU = 2 / (n(n+1))
//! let q = MomentQuery::from_slices(&[1, 1], &[1, 1], &[1, 1], &[1, 1])?;
//! assert_eq!(moment(&q, 3)?, rat(1, 6));
//! # Ok::<(), haar_units::error::Error>(())
//! ```

pub mod error;
pub mod group_algebra;
pub mod haar;
pub mod limits;
pub mod monte_carlo;
pub mod permutation;
pub mod poly;
pub mod rational;
pub mod schur_weyl;
pub mod tableaux;
pub mod verify;
pub mod weingarten;
