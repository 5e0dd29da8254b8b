//! Type-A rational Dunkl theory at desk scale.
//!
//! The crate builds Jack polynomials in exact rational arithmetic, applies
//! Dunkl operators to polynomials, evaluates the type-A Bessel kernel with
//! certified truncation, integrates against the Dunkl weight over the
//! positive orthant, and classifies Riesz indices against the generalized
//! Wallach set. Every closed-form identity the library relies on is
//! re-checked by a verification suite (`rdunkl verify`).

pub mod cli;
pub mod dunkl;
pub mod error;
pub mod gamma;
pub mod hyp;
pub mod jack;
pub mod laplace;
pub mod partition;
pub mod poly;
pub mod quad;
pub mod riesz;
pub mod report;
pub mod scalar;
pub mod suites;

pub use error::{Error, Result};
pub use partition::Partition;
pub use scalar::{Multiplicity, Prec, Rat};
