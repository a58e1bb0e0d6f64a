//! Random bipartite mixed states, conditional q-entropies and the
//! partial-transpose criterion.
//!
//! States are drawn from the product of the Haar measure on U(N) and the flat
//! measure on the eigenvalue simplex. For each state the crate evaluates the
//! Rényi/Tsallis conditional entropies S_q(A|B), S_q(B|A) and the Peres
//! partial-transpose test, and the [`survey`] module turns millions of such
//! evaluations into binned and global probability estimates.
//!
//! The `parallel` feature (on by default) spreads Monte Carlo chunks over a
//! rayon pool; results are identical with and without it.

pub mod entanglement;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod parallel;
pub mod selftest;
pub mod separability;
pub mod states;
pub mod survey;

pub use entropy::EntropicParameter;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Spectrum};
pub use states::{BipartiteDims, DensityMatrix, Subsystem};
pub use survey::{Axis, SurveyConfig};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
