//! Matroid computations around cyclic orderings of circuits and cocircuits.
//!
//! Matroids are represented by independence oracles over ground sets of at
//! most 64 elements. The crate builds transversal duals `Psi(n, s)`, wheels,
//! whirls, free spikes, uniform matroids and truncations; it verifies nearly
//! cyclic and fully cyclic orderings, weak maps and quotients, and replays the
//! two-block circuit argument showing that `Psi(n, s)` has no elementary
//! quotient of the expected shape.

pub mod axioms;
pub mod constructions;
pub mod counterexample;
pub mod cyclic;
pub mod error;
pub mod limits;
pub mod matroid;
pub mod report;
pub mod subset;
pub mod transversal;
pub mod weakmap;

pub use error::{Error, Result};
pub use matroid::{CircuitFamily, IndependenceOracle, Matroid};
pub use report::{VerificationReport, Witness};
pub use subset::{GroundSet, Subset};
