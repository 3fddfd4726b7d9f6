//! Recognition of Robinsonian similarity matrices with the
//! Similarity-First Search (SFS) multisweep algorithm.
//!
//! A symmetric matrix is *Robinson* when its entries never increase while
//! moving away from the diagonal along any row or column; it is
//! *Robinsonian* when some simultaneous row/column permutation makes it
//! Robinson. [`recognize`](recognize::recognize) decides the question and
//! returns either a Robinson ordering or a violating-triple certificate.
//!
//! The crate is split along the moving parts of the algorithm:
//!
//! * [`matrix`] — sparse symmetric storage, Matrix Market / CSV loading,
//!   quantization, components, dissimilarity conversion;
//! * [`partition`] — the ordered-partition queue and the refinement step
//!   the whole search is built on;
//! * [`sfs`] — the SFS, SFS⁺ and DiSFS sweeps plus the 3-point checker
//!   for SFS orderings;
//! * [`recognize`] — the multisweep driver, early exits, and the
//!   linear-time Robinson verifier;
//! * [`oracle`] — definitional brute-force machinery (paths avoiding a
//!   vertex, valid vertices, anchors, similarity layers, exhaustive
//!   search) used for cross-checking;
//! * [`instances`] — deterministic generators for golden, random and
//!   adversarial test matrices.
//!
//! Core algorithms are generic over the weight scalar through
//! [`WeightScalar`]; all comparisons are exact, so the I/O layer
//! quantizes real input to scaled 64-bit integers (see
//! [`matrix::LoadOptions`]). The concrete aliases below are what the CLI
//! and generators use.

pub mod error;
pub mod instances;
pub mod matrix;
pub mod oracle;
pub mod partition;
pub mod recognize;
pub mod sfs;

#[cfg(test)]
pub(crate) mod test_fixtures;

pub use error::{Error, Result};

use std::fmt::Debug;

/// Scalar type usable as an edge weight: exactly comparable, with zero
/// meaning "non-edge". Blanket-implemented; `i64`, `i32`, `u64`, ... all
/// qualify. Floating point does not (no total order), which is by
/// construction: the algorithms require exact equality.
pub trait WeightScalar: Copy + Ord + num_traits::Zero + Debug + 'static {}

impl<T> WeightScalar for T where T: Copy + Ord + num_traits::Zero + Debug + 'static {}

/// Quantized weight produced by the loaders.
pub type Weight = i64;

/// Similarity matrix over quantized weights.
pub type Matrix = matrix::SimilarityMatrix<Weight>;

/// Dissimilarity matrix over quantized weights.
pub type DissimilarityMatrix = matrix::DissimilarityMatrixOf<Weight>;
