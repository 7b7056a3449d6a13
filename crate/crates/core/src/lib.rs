//! Generalized spectral Turán quantities for uniform hypergraphs.
//!
//! The central object is the `(alpha, Q)`-spectral radius
//! `lambda_{alpha,Q}(H) = max { P_{Q,H}(x) : sum x_i^alpha = 1 }`, where `P_{Q,H}` sums
//! `prod_{i in phi} x_i` over all injective homomorphisms `phi: Q -> H`.
//!
//! * [`hypergraph`]: representation and constructions (Turán hypergraphs, pentagon blowups).
//! * [`embeddings`]: `Inj(Q, H)`, copy counts, `Q`-degrees and `Q`-links.
//! * [`polynomial`]: the Lagrangian `Q`-polynomial and points of the alpha-sphere.
//! * [`solver`]: KKT fixed-point solver, symmetry reduction and a grid oracle.
//! * [`entropy`]: random embeddings and the entropic density.
//! * [`verify`]: desk-scale verification suites.

pub mod embeddings;
pub mod entropy;
pub mod error;
pub mod hypergraph;
pub mod polynomial;
pub mod solver;
pub mod verify;

pub use embeddings::{EmbeddingList, Pattern};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, PartitionSpec};
pub use polynomial::{LagrangianPolynomial, WeightVector};
pub use solver::{SolverConfig, SpectralResult};
