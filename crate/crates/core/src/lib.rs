//! Eigenvalue-interlacing bounds on Perron-weighted graph parameters.
//!
//! Given a connected graph with adjacency eigenvalues `lambda_1 > ... >= lambda_n`
//! and positive eigenvector `nu`, each vertex set `U` gets the weight
//! `w(U) = sum nu_u^2`. The crate computes spectral upper bounds on the
//! largest weight of an independent set (and of a set at pairwise distance
//! greater than `k`), a Rayleigh-quotient clique bound, chromatic lower
//! bounds, and quotient-matrix interlacing certificates for vertex
//! partitions. Exact oracles check every bound on small graphs.

pub mod corpus;
pub mod eigen;
pub mod graphio;
pub mod interlace;
pub mod oracle;
pub mod polyopt;
pub mod report;
pub mod weights;

pub use eigen::{eigendecompose, perron_vector, Normalization, Spectrum, SymMatrix, WeightVector};
pub use graphio::{Family, Graph};
pub use report::{Error, Report, WeightMode};
pub use weights::BoundReport;
