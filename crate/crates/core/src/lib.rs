//! Classical and spatial entropy measures for categorical lattices.
//!
//! - [`classic`]: Shannon, Batty and Karlström–Ceccato entropies over area partitions.
//! - [`cooccurrence`]: entropy of category pairs decomposed into spatial
//!   mutual information and residual entropy per distance class.
//! - [`simulate`]: synthetic monocentric, polycentric and decentralized
//!   urban rasters, and a seeded replication study over all measures.

#![forbid(unsafe_code)]

pub mod classic;
pub mod cooccurrence;
pub mod error;
pub mod lattice;
pub mod partitions;
pub mod report;
pub mod simulate;
pub mod stats;

pub use error::{Error, Result};
pub use lattice::{CategoricalGrid, Coordinate, LoadedGrid};
pub use partitions::AreaPartition;
