//! Projection algebras and the free projection-generated regular
//! *-semigroups they determine.

pub mod algebra;
pub mod boset;
pub mod chain_semigroup;
pub mod chains;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod presentations;
pub mod report;
pub mod semigroup;
pub mod topology;

pub use algebra::{ProjectionAlgebra, ProjectionRelations};
pub use error::{Error, Result};
pub use report::{ValidationReport, Violation};
pub use semigroup::{AdjacencyGraph, StarSemigroup};
