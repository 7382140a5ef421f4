//! Exact combinatorics and linear algebra for the torus-fixed locus of Quot
//! schemes of points on affine space.
//!
//! The fixed locus splits into pieces indexed by characteristic functions
//! ([`charfn`]). Each piece is an incidence scheme of linear subspaces
//! ([`incidence`]), whose combinatorial type can be realized geometrically
//! and back again ([`realize`]). The [`schemegeo`] module computes invariants
//! of these incidence schemes, and [`verify`] ties everything to independently
//! enumerable counts.

pub mod charfn;
pub mod error;
pub mod fixtures;
pub mod incidence;
pub mod realize;
pub mod schemegeo;
pub mod verify;

pub use charfn::{CharFn, NestedIdeals, Point};
pub use error::{Error, Result};
pub use incidence::{ChiStructure, Classification, IncidenceStructure, IntervalRep, VertexId};
pub use realize::{GridSets, LiftedSets, ProjectedRegions};
pub use schemegeo::config::SubspaceConfig;
pub use schemegeo::field::{Field, PrimeField, Rationals};
pub use schemegeo::matrix::ExactMatrix;
