//! Invariants of incidence schemes `C_S`: the parameter spaces of tuples of
//! linear subspaces `E_v ⊆ k^r`, `dim E_v = d(v)`, with `E_u ⊆ E_v` along
//! every edge.

pub mod config;
pub mod count;
pub mod dimension;
pub mod field;
mod gf;
pub mod matrix;
pub mod sample;
pub mod tangent;
pub mod verdict;

pub use config::{AnyConfig, SubspaceConfig};
pub use count::{binomial, coordinate_fixed_points, count_points_fq, flag_dim, gaussian_binomial, grassmannian_dim};
pub use dimension::{interval_dimension, peeling_steps, structure_dimension};
pub use gf::prime_power;
pub use tangent::{tangent_dimension, tangent_dimension_closure};
pub use verdict::{smooth_verdict, structure_verdict, Verdict, WitnessOptions};
