//! Both directions between characteristic functions and geometric
//! intersection patterns.
//!
//! [`chi_to_regions`] projects the carriers of `S_chi` to `Z^{d-1}`, where
//! their ball neighbourhoods meet exactly along the (closure of the) edges.
//! Conversely [`sets_to_chi`] turns well-separated lattice sets into a
//! characteristic function whose structure is their intersection pattern,
//! and [`graph_to_chi`] and [`intervals_to_chi`] produce such sets from a
//! partite graph or from intervals.

mod geometry;
mod grid;
mod layout;
mod regions;

pub use geometry::{segment_cells, segment_distance2};
pub use grid::{lift, sets_to_chi, sets_to_chi_with_cap, Cell, GridSets, LiftedSets, DEFAULT_SUPPORT_CAP};
pub use layout::{
    graph_to_chi, graph_to_chi_with_cap, graph_to_grid_sets, intervals_to_chi, intervals_to_grid_sets, Layout,
};
pub use regions::{balls_meet, chi_to_regions, intersection_structure, regions_interval_rep, Centre, ProjectedRegions};
