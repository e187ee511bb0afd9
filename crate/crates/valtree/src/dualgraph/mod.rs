//! Blowups, Farey weights, dual graphs and the minimal desingularization.

mod chart;
mod classical;
mod eggers;
mod equising;
mod graph;
mod simulate;

pub use chart::{BlowupModel, Chart};
pub use classical::{classical_invariants, semigroup_from_tree, ClassicalInvariants};
pub use eggers::{eggers_tree, EggersNode, EggersTree};
pub use equising::{branch_data, contact_parameter, minimal_desing_from_equising, EquisingBranch, EquisingData};
pub use graph::{DualGraph, Point, Vertex};
pub use simulate::{
    minimal_desing_from_branches, minimal_desing_from_params, nearby_points_of_branch, NearbyPoints, Until,
};
