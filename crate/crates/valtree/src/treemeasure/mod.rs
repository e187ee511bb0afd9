//! Potentials and measures on finite subtrees of the valuative tree: tree transforms
//! of ideals, Zariski factorization, mixed multiplicities and the cohomology isometry.

mod ideal;
mod measure;
mod potential;
mod tree;
mod voute;

pub use ideal::{
    integral_closure_member, mixed_multiplicity, parse_ideal, tree_transform, zariski_factor, IdealSpec, Product,
    ZariskiFactor,
};
pub use measure::{pairing, AtomicMeasure, ComplexMeasure, CQ};
pub use potential::{laplacian, potential_of_measure, TreePotential};
pub use tree::{span_tree, FiniteTree};
pub use voute::{
    class_measure, class_of_component, class_of_divisorial, class_of_vertex, measure_of_class, CohomClass,
};

#[cfg(test)]
mod tests;
