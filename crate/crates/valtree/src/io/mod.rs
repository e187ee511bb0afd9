//! Serialization: versioned JSON documents and Graphviz output.

mod dot;
mod json;

pub use dot::to_dot;
pub use json::{
    complex_measure_to_json, equising_from_json, equising_to_json, graph_from_json, graph_to_json, ideal_from_json,
    ideal_to_json, measure_from_json, measure_to_json, skp_from_json, skp_to_json,
};
