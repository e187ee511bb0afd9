//! Centered valuations on `Q[[x, y]]`.
//!
//! * [`arith`] — exact arithmetic, polynomials, branch parameterizations.
//! * [`skp`] — sequences of key polynomials: evaluation, order, infima, invariants.
//! * [`dualgraph`] — blowups, Farey weights, desingularization, Eggers trees.
//! * [`treemeasure`] — tree potentials, Laplacians, ideals, multiplicities, classes.
//! * [`io`] — JSON documents and Graphviz output.
//! * [`selftest`] — the acceptance suite against independent oracles.

pub mod arith;
pub mod dualgraph;
mod error;
pub mod io;
pub mod selftest;
pub mod skp;
pub mod treemeasure;

pub use error::{Error, Result};
