//! Fixed test corpus of branches.

use crate::arith::{BranchParam, PolyParam};

/// Branch strings of the corpus, in a fixed order.
pub const CORPUS: &[&str] = &[
    "n=1; y = 0",
    "n=1; y = t",
    "n=2; y = t^3",
    "n=2; y = t^3 + t^5",
    "n=2; y = t^3 + 1/2*t^5 - 5/8*t^7",
    "n=3; y = t^4",
    "n=3; y = t^5",
    "n=2; y = t^4 + t^5",
    "n=4; y = t^6 + t^7",
    "n=1; y = t^2",
    "n=1; x = 0",
    "n=2; x = t^3",
    "n=2; y = t^5",
    "n=1; y = -t",
];

pub fn corpus() -> Vec<BranchParam> {
    CORPUS
        .iter()
        .map(|s| s.parse().expect("corpus branches are valid"))
        .collect()
}

/// The tangential pair `(t^2, t^3)` and `(t^2(1+t^2), t^3(1+t^2)^2)`, exactly.
pub fn tangential_pair() -> [PolyParam; 2] {
    [
        PolyParam::parse("t^2", "t^3").expect("valid"),
        PolyParam::parse("t^2 + t^4", "t^3 + 2*t^5 + t^7").expect("valid"),
    ]
}

/// Index in [`CORPUS`] of the truncated Puiseux expansion of the second member of
/// [`tangential_pair`].
pub const TANGENTIAL_TRUNCATION: usize = 4;
