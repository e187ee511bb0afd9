//! The acceptance suite: nine checks against independent oracles, with a
//! deterministic pass/fail report.

mod corpus;
mod criteria;
mod oracles;

use std::fmt;
use std::time::Instant;

pub use corpus::{corpus, tangential_pair, CORPUS};
pub use criteria::artifacts;
pub use oracles::{all_models, colength, monomial_mixed_multiplicity, monomial_multiplicity, random_poly, random_skp};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} {}: {}", self.id, self.name, self.detail)
    }
}

type Check = fn() -> criteria::Outcome;

const CRITERIA: [(&str, Check); 9] = [
    ("valuation axioms", criteria::valuation_axioms),
    ("oracle equivalence", criteria::oracle_equivalence),
    ("Farey isometry", criteria::farey_isometry),
    ("desingularization", criteria::desingularization),
    ("classical dictionary", criteria::classical_dictionary),
    ("ideals and closures", criteria::ideals),
    ("mixed multiplicities", criteria::mixed_multiplicities),
    ("cohomology isometry", criteria::cohomology_isometry),
    ("determinism", criteria::determinism),
];

/// Runs criterion `id` (1-based).
pub fn run_one(id: u8) -> Option<CriterionResult> {
    let (name, check) = *CRITERIA.get(usize::from(id).checked_sub(1)?)?;
    let outcome = check();
    Some(CriterionResult {
        id,
        name,
        passed: outcome.is_ok(),
        detail: outcome.unwrap_or_else(|e| e),
    })
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA.len() as u8).filter_map(run_one).collect()
}

/// Like [`run_all`], also reporting wall time per criterion (not deterministic).
pub fn run_all_timed() -> Vec<(CriterionResult, f64)> {
    (1..=CRITERIA.len() as u8)
        .filter_map(|id| {
            let t = Instant::now();
            run_one(id).map(|r| (r, t.elapsed().as_secs_f64()))
        })
        .collect()
}

/// One line per criterion and a summary line.
pub fn render(results: &[CriterionResult]) -> String {
    let mut out: String = results.iter().map(|r| format!("{r}\n")).collect();
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    out
}
