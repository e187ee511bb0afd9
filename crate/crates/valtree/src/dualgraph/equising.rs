//! Equisingularity data of a reduced curve and the combinatorial construction of its
//! minimal desingularization from that data alone.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;

use super::graph::{DualGraph, Point};
use crate::arith::{q, BranchParam, ExtRat, Q};
use crate::error::{Error, Result};
use crate::skp::{skp_of_branch, Skp};

const MAX_ROUNDS: usize = 100_000;

/// Equisingularity type of one branch: its multiplicity and the Farey parameters
/// `A(j, 1) < … < A(j, g)` of its approximating sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquisingBranch {
    pub multiplicity: u32,
    pub farey: Vec<Q>,
}

/// Equisingularity type of a reduced curve: its branches plus the Farey parameter of
/// `C_j ∧ C_j'` for every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquisingData {
    branches: Vec<EquisingBranch>,
    contacts: BTreeMap<(usize, usize), Q>,
}

fn bad(msg: String) -> Error {
    Error::InconsistentEquising(msg)
}

impl EquisingData {
    /// Checks and stores the data. `contacts` must contain every pair `(j, j')`, `j < j'`.
    pub fn new(branches: Vec<EquisingBranch>, contacts: BTreeMap<(usize, usize), Q>) -> Result<Self> {
        let two = q(2);
        for (j, b) in branches.iter().enumerate() {
            let mut prev = two.clone();
            let mut denom = 1u64;
            for a in &b.farey {
                if *a <= prev {
                    return Err(bad(format!("branch {j}: Farey parameters must increase and exceed 2")));
                }
                let d = a.denom().to_u64().ok_or_else(|| bad("denominator overflow".into()))?;
                if d <= denom || d % denom != 0 {
                    return Err(bad(format!(
                        "branch {j}: denominators of {a} do not refine the previous ones"
                    )));
                }
                prev = a.clone();
                denom = d;
            }
            if denom != b.multiplicity as u64 {
                return Err(bad(format!(
                    "branch {j}: multiplicity {} does not match the data",
                    b.multiplicity
                )));
            }
        }
        let n = branches.len();
        for (&(i, j), c) in &contacts {
            if i >= j || j >= n {
                return Err(bad(format!("contact key ({i}, {j}) is not a pair of branches")));
            }
            if *c < two {
                return Err(bad(format!("contact of ({i}, {j}) is below 2")));
            }
        }
        if contacts.len() != n * n.saturating_sub(1) / 2 {
            return Err(bad("a contact is missing".into()));
        }
        let d = EquisingData { branches, contacts };
        for i in 0..n {
            for j in i + 1..n {
                let c = d.contact(i, j);
                let below = |k: usize| -> Vec<&Q> { d.branches[k].farey.iter().filter(|a| *a < c).collect() };
                if below(i) != below(j) {
                    return Err(bad(format!("branches {i} and {j} disagree below their contact {c}")));
                }
                for k in j + 1..n {
                    let mut cs = [d.contact(i, j), d.contact(i, k), d.contact(j, k)];
                    cs.sort();
                    if cs[0] != cs[1] {
                        return Err(bad(format!("contacts of {i}, {j}, {k} are not ultrametric")));
                    }
                }
            }
        }
        Ok(d)
    }

    /// Reads the data off parameterizations: approximating sequences from SKPs, contacts
    /// from intersection numbers `C·C' = m m' α(C ∧ C')`.
    pub fn from_branches(cs: &[BranchParam]) -> Result<Self> {
        let skps: Vec<Skp> = cs.iter().map(skp_of_branch).collect::<Result<_>>()?;
        let branches = skps.iter().map(branch_data).collect();
        let mut contacts = BTreeMap::new();
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                let ExtRat::Fin(meet) = cs[i].intersection(&cs[j])? else {
                    return Err(Error::IdenticalBranches);
                };
                contacts.insert((i, j), contact_parameter(&skps[i], &skps[j], &meet)?);
            }
        }
        Self::new(branches, contacts)
    }

    pub fn branches(&self) -> &[EquisingBranch] {
        &self.branches
    }

    pub fn contacts(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.contacts
    }

    /// `A(C_i ∧ C_j)` for `i != j`.
    pub fn contact(&self, i: usize, j: usize) -> &Q {
        &self.contacts[&(i.min(j), i.max(j))]
    }
}

/// Multiplicity and approximating Farey parameters of a curve valuation.
pub fn branch_data(s: &Skp) -> EquisingBranch {
    let inv = s.invariants();
    EquisingBranch {
        multiplicity: inv.m,
        farey: inv.approx.into_iter().map(|p| p.thinness).collect(),
    }
}

/// Farey parameter of `ν_C ∧ ν_D` from the intersection number of the two branches.
pub fn contact_parameter(c: &Skp, d: &Skp, intersection: &Q) -> Result<Q> {
    let alpha = intersection / (q(c.multiplicity() as i64) * q(d.multiplicity() as i64));
    match c.thinness_at(&ExtRat::Fin(alpha)) {
        ExtRat::Fin(a) => Ok(a),
        ExtRat::Inf => Err(Error::IdenticalBranches),
    }
}

/// `A(j, i)`, with `A(j, g_j + 1) = ∞` standing for the branch itself.
fn target(d: &EquisingData, j: usize, i: usize) -> ExtRat {
    d.branches[j].farey.get(i).cloned().map_or(ExtRat::Inf, ExtRat::Fin)
}

fn param(g: &DualGraph, e: usize) -> ExtRat {
    ExtRat::Fin(g.vertices()[e].farey_parameter())
}

/// Builds the dual graph of the minimal desingularization from equisingularity data
/// by the vertex/edge modification loop; branch `j` is attached where it ends up.
///
/// `I(j)` is 0-based here and runs up to `g_j`, the value `g_j` meaning that the
/// whole approximating sequence has appeared. Vertices holding a single such
/// branch are final and are not modified again.
pub fn minimal_desing_from_equising(d: &EquisingData) -> Result<DualGraph> {
    let mut g = DualGraph::new();
    g.blowup_mut(Point::Origin)?;
    let nb = d.branches.len();
    let mut idx = vec![0usize; nb];
    let mut at_vertex: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut at_edge: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    at_vertex.insert(0, (0..nb).collect());
    let finished = |j: usize, idx: &[usize]| idx[j] == d.branches[j].farey.len();

    for _ in 0..MAX_ROUNDS {
        let mut changed = false;
        let vertices: Vec<(usize, BTreeSet<usize>)> = at_vertex.iter().map(|(e, s)| (*e, s.clone())).collect();
        for (e, js) in vertices {
            let ae = param(&g, e);
            // classes of branches through the same point of E
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for &j in &js {
                match classes
                    .iter_mut()
                    .find(|c| ExtRat::Fin(d.contact(c[0], j).clone()) > ae)
                {
                    Some(c) => c.push(j),
                    None => classes.push(vec![j]),
                }
            }
            let mut stay = BTreeSet::new();
            for class in classes {
                if class.len() == 1 && finished(class[0], &idx) {
                    stay.insert(class[0]);
                    continue;
                }
                changed = true;
                let f = g.blowup_mut(Point::Free(e))?;
                let af = param(&g, f);
                for j in class {
                    let t = target(d, j, idx[j]);
                    if af < t {
                        at_vertex.entry(f).or_default().insert(j);
                    } else if af > t {
                        at_edge.entry((e, f)).or_default().insert(j);
                    } else {
                        return Err(bad(format!("branch {j}: {af} cannot be created by a free blowup")));
                    }
                }
            }
            if stay.is_empty() {
                at_vertex.remove(&e);
            } else {
                at_vertex.insert(e, stay);
            }
        }
        let edges: Vec<((usize, usize), BTreeSet<usize>)> = std::mem::take(&mut at_edge).into_iter().collect();
        for ((e1, e2), js) in edges {
            changed = true;
            let (lo, hi) = if param(&g, e1) < param(&g, e2) {
                (e1, e2)
            } else {
                (e2, e1)
            };
            let f = g.blowup_mut(Point::Satellite(lo, hi))?;
            let af = param(&g, f);
            for j in js {
                let t = target(d, j, idx[j]);
                if af == t {
                    idx[j] += 1;
                    at_vertex.entry(f).or_default().insert(j);
                } else if af > t {
                    at_edge.entry((lo, f)).or_default().insert(j);
                } else {
                    at_edge.entry((f, hi)).or_default().insert(j);
                }
            }
        }
        if !changed {
            for (e, js) in at_vertex {
                for j in js {
                    g.attach(j, e)?;
                }
            }
            check_output(d, &g)?;
            return Ok(g);
        }
    }
    Err(Error::IterationCap(
        "the modification loop does not terminate; data is inconsistent".into(),
    ))
}

/// Every branch must end on a component of generic multiplicity equal to its own multiplicity.
fn check_output(d: &EquisingData, g: &DualGraph) -> Result<()> {
    for (&j, &e) in g.attachments() {
        let b = g.vertices()[e].farey.1;
        if b != d.branches[j].multiplicity as u64 {
            return Err(bad(format!("branch {j} ends on a component with b = {b}")));
        }
    }
    Ok(())
}
