//! Eggers trees: segments `[1, ∞]`, one per branch, glued at coincidence orders and
//! marked at characteristic exponents.

use std::collections::BTreeSet;

use super::equising::EquisingData;
use crate::arith::{q, ExtRat};

/// A node of an Eggers tree at parameter `K` (the thinness minus one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EggersNode {
    pub param: ExtRat,
    pub parent: Option<usize>,
    /// Branches passing through the node.
    pub branches: BTreeSet<usize>,
    /// Branches having a characteristic exponent here.
    pub marks: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EggersTree {
    pub nodes: Vec<EggersNode>,
}

impl EggersTree {
    pub fn root(&self) -> &EggersNode {
        &self.nodes[0]
    }

    /// The end point of branch `j`.
    pub fn end(&self, j: usize) -> Option<usize> {
        self.nodes
            .iter()
            .position(|n| n.param.is_inf() && n.branches.contains(&j))
    }

    /// The meeting point of branches `i` and `j`.
    pub fn meet(&self, i: usize, j: usize) -> Option<&EggersNode> {
        self.nodes
            .iter()
            .filter(|n| n.branches.contains(&i) && n.branches.contains(&j))
            .max_by(|a, b| a.param.cmp(&b.param))
    }
}

/// Builds the Eggers tree. A point `K` of branch `j` is identified with the point `K`
/// of `j'` when `K <= A(C_j ∧ C_j') - 1`.
pub fn eggers_tree(d: &EquisingData) -> EggersTree {
    let nb = d.branches().len();
    let one = q(1);
    let mut nodes: Vec<EggersNode> = Vec::new();
    // (branch, param) -> node
    let mut lookup: Vec<Vec<(ExtRat, usize)>> = vec![Vec::new(); nb];
    for j in 0..nb {
        let mut params: BTreeSet<ExtRat> = BTreeSet::new();
        params.insert(ExtRat::Fin(one.clone()));
        params.insert(ExtRat::Inf);
        for a in &d.branches()[j].farey {
            params.insert(ExtRat::Fin(a - &one));
        }
        for k in (0..nb).filter(|&k| k != j) {
            params.insert(ExtRat::Fin(d.contact(j, k) - &one));
        }
        let mut parent = None;
        for p in params {
            let shared = (0..j).find(|&k| ExtRat::Fin(d.contact(j, k) - &one) >= p);
            let node = match shared.and_then(|k| lookup[k].iter().find(|(x, _)| *x == p).map(|(_, n)| *n)) {
                Some(n) => n,
                None => {
                    nodes.push(EggersNode {
                        param: p.clone(),
                        parent,
                        branches: BTreeSet::new(),
                        marks: BTreeSet::new(),
                    });
                    nodes.len() - 1
                }
            };
            nodes[node].branches.insert(j);
            if let ExtRat::Fin(v) = &p {
                if d.branches()[j].farey.contains(&(v + &one)) {
                    nodes[node].marks.insert(j);
                }
            }
            lookup[j].push((p, node));
            parent = Some(node);
        }
    }
    EggersTree { nodes }
}
