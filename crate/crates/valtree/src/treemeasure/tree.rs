//! Finite subtrees of the valuative tree spanned by finitely many valuations.

use std::collections::BTreeSet;

use crate::arith::{BranchParam, ExtRat, Q};
use crate::error::{Error, Result};
use crate::skp::{skp_of_branch, Skp};

/// A finite rooted subtree: `ν_m`, the requested points, their pairwise infima, and the
/// approximating points below them, so that the multiplicity is constant on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTree {
    nodes: Vec<Skp>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl FiniteTree {
    /// The tree spanned by `points` (any valuations, curve or not).
    pub fn span(points: &[Skp]) -> Result<FiniteTree> {
        let mut set: BTreeSet<Skp> = BTreeSet::new();
        set.insert(Skp::nu_m());
        for (i, p) in points.iter().enumerate() {
            set.insert(p.clone());
            for a in p.invariants().approx {
                set.insert(p.point_at(&a.alpha)?);
            }
            for o in &points[i + 1..] {
                set.insert(p.wedge(o));
            }
        }
        let mut nodes: Vec<Skp> = set.into_iter().collect();
        nodes.sort_by(|a, b| a.skewness().cmp(&b.skewness()).then_with(|| a.cmp(b)));
        debug_assert!(nodes[0].is_nu_m());
        let mut parent = vec![None; nodes.len()];
        let mut children = vec![Vec::new(); nodes.len()];
        for v in 1..nodes.len() {
            // nodes below v form a chain; the last one in skewness order is the parent
            let p = (0..v)
                .rev()
                .find(|&u| nodes[u].le(&nodes[v]))
                .ok_or_else(|| Error::Input("valuation not above ν_m".into()))?;
            parent[v] = Some(p);
            children[p].push(v);
        }
        Ok(FiniteTree {
            nodes,
            parent,
            children,
        })
    }

    pub fn nodes(&self) -> &[Skp] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn index_of(&self, s: &Skp) -> Option<usize> {
        self.nodes.iter().position(|n| n == s)
    }

    pub fn skewness(&self, v: usize) -> ExtRat {
        self.nodes[v].skewness()
    }

    /// Multiplicity on the open edge from the parent of `v` to `v`.
    pub fn edge_multiplicity(&self, v: usize) -> u32 {
        self.nodes[v].multiplicity()
    }

    /// Whether `u <= v` in the tree.
    pub fn is_below(&self, u: usize, v: usize) -> bool {
        let mut cur = Some(v);
        while let Some(w) = cur {
            if w == u {
                return true;
            }
            cur = self.parent[w];
        }
        false
    }

    /// The node `c` such that `s` lies on the edge `(parent(c), c]`, or the root,
    /// together with the skewness of the projection of `s` onto the tree.
    pub fn locate(&self, s: &Skp) -> (usize, ExtRat) {
        let mut best = 0;
        let mut best_alpha = ExtRat::int(1);
        for (i, n) in self.nodes.iter().enumerate() {
            let a = n.wedge(s).skewness();
            if a > best_alpha {
                best_alpha = a;
                best = i;
            }
        }
        if best == 0 {
            return (0, ExtRat::int(1));
        }
        // the smallest node above the projection on the path to `best`
        let mut c = best;
        while let Some(p) = self.parent[c] {
            if self.nodes[p].skewness() >= best_alpha {
                c = p;
            } else {
                break;
            }
        }
        (c, best_alpha)
    }

    /// Skewness as a rational, for finite nodes.
    pub(crate) fn alpha(&self, v: usize) -> Option<Q> {
        self.nodes[v].skewness().fin().cloned()
    }
}

/// The tree spanned by the curve valuations of `branches`, with extra nodes at the
/// given skewness on the segment toward a branch.
pub fn span_tree(branches: &[BranchParam], kinks: &[(usize, Q)]) -> Result<FiniteTree> {
    for (i, b) in branches.iter().enumerate() {
        for c in &branches[i + 1..] {
            if b.same_curve(c)? {
                return Err(Error::IdenticalBranches);
            }
        }
    }
    let mut pts: Vec<Skp> = branches.iter().map(skp_of_branch).collect::<Result<_>>()?;
    for (j, a) in kinks {
        let s = pts
            .get(*j)
            .ok_or_else(|| Error::Input(format!("no branch {j}")))?
            .point_at(a)?;
        pts.push(s);
    }
    FiniteTree::span(&pts)
}
