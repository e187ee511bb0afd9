//! Piecewise affine potentials on finite trees and the tree Laplacian.

use num_traits::{Signed, Zero};

use super::measure::AtomicMeasure;
use super::tree::FiniteTree;
use crate::arith::{ExtRat, Q};
use crate::error::{Error, Result};
use crate::skp::Skp;

/// A function on a [`FiniteTree`], affine in skewness on each edge: its value at the
/// root and its slope on the edge into every other node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePotential {
    tree: FiniteTree,
    root_value: Q,
    slopes: Vec<Q>,
}

impl TreePotential {
    pub fn new(tree: FiniteTree, root_value: Q, slopes: Vec<Q>) -> Result<Self> {
        if slopes.len() != tree.len() {
            return Err(Error::NonAffine("one slope per node is required".into()));
        }
        Ok(TreePotential {
            tree,
            root_value,
            slopes,
        })
    }

    /// Builds the potential from node values, checking that infinite ends come with
    /// consistent slopes (`slope_to_ends` gives the slope into each infinite node).
    pub fn from_values(tree: FiniteTree, values: &[ExtRat], slope_to_ends: impl Fn(usize) -> Q) -> Result<Self> {
        let root_value = values[0].expect_fin("root value")?.clone();
        let mut slopes = vec![Q::zero(); tree.len()];
        for v in 1..tree.len() {
            let p = tree.parent(v).expect("non-root");
            let ap = tree
                .alpha(p)
                .ok_or_else(|| Error::NonAffine("infinite interior node".into()))?;
            slopes[v] = match (tree.alpha(v), &values[v]) {
                (Some(av), ExtRat::Fin(gv)) => (gv - values[p].expect_fin("value")?) / (av - ap),
                (None, _) => slope_to_ends(v),
                (Some(_), ExtRat::Inf) => return Err(Error::NonAffine("infinite value at a finite node".into())),
            };
        }
        Ok(TreePotential {
            tree,
            root_value,
            slopes,
        })
    }

    pub fn tree(&self) -> &FiniteTree {
        &self.tree
    }

    pub fn root_value(&self) -> &Q {
        &self.root_value
    }

    pub fn slope(&self, v: usize) -> &Q {
        &self.slopes[v]
    }

    /// Value at a node.
    pub fn value(&self, v: usize) -> ExtRat {
        match self.tree.parent(v) {
            None => ExtRat::Fin(self.root_value.clone()),
            Some(p) => {
                let base = self.value(p);
                self.affine(&base, p, v, &self.tree.skewness(v))
            }
        }
    }

    fn affine(&self, base: &ExtRat, p: usize, v: usize, alpha: &ExtRat) -> ExtRat {
        let ap = self.tree.alpha(p).expect("interior nodes are finite");
        match (base, alpha) {
            (ExtRat::Fin(b), ExtRat::Fin(a)) => ExtRat::Fin(b + &self.slopes[v] * (a - ap)),
            (ExtRat::Fin(b), ExtRat::Inf) if self.slopes[v].is_zero() => ExtRat::Fin(b.clone()),
            _ => ExtRat::Inf,
        }
    }

    /// Value at an arbitrary valuation: the potential is locally constant off the tree.
    pub fn eval(&self, s: &Skp) -> ExtRat {
        let (c, alpha) = self.tree.locate(s);
        match self.tree.parent(c) {
            None => ExtRat::Fin(self.root_value.clone()),
            Some(p) => self.affine(&self.value(p), p, c, &alpha),
        }
    }

    /// `Δg`: at the root `g(ν_m) - Σ slopes out`, elsewhere `slope in - Σ slopes out`.
    pub fn laplacian(&self) -> AtomicMeasure {
        let mut m = AtomicMeasure::new();
        for v in 0..self.tree.len() {
            let out = self
                .tree
                .children(v)
                .iter()
                .fold(Q::zero(), |a, &c| a + &self.slopes[c]);
            let inc = if v == 0 {
                self.root_value.clone()
            } else {
                self.slopes[v].clone()
            };
            m.add_atom(self.tree.nodes()[v].clone(), &(inc - out));
        }
        m
    }

    /// Nonnegative, increasing and concave: `Δg >= 0` everywhere and slopes >= 0.
    pub fn is_positive_potential(&self) -> bool {
        self.root_value >= Q::zero()
            && self.slopes.iter().all(|s| !s.is_negative())
            && self.laplacian().atoms().values().all(|c| c.is_positive())
    }
}

/// `g_ρ(τ) = Σ c_i α(ν_i ∧ τ)` on the tree spanned by the atoms.
pub fn potential_of_measure(rho: &AtomicMeasure) -> Result<TreePotential> {
    let points: Vec<Skp> = rho.atoms().keys().cloned().collect();
    let tree = FiniteTree::span(&points)?;
    let mut slopes = vec![Q::zero(); tree.len()];
    for (s, c) in rho.atoms() {
        let i = tree.index_of(s).expect("atoms are nodes");
        let mut cur = Some(i);
        while let Some(v) = cur {
            if v != 0 {
                slopes[v] += c;
            }
            cur = tree.parent(v);
        }
    }
    TreePotential::new(tree, rho.mass(), slopes)
}

/// Laplacian of a potential.
pub fn laplacian(g: &TreePotential) -> AtomicMeasure {
    g.laplacian()
}
