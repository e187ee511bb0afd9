//! Ideals given by generators factored into branches: tree transforms, Zariski
//! factorization, integral closure and mixed multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::measure::AtomicMeasure;
use super::potential::TreePotential;
use super::tree::FiniteTree;
use crate::arith::puiseux::factor_branches;
use crate::arith::{q, BiPoly, BranchParam, ExtRat, Q};
use crate::error::{Error, Result};
use crate::skp::{skp_of_branch, Skp};

/// A product `Π C_i^{e_i}` of declared branches, as `(branch index, exponent)` pairs.
pub type Product = Vec<(usize, u32)>;

/// An ideal `(φ_1, …, φ_r)` whose generators are products of declared branches
/// (units are irrelevant and dropped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    branches: Vec<BranchParam>,
    generators: Vec<Product>,
}

impl IdealSpec {
    pub fn new(branches: Vec<BranchParam>, generators: Vec<Product>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Input("an ideal needs at least one generator".into()));
        }
        for (i, b) in branches.iter().enumerate() {
            for c in &branches[i + 1..] {
                if b.same_curve(c)? {
                    return Err(Error::Input(format!("branch {b} is declared twice")));
                }
            }
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let mut merged: BTreeMap<usize, u32> = BTreeMap::new();
            for (i, e) in g {
                if i >= branches.len() {
                    return Err(Error::Input(format!("generator uses undeclared branch {i}")));
                }
                *merged.entry(i).or_default() += e;
            }
            merged.retain(|_, e| *e > 0);
            gens.push(merged.into_iter().collect());
        }
        Ok(IdealSpec {
            branches,
            generators: gens,
        })
    }

    /// Parses a comma-separated list of polynomial generators, splitting each into
    /// branches with the Newton–Puiseux helper.
    pub fn parse(text: &str) -> Result<Self> {
        let mut polys = Vec::new();
        let mut offset = 0;
        for part in text.split(',') {
            let p = crate::arith::parse_poly_in(part, &[("x", 0), ("y", 1)], offset)?;
            offset += part.len() + 1;
            polys.push(p);
        }
        Self::from_polys(&polys)
    }

    pub fn from_polys(polys: &[BiPoly]) -> Result<Self> {
        let mut branches: Vec<BranchParam> = Vec::new();
        let mut generators = Vec::new();
        for p in polys {
            let f = factor_branches(p)?;
            let mut g = Vec::new();
            for (b, e) in f.branches {
                let mut idx = None;
                for (i, d) in branches.iter().enumerate() {
                    if d.same_curve(&b)? {
                        idx = Some(i);
                        break;
                    }
                }
                let i = idx.unwrap_or_else(|| {
                    branches.push(b);
                    branches.len() - 1
                });
                g.push((i, e));
            }
            generators.push(g);
        }
        Self::new(branches, generators)
    }

    pub fn branches(&self) -> &[BranchParam] {
        &self.branches
    }

    pub fn generators(&self) -> &[Product] {
        &self.generators
    }

    /// The product ideal `I J` on the union of the declared branches.
    pub fn product(&self, other: &IdealSpec) -> Result<IdealSpec> {
        let mut branches = self.branches.clone();
        let mut map = Vec::new();
        for b in &other.branches {
            let mut found = None;
            for (i, d) in branches.iter().enumerate() {
                if d.same_curve(b)? {
                    found = Some(i);
                    break;
                }
            }
            map.push(found.unwrap_or_else(|| {
                branches.push(b.clone());
                branches.len() - 1
            }));
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            for h in &other.generators {
                let mut p = g.clone();
                p.extend(h.iter().map(|(i, e)| (map[*i], *e)));
                gens.push(p);
            }
        }
        IdealSpec::new(branches, gens)
    }

    /// Generators as polynomials (products of Weierstrass polynomials).
    pub fn generator_polys(&self) -> Vec<BiPoly> {
        let ws: Vec<BiPoly> = self.branches.iter().map(|b| b.weierstrass()).collect();
        self.generators
            .iter()
            .map(|g| g.iter().fold(BiPoly::one(), |acc, (i, e)| &acc * &ws[*i].pow(*e)))
            .collect()
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generator_polys().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// Curve valuations of the declared branches with the multiplicities `m(C)`.
fn branch_skps(spec: &IdealSpec) -> Result<Vec<Skp>> {
    spec.branches.iter().map(skp_of_branch).collect()
}

/// `g_φ` of one product on a tree: value at the root and slope into each node.
fn product_potential(tree: &FiniteTree, skps: &[Skp], prod: &Product) -> (Q, Vec<Q>) {
    let mut root = Q::zero();
    let mut slopes = vec![Q::zero(); tree.len()];
    for (i, e) in prod {
        let w = q(*e as i64) * q(skps[*i].multiplicity() as i64);
        root += &w;
        let end = tree.index_of(&skps[*i]).expect("branches are nodes");
        let mut cur = Some(end);
        while let Some(v) = cur {
            if v != 0 {
                slopes[v] += &w;
            }
            cur = tree.parent(v);
        }
    }
    (root, slopes)
}

fn values(tree: &FiniteTree, root: &Q, slopes: &[Q]) -> Vec<ExtRat> {
    let mut out = vec![ExtRat::Fin(root.clone()); tree.len()];
    for v in 1..tree.len() {
        let p = tree.parent(v).expect("non-root");
        let ap = tree.alpha(p).expect("finite interior");
        out[v] = match (&out[p], tree.alpha(v)) {
            (ExtRat::Fin(b), Some(a)) => ExtRat::Fin(b + &slopes[v] * (a - ap)),
            (ExtRat::Fin(b), None) if slopes[v].is_zero() => ExtRat::Fin(b.clone()),
            _ => ExtRat::Inf,
        };
    }
    out
}

/// Skewness values inside edges where the minimum over generators switches.
fn kinks(tree: &FiniteTree, pots: &[(Q, Vec<Q>)]) -> Result<Vec<Skp>> {
    let vals: Vec<Vec<ExtRat>> = pots.iter().map(|(r, s)| values(tree, r, s)).collect();
    let mut out = Vec::new();
    for v in 1..tree.len() {
        let p = tree.parent(v).expect("non-root");
        let mut a = tree.alpha(p).expect("finite interior");
        let end = tree.skewness(v);
        // current values at `a`
        let mut cur: Vec<Q> = vals.iter().map(|vs| vs[p].fin().expect("finite").clone()).collect();
        loop {
            let k = argmin(&cur, pots, v);
            // earliest crossing by a generator with smaller slope
            let mut next: Option<Q> = None;
            for (l, (_, sl)) in pots.iter().enumerate() {
                if sl[v] < pots[k].1[v] {
                    let t = (&cur[l] - &cur[k]) / (&pots[k].1[v] - &sl[v]);
                    if t > Q::zero() && next.as_ref().is_none_or(|n| t < *n) {
                        next = Some(t);
                    }
                }
            }
            let Some(t) = next else { break };
            let at = &a + &t;
            if ExtRat::Fin(at.clone()) >= end {
                break;
            }
            out.push(tree.nodes()[v].point_at(&at)?);
            for (l, c) in cur.iter_mut().enumerate() {
                *c += &pots[l].1[v] * &t;
            }
            a = at;
        }
    }
    Ok(out)
}

/// Generator of least value, ties broken by least slope on the edge into `v`.
fn argmin(cur: &[Q], pots: &[(Q, Vec<Q>)], v: usize) -> usize {
    (0..cur.len())
        .min_by(|&i, &j| cur[i].cmp(&cur[j]).then_with(|| pots[i].1[v].cmp(&pots[j].1[v])))
        .expect("nonempty")
}

fn min_potential(tree: FiniteTree, pots: &[(Q, Vec<Q>)]) -> Result<TreePotential> {
    let vals: Vec<Vec<ExtRat>> = pots.iter().map(|(r, s)| values(&tree, r, s)).collect();
    let root = pots.iter().map(|(r, _)| r.clone()).min().expect("nonempty");
    let mut slopes = vec![Q::zero(); tree.len()];
    for (v, slope) in slopes.iter_mut().enumerate().skip(1) {
        let p = tree.parent(v).expect("non-root");
        let cur: Vec<Q> = vals.iter().map(|vs| vs[p].fin().expect("finite").clone()).collect();
        let k = argmin(&cur, pots, v);
        *slope = pots[k].1[v].clone();
    }
    TreePotential::new(tree, root, slopes)
}

/// `g_I(ν) = min_φ ν(φ)` over the generators, on the tree spanned by the declared
/// branches with kinks inserted where the minimum switches.
pub fn tree_transform(spec: &IdealSpec) -> Result<TreePotential> {
    let skps = branch_skps(spec)?;
    let tree = FiniteTree::span(&skps)?;
    let pots: Vec<(Q, Vec<Q>)> = spec
        .generators
        .iter()
        .map(|g| product_potential(&tree, &skps, g))
        .collect();
    let extra = kinks(&tree, &pots)?;
    let (tree, pots) = if extra.is_empty() {
        (tree, pots)
    } else {
        let mut pts = skps.clone();
        pts.extend(extra);
        let tree = FiniteTree::span(&pts)?;
        let pots = spec
            .generators
            .iter()
            .map(|g| product_potential(&tree, &skps, g))
            .collect();
        (tree, pots)
    };
    min_potential(tree, &pots)
}

/// One factor `I_ν^n` of the Zariski factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiFactor {
    pub valuation: Skp,
    /// `b(ν)` for divisorial atoms, `m(ν)` for curve atoms.
    pub b: u32,
    pub exponent: u32,
}

/// `ρ_I = Δ g_I` and its factorization `ρ_I = Σ n_i b_i ν_i`.
pub fn zariski_factor(spec: &IdealSpec) -> Result<(AtomicMeasure, Vec<ZariskiFactor>)> {
    let rho = tree_transform(spec)?.laplacian();
    let mut factors = Vec::new();
    for (s, c) in rho.atoms() {
        let b = s.generic_multiplicity().unwrap_or_else(|| s.multiplicity());
        let n = c / q(b as i64);
        if !n.is_integer() || n <= Q::zero() {
            return Err(Error::NonIntegral(format!(
                "mass {c} at {s} is not a positive multiple of {b}"
            )));
        }
        let exponent = u32::try_from(n.to_integer()).map_err(|_| Error::NonIntegral("exponent overflow".into()))?;
        factors.push(ZariskiFactor {
            valuation: s.clone(),
            b,
            exponent,
        });
    }
    Ok((rho, factors))
}

/// Whether the product `φ` of branches lies in the integral closure of `I`, i.e.
/// `g_φ >= g_I` on the whole tree (affine pieces are compared at both ends).
pub fn integral_closure_member(phi: &[(BranchParam, u32)], spec: &IdealSpec) -> Result<bool> {
    let gi = tree_transform(spec)?;
    let phi_skps: Vec<(Skp, u32)> = phi
        .iter()
        .map(|(b, e)| Ok((skp_of_branch(b)?, *e)))
        .collect::<Result<_>>()?;
    let mut pts: Vec<Skp> = gi.tree().nodes().to_vec();
    pts.extend(phi_skps.iter().map(|(s, _)| s.clone()));
    let tree = FiniteTree::span(&pts)?;
    let gphi = |s: &Skp| -> Result<ExtRat> {
        let mut acc = ExtRat::zero();
        for (c, e) in &phi_skps {
            acc = acc + s.eval_irreducible(c)?.mul_q(&q(*e as i64))?;
        }
        Ok(acc)
    };
    for (v, node) in tree.nodes().iter().enumerate() {
        let lhs = gphi(node)?;
        let rhs = gi.eval(node);
        if lhs < rhs {
            return Ok(false);
        }
        if tree.alpha(v).is_none() {
            // both are ∞ or compare slopes toward the end
            let p = tree.parent(v).expect("non-root");
            let mid_alpha = tree.alpha(p).expect("finite") + q(1);
            let probe = node.point_at(&mid_alpha)?;
            let big = node.point_at(&(tree.alpha(p).expect("finite") + q(2)))?;
            let dl = gphi(&big)?
                .fin()
                .cloned()
                .zip(gphi(&probe)?.fin().cloned())
                .map(|(a, b)| a - b);
            let dr = gi
                .eval(&big)
                .fin()
                .cloned()
                .zip(gi.eval(&probe).fin().cloned())
                .map(|(a, b)| a - b);
            if let (Some(dl), Some(dr)) = (dl, dr) {
                if dl < dr {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `e(I, J) = ρ_I · ρ_J` for primary ideals.
pub fn mixed_multiplicity(i: &IdealSpec, j: &IdealSpec) -> Result<Q> {
    let (ri, _) = zariski_factor(i)?;
    let (rj, _) = zariski_factor(j)?;
    for r in [&ri, &rj] {
        if r.atoms().keys().any(|s| s.is_curve()) {
            return Err(Error::NotPrimary("the tree measure has a curve atom".into()));
        }
    }
    Ok(ri.inner_product(&rj)?.expect_fin("mixed multiplicity")?.clone())
}

/// Parses `"x^2*y, y^3"`-style generator lists; convenience for [`IdealSpec::parse`].
pub fn parse_ideal(text: &str) -> Result<IdealSpec> {
    IdealSpec::parse(text)
}
