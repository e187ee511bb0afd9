//! MacLane-style construction of an SKP from a valuation oracle.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{decompose, key_product, Skp};
use crate::arith::{q, BiPoly, BranchParam, ExtRat, Q};
use crate::error::{Error, Result};

const MAX_KEYS: usize = 256;

/// Initial form of an element: a scalar (curve valuations) or a polynomial in one
/// residue variable (divisorial valuations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InForm {
    Scalar(Q),
    Poly(BTreeMap<u32, Q>),
}

impl InForm {
    /// `θ` with `self = θ · other`, if it exists.
    fn ratio(&self, other: &InForm) -> Option<Q> {
        match (self, other) {
            (InForm::Scalar(a), InForm::Scalar(b)) => Some(a / b),
            (InForm::Poly(a), InForm::Poly(b)) => {
                let (e, lead) = b.iter().next_back()?;
                let theta = a.get(e)? / lead;
                let same = a.len() == b.len() && b.iter().all(|(k, v)| a.get(k).is_some_and(|w| *w == v * &theta));
                same.then_some(theta)
            }
            _ => None,
        }
    }
}

/// Value and initial form of a polynomial; `initial` is `None` iff the value is ∞.
#[derive(Debug, Clone)]
pub struct Probe {
    pub value: ExtRat,
    pub initial: Option<InForm>,
}

/// A valuation given as a black box, on polynomials in input coordinates.
pub trait Oracle {
    fn probe(&self, phi: &BiPoly) -> Result<Probe>;
}

/// Runs the key-polynomial recursion against an oracle, returning the normalized SKP.
pub(crate) fn build_skp(oracle: &dyn Oracle) -> Result<Skp> {
    let vx = oracle.probe(&BiPoly::x())?.value;
    let vy = oracle.probe(&BiPoly::y())?.value;
    let swap = vy < vx;
    let scale = vx.clone().min(vy.clone());
    let scale = scale.expect_fin("ν(m)")?.clone();
    // probe in working coordinates, normalized
    let probe = |phi: &BiPoly| -> Result<Probe> {
        let input = if swap { phi.swap_vars() } else { phi.clone() };
        let mut p = oracle.probe(&input)?;
        p.value = p.value.div_q(&scale);
        Ok(p)
    };
    let mut keys = vec![BiPoly::x(), BiPoly::y()];
    let mut values = vec![ExtRat::int(1), (if swap { vx } else { vy }).div_q(&scale)];
    let mut ns: Vec<u32> = Vec::new();
    loop {
        let j = keys.len() - 1;
        let ExtRat::Fin(_) = values[j] else { break };
        if keys.len() > MAX_KEYS {
            return Err(Error::IterationCap("key polynomial sequence does not terminate".into()));
        }
        let fin: Vec<Q> = values.iter().map(|v| v.fin().cloned().expect("finite")).collect();
        let (n, m) =
            decompose(&fin, &ns).ok_or_else(|| Error::Input("values do not admit a key decomposition".into()))?;
        let pw = keys[j].pow(n);
        let pi = key_product(&keys[..j], &m);
        let (a, b) = (probe(&pw)?, probe(&pi)?);
        let target = ExtRat::Fin(&fin[j] * q(n as i64));
        if a.value != target || b.value != target {
            return Err(Error::Input(format!(
                "oracle is not a valuation: expected {target}, got {} and {}",
                a.value, b.value
            )));
        }
        let theta = match (a.initial, b.initial) {
            (Some(ia), Some(ib)) => ia.ratio(&ib),
            _ => None,
        };
        let Some(theta) = theta else { break };
        if theta.is_zero() {
            break;
        }
        let next = &pw - &pi.scale(&theta);
        let v = probe(&next)?.value;
        if v <= target {
            return Err(Error::Input("key polynomial failed to increase the value".into()));
        }
        ns.push(n);
        keys.push(next);
        values.push(v);
    }
    Skp::new(keys, values, swap)
}

struct BranchOracle<'a>(&'a BranchParam);

impl Oracle for BranchOracle<'_> {
    fn probe(&self, phi: &BiPoly) -> Result<Probe> {
        let n = q(self.0.n() as i64);
        Ok(match self.0.leading(phi)? {
            Some((o, c)) => Probe {
                value: ExtRat::Fin(q(o as i64) / n),
                initial: Some(InForm::Scalar(c)),
            },
            None => Probe {
                value: ExtRat::Inf,
                initial: None,
            },
        })
    }
}

/// The SKP of the curve valuation of a branch.
pub fn skp_of_branch(c: &BranchParam) -> Result<Skp> {
    build_skp(&BranchOracle(c))
}
