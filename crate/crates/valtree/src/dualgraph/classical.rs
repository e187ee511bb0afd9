//! Classical invariants of a plane branch (characteristic exponents, semigroup
//! generators) read off its approximating sequence.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::{q, BranchParam, Q};
use crate::error::{Error, Result};
use crate::skp::skp_of_branch;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalInvariants {
    /// Multiplicity.
    pub n: u32,
    /// Number of characteristic pairs.
    pub g: usize,
    /// Characteristic exponents `β_1 < … < β_g`.
    pub beta: Vec<u64>,
    /// `e_i = gcd(n, β_1, …, β_i)` for `i = 1..g`.
    pub e: Vec<u64>,
    /// `n_i = e_{i-1} / e_i` for `i = 1..g`.
    pub n_i: Vec<u64>,
    /// Minimal generators `β̄_0 = n, β̄_1, …, β̄_g` of the semigroup.
    pub beta_bar: Vec<u64>,
}

fn integral(v: Q) -> Result<u64> {
    if !v.is_integer() {
        return Err(Error::NonIntegral(format!("{v} is not an integer")));
    }
    v.to_integer()
        .to_u64()
        .ok_or_else(|| Error::NonIntegral(format!("{v} out of range")))
}

/// Classical invariants via the dictionary `β_i / n = A_i - 1`, with `β̄_i` from the
/// recursion `β̄_i = n_{i-1} β̄_{i-1} + β_i - β_{i-1}`.
pub fn classical_invariants(c: &BranchParam) -> Result<ClassicalInvariants> {
    let inv = skp_of_branch(c)?.invariants();
    let n = inv.m;
    let nq = q(n as i64);
    let beta: Vec<u64> = inv
        .approx
        .iter()
        .map(|p| integral((&p.thinness - q(1)) * &nq))
        .collect::<Result<_>>()?;
    let mut e = Vec::new();
    let mut n_i = Vec::new();
    let mut prev = n as u64;
    for b in &beta {
        let ei = prev.gcd(b);
        n_i.push(prev / ei);
        e.push(ei);
        prev = ei;
    }
    let mut beta_bar = vec![n as u64];
    for i in 0..beta.len() {
        let next = if i == 0 {
            beta[0]
        } else {
            n_i[i - 1] * beta_bar[i] + beta[i] - beta[i - 1]
        };
        beta_bar.push(next);
    }
    Ok(ClassicalInvariants {
        n,
        g: beta.len(),
        beta,
        e,
        n_i,
        beta_bar,
    })
}

/// `β̄_i` computed on the tree side as `n · α_i · m_i`, for `i = 1..g`.
pub fn semigroup_from_tree(c: &BranchParam) -> Result<Vec<u64>> {
    let inv = skp_of_branch(c)?.invariants();
    let n = q(inv.m as i64);
    let mut out = vec![inv.m as u64];
    for p in &inv.approx {
        out.push(integral(&n * &p.alpha * q(p.m as i64))?);
    }
    Ok(out)
}
