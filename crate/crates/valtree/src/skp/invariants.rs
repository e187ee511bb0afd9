//! Tree invariants of a valuation read off its SKP.

use std::fmt;

use num_traits::One;

use super::Skp;
use crate::arith::{q, BranchParam, ExtRat, Q};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Divisorial,
    Irrational,
    Curve,
    InfinitelySingularTruncated,
}

impl Kind {
    /// `(rk, rat.rk, tr.deg)`.
    pub fn ranks(self) -> (u8, u8, u8) {
        match self {
            Kind::Divisorial => (1, 1, 1),
            Kind::Irrational => (1, 2, 0),
            Kind::Curve => (2, 2, 0),
            Kind::InfinitelySingularTruncated => (1, 1, 0),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Divisorial => "divisorial",
            Kind::Irrational => "irrational",
            Kind::Curve => "curve",
            Kind::InfinitelySingularTruncated => "infinitely-singular-truncated",
        })
    }
}

/// One element `ν_i` of the approximating sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxPoint {
    /// Index of the key where the multiplicity jumps.
    pub k: usize,
    pub m: u32,
    pub alpha: Q,
    pub thinness: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub kind: Kind,
    /// Monomial in the working coordinates (k = 1).
    pub monomial: bool,
    pub alpha: ExtRat,
    pub thinness: ExtRat,
    pub m: u32,
    pub b: Option<u32>,
    pub approx: Vec<ApproxPoint>,
    pub semigroup: Vec<ExtRat>,
}

impl InvariantReport {
    pub fn ranks(&self) -> (u8, u8, u8) {
        self.kind.ranks()
    }
}

impl Skp {
    /// Indices `j < k` with `n_j >= 2`.
    pub fn approximating_indices(&self) -> Vec<usize> {
        (1..self.k()).filter(|&j| self.steps[j - 1].n >= 2).collect()
    }

    /// Generic multiplicity `b = n_k d_k` (divisorial only).
    pub fn generic_multiplicity(&self) -> Option<u32> {
        if self.is_curve() {
            return None;
        }
        Some(self.steps[self.k() - 1].n * self.d(self.k()))
    }

    pub fn invariants(&self) -> InvariantReport {
        let k = self.k();
        let alpha = self.skewness();
        let approx: Vec<ApproxPoint> = self
            .approximating_indices()
            .into_iter()
            .map(|j| {
                let a = self.values[j].div_q(&q(self.d(j) as i64));
                let t = self.thinness_at(&a);
                ApproxPoint {
                    k: j,
                    m: self.d(j),
                    alpha: a.fin().expect("finite").clone(),
                    thinness: t.fin().expect("finite").clone(),
                }
            })
            .collect();
        let mut semigroup: Vec<ExtRat> = vec![ExtRat::int(1)];
        semigroup.extend(approx.iter().map(|p| self.values[p.k].clone()));
        if !self.is_curve() {
            semigroup.push(self.values[k].clone());
        }
        semigroup.sort();
        semigroup.dedup();
        let kind = if self.is_curve() { Kind::Curve } else { Kind::Divisorial };
        InvariantReport {
            kind,
            monomial: k == 1,
            thinness: self.thinness_at(&alpha),
            alpha,
            m: self.multiplicity(),
            b: self.generic_multiplicity(),
            approx,
            semigroup,
        }
    }

    /// ν(x) for the input coordinate x.
    pub fn value_of_x(&self) -> ExtRat {
        if self.swap {
            self.values[1].clone()
        } else {
            ExtRat::int(1)
        }
    }
}

/// `(α_x, A_x, m_x)`: invariants relative to the coordinate x.
pub fn relative_invariants(s: &Skp) -> Result<(ExtRat, ExtRat, u32)> {
    let vx = s.value_of_x();
    let ExtRat::Fin(vx) = vx else {
        return Err(Error::Input(
            "the curve valuation of {x = 0} has no relative invariants".into(),
        ));
    };
    let inv = s.invariants();
    let alpha_x = inv.alpha.div_q(&(&vx * &vx));
    let thin_x = inv.thinness.div_q(&vx);
    // on the segment [ν_x, ν_m] the relative multiplicity is 1
    let m_x = if s.is_nu_m() || (s.swap && s.k() == 1) {
        1
    } else {
        let v = &vx * q(inv.m as i64);
        debug_assert!(v.denom().is_one());
        u32::try_from(v.to_integer()).map_err(|_| Error::Input("multiplicity overflow".into()))?
    };
    Ok((alpha_x, thin_x, m_x))
}

/// Ball distance `m(C) m(C') / (C · C')` between distinct branches.
pub fn ball_distance(c: &BranchParam, d: &BranchParam) -> Result<Q> {
    let i = c.intersection(d)?;
    match i {
        ExtRat::Inf => Err(Error::IdenticalBranches),
        ExtRat::Fin(v) => Ok(q(c.n() as i64) * q(d.n() as i64) / v),
    }
}
