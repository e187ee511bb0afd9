//! Primitive parameterizations of plane branches and the substitution-order oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::division::rem_y;
use super::extrat::{ExtRat, Q};
use super::parse::parse_poly_in;
use super::poly::BiPoly;
use super::series::Series;
use crate::error::{Error, Result};

pub const DEFAULT_TRUNC_CAP: usize = 1 << 12;

/// An irreducible curve germ given by `x = t^n, y = Σ c_e t^e` (or, when `swapped`,
/// `y = t^n, x = Σ c_e t^e`).
///
/// Invariants checked at construction: `gcd(n, e) = 1` over the support and `e >= n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchParam {
    n: u32,
    coeffs: BTreeMap<u32, Q>,
    swapped: bool,
    trunc: usize,
    trunc_cap: usize,
}

impl BranchParam {
    pub fn new(n: u32, coeffs: BTreeMap<u32, Q>, swapped: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidBranch("n must be positive".into()));
        }
        let coeffs: BTreeMap<u32, Q> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if let Some((&e, _)) = coeffs.iter().find(|(&e, _)| e < n) {
            return Err(Error::InvalidBranch(format!(
                "exponent {e} is below n = {n}; the branch is tangent to the parameter axis"
            )));
        }
        let g = coeffs.keys().fold(n, |g, &e| g.gcd(&e));
        if g != 1 {
            return Err(Error::InvalidBranch(format!(
                "parameterization is not primitive (gcd {g})"
            )));
        }
        let maxe = coeffs.keys().copied().max().unwrap_or(0).max(n) as usize;
        Ok(BranchParam {
            n,
            coeffs,
            swapped,
            trunc: 4 * maxe + 8,
            trunc_cap: DEFAULT_TRUNC_CAP,
        })
    }

    /// Convenience constructor from `(exponent, coefficient)` pairs.
    pub fn from_pairs(n: u32, pairs: &[(u32, Q)]) -> Result<Self> {
        let mut m = BTreeMap::new();
        for (e, c) in pairs {
            *m.entry(*e).or_insert_with(Q::zero) += c;
        }
        Self::new(n, m, false)
    }

    /// The line `{y = 0}`.
    pub fn x_axis() -> Self {
        Self::new(1, BTreeMap::new(), false).expect("valid")
    }

    /// The line `{x = 0}`.
    pub fn y_axis() -> Self {
        Self::new(1, BTreeMap::new(), true).expect("valid")
    }

    pub fn with_trunc(mut self, t: usize) -> Self {
        self.trunc = t.max(1);
        self.trunc_cap = self.trunc_cap.max(self.trunc);
        self
    }

    pub fn with_trunc_cap(mut self, cap: usize) -> Self {
        self.trunc_cap = cap.max(self.trunc);
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Q> {
        &self.coeffs
    }

    pub fn swapped(&self) -> bool {
        self.swapped
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn trunc_cap(&self) -> usize {
        self.trunc_cap
    }

    /// The same branch written in exchanged coordinates.
    pub fn exchanged(&self) -> Self {
        let mut b = self.clone();
        b.swapped = !b.swapped;
        b
    }

    /// `(x(t), y(t))` modulo `t^prec`.
    pub fn series(&self, prec: usize) -> (Series, Series) {
        let power = Series::monomial(Q::one(), self.n as usize, prec);
        let other = Series::from_terms(self.coeffs.iter().map(|(e, c)| (*e, c)), prec);
        if self.swapped {
            (other, power)
        } else {
            (power, other)
        }
    }

    /// The Weierstrass polynomial of the branch: monic in y (in x when swapped) of degree n.
    ///
    /// Computed as the characteristic polynomial of multiplication by the series on
    /// `Q[x][t]/(t^n - x)`, via Faddeev–LeVerrier.
    pub fn weierstrass(&self) -> BiPoly {
        let n = self.n as usize;
        // entries are polynomials in x only
        let mut m = vec![vec![BiPoly::zero(); n]; n];
        for k in 0..n {
            for (&e, c) in &self.coeffs {
                let s = e as usize + k;
                let (xp, r) = (s / n, s % n);
                m[r][k] = &m[r][k] + &BiPoly::monomial(c.clone(), xp as u32, 0);
            }
        }
        let matmul = |a: &Vec<Vec<BiPoly>>, b: &Vec<Vec<BiPoly>>| -> Vec<Vec<BiPoly>> {
            let mut out = vec![vec![BiPoly::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = BiPoly::zero();
                    for l in 0..n {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            s = &s + &(&a[i][l] * &b[l][j]);
                        }
                    }
                    out[i][j] = s;
                }
            }
            out
        };
        // c[i] is the coefficient of y^i
        let mut c = vec![BiPoly::zero(); n + 1];
        c[n] = BiPoly::one();
        let mut mk = vec![vec![BiPoly::zero(); n]; n];
        for k in 1..=n {
            let mut next = matmul(&m, &mk);
            for (i, row) in next.iter_mut().enumerate() {
                row[i] = &row[i] + &c[n + 1 - k];
            }
            mk = next;
            let am = matmul(&m, &mk);
            let mut tr = BiPoly::zero();
            for (i, row) in am.iter().enumerate() {
                tr = &tr + &row[i];
            }
            c[n - k] = tr.scale(&-Q::new(1.into(), (k as i64).into()));
        }
        let mut w = BiPoly::zero();
        for (i, ci) in c.iter().enumerate() {
            w = &w + &ci.shift(0, i as u32);
        }
        if self.swapped {
            w.swap_vars()
        } else {
            w
        }
    }

    /// Leading term `(ord_t, coefficient)` of `φ(x(t), y(t))`, or `None` if the
    /// composition vanishes identically, at the fixed precision `prec`.
    pub fn leading_at(&self, phi: &BiPoly, prec: usize) -> Result<Option<(usize, Q)>> {
        let (xs, ys) = self.series(prec);
        let s = Series::compose(phi, &xs, &ys);
        if let Some(l) = s.leading() {
            return Ok(Some(l));
        }
        if phi.is_zero() || self.divides(phi)? {
            Ok(None)
        } else {
            Err(Error::TruncationInsufficient(prec))
        }
    }

    /// Leading term with automatic doubling of the truncation up to the cap.
    pub fn leading(&self, phi: &BiPoly) -> Result<Option<(usize, Q)>> {
        let mut t = self.trunc;
        loop {
            match self.leading_at(phi, t) {
                Err(Error::TruncationInsufficient(_)) if t < self.trunc_cap => {
                    t = (2 * t).min(self.trunc_cap);
                }
                other => return other,
            }
        }
    }

    /// `ord_t φ(x(t), y(t))` at a fixed truncation.
    pub fn substitute_order_at(&self, phi: &BiPoly, prec: usize) -> Result<ExtRat> {
        Ok(match self.leading_at(phi, prec)? {
            Some((o, _)) => ExtRat::int(o as i64),
            None => ExtRat::Inf,
        })
    }

    /// `ord_t φ(x(t), y(t))`, with truncation auto-doubled up to the cap.
    pub fn substitute_order(&self, phi: &BiPoly) -> Result<ExtRat> {
        Ok(match self.leading(phi)? {
            Some((o, _)) => ExtRat::int(o as i64),
            None => ExtRat::Inf,
        })
    }

    /// True iff the branch's Weierstrass polynomial divides `φ` in `Q[x][y]`
    /// (equivalently, `φ` vanishes on the branch).
    pub fn divides(&self, phi: &BiPoly) -> Result<bool> {
        let w = self.weierstrass();
        let r = if self.swapped {
            rem_y(&phi.swap_vars(), &w.swap_vars())?
        } else {
            rem_y(phi, &w)?
        };
        Ok(r.is_zero())
    }

    /// Intersection multiplicity with another branch, `ord_t W_other(x(t), y(t))`.
    pub fn intersection(&self, other: &BranchParam) -> Result<ExtRat> {
        self.substitute_order(&other.weierstrass())
    }

    /// Both parameterizations trace the same curve.
    pub fn same_curve(&self, other: &BranchParam) -> Result<bool> {
        Ok(self.n == other.n && self.intersection(other)?.is_inf())
    }

    pub fn max_exponent(&self) -> u32 {
        self.coeffs.keys().copied().max().unwrap_or(0).max(self.n)
    }
}

impl fmt::Display for BranchParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = BiPoly::from_terms(self.coeffs.iter().map(|(e, c)| ((*e, 0), c.clone())));
        let var = if self.swapped { "x" } else { "y" };
        write!(f, "n={}; {} = {}", self.n, var, p.fmt_with("t", "_"))
    }
}

impl FromStr for BranchParam {
    type Err = Error;

    /// Accepts `branch n=<int>; y = <poly in t>` (the `branch` keyword is optional);
    /// `x = <poly in t>` denotes the exchanged form `y = t^n`.
    fn from_str(text: &str) -> Result<Self> {
        let (head, tail) = text.split_once(';').ok_or_else(|| Error::Syntax {
            offset: text.len(),
            message: "expected ';'".into(),
        })?;
        let head_t = head.trim();
        let head_t = head_t.strip_prefix("branch").unwrap_or(head_t).trim();
        let nval = head_t
            .strip_prefix('n')
            .map(str::trim_start)
            .and_then(|s| s.strip_prefix('='))
            .map(str::trim)
            .ok_or_else(|| Error::Syntax {
                offset: 0,
                message: "expected 'n=<int>'".into(),
            })?;
        let n: u32 = nval.parse().map_err(|_| Error::Syntax {
            offset: 0,
            message: format!("bad multiplicity {nval:?}"),
        })?;
        let base = head.len() + 1;
        let (lhs, rhs) = tail.split_once('=').ok_or_else(|| Error::Syntax {
            offset: base,
            message: "expected 'y = ...'".into(),
        })?;
        let swapped = match lhs.trim() {
            "y" => false,
            "x" => true,
            other => {
                return Err(Error::Syntax {
                    offset: base,
                    message: format!("expected 'y' or 'x', found {other:?}"),
                })
            }
        };
        let poly = parse_poly_in(rhs, &[("t", 0)], base + lhs.len() + 1)?;
        let coeffs = poly.terms().iter().map(|(&(e, _), c)| (e, c.clone())).collect();
        BranchParam::new(n, coeffs, swapped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_poly;

    fn br(s: &str) -> BranchParam {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let c = br("branch n=2; y = t^3 + t^5");
        assert_eq!(c.to_string(), "n=2; y = t^3 + t^5");
        assert_eq!(br("n=1; x = 0").to_string(), "n=1; x = 0");
        assert!(matches!(
            "n=2; y = t^4".parse::<BranchParam>(),
            Err(Error::InvalidBranch(_))
        ));
        assert!(matches!(
            "n=2; y = t".parse::<BranchParam>(),
            Err(Error::InvalidBranch(_))
        ));
        assert!(matches!(
            "n=2; y = t^3 +".parse::<BranchParam>(),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn substitution_examples() {
        let cusp = br("n=2; y=t^3");
        assert_eq!(cusp.substitute_order(&BiPoly::y()).unwrap(), ExtRat::int(3));
        let f = parse_poly("y^2 - x^3").unwrap();
        assert_eq!(cusp.substitute_order(&f).unwrap(), ExtRat::Inf);
        assert_eq!(br("n=2; y=t^3+t^5").substitute_order(&f).unwrap(), ExtRat::int(8));
    }

    #[test]
    fn weierstrass_polynomials() {
        assert_eq!(br("n=2; y=t^3").weierstrass(), parse_poly("y^2 - x^3").unwrap());
        assert_eq!(
            br("n=2; y=t^3+t^5").weierstrass(),
            parse_poly("y^2 - x^3 - 2*x^4 - x^5").unwrap()
        );
        assert_eq!(br("n=1; x=0").weierstrass(), BiPoly::x());
        assert_eq!(br("n=2; x=t^3").weierstrass(), parse_poly("x^2 - y^3").unwrap());
        let c = br("n=3; y = t^4 + t^5");
        let w = c.weierstrass();
        assert_eq!(w.deg_y(), Some(3));
        assert!(w.is_monic_in_y());
        assert_eq!(c.substitute_order(&w).unwrap(), ExtRat::Inf);
    }

    #[test]
    fn truncation_failure_then_recovery() {
        let c = br("n=2; y=t^3").with_trunc(4).with_trunc_cap(4);
        // y^2 - x^3 - x^5 has order 10 along the cusp, invisible at precision 4
        let f = parse_poly("y^2 - x^3 - x^5").unwrap();
        assert_eq!(c.substitute_order(&f), Err(Error::TruncationInsufficient(4)));
        let c = c.with_trunc_cap(64);
        assert_eq!(c.substitute_order(&f).unwrap(), ExtRat::int(10));
    }
}

/// A parameterization `(x(t), y(t))` by arbitrary polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParam {
    pub x: BTreeMap<u32, Q>,
    pub y: BTreeMap<u32, Q>,
}

impl PolyParam {
    pub fn new(x: BTreeMap<u32, Q>, y: BTreeMap<u32, Q>) -> Self {
        let clean = |m: BTreeMap<u32, Q>| m.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        PolyParam {
            x: clean(x),
            y: clean(y),
        }
    }

    /// Parses two polynomials in `t`.
    pub fn parse(x: &str, y: &str) -> Result<Self> {
        let to_map = |p: BiPoly| p.terms().iter().map(|(&(e, _), c)| (e, c.clone())).collect();
        Ok(PolyParam::new(
            to_map(parse_poly_in(x, &[("t", 0)], 0)?),
            to_map(parse_poly_in(y, &[("t", 0)], 0)?),
        ))
    }

    pub fn series(&self, prec: usize) -> (Series, Series) {
        (
            Series::from_terms(self.x.iter().map(|(e, c)| (*e, c)), prec),
            Series::from_terms(self.y.iter().map(|(e, c)| (*e, c)), prec),
        )
    }

    pub fn max_exponent(&self) -> u32 {
        self.x.keys().chain(self.y.keys()).copied().max().unwrap_or(1)
    }

    /// `ord_t φ(x(t), y(t))` computed at precision `prec`; `None` if it vanishes to that order.
    pub fn order_at(&self, phi: &BiPoly, prec: usize) -> Option<usize> {
        let (xs, ys) = self.series(prec);
        Series::compose(phi, &xs, &ys).ord()
    }
}

impl From<&BranchParam> for PolyParam {
    fn from(b: &BranchParam) -> Self {
        let power: BTreeMap<u32, Q> = [(b.n, Q::one())].into_iter().collect();
        if b.swapped {
            PolyParam::new(b.coeffs.clone(), power)
        } else {
            PolyParam::new(power, b.coeffs.clone())
        }
    }
}
