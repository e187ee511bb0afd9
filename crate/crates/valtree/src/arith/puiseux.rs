//! Newton–Puiseux factorization into branches with rational polynomial parameterizations.
//!
//! Only polynomials whose branches have terminating Puiseux expansions with rational
//! coefficients are handled; anything else is reported rather than approximated.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::branch::BranchParam;
use super::extrat::Q;
use super::poly::BiPoly;
use crate::error::{Error, Result};

const MAX_STEPS: usize = 64;
const MAX_DIVISOR_SEARCH: u64 = 1 << 40;

/// `f = unit · Π W_i^{e_i}` with each branch given by a parameterization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub branches: Vec<(BranchParam, u32)>,
    /// Value of the unit at the origin.
    pub unit_at_origin: Q,
}

/// Splits `f` into branches through the origin, with multiplicities.
pub fn factor_branches(f: &BiPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::Input("cannot factor the zero polynomial".into()));
    }
    let mut branches = Vec::new();
    let a = f.ord_x().unwrap_or(0);
    let b = f.ord_y().unwrap_or(0);
    let mut g = divide_monomial(f, a, b);
    if a > 0 {
        branches.push((BranchParam::y_axis(), a));
    }
    if b > 0 {
        branches.push((BranchParam::x_axis(), b));
    }
    while g.constant_term().is_zero() {
        let c = find_branch(&g)?;
        let w = c.weierstrass();
        let mut e = 0;
        while let Some(quo) = exact_div_monic(&g, &w) {
            g = quo;
            e += 1;
        }
        if e == 0 {
            return Err(Error::Input(format!(
                "branch {c} found but its equation does not divide"
            )));
        }
        branches.push((c, e));
    }
    Ok(Factorization {
        branches,
        unit_at_origin: g.constant_term(),
    })
}

fn divide_monomial(f: &BiPoly, a: u32, b: u32) -> BiPoly {
    BiPoly::from_terms(f.terms().iter().map(|(&(i, j), c)| ((i - a, j - b), c.clone())))
}

/// `f / w` when `w` (monic in `y`, or monic in `x` after swapping) divides `f`.
fn exact_div_monic(f: &BiPoly, w: &BiPoly) -> Option<BiPoly> {
    if w.is_monic_in_y() {
        div_monic_y(f, w)
    } else {
        div_monic_y(&f.swap_vars(), &w.swap_vars()).map(|q| q.swap_vars())
    }
}

fn div_monic_y(f: &BiPoly, w: &BiPoly) -> Option<BiPoly> {
    let d = w.deg_y()?;
    let mut r = f.clone();
    let mut quo = BiPoly::zero();
    while let Some(k) = r.deg_y() {
        if k < d {
            break;
        }
        let lead = r.y_coeff(k).shift(0, k - d);
        r = &r - &(&lead * w);
        quo = &quo + &lead;
    }
    r.is_zero().then_some(quo)
}

/// One branch of `g` (with `g(0,0) = 0`, not divisible by `x` or `y`).
fn find_branch(g: &BiPoly) -> Result<BranchParam> {
    let edges = newton_edges(g);
    if edges.iter().any(|(s, _)| *s >= Q::one()) {
        descend(g)
    } else {
        // every branch is tangent to x = 0
        Ok(descend(&g.swap_vars())?.exchanged())
    }
}

type Edge = (Q, Vec<((u32, u32), Q)>);

/// Lower Newton edges relevant to roots `y → 0`, from the `y`-axis side: slope `Δi / Δj`
/// (increasing along the list) and the terms on each edge.
fn newton_edges(g: &BiPoly) -> Vec<Edge> {
    let mut best: BTreeMap<u32, u32> = BTreeMap::new();
    for &(i, j) in g.terms().keys() {
        best.entry(j).and_modify(|v| *v = (*v).min(i)).or_insert(i);
    }
    let Some((jc, ic)) = best.iter().min_by_key(|(j, i)| (**i, **j)).map(|(j, i)| (*j, *i)) else {
        return Vec::new();
    };
    let int = |v: i64| Q::from_integer(BigInt::from(v));
    let (mut jc, mut ic) = (jc, ic);
    let mut out = Vec::new();
    while jc > 0 && best.keys().next().is_some_and(|&j| j < jc) {
        let mut pick: Option<(Q, u32, u32)> = None;
        for (&j, &i) in best.range(..jc) {
            let s = int(i as i64 - ic as i64) / int(jc as i64 - j as i64);
            // ties go to the farthest point (smallest j, visited first)
            if pick.as_ref().is_none_or(|(m, _, _)| s < *m) {
                pick = Some((s, i, j));
            }
        }
        let Some((slope, i1, j1)) = pick else { break };
        let terms = g
            .terms()
            .iter()
            .filter(|(&(i, j), _)| {
                j >= j1 && j <= jc && int(i as i64 - ic as i64) == &slope * int(jc as i64 - j as i64)
            })
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        out.push((slope, terms));
        (ic, jc) = (i1, j1);
    }
    out
}

/// Follows one Puiseux root of `g` (slope ≥ 1 at the first step) until it terminates.
fn descend(g: &BiPoly) -> Result<BranchParam> {
    // x = s^n, y = poly(s) + s^m y_cur
    let mut n: u32 = 1;
    let mut m: u32 = 0;
    let mut poly: BTreeMap<u32, Q> = BTreeMap::new();
    let mut cur = g.clone();
    for _ in 0..MAX_STEPS {
        if cur.ord_y().unwrap_or(0) > 0 {
            return primitive(n, poly);
        }
        let edges = newton_edges(&cur);
        // the first step must not produce a branch tangent to x = 0
        let (slope, edge) = edges
            .into_iter()
            .find(|(s, _)| m > 0 || *s >= Q::one())
            .ok_or_else(|| Error::Input("lost the root during expansion".into()))?;
        let p = slope
            .numer()
            .to_u32()
            .ok_or_else(|| Error::Input("slope overflow".into()))?;
        let qd = slope
            .denom()
            .to_u32()
            .ok_or_else(|| Error::Input("slope overflow".into()))?;
        let c = edge_root(&edge, qd)?;
        // y_cur = s^{p/q}(c + y'), s = s'^q
        poly = poly.into_iter().map(|(e, v)| (e * qd, v)).collect();
        m = m * qd + p;
        n *= qd;
        poly.insert(m, c.clone());
        let xs = BiPoly::x().pow(qd);
        let ys = &BiPoly::x().pow(p) * &(&BiPoly::constant(c) + &BiPoly::y());
        let next = cur.compose(&xs, &ys);
        let a = next.ord_x().unwrap_or(0);
        cur = divide_monomial(&next, a, 0);
    }
    Err(Error::Input(
        "Puiseux expansion does not terminate; declare the branches as parameterizations".into(),
    ))
}

fn primitive(n: u32, poly: BTreeMap<u32, Q>) -> Result<BranchParam> {
    let g = poly.keys().fold(n, |g, &e| g.gcd(&e));
    BranchParam::new(n / g, poly.into_iter().map(|(e, c)| (e / g, c)).collect(), false)
}

/// A nonzero rational `c` with `c^q` a root of the edge polynomial.
fn edge_root(edge: &[((u32, u32), Q)], q: u32) -> Result<Q> {
    let jmin = edge.iter().map(|((_, j), _)| *j).min().unwrap_or(0);
    // P(w) = Σ c w^{(j - jmin)/q}
    let mut coeffs: BTreeMap<u32, Q> = BTreeMap::new();
    for ((_, j), c) in edge {
        coeffs.insert((j - jmin) / q, c.clone());
    }
    let mut roots = rational_roots(&coeffs)?;
    roots.sort();
    for w in roots.iter().rev() {
        if let Some(c) = rational_root_of(w, q) {
            return Ok(c);
        }
    }
    Err(Error::FieldExtensionRequired(format!(
        "the Puiseux coefficient is a root of degree {} over Q",
        coeffs.keys().next_back().copied().unwrap_or(0) * q
    )))
}

/// Positive rational `r` with `r^q = w` (any sign when `q` is odd).
fn rational_root_of(w: &Q, q: u32) -> Option<Q> {
    if q == 1 {
        return Some(w.clone());
    }
    if w.is_negative() && q.is_multiple_of(2) {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.abs().nth_root(q);
        (r.pow(q) == v.abs()).then_some(r)
    };
    let (nr, dr) = (root(w.numer())?, root(w.denom())?);
    let r = Q::new(nr, dr);
    Some(if w.is_negative() { -r } else { r })
}

/// Nonzero rational roots of `Σ coeffs[k] w^k`.
fn rational_roots(coeffs: &BTreeMap<u32, Q>) -> Result<Vec<Q>> {
    let lcm = coeffs.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: BTreeMap<u32, BigInt> = coeffs
        .iter()
        .map(|(k, c)| (*k, (c * Q::from_integer(lcm.clone())).to_integer()))
        .collect();
    let (Some((_, a0)), Some((_, an))) = (ints.iter().next(), ints.iter().next_back()) else {
        return Ok(Vec::new());
    };
    let eval = |w: &Q| -> Q { coeffs.iter().fold(Q::zero(), |s, (k, c)| s + c * w.pow(*k as i32)) };
    let mut out = Vec::new();
    for p in divisors(a0)? {
        for d in divisors(an)? {
            for sign in [1i64, -1] {
                let w = Q::new(BigInt::from(sign) * &p, d.clone());
                if !out.contains(&w) && eval(&w).is_zero() {
                    out.push(w);
                }
            }
        }
    }
    Ok(out)
}

fn divisors(v: &BigInt) -> Result<Vec<BigInt>> {
    let v = v
        .abs()
        .to_u64()
        .filter(|v| *v <= MAX_DIVISOR_SEARCH)
        .ok_or_else(|| Error::Input("coefficients too large for the rational root search".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, qr};

    fn factor(s: &str) -> Vec<(String, u32)> {
        factor_branches(&parse_poly(s).unwrap())
            .unwrap()
            .branches
            .into_iter()
            .map(|(b, e)| (b.to_string(), e))
            .collect()
    }

    #[test]
    fn coordinate_axes_and_units() {
        assert_eq!(
            factor("x^2*y^3"),
            vec![("n=1; x = 0".to_string(), 2), ("n=1; y = 0".to_string(), 3)]
        );
        assert!(factor("1 + x").is_empty());
        assert!(factor_branches(&BiPoly::zero()).is_err());
    }

    #[test]
    fn cusp_and_products() {
        assert_eq!(factor("y^2 - x^3"), vec![("n=2; y = t^3".to_string(), 1)]);
        assert_eq!(factor("(y^2 - x^3)^2*(1 + y)"), vec![("n=2; y = t^3".to_string(), 2)]);
        let f = factor("(y - x)*(y + x)*(x^2 - y^3)");
        assert_eq!(f.len(), 3);
        assert!(f.contains(&("n=2; x = t^3".to_string(), 1)));
    }

    #[test]
    fn scaled_coefficients() {
        // y^2 = 4x^3: y = 2 t^3
        assert_eq!(factor("y^2 - 4*x^3"), vec![("n=2; y = 2*t^3".to_string(), 1)]);
        let f = factor_branches(&parse_poly("y^2 - 2*x^3").unwrap());
        assert!(matches!(f, Err(Error::FieldExtensionRequired(_))));
        assert!(matches!(
            factor_branches(&parse_poly("x^2 + y^2").unwrap()),
            Err(Error::FieldExtensionRequired(_))
        ));
    }

    #[test]
    fn two_pair_branch() {
        let c = BranchParam::from_pairs(4, &[(6, qr(1, 1)), (7, qr(1, 1))]).unwrap();
        let got = factor_branches(&c.weierstrass()).unwrap();
        assert_eq!(got.branches, vec![(c, 1)]);
    }

    #[test]
    fn non_terminating_expansion_is_reported() {
        assert!(factor_branches(&parse_poly("y - x - y^2").unwrap()).is_err());
    }
}
