//! Sequences of key polynomials (SKPs): the canonical finite description of a valuation
//! in fixed coordinates.

mod build;
mod invariants;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_integer, parse_poly, q, weierstrass_divide, BiPoly, ExtRat, Q};
use crate::error::{Error, Result};

pub(crate) use build::build_skp;
pub use build::{skp_of_branch, InForm, Oracle, Probe};
pub use invariants::{ball_distance, relative_invariants, ApproxPoint, InvariantReport, Kind};

/// The first violated rule of the SKP definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub index: Option<usize>,
    pub detail: String,
}

impl Violation {
    fn new(rule: &'static str, index: Option<usize>, detail: impl Into<String>) -> Self {
        Violation {
            rule,
            index,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(j) => write!(f, "({}) at j={}: {}", self.rule, j, self.detail),
            None => write!(f, "({}): {}", self.rule, self.detail),
        }
    }
}

/// Data derived at index `j`: `n_j β̃_j = Σ_{l<j} m_{j,l} β̃_l` and
/// `U_{j+1} = U_j^{n_j} − θ_j Π U_l^{m_{j,l}}` (θ_j only for `j < k`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub n: u32,
    pub m: Vec<u32>,
    pub theta: Option<Q>,
}

/// Result of comparing two valuations in the valuative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Less,
    Greater,
    Incomparable,
}

/// A finite SKP `[(U_0, …, U_k); (β̃_0, …, β̃_k)]` in working coordinates.
///
/// When `swap` is set, the working `x` is the input `y` and vice versa.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Skp {
    keys: Vec<BiPoly>,
    values: Vec<ExtRat>,
    swap: bool,
    steps: Vec<Step>,
}

/// `n_j` and the decomposition `n_j β̃_j = Σ_{l<j} m_l β̃_l` with `0 <= m_l < n_l` for `l >= 1`.
///
/// `vals` holds `β̃_0..=β̃_j`, all finite; `ns` holds `n_1..n_{j-1}`.
pub(crate) fn decompose(vals: &[Q], ns: &[u32]) -> Option<(u32, Vec<u32>)> {
    let j = vals.len() - 1;
    let lcm_den = |upto: usize| {
        vals[..upto]
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, v| acc.lcm(v.denom()))
    };
    let l_j = Q::from_integer(lcm_den(j));
    let scaled = &vals[j] * &l_j;
    let n: u32 = scaled.denom().try_into().ok()?;
    let mut rest = &vals[j] * Q::from_integer(n.into());
    let mut m = vec![0u32; j];
    for l in (1..j).rev() {
        let l_l = Q::from_integer(lcm_den(l));
        let nl = ns[l - 1];
        let found = (0..nl).find(|&c| is_integer(&((&rest - &vals[l] * q(c as i64)) * &l_l)))?;
        m[l] = found;
        rest -= &vals[l] * q(found as i64);
    }
    if rest.is_negative() || !is_integer(&rest) {
        return None;
    }
    m[0] = rest.to_integer().try_into().ok()?;
    Some((n, m))
}

fn key_product(keys: &[BiPoly], m: &[u32]) -> BiPoly {
    let mut p = BiPoly::one();
    for (u, &e) in keys.iter().zip(m) {
        if e > 0 {
            p = &p * &u.pow(e);
        }
    }
    p
}

/// Checks every defining rule; returns the derived steps.
pub fn validate(keys: &[BiPoly], values: &[ExtRat], swap: bool) -> std::result::Result<Vec<Step>, Violation> {
    if keys.len() != values.len() || keys.len() < 2 {
        return Err(Violation::new("shape", None, "need k >= 1 and as many values as keys"));
    }
    if keys[0] != BiPoly::x() || keys[1] != BiPoly::y() {
        return Err(Violation::new("P0", None, "U_0 must be x and U_1 must be y"));
    }
    if values[0] != ExtRat::int(1) {
        return Err(Violation::new("normalization", Some(0), "β̃_0 must be 1"));
    }
    if values[1] < ExtRat::int(1) {
        return Err(Violation::new("normalization", Some(1), "β̃_1 must be >= β̃_0 = 1"));
    }
    if swap && values[1] == ExtRat::int(1) {
        return Err(Violation::new("swap", Some(1), "swapped coordinates require β̃_1 > 1"));
    }
    let k = keys.len() - 1;
    let mut fin: Vec<Q> = Vec::new();
    let mut steps: Vec<Step> = Vec::new();
    for j in 0..=k {
        match &values[j] {
            ExtRat::Fin(v) if v.is_positive() => fin.push(v.clone()),
            ExtRat::Fin(_) => return Err(Violation::new("P1", Some(j), "values must be positive")),
            ExtRat::Inf if j == k => break,
            ExtRat::Inf => return Err(Violation::new("P1", Some(j), "only β̃_k may be infinite")),
        }
        if j == 0 {
            continue;
        }
        let ns: Vec<u32> = steps.iter().map(|s| s.n).collect();
        let (n, m) = decompose(&fin, &ns)
            .ok_or_else(|| Violation::new("P1", Some(j), "no admissible decomposition of n_j β̃_j"))?;
        let mut step = Step { n, m, theta: None };
        if j < k {
            let nb = &fin[j] * q(n as i64);
            if values[j + 1] <= ExtRat::Fin(nb.clone()) {
                return Err(Violation::new(
                    "P1",
                    Some(j + 1),
                    format!("β̃_{} = {} is not > n_{}β̃_{} = {}", j + 1, values[j + 1], j, j, nb),
                ));
            }
            let pw = keys[j].pow(n);
            let pi = key_product(&keys[..j], &step.m);
            let diff = &pw - &keys[j + 1];
            let theta = pi
                .terms()
                .iter()
                .next()
                .map(|(&(a, b), c)| diff.coeff(a, b) / c)
                .unwrap_or_else(Q::zero);
            if theta.is_zero() || diff != pi.scale(&theta) {
                return Err(Violation::new(
                    "P2",
                    Some(j + 1),
                    format!("U_{} is not U_{}^{} - θ·Π U_l^m", j + 1, j, n),
                ));
            }
            step.theta = Some(theta);
        }
        steps.push(step);
    }
    Ok(steps)
}

impl Skp {
    pub fn new(keys: Vec<BiPoly>, values: Vec<ExtRat>, swap: bool) -> Result<Skp> {
        let steps = validate(&keys, &values, swap).map_err(Error::InvalidSkp)?;
        Ok(Skp {
            keys,
            values,
            swap,
            steps,
        })
    }

    /// Parses keys and values from strings (`"inf"` allowed as the last value).
    pub fn from_strs(keys: &[&str], values: &[&str], swap: bool) -> Result<Skp> {
        let keys = keys.iter().map(|k| parse_poly(k)).collect::<Result<Vec<_>>>()?;
        let values = values.iter().map(|v| v.parse()).collect::<Result<Vec<ExtRat>>>()?;
        Skp::new(keys, values, swap)
    }

    /// The multiplicity valuation `ν_m = [(x, y); (1, 1)]`.
    pub fn nu_m() -> Skp {
        Skp::new(
            vec![BiPoly::x(), BiPoly::y()],
            vec![ExtRat::int(1), ExtRat::int(1)],
            false,
        )
        .expect("valid")
    }

    /// The monomial valuation with `ν(x) = a`, `ν(y) = b` (input coordinates), normalized.
    pub fn monomial(a: &ExtRat, b: &ExtRat) -> Result<Skp> {
        let keys = vec![BiPoly::x(), BiPoly::y()];
        let (lo, hi, swap) = if b >= a { (a, b, false) } else { (b, a, true) };
        let lo = lo.expect_fin("the smaller monomial weight")?;
        if !lo.is_positive() {
            return Err(Error::Input("monomial weights must be positive".into()));
        }
        let ratio = hi.div_q(lo);
        Skp::new(keys, vec![ExtRat::int(1), ratio], swap)
    }

    pub fn keys(&self) -> &[BiPoly] {
        &self.keys
    }

    pub fn values(&self) -> &[ExtRat] {
        &self.values
    }

    pub fn swap(&self) -> bool {
        self.swap
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Length k (index of the last key).
    pub fn k(&self) -> usize {
        self.keys.len() - 1
    }

    pub fn last_value(&self) -> &ExtRat {
        &self.values[self.k()]
    }

    pub fn is_curve(&self) -> bool {
        self.last_value().is_inf()
    }

    pub fn is_nu_m(&self) -> bool {
        self.k() == 1 && self.values[1] == ExtRat::int(1)
    }

    /// `d_j = deg_y U_j`.
    pub fn d(&self, j: usize) -> u32 {
        self.keys[j].deg_y().unwrap_or(0).max(1)
    }

    /// Key `U_j` written in the input coordinates.
    pub fn key_input(&self, j: usize) -> BiPoly {
        if self.swap {
            self.keys[j].swap_vars()
        } else {
            self.keys[j].clone()
        }
    }

    /// The prefix SKP `[(U_0..U_j); (β̃_0..β̃_{j-1}, v)]`.
    pub fn truncated(&self, j: usize, v: ExtRat) -> Result<Skp> {
        let mut values = self.values[..j].to_vec();
        values.push(v);
        let swap = self.swap && !(j == 1 && values[1] == ExtRat::int(1));
        Skp::new(self.keys[..=j].to_vec(), values, swap)
    }

    /// ν(φ) for φ in the input coordinates.
    pub fn eval(&self, phi: &BiPoly) -> Result<ExtRat> {
        let phi = if self.swap { phi.swap_vars() } else { phi.clone() };
        self.eval_working(&phi, self.k())
    }

    /// ν_j(φ) for the truncation at index `j`, φ in working coordinates.
    pub(crate) fn eval_working(&self, phi: &BiPoly, j: usize) -> Result<ExtRat> {
        if phi.is_zero() {
            return Ok(ExtRat::Inf);
        }
        if j == 1 {
            let b1 = &self.values[1];
            let mut best = ExtRat::Inf;
            for &(i, e) in phi.terms().keys() {
                let v = if e == 0 {
                    ExtRat::int(i as i64)
                } else {
                    &ExtRat::int(i as i64) + &b1.mul_q(&q(e as i64))?
                };
                if v < best {
                    best = v;
                }
            }
            return Ok(best);
        }
        let parts = weierstrass_divide(phi, &self.keys[j])?;
        let mut best = ExtRat::Inf;
        for (e, part) in parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let mut v = self.eval_working(part, j - 1)?;
            if e > 0 {
                v = &v + &self.values[j].mul_q(&q(e as i64))?;
            }
            if v < best {
                best = v;
            }
        }
        Ok(best)
    }

    /// Whether `self <= other` in the valuative order.
    pub fn le(&self, other: &Skp) -> bool {
        if self.is_nu_m() {
            return true;
        }
        if self.swap != other.swap {
            return false;
        }
        let k = self.k();
        other.k() >= k
            && self.keys[..=k] == other.keys[..=k]
            && self.values[..k] == other.values[..k]
            && other.values[k] >= self.values[k]
    }

    pub fn compare(&self, other: &Skp) -> Comparison {
        match (self.le(other), other.le(self)) {
            (true, true) => Comparison::Equal,
            (true, false) => Comparison::Less,
            (false, true) => Comparison::Greater,
            (false, false) => Comparison::Incomparable,
        }
    }

    /// The infimum `ν ∧ ν'`.
    pub fn wedge(&self, other: &Skp) -> Skp {
        if self.swap != other.swap {
            return Skp::nu_m();
        }
        let kmax = self.k().min(other.k());
        let mut j = 1;
        while j < kmax && self.keys[j + 1] == other.keys[j + 1] && self.values[j] == other.values[j] {
            j += 1;
        }
        let v = self.values[j].clone().min(other.values[j].clone());
        self.truncated(j, v).expect("prefix of a valid SKP")
    }

    /// Skewness α(ν) = β̃_k / d_k.
    pub fn skewness(&self) -> ExtRat {
        self.last_value().div_q(&q(self.d(self.k()) as i64))
    }

    /// Multiplicity m(ν) = d_k.
    pub fn multiplicity(&self) -> u32 {
        self.d(self.k())
    }

    /// ν(φ) for φ irreducible, from the contact formula `m(φ) · α(ν ∧ ν_φ)`.
    pub fn eval_irreducible(&self, phi: &Skp) -> Result<ExtRat> {
        if !phi.is_curve() {
            return Err(Error::NormalizationMismatch(
                "second argument must be a curve SKP".into(),
            ));
        }
        self.wedge(phi).skewness().mul_q(&q(phi.multiplicity() as i64))
    }

    /// The point of skewness `alpha` on the segment `[ν_m, self]`.
    pub fn point_at(&self, alpha: &Q) -> Result<Skp> {
        let a = ExtRat::Fin(alpha.clone());
        if alpha < &q(1) || a > self.skewness() {
            return Err(Error::Input(format!("skewness {alpha} is outside [1, α(ν)]")));
        }
        let mut j = 1;
        while j < self.k() && a > self.values[j].div_q(&q(self.d(j) as i64)) {
            j += 1;
        }
        self.truncated(j, a.mul_q(&q(self.d(j) as i64))?)
    }

    /// The curve `{U_k = 0}` when this is a curve SKP, in input coordinates.
    pub fn curve_equation(&self) -> Option<BiPoly> {
        self.is_curve().then(|| self.key_input(self.k()))
    }

    /// Thinness along the segment `[ν_m, self]` at skewness `alpha`.
    pub fn thinness_at(&self, alpha: &ExtRat) -> ExtRat {
        let mut acc = q(2);
        let mut prev = q(1);
        for j in 1..=self.k() {
            let top = self.values[j].div_q(&q(self.d(j) as i64));
            let end = top.clone().min(alpha.clone());
            let dj = q(self.d(j) as i64);
            match end {
                ExtRat::Inf => return ExtRat::Inf,
                ExtRat::Fin(e) => {
                    if e > prev {
                        acc += dj * (&e - &prev);
                        prev = e;
                    }
                }
            }
            if &top >= alpha {
                break;
            }
        }
        ExtRat::Fin(acc)
    }
}

impl fmt::Display for Skp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keys: Vec<String> = self.keys.iter().map(|k| k.to_string()).collect();
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[({}); ({})]", keys.join(", "), vals.join(", "))?;
        if self.swap {
            f.write_str(" swapped")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
