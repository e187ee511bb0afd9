use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::extrat::{q, Q};

/// Sparse polynomial in two variables; the key `(i, j)` is the monomial `x^i y^j`.
///
/// No zero coefficient is ever stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Q>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(q(1))
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(q(1), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(q(1), 0, 1)
    }

    pub fn monomial(c: Q, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Q)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Q {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(0, 0)
    }

    pub fn add_term(&mut self, k: (u32, u32), c: &Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + i, b + j), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = BiPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Degree in y; `None` for the zero polynomial.
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    /// Order at the origin, m(φ) = min{i + j}.
    pub fn multiplicity(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).min()
    }

    pub fn ord_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).min()
    }

    pub fn ord_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).min()
    }

    /// Exchanges the roles of x and y.
    pub fn swap_vars(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(i, j), v)| ((j, i), v.clone())).collect(),
        }
    }

    /// Coefficient of `y^j`, as a polynomial in x.
    pub fn y_coeff(&self, j: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.1 == j)
                .map(|(&(i, _), v)| ((i, 0), v.clone()))
                .collect(),
        }
    }

    /// True iff the y-leading coefficient is the constant 1.
    pub fn is_monic_in_y(&self) -> bool {
        match self.deg_y() {
            Some(d) => self.y_coeff(d) == BiPoly::one(),
            None => false,
        }
    }

    /// Lowest-order part in x: `(ord_x, {j -> coeff})`.
    pub fn lowest_x_part(&self) -> Option<(u32, BTreeMap<u32, Q>)> {
        let o = self.ord_x()?;
        let part = self
            .terms
            .iter()
            .filter(|(k, _)| k.0 == o)
            .map(|(k, v)| (k.1, v.clone()))
            .collect();
        Some((o, part))
    }

    /// Drops every term whose x-exponent exceeds `max_i`.
    pub fn truncate_x(&self, max_i: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.0 <= max_i)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Substitutes `x -> a`, `y -> b`.
    pub fn compose(&self, a: &BiPoly, b: &BiPoly) -> BiPoly {
        let mut apow: Vec<BiPoly> = vec![BiPoly::one()];
        let mut bpow: Vec<BiPoly> = vec![BiPoly::one()];
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            while apow.len() <= i as usize {
                let next = apow.last().unwrap() * a;
                apow.push(next);
            }
            while bpow.len() <= j as usize {
                let next = bpow.last().unwrap() * b;
                bpow.push(next);
            }
            let t = &apow[i as usize] * &bpow[j as usize];
            out = &out + &t.scale(c);
        }
        out
    }

    /// Writes the polynomial with the given variable names in canonical order:
    /// increasing total degree, and within a degree decreasing power of the second variable.
    pub fn fmt_with(&self, vx: &str, vy: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (a.0 + a.1, b.1).cmp(&(b.0 + b.1, a.1)));
        let mut s = String::new();
        for (n, k) in keys.into_iter().enumerate() {
            let c = &self.terms[k];
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || (k.0 == 0 && k.1 == 0) {
                factors.push(a.to_string());
            }
            for (v, e) in [(vx, k.0), (vy, k.1)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x", "y"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v);
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<(u32, u32), Q> = BTreeMap::new();
        for (&(a, b), u) in &self.terms {
            for (&(c, d), v) in &rhs.terms {
                *acc.entry((a + c, b + d)).or_insert_with(Q::zero) += u * v;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BiPoly { terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::extrat::qr;

    #[test]
    fn canonical_print() {
        let p = &BiPoly::y().pow(2) - &BiPoly::x().pow(3);
        assert_eq!(p.to_string(), "y^2 - x^3");
        let s = (&BiPoly::x() + &BiPoly::y()).pow(2);
        assert_eq!(s.to_string(), "y^2 + 2*x*y + x^2");
        let h = BiPoly::monomial(qr(-1, 2), 3, 0);
        assert_eq!(h.to_string(), "-1/2*x^3");
        assert_eq!(BiPoly::constant(q(-3)).to_string(), "-3");
        assert_eq!(BiPoly::zero().to_string(), "0");
    }

    #[test]
    fn compose_and_multiplicity() {
        let p = &BiPoly::y().pow(2) - &BiPoly::x().pow(3);
        assert_eq!(p.multiplicity(), Some(2));
        // blowup chart x = u, y = u v
        let c = p.compose(&BiPoly::x(), &BiPoly::x().shift(0, 1));
        assert_eq!(c.to_string(), "-x^3 + x^2*y^2");
        assert_eq!(p.swap_vars().to_string(), "x^2 - y^3");
    }
}
