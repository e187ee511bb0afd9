//! Truncated univariate power series over Q, with precision tracking.

use num_traits::{One, Zero};

use super::extrat::Q;
use super::poly::BiPoly;

/// A power series in `t` known modulo `t^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Q>,
}

impl Series {
    pub fn zero(prec: usize) -> Self {
        Series {
            coeffs: vec![Q::zero(); prec],
        }
    }

    pub fn monomial(c: Q, e: usize, prec: usize) -> Self {
        let mut s = Series::zero(prec);
        if e < prec {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn from_terms<'a, I: IntoIterator<Item = (u32, &'a Q)>>(it: I, prec: usize) -> Self {
        let mut s = Series::zero(prec);
        for (e, c) in it {
            if (e as usize) < prec {
                s.coeffs[e as usize] += c;
            }
        }
        s
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, e: usize) -> Q {
        self.coeffs.get(e).cloned().unwrap_or_else(Q::zero)
    }

    /// Order of the first nonzero coefficient, or `None` if the series vanishes to its precision.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<(usize, Q)> {
        self.ord().map(|o| (o, self.coeffs[o].clone()))
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(prec);
        Series { coeffs: c }
    }

    pub fn add(&self, o: &Series) -> Series {
        let p = self.prec().min(o.prec());
        Series {
            coeffs: (0..p).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, o: &Series) -> Series {
        let p = self.prec().min(o.prec());
        Series {
            coeffs: (0..p).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    /// Product; the result is known modulo `t^min(pa + ord b, pb + ord a)`.
    pub fn mul(&self, o: &Series) -> Series {
        let oa = self.ord().unwrap_or(self.prec());
        let ob = o.ord().unwrap_or(o.prec());
        let p = (self.prec() + ob).min(o.prec() + oa);
        let mut out = vec![Q::zero(); p];
        for i in oa..self.prec().min(p) {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in ob..o.prec() {
                if i + j >= p {
                    break;
                }
                let b = &o.coeffs[j];
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, mut e: u32) -> Series {
        let mut acc = Series::monomial(Q::one(), 0, self.prec());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by `t^b`; the caller guarantees the low coefficients vanish.
    pub fn shift_down(&self, b: usize) -> Series {
        debug_assert!(self.coeffs.iter().take(b).all(|c| c.is_zero()));
        Series {
            coeffs: self.coeffs.iter().skip(b).cloned().collect(),
        }
    }

    /// Inverse of a series with nonzero constant term.
    pub fn inv(&self) -> Option<Series> {
        let c0 = self.coeffs.first()?;
        if c0.is_zero() {
            return None;
        }
        let p = self.prec();
        let inv0 = c0.recip();
        let mut out: Vec<Q> = vec![Q::zero(); p];
        out[0] = inv0.clone();
        for k in 1..p {
            let mut s = Q::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    s += &self.coeffs[i] * &out[k - i];
                }
            }
            out[k] = -(s * &inv0);
        }
        Some(Series { coeffs: out })
    }

    /// Quotient `self / o`, defined when `ord self >= ord o` (and `o` is known to be nonzero).
    pub fn div(&self, o: &Series) -> Option<Series> {
        let b = o.ord()?;
        if self.ord().is_some_and(|a| a < b) {
            return None;
        }
        if self.prec() < b {
            return None;
        }
        let w = o.shift_down(b).inv()?;
        let u = self.shift_down(b);
        let p = u.prec().min(w.prec());
        Some(u.truncate(p).mul(&w.truncate(p)))
    }

    /// Substitutes the series into `φ(x, y)`.
    pub fn compose(phi: &BiPoly, xs: &Series, ys: &Series) -> Series {
        let prec = xs.prec().min(ys.prec());
        let mut xp: Vec<Series> = vec![Series::monomial(Q::one(), 0, prec)];
        let mut yp: Vec<Series> = vec![Series::monomial(Q::one(), 0, prec)];
        let mut out = Series::zero(prec);
        for (&(i, j), c) in phi.terms() {
            while xp.len() <= i as usize {
                let next = xp.last().unwrap().mul(xs);
                xp.push(next);
            }
            while yp.len() <= j as usize {
                let next = yp.last().unwrap().mul(ys);
                yp.push(next);
            }
            let t = xp[i as usize].mul(&yp[j as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::extrat::q;

    #[test]
    fn inverse_and_division() {
        // (1 + t)^-1 = 1 - t + t^2 - ...
        let s = Series::from_terms([(0, &q(1)), (1, &q(1))], 6);
        let i = s.inv().unwrap();
        assert_eq!(i.coeffs(), &[q(1), q(-1), q(1), q(-1), q(1), q(-1)]);
        let a = Series::from_terms([(2, &q(1))], 8);
        let b = Series::from_terms([(1, &q(1)), (2, &q(1))], 8);
        let d = a.div(&b).unwrap();
        assert_eq!(d.ord(), Some(1));
        assert_eq!(d.prec(), 7);
    }

    #[test]
    fn product_precision() {
        let a = Series::monomial(q(1), 3, 10);
        let b = Series::monomial(q(1), 2, 6);
        let p = a.mul(&b);
        assert_eq!(p.prec(), 9);
        assert_eq!(p.ord(), Some(5));
    }
}
