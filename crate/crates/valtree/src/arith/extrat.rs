use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q`, `-p/q` or an integer.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Exact rational or +∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRat {
    Fin(Q),
    Inf,
}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Fin(Q::zero())
    }

    pub fn int(n: i64) -> Self {
        ExtRat::Fin(q(n))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtRat::Inf)
    }

    pub fn fin(&self) -> Option<&Q> {
        match self {
            ExtRat::Fin(v) => Some(v),
            ExtRat::Inf => None,
        }
    }

    /// Finite value or an error naming the context.
    pub fn expect_fin(&self, what: &str) -> Result<&Q> {
        self.fin().ok_or_else(|| Error::Input(format!("{what} is infinite")))
    }

    /// Product with a rational scalar; `0 * inf` and negative multiples of ∞ are rejected.
    pub fn mul_q(&self, c: &Q) -> Result<ExtRat> {
        match self {
            ExtRat::Fin(v) => Ok(ExtRat::Fin(v * c)),
            ExtRat::Inf if c.is_zero() => Err(Error::ZeroTimesInfinity),
            ExtRat::Inf if c.is_negative() => Err(Error::Input("negative multiple of inf".into())),
            ExtRat::Inf => Ok(ExtRat::Inf),
        }
    }

    pub fn mul(&self, other: &ExtRat) -> Result<ExtRat> {
        match (self, other) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => Ok(ExtRat::Fin(a * b)),
            (ExtRat::Inf, ExtRat::Fin(c)) | (ExtRat::Fin(c), ExtRat::Inf) => ExtRat::Inf.mul_q(c),
            (ExtRat::Inf, ExtRat::Inf) => Ok(ExtRat::Inf),
        }
    }

    /// Division by a positive rational.
    pub fn div_q(&self, c: &Q) -> ExtRat {
        match self {
            ExtRat::Fin(v) => ExtRat::Fin(v / c),
            ExtRat::Inf => ExtRat::Inf,
        }
    }

    pub fn min_ref<'a>(&'a self, other: &'a ExtRat) -> &'a ExtRat {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl From<Q> for ExtRat {
    fn from(v: Q) -> Self {
        ExtRat::Fin(v)
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => a.cmp(b),
            (ExtRat::Fin(_), ExtRat::Inf) => Ordering::Less,
            (ExtRat::Inf, ExtRat::Fin(_)) => Ordering::Greater,
            (ExtRat::Inf, ExtRat::Inf) => Ordering::Equal,
        }
    }
}

impl Add for &ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: &ExtRat) -> ExtRat {
        match (self, rhs) {
            (ExtRat::Fin(a), ExtRat::Fin(b)) => ExtRat::Fin(a + b),
            _ => ExtRat::Inf,
        }
    }
}

impl Add for ExtRat {
    type Output = ExtRat;
    fn add(self, rhs: ExtRat) -> ExtRat {
        &self + &rhs
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Fin(v) => write!(f, "{v}"),
            ExtRat::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "+inf" => Ok(ExtRat::Inf),
            other => parse_rational(other)
                .map(ExtRat::Fin)
                .ok_or_else(|| Error::Input(format!("not a rational: {other:?}"))),
        }
    }
}

/// True iff `v` is an integer.
pub fn is_integer(v: &Q) -> bool {
    v.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_times_inf_is_rejected() {
        assert_eq!(ExtRat::Inf.mul_q(&q(0)), Err(Error::ZeroTimesInfinity));
        assert_eq!(ExtRat::Inf.mul_q(&q(3)), Ok(ExtRat::Inf));
    }

    #[test]
    fn ordering_and_sum() {
        let a = ExtRat::Fin(qr(3, 2));
        assert!(a < ExtRat::Inf);
        assert_eq!(&a + &ExtRat::Inf, ExtRat::Inf);
        assert_eq!(a.min_ref(&ExtRat::Inf), &a);
    }

    #[test]
    fn display_and_parse() {
        for s in ["3/2", "-7", "0", "inf"] {
            let v: ExtRat = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("1/0".parse::<ExtRat>().is_err());
    }
}
