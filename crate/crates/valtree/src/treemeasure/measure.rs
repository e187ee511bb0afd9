//! Finitely supported measures on the valuative tree and their inner product.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{Signed, Zero};

use crate::arith::{ExtRat, Q};
use crate::error::{Error, Result};
use crate::skp::Skp;

/// A finite combination `Σ mass_i ν_i` with nonzero rational masses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicMeasure {
    atoms: BTreeMap<Skp, Q>,
}

impl AtomicMeasure {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_atoms<I: IntoIterator<Item = (Skp, Q)>>(it: I) -> Self {
        let mut m = Self::new();
        for (s, c) in it {
            m.add_atom(s, &c);
        }
        m
    }

    pub fn atom(s: Skp, c: Q) -> Self {
        Self::from_atoms([(s, c)])
    }

    pub fn add_atom(&mut self, s: Skp, c: &Q) {
        let e = self.atoms.entry(s).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.atoms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn atoms(&self) -> &BTreeMap<Skp, Q> {
        &self.atoms
    }

    pub fn mass(&self) -> Q {
        self.atoms.values().fold(Q::zero(), |a, b| a + b)
    }

    pub fn is_positive(&self) -> bool {
        self.atoms.values().all(|c| c.is_positive())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_atoms(self.atoms.iter().map(|(s, v)| (s.clone(), v * c)))
    }

    pub fn add(&self, other: &AtomicMeasure) -> Self {
        let mut m = self.clone();
        for (s, c) in &other.atoms {
            m.add_atom(s.clone(), c);
        }
        m
    }

    pub fn sub(&self, other: &AtomicMeasure) -> Self {
        self.add(&other.scale(&-Q::from_integer(1.into())))
    }

    /// `ρ · ρ' = Σ c_i c'_j α(ν_i ∧ ν'_j)`.
    pub fn inner_product(&self, other: &AtomicMeasure) -> Result<ExtRat> {
        let mut fin = Q::zero();
        let mut inf_sign = 0i8;
        for (s, c) in &self.atoms {
            for (t, d) in &other.atoms {
                let w = pairing(s, t);
                let cd = c * d;
                match w {
                    ExtRat::Fin(a) => fin += cd * a,
                    ExtRat::Inf => {
                        let sign = if cd.is_positive() { 1 } else { -1 };
                        if inf_sign != 0 && inf_sign != sign {
                            return Err(Error::Input("∞ − ∞ in the inner product".into()));
                        }
                        inf_sign = sign;
                    }
                }
            }
        }
        match inf_sign {
            0 => Ok(ExtRat::Fin(fin)),
            1 => Ok(ExtRat::Inf),
            _ => Err(Error::Input("inner product is −∞".into())),
        }
    }
}

/// `ν · ν' = α(ν ∧ ν')`.
pub fn pairing(s: &Skp, t: &Skp) -> ExtRat {
    s.wedge(t).skewness()
}

impl fmt::Display for AtomicMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.atoms.iter().map(|(s, c)| format!("{c}·{s}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

pub type CQ = Complex<Q>;

/// A measure with complex rational masses.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComplexMeasure {
    atoms: BTreeMap<Skp, CQ>,
}

impl ComplexMeasure {
    pub fn from_atoms<I: IntoIterator<Item = (Skp, CQ)>>(it: I) -> Self {
        let mut atoms: BTreeMap<Skp, CQ> = BTreeMap::new();
        for (s, c) in it {
            let e = atoms.entry(s).or_insert_with(CQ::zero);
            *e = &*e + &c;
        }
        atoms.retain(|_, v| !v.is_zero());
        ComplexMeasure { atoms }
    }

    pub fn atoms(&self) -> &BTreeMap<Skp, CQ> {
        &self.atoms
    }

    /// Hermitian product `Σ c_i conj(c'_j) α(ν_i ∧ ν'_j)`; atoms must be finite.
    pub fn inner_product(&self, other: &ComplexMeasure) -> Result<CQ> {
        let mut acc = CQ::zero();
        for (s, c) in &self.atoms {
            for (t, d) in &other.atoms {
                let a = pairing(s, t).expect_fin("skewness")?.clone();
                acc += c * d.conj() * CQ::new(a, Q::zero());
            }
        }
        Ok(acc)
    }
}

impl From<&AtomicMeasure> for ComplexMeasure {
    fn from(m: &AtomicMeasure) -> Self {
        ComplexMeasure::from_atoms(m.atoms.iter().map(|(s, c)| (s.clone(), CQ::new(c.clone(), Q::zero()))))
    }
}
