//! Cohomology classes of exceptional components over all blowup models, and the
//! isometry sending them to atomic measures on divisorial valuations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::measure::AtomicMeasure;
use crate::arith::{q, Q};
use crate::dualgraph::{BlowupModel, Point};
use crate::error::{Error, Result};
use crate::skp::Skp;

/// A class `Σ c_E [E]` in the orthogonal basis of exceptional classes (`[E]² = -1`),
/// indexed by creation order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CohomClass {
    coords: BTreeMap<usize, Q>,
}

impl CohomClass {
    pub fn unit(e: usize) -> Self {
        CohomClass {
            coords: [(e, Q::one())].into_iter().collect(),
        }
    }

    pub fn coords(&self) -> &BTreeMap<usize, Q> {
        &self.coords
    }

    pub fn add(&self, other: &CohomClass) -> CohomClass {
        let mut coords = self.coords.clone();
        for (e, c) in &other.coords {
            *coords.entry(*e).or_insert_with(Q::zero) += c;
        }
        coords.retain(|_, c| !c.is_zero());
        CohomClass { coords }
    }

    /// `ω · ω' = -Σ c_E c'_E`.
    pub fn pairing(&self, other: &CohomClass) -> Q {
        -self
            .coords
            .iter()
            .filter_map(|(e, c)| other.coords.get(e).map(|d| c * d))
            .fold(Q::zero(), |a, b| a + b)
    }
}

/// The class `[E]` of a component at the model where it is created.
pub fn class_of_vertex(model: &BlowupModel, e: usize) -> Result<CohomClass> {
    model.graph().vertex(e)?;
    Ok(CohomClass::unit(e))
}

/// Components whose intersection point (or whose free point) was blown up to create `e`.
fn creators(model: &BlowupModel, e: usize) -> Result<Vec<usize>> {
    Ok(match model.graph().vertex(e)?.creation {
        Point::Origin => vec![],
        Point::Free(a) => vec![a],
        Point::Satellite(a, b) => vec![a, b],
    })
}

fn b_of(model: &BlowupModel, e: usize) -> Result<u32> {
    Ok(model.graph().vertex(e)?.farey.1 as u32)
}

/// The measure `ρ_E` of `[E]`: `ν_m` for `E0`, otherwise `b(E) ν_E − Σ b(E') ν_E'` over
/// the components whose point was blown up.
pub fn class_measure(model: &BlowupModel, e: usize) -> Result<AtomicMeasure> {
    let cr = creators(model, e)?;
    if cr.is_empty() {
        return Ok(AtomicMeasure::atom(Skp::nu_m(), Q::one()));
    }
    let mut m = AtomicMeasure::atom(model.vertex_to_skp(e)?, q(b_of(model, e)? as i64));
    for a in cr {
        m.add_atom(model.vertex_to_skp(a)?, &-q(b_of(model, a)? as i64));
    }
    Ok(m)
}

/// The measure of an arbitrary class, by linearity.
pub fn measure_of_class(model: &BlowupModel, w: &CohomClass) -> Result<AtomicMeasure> {
    let mut m = AtomicMeasure::new();
    for (e, c) in w.coords() {
        m = m.add(&class_measure(model, *e)?.scale(c));
    }
    Ok(m)
}

/// The class `ω_E = [E] + Σ ω_E'` (over the creating components), whose measure is
/// `b(ν_E) ν_E`.
pub fn class_of_component(model: &BlowupModel, e: usize) -> Result<CohomClass> {
    let mut w = CohomClass::unit(e);
    for a in creators(model, e)? {
        w = w.add(&class_of_component(model, a)?);
    }
    Ok(w)
}

/// The class with measure `b(ν) ν` for a divisorial valuation realized in the model.
pub fn class_of_divisorial(s: &Skp, model: &BlowupModel) -> Result<CohomClass> {
    for e in 0..model.graph().len() {
        if model.vertex_to_skp(e)? == *s {
            return class_of_component(model, e);
        }
    }
    Err(Error::Input(format!("{s} is not a component of this model")))
}
