//! Local charts of blowup models and the divisorial valuations of their components.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use super::graph::{DualGraph, Point};
use crate::arith::{q, BiPoly, ExtRat, Q};
use crate::error::{Error, Result};
use crate::skp::{build_skp, InForm, Oracle, Probe, Skp};

/// Coordinates `(u, v)` centered at a point of a blowup model: the input coordinates
/// `x`, `y` as polynomials in `(u, v)` (stored in the `x`/`y` slots of [`BiPoly`]),
/// and the exceptional components `{u = 0}`, `{v = 0}` through the point, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub x: BiPoly,
    pub y: BiPoly,
    pub u_comp: Option<usize>,
    pub v_comp: Option<usize>,
}

impl Chart {
    pub fn origin() -> Chart {
        Chart {
            x: BiPoly::x(),
            y: BiPoly::y(),
            u_comp: None,
            v_comp: None,
        }
    }

    /// The point `v/u = c` on the component `new` obtained by blowing up this chart's
    /// origin: `u = u', v = u'(v' + c)`.
    pub fn chart1(&self, c: &Q, new: usize) -> Chart {
        let u = BiPoly::x();
        let v = &BiPoly::x().shift(0, 1) + &BiPoly::monomial(c.clone(), 1, 0);
        Chart {
            x: self.x.compose(&u, &v),
            y: self.y.compose(&u, &v),
            u_comp: Some(new),
            v_comp: if c.is_zero() { self.v_comp } else { None },
        }
    }

    /// The point `u/v = 0` on the component `new`: `u = u'v', v = v'`.
    pub fn chart2(&self, new: usize) -> Chart {
        let u = BiPoly::x().shift(0, 1);
        let v = BiPoly::y();
        Chart {
            x: self.x.compose(&u, &v),
            y: self.y.compose(&u, &v),
            u_comp: self.u_comp,
            v_comp: Some(new),
        }
    }

    /// The kind of blowup this chart's origin represents.
    pub fn point(&self) -> Point {
        match (self.u_comp, self.v_comp) {
            (None, None) => Point::Origin,
            (Some(e), None) | (None, Some(e)) => Point::Free(e),
            (Some(e), Some(f)) => Point::Satellite(e.min(f), e.max(f)),
        }
    }
}

/// A blowup model: the dual graph together with a chart at the center of every
/// blowup and at every intersection point of two components.
#[derive(Debug, Clone, Default)]
pub struct BlowupModel {
    graph: DualGraph,
    centers: Vec<Chart>,
    edge_charts: BTreeMap<(usize, usize), Chart>,
    used: Vec<BTreeSet<Option<Q>>>,
}

impl BlowupModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn graph_mut(&mut self) -> &mut DualGraph {
        &mut self.graph
    }

    pub fn into_graph(self) -> DualGraph {
        self.graph
    }

    pub fn center(&self, e: usize) -> Result<&Chart> {
        self.centers.get(e).ok_or(Error::NoSuchVertex(e))
    }

    /// Blows up the origin of `chart`, which must be a point of this model.
    pub fn blowup_chart(&mut self, chart: Chart) -> Result<usize> {
        let p = chart.point();
        let id = self.graph.blowup_mut(p)?;
        if let Point::Satellite(e, f) = p {
            self.edge_charts.remove(&(e, f));
        }
        if let Some(e) = chart.u_comp {
            self.edge_charts.insert((e.min(id), e.max(id)), chart.chart2(id));
        }
        if let Some(f) = chart.v_comp {
            self.edge_charts
                .insert((f.min(id), f.max(id)), chart.chart1(&Q::zero(), id));
        }
        self.centers.push(chart);
        self.used.push(BTreeSet::new());
        Ok(id)
    }

    /// Chart at a point of the component `e`: `Some(c)` for `v/u = c`, `None` for the point at infinity.
    pub fn chart_on(&mut self, e: usize, at: Option<Q>) -> Result<Chart> {
        let center = self.center(e)?.clone();
        let chart = match &at {
            Some(c) => center.chart1(c, e),
            None => center.chart2(e),
        };
        self.used[e].insert(at);
        Ok(chart)
    }

    /// Blows up a point given combinatorially; free points are chosen among
    /// `v/u = 1, 2, 3, …` not used before, which avoids every other component.
    pub fn blowup(&mut self, p: Point) -> Result<usize> {
        let chart = match p {
            Point::Origin => Chart::origin(),
            Point::Free(e) => {
                self.center(e)?;
                let c = (1..)
                    .map(|i| Some(q(i)))
                    .find(|c| !self.used[e].contains(c))
                    .expect("unbounded");
                self.chart_on(e, c)?
            }
            Point::Satellite(e, f) => self
                .edge_charts
                .get(&(e.min(f), e.max(f)))
                .cloned()
                .ok_or_else(|| Error::InvalidBlowup(format!("E{e} and E{f} are not adjacent")))?,
        };
        self.blowup_chart(chart)
    }

    /// The divisorial valuation `ν_E = ord_E / b(E)` as an SKP.
    pub fn vertex_to_skp(&self, e: usize) -> Result<Skp> {
        let oracle = DivisorialOracle::new(self.center(e)?);
        build_skp(&oracle)
    }
}

/// `ν_E(φ) = ord_u φ(X(u, uv), Y(u, uv)) / b`, with initial form the `u`-leading
/// coefficient (a polynomial in the residue variable `v`).
pub(crate) struct DivisorialOracle {
    gx: BiPoly,
    gy: BiPoly,
    b: Q,
}

impl DivisorialOracle {
    pub(crate) fn new(center: &Chart) -> Self {
        let u = BiPoly::x();
        let uv = BiPoly::x().shift(0, 1);
        let gx = center.x.compose(&u, &uv);
        let gy = center.y.compose(&u, &uv);
        let b = gx.ord_x().unwrap_or(u32::MAX).min(gy.ord_x().unwrap_or(u32::MAX));
        DivisorialOracle { gx, gy, b: q(b as i64) }
    }
}

impl Oracle for DivisorialOracle {
    fn probe(&self, phi: &BiPoly) -> Result<Probe> {
        let g = phi.compose(&self.gx, &self.gy);
        Ok(match g.lowest_x_part() {
            None => Probe {
                value: ExtRat::Inf,
                initial: None,
            },
            Some((o, part)) => Probe {
                value: ExtRat::Fin(q(o as i64) / &self.b),
                initial: Some(InForm::Poly(part)),
            },
        })
    }
}
