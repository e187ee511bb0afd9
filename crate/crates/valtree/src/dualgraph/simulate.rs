//! Chart-by-chart simulation of the infinitely nearby points of branches.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use super::chart::{BlowupModel, Chart};
use super::graph::Point;
use crate::arith::{BranchParam, PolyParam, Series, DEFAULT_TRUNC_CAP, Q};
use crate::error::{Error, Result};

const MAX_BLOWUPS: usize = 10_000;

/// When to stop blowing up along a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Until {
    /// Until the strict transform is smooth, transverse, and meets a single component.
    Resolved,
    /// Exactly this many blowups, the origin included.
    Depth(usize),
}

/// The sequence of points blown up along a branch, with the local parameterization
/// `(u(t), v(t))` of the strict transform at each of them.
#[derive(Debug, Clone)]
pub struct NearbyPoints {
    pub kinds: Vec<Point>,
    pub params: Vec<(Series, Series)>,
    pub model: BlowupModel,
}

fn ord_or_err(s: &Series) -> Result<usize> {
    s.ord().ok_or(Error::TruncationInsufficient(s.prec()))
}

/// Compares `ord u` and `ord v`, failing when precision does not decide it.
fn cmp_ord(u: &Series, v: &Series) -> Result<Ordering> {
    match (u.ord(), v.ord()) {
        (Some(a), Some(b)) => Ok(a.cmp(&b)),
        (Some(a), None) if v.prec() > a => Ok(Ordering::Less),
        (None, Some(b)) if u.prec() > b => Ok(Ordering::Greater),
        _ => Err(Error::TruncationInsufficient(u.prec().min(v.prec()))),
    }
}

/// Where a branch meets the new component after blowing up the origin of its chart,
/// and its parameterization in the new chart.
fn transform(u: &Series, v: &Series) -> Result<(Option<Q>, Series, Series)> {
    let short = || Error::TruncationInsufficient(u.prec().min(v.prec()));
    match cmp_ord(u, v)? {
        Ordering::Greater => {
            let u2 = u.div(v).ok_or_else(short)?;
            Ok((None, u2, v.clone()))
        }
        ord => {
            let a = ord_or_err(u)?;
            let c = if ord == Ordering::Equal {
                v.coeff(a) / u.coeff(a)
            } else {
                Q::zero()
            };
            let w = v.div(u).ok_or_else(short)?;
            let w = w.sub(&Series::monomial(c.clone(), 0, w.prec()));
            Ok((Some(c), u.clone(), w))
        }
    }
}

/// Whether a single branch through the origin of `chart` is already in normal crossings.
fn resolved(chart: &Chart, u: &Series, v: &Series) -> Result<bool> {
    let is_one = |s: &Series| -> Result<bool> {
        match s.ord() {
            Some(o) => Ok(o == 1),
            None if s.prec() > 1 => Ok(false),
            None => Err(Error::TruncationInsufficient(s.prec())),
        }
    };
    Ok(match (chart.u_comp, chart.v_comp) {
        (Some(_), None) => is_one(u)?,
        (None, Some(_)) => is_one(v)?,
        _ => false,
    })
}

/// A branch index with its parameterization in the current chart.
type Member = (usize, Series, Series);

struct Pending {
    chart: Chart,
    members: Vec<Member>,
}

fn run(
    params: &[PolyParam],
    until: Until,
    prec: usize,
    mut trace: Option<&mut Vec<(Point, Series, Series)>>,
) -> Result<BlowupModel> {
    let mut model = BlowupModel::new();
    let members = params
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let (x, y) = p.series(prec);
            (j, x, y)
        })
        .collect();
    let mut queue = VecDeque::from([Pending {
        chart: Chart::origin(),
        members,
    }]);
    let mut done = 0usize;
    while let Some(Pending { chart, members }) = queue.pop_front() {
        let must = match until {
            _ if chart.u_comp.is_none() && chart.v_comp.is_none() => true,
            Until::Depth(n) => done < n,
            Until::Resolved => members.len() > 1 || !resolved(&chart, &members[0].1, &members[0].2)?,
        };
        if !must {
            if until == Until::Resolved {
                let e = chart.u_comp.or(chart.v_comp).expect("point lies on a component");
                for (j, _, _) in &members {
                    model.graph_mut().attach(*j, e)?;
                }
            }
            continue;
        }
        if let Some(t) = trace.as_deref_mut() {
            let (_, u, v) = &members[0];
            t.push((chart.point(), u.clone(), v.clone()));
        }
        let f = model.blowup_chart(chart)?;
        done += 1;
        if done > MAX_BLOWUPS {
            return Err(Error::IterationCap("too many blowups; are two branches equal?".into()));
        }
        let mut groups: BTreeMap<(bool, Option<Q>), Vec<Member>> = BTreeMap::new();
        for (j, u, v) in members {
            let (at, u2, v2) = transform(&u, &v)?;
            groups.entry((at.is_none(), at)).or_default().push((j, u2, v2));
        }
        for ((_, at), ms) in groups {
            let chart = model.chart_on(f, at)?;
            queue.push_back(Pending { chart, members: ms });
        }
    }
    Ok(model)
}

fn with_precision<T>(start: usize, cap: usize, mut f: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut prec = start;
    loop {
        match f(prec) {
            Err(Error::TruncationInsufficient(_)) if prec < cap => prec = (2 * prec).min(cap),
            other => return other,
        }
    }
}

fn start_precision(params: &[PolyParam]) -> usize {
    let e = params.iter().map(|p| p.max_exponent()).max().unwrap_or(1) as usize;
    (4 * e + 8).max(16)
}

/// Blows up the infinitely nearby points of a branch.
pub fn nearby_points_of_branch(c: &BranchParam, until: Until) -> Result<NearbyPoints> {
    let params = [PolyParam::from(c)];
    let start = start_precision(&params).max(c.trunc());
    with_precision(start, c.trunc_cap().max(DEFAULT_TRUNC_CAP), |prec| {
        let mut trace = Vec::new();
        let model = run(&params, until, prec, Some(&mut trace))?;
        let (kinds, params) = trace.into_iter().map(|(k, u, v)| (k, (u, v))).unzip();
        Ok(NearbyPoints { kinds, params, model })
    })
}

/// The minimal desingularization of the curve with the given branches, with each
/// branch attached to the component it meets.
pub fn minimal_desing_from_branches(cs: &[BranchParam]) -> Result<BlowupModel> {
    for (i, a) in cs.iter().enumerate() {
        for b in &cs[i + 1..] {
            if a.same_curve(b)? {
                return Err(Error::IdenticalBranches);
            }
        }
    }
    let params: Vec<PolyParam> = cs.iter().map(PolyParam::from).collect();
    let cap = cs.iter().map(|c| c.trunc_cap()).max().unwrap_or(DEFAULT_TRUNC_CAP);
    let start = cs
        .iter()
        .map(|c| c.trunc())
        .max()
        .unwrap_or(0)
        .max(start_precision(&params));
    with_precision(start, cap, |prec| run(&params, Until::Resolved, prec, None))
}

/// Same as [`minimal_desing_from_branches`] for arbitrary polynomial parameterizations,
/// which must be primitive and pairwise distinct.
pub fn minimal_desing_from_params(params: &[PolyParam]) -> Result<BlowupModel> {
    with_precision(start_precision(params), DEFAULT_TRUNC_CAP, |prec| {
        run(params, Until::Resolved, prec, None)
    })
}
