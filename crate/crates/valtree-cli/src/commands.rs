//! One function per verb; each returns the full output text.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use valtree::arith::puiseux::factor_branches;
use valtree::arith::{parse_poly, BranchParam, ExtRat, Q};
use valtree::dualgraph::{
    classical_invariants, eggers_tree, minimal_desing_from_branches, minimal_desing_from_equising, DualGraph,
    EggersTree, EquisingData, Point,
};
use valtree::io::{
    equising_from_json, graph_to_json, ideal_to_json, measure_to_json, skp_from_json, skp_to_json, to_dot,
};
use valtree::selftest;
use valtree::skp::{skp_of_branch, InvariantReport, Kind, Skp};
use valtree::treemeasure::{
    class_measure, integral_closure_member, mixed_multiplicity, zariski_factor, AtomicMeasure, IdealSpec,
};

use crate::cli::{Curves, Points, Verb};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(#[from] valtree::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

pub struct Context {
    pub format: Format,
    pub trunc: Option<usize>,
}

/// Output of a verb; `ok = false` turns into exit code 1 after printing.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn one_or_many(mut docs: Vec<Value>) -> Value {
    if docs.len() == 1 {
        docs.pop().expect("one element")
    } else {
        Value::Array(docs)
    }
}

fn ext(v: &ExtRat) -> String {
    match v {
        ExtRat::Inf => "∞".into(),
        ExtRat::Fin(q) => q.to_string(),
    }
}

fn read_json(path: &Path) -> Res<Value> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(valtree::Error::Json(format!("{}: {e}", path.display()))))
}

impl Context {
    fn branch(&self, text: &str) -> Res<BranchParam> {
        let b: BranchParam = text.parse()?;
        Ok(match self.trunc {
            Some(t) => b.with_trunc(t),
            None => b,
        })
    }

    /// Branches of the curve, in input order, without repetitions.
    fn curves(&self, c: &Curves) -> Res<Vec<BranchParam>> {
        let mut out: Vec<BranchParam> = Vec::new();
        let mut push = |b: BranchParam| -> Res<()> {
            for d in &out {
                if d.same_curve(&b)? {
                    return Ok(());
                }
            }
            out.push(b);
            Ok(())
        };
        for s in &c.branches {
            push(self.branch(s)?)?;
        }
        for p in &c.polys {
            for (b, _) in factor_branches(&parse_poly(p)?)?.branches {
                push(match self.trunc {
                    Some(t) => b.with_trunc(t),
                    None => b,
                })?;
            }
        }
        if out.is_empty() {
            return Err(usage("give at least one --branch or a --poly through the origin"));
        }
        Ok(out)
    }

    fn points(&self, p: &Points) -> Res<Vec<Skp>> {
        let mut out = Vec::new();
        for path in &p.skps {
            out.push(skp_from_json(&read_json(path)?)?);
        }
        for s in &p.branches {
            out.push(skp_of_branch(&self.branch(s)?)?);
        }
        if out.is_empty() {
            return Err(usage("give at least one --skp FILE or --branch"));
        }
        Ok(out)
    }

    fn require(&self, allowed: &[Format]) -> Res<()> {
        if allowed.contains(&self.format) {
            Ok(())
        } else {
            Err(usage("--dot is only available for desing and desing-equi"))
        }
    }
}

pub fn run(verb: &Verb, cx: &Context) -> Res<Output> {
    use Format::*;
    match verb {
        Verb::Desing(_) | Verb::DesingEqui { .. } => {}
        _ => cx.require(&[Text, Json])?,
    }
    let out = match verb {
        Verb::Skp(c) => skp(cx, c)?,
        Verb::Eval { points, poly } => eval(cx, points, poly)?,
        Verb::Invariants(p) => invariants(cx, p)?,
        Verb::Wedge(p) => wedge(cx, p)?,
        Verb::Desing(c) => {
            let model = minimal_desing_from_branches(&cx.curves(c)?)?;
            graph_output(cx, model.graph())
        }
        Verb::DesingEqui { equi } => {
            let data = equising_from_json(&read_json(equi)?)?;
            graph_output(cx, &minimal_desing_from_equising(&data)?)
        }
        Verb::Eggers(c) => eggers(cx, c)?,
        Verb::Classical(c) => classical(cx, c)?,
        Verb::IdealFactor { ideal } => ideal_factor(cx, ideal)?,
        Verb::Closure { ideal, poly } => closure(cx, ideal, poly)?,
        Verb::Mult { ideals } => mult(cx, ideals)?,
        Verb::Classmeasure(c) => classmeasure(cx, c)?,
        Verb::Selftest => return Ok(selftest_report(cx)),
    };
    Ok(out.into())
}

fn skp(cx: &Context, c: &Curves) -> Res<String> {
    let branches = cx.curves(c)?;
    let skps: Vec<Skp> = branches.par_iter().map(skp_of_branch).collect::<valtree::Result<_>>()?;
    Ok(match cx.format {
        Format::Json => pretty(&one_or_many(skps.iter().map(skp_to_json).collect())),
        _ => branches.iter().zip(&skps).map(|(b, s)| format!("{b}: {s}\n")).collect(),
    })
}

fn eval(cx: &Context, p: &Points, poly: &str) -> Res<String> {
    let phi = parse_poly(poly)?;
    let vals: Vec<ExtRat> = cx
        .points(p)?
        .iter()
        .map(|s| s.eval(&phi))
        .collect::<valtree::Result<_>>()?;
    Ok(match cx.format {
        Format::Json => pretty(&one_or_many(
            vals.iter()
                .map(|v| json!({"schema": "value.v1", "value": v.to_string()}))
                .collect(),
        )),
        _ => vals.iter().map(|v| format!("{}\n", ext(v))).collect(),
    })
}

/// Semigroup values scaled to integers: by `m` on curves, by `b` otherwise.
fn integral_semigroup(r: &InvariantReport) -> Vec<ExtRat> {
    let scale = if r.kind == Kind::Curve { r.m } else { r.b.unwrap_or(1) };
    let s = Q::from_integer(scale.into());
    r.semigroup.iter().map(|v| v.mul_q(&s).expect("finite scale")).collect()
}

fn invariants(cx: &Context, p: &Points) -> Res<String> {
    let reports: Vec<InvariantReport> = cx.points(p)?.iter().map(Skp::invariants).collect();
    if cx.format == Format::Json {
        let docs = reports
            .iter()
            .map(|r| {
                json!({
                    "schema": "invariants.v1",
                    "kind": r.kind.to_string(),
                    "alpha": r.alpha.to_string(),
                    "thinness": r.thinness.to_string(),
                    "m": r.m,
                    "b": r.b,
                    "semigroup": integral_semigroup(r).iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                    "approximating": r.approx.iter().map(|a| json!({
                        "alpha": a.alpha.to_string(),
                        "thinness": a.thinness.to_string(),
                        "m": a.m,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        return Ok(pretty(&one_or_many(docs)));
    }
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let semigroup: Vec<String> = integral_semigroup(r).iter().map(ext).collect();
        let (rk, rrk, trdeg) = r.ranks();
        let _ = writeln!(out, "kind: {}", r.kind);
        let _ = writeln!(out, "α = {}", ext(&r.alpha));
        let _ = writeln!(out, "A = {}", ext(&r.thinness));
        let _ = writeln!(out, "m = {}", r.m);
        let _ = writeln!(out, "b = {}", r.b.map_or("none".into(), |b| b.to_string()));
        let _ = writeln!(out, "ranks (rk, rat.rk, tr.deg) = ({rk}, {rrk}, {trdeg})");
        let _ = writeln!(out, "semigroup: {}", semigroup.join(", "));
        for a in &r.approx {
            let _ = writeln!(out, "approximating: α = {}, A = {}, m = {}", a.alpha, a.thinness, a.m);
        }
    }
    Ok(out)
}

fn wedge(cx: &Context, p: &Points) -> Res<String> {
    let pts = cx.points(p)?;
    let [a, b] = pts.as_slice() else {
        return Err(usage("wedge needs exactly two valuations"));
    };
    let w = a.wedge(b);
    Ok(match cx.format {
        Format::Json => pretty(&skp_to_json(&w)),
        _ => format!(
            "{w}\nα = {}\nA = {}\n",
            ext(&w.skewness()),
            ext(&w.thinness_at(&w.skewness()))
        ),
    })
}

fn graph_text(g: &DualGraph) -> String {
    let mut out = String::new();
    for (i, v) in g.vertices().iter().enumerate() {
        let how = match v.creation {
            Point::Origin => "origin".to_string(),
            Point::Free(e) => format!("free point of E{e}"),
            Point::Satellite(e, f) => format!("satellite point E{e} ∩ E{f}"),
        };
        let _ = writeln!(out, "E{i} ({},{}) {how}", v.farey.0, v.farey.1);
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "E{a} -- E{b}");
    }
    for (c, e) in g.attachments() {
        let _ = writeln!(out, "C{c} meets E{e}");
    }
    out
}

fn graph_output(cx: &Context, g: &DualGraph) -> String {
    match cx.format {
        Format::Json => pretty(&graph_to_json(g)),
        Format::Dot => to_dot(g),
        Format::Text => graph_text(g),
    }
}

fn eggers_json(t: &EggersTree) -> Value {
    json!({
        "schema": "eggers.v1",
        "nodes": t.nodes.iter().map(|n| json!({
            "k": n.param.to_string(),
            "parent": n.parent,
            "branches": n.branches,
            "marks": n.marks,
        })).collect::<Vec<_>>(),
    })
}

fn eggers(cx: &Context, c: &Curves) -> Res<String> {
    let t = eggers_tree(&EquisingData::from_branches(&cx.curves(c)?)?);
    if cx.format == Format::Json {
        return Ok(pretty(&eggers_json(&t)));
    }
    let mut out = String::new();
    for (i, n) in t.nodes.iter().enumerate() {
        let parent = n.parent.map_or("-".into(), |p| format!("N{p}"));
        let list =
            |s: &std::collections::BTreeSet<usize>| s.iter().map(|b| format!("C{b}")).collect::<Vec<_>>().join(",");
        let _ = writeln!(
            out,
            "N{i} K = {} parent {parent} branches {{{}}} marks {{{}}}",
            ext(&n.param),
            list(&n.branches),
            list(&n.marks)
        );
    }
    Ok(out)
}

fn classical(cx: &Context, c: &Curves) -> Res<String> {
    let branches = cx.curves(c)?;
    let invs = branches
        .par_iter()
        .map(classical_invariants)
        .collect::<valtree::Result<Vec<_>>>()?;
    if cx.format == Format::Json {
        let docs = invs
            .iter()
            .map(|i| {
                json!({"schema": "classical.v1", "n": i.n, "g": i.g, "beta": i.beta, "e": i.e,
                       "n_i": i.n_i, "beta_bar": i.beta_bar})
            })
            .collect();
        return Ok(pretty(&one_or_many(docs)));
    }
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    Ok(branches
        .iter()
        .zip(&invs)
        .map(|(b, i)| {
            format!(
                "{b}: n = {}, g = {}, β = [{}], e = [{}], n_i = [{}], semigroup = <{}>\n",
                i.n,
                i.g,
                join(&i.beta),
                join(&i.e),
                join(&i.n_i),
                join(&i.beta_bar)
            )
        })
        .collect())
}

fn ideal_factor(cx: &Context, text: &str) -> Res<String> {
    let spec = IdealSpec::parse(text)?;
    let (rho, factors) = zariski_factor(&spec)?;
    if cx.format == Format::Json {
        return Ok(pretty(&json!({
            "schema": "ideal-factor.v1",
            "ideal": ideal_to_json(&spec),
            "measure": measure_to_json(&rho),
            "factors": factors.iter().map(|f| json!({
                "valuation": skp_to_json(&f.valuation),
                "b": f.b,
                "exponent": f.exponent,
            })).collect::<Vec<_>>(),
        })));
    }
    let mut out = format!("ideal {spec}\nρ = {rho}\nmass = {}\n", rho.mass());
    for f in &factors {
        let kind = if f.valuation.is_curve() {
            "curve"
        } else {
            "simple complete"
        };
        let _ = writeln!(
            out,
            "factor ({kind}): exponent {}, b = {}, ν = {}",
            f.exponent, f.b, f.valuation
        );
    }
    Ok(out)
}

fn closure(cx: &Context, ideal: &str, poly: &str) -> Res<String> {
    let spec = IdealSpec::parse(ideal)?;
    let phi = factor_branches(&parse_poly(poly)?)?;
    let member = integral_closure_member(&phi.branches, &spec)?;
    Ok(match cx.format {
        Format::Json => pretty(&json!({"schema": "closure.v1", "member": member})),
        _ => format!("{}\n", if member { "yes" } else { "no" }),
    })
}

fn mult(cx: &Context, ideals: &[String]) -> Res<String> {
    let specs = ideals
        .iter()
        .map(|t| IdealSpec::parse(t))
        .collect::<valtree::Result<Vec<_>>>()?;
    let e = match specs.as_slice() {
        [i] => mixed_multiplicity(i, i)?,
        [i, j] => mixed_multiplicity(i, j)?,
        _ => return Err(usage("mult takes one or two --ideal")),
    };
    Ok(match cx.format {
        Format::Json => pretty(&json!({"schema": "multiplicity.v1", "value": e.to_string()})),
        _ => format!("{e}\n"),
    })
}

fn classmeasure(cx: &Context, c: &Curves) -> Res<String> {
    let model = minimal_desing_from_branches(&cx.curves(c)?)?;
    let g = model.graph();
    let measures = (0..g.len())
        .map(|e| class_measure(&model, e))
        .collect::<valtree::Result<Vec<AtomicMeasure>>>()?;
    if cx.format == Format::Json {
        return Ok(pretty(&json!({
            "schema": "classmeasure.v1",
            "graph": graph_to_json(g),
            "measures": measures.iter().map(measure_to_json).collect::<Vec<_>>(),
        })));
    }
    Ok(g.vertices()
        .iter()
        .zip(&measures)
        .enumerate()
        .map(|(i, (v, m))| format!("E{i} ({},{}): ρ = {m}\n", v.farey.0, v.farey.1))
        .collect())
}

fn selftest_report(cx: &Context) -> Output {
    let results = selftest::run_all();
    let ok = results.iter().all(|r| r.passed);
    let text = match cx.format {
        Format::Json => pretty(&json!({
            "schema": "selftest.v1",
            "criteria": results.iter().map(|r| json!({
                "id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail,
            })).collect::<Vec<_>>(),
        })),
        _ => selftest::render(&results),
    };
    Output { text, ok }
}
