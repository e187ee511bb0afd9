//! JSON documents `skp.v1`, `dualgraph.v1`, `measure.v1`, `ideal.v1`, `equising.v1`.
//! Rationals are strings `"p/q"`, infinity is `"inf"`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::arith::{parse_poly, parse_rational, BranchParam, ExtRat, Q};
use crate::dualgraph::{DualGraph, EquisingBranch, EquisingData, Point, Vertex};
use crate::error::{Error, Result};
use crate::skp::Skp;
use crate::treemeasure::{AtomicMeasure, ComplexMeasure, IdealSpec, Product};

fn err(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn check_schema(v: &Value, schema: &str) -> Result<()> {
    match v.get("schema").and_then(Value::as_str) {
        Some(s) if s == schema => Ok(()),
        Some(s) => Err(err(format!("expected schema {schema}, found {s}"))),
        None => Err(err(format!("missing schema (expected {schema})"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| err(format!("field {key:?} must be an array")))
}

fn string(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| err(format!("expected a string, found {v}")))
}

fn uint(v: &Value) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| err(format!("expected a nonnegative integer, found {v}")))
}

fn rational(v: &Value) -> Result<Q> {
    let s = string(v)?;
    parse_rational(s).ok_or_else(|| err(format!("not a rational: {s:?}")))
}

fn ext(v: &Value) -> Result<ExtRat> {
    string(v)?
        .parse()
        .map_err(|_| err(format!("not a rational or inf: {v}")))
}

fn skp_body(s: &Skp) -> Value {
    json!({
        "keys": s.keys().iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        "values": s.values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "swap": s.swap(),
    })
}

fn skp_from_body(v: &Value) -> Result<Skp> {
    let keys = array(v, "keys")?
        .iter()
        .map(|k| parse_poly(string(k)?))
        .collect::<Result<Vec<_>>>()?;
    let values = array(v, "values")?.iter().map(ext).collect::<Result<Vec<_>>>()?;
    let swap = field(v, "swap")?
        .as_bool()
        .ok_or_else(|| err("swap must be a boolean"))?;
    Skp::new(keys, values, swap)
}

pub fn skp_to_json(s: &Skp) -> Value {
    let mut v = skp_body(s);
    v["schema"] = json!("skp.v1");
    v
}

pub fn skp_from_json(v: &Value) -> Result<Skp> {
    check_schema(v, "skp.v1")?;
    skp_from_body(v)
}

fn point_json(p: Point) -> Value {
    match p {
        Point::Origin => json!({"kind": "origin"}),
        Point::Free(e) => json!({"kind": "free", "on": [e]}),
        Point::Satellite(a, b) => json!({"kind": "satellite", "on": [a, b]}),
    }
}

fn point_from(v: &Value) -> Result<Point> {
    let on = || -> Result<Vec<usize>> { array(v, "on")?.iter().map(|x| Ok(uint(x)? as usize)).collect() };
    match string(field(v, "kind")?)? {
        "origin" => Ok(Point::Origin),
        "free" => match on()?.as_slice() {
            [e] => Ok(Point::Free(*e)),
            _ => Err(err("free point needs one component")),
        },
        "satellite" => match on()?.as_slice() {
            [a, b] => Ok(Point::Satellite(*a, *b)),
            _ => Err(err("satellite point needs two components")),
        },
        k => Err(err(format!("unknown point kind {k:?}"))),
    }
}

pub fn graph_to_json(g: &DualGraph) -> Value {
    json!({
        "schema": "dualgraph.v1",
        "vertices": g.vertices().iter().enumerate().map(|(i, v)| json!({
            "id": i,
            "weight": [v.farey.0, v.farey.1],
            "creation": point_json(v.creation),
        })).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "attachments": g.attachments().iter().map(|(b, v)| json!({"branch": b, "vertex": v})).collect::<Vec<_>>(),
    })
}

pub fn graph_from_json(v: &Value) -> Result<DualGraph> {
    check_schema(v, "dualgraph.v1")?;
    let mut vertices = Vec::new();
    for (i, x) in array(v, "vertices")?.iter().enumerate() {
        if uint(field(x, "id")?)? as usize != i {
            return Err(err("vertex ids must be 0, 1, 2, … in order"));
        }
        let w = array(x, "weight")?;
        let [a, b] = w.as_slice() else {
            return Err(err("weight must be a pair"));
        };
        vertices.push(Vertex {
            farey: (uint(a)?, uint(b)?),
            creation: point_from(field(x, "creation")?)?,
        });
    }
    let mut edges = BTreeSet::new();
    for e in array(v, "edges")? {
        let pair = e.as_array().ok_or_else(|| err("edge must be a pair"))?;
        let [a, b] = pair.as_slice() else {
            return Err(err("edge must be a pair"));
        };
        edges.insert((uint(a)? as usize, uint(b)? as usize));
    }
    let mut att = BTreeMap::new();
    for a in array(v, "attachments")? {
        att.insert(uint(field(a, "branch")?)? as usize, uint(field(a, "vertex")?)? as usize);
    }
    DualGraph::from_parts(vertices, edges, att)
}

pub fn measure_to_json(m: &AtomicMeasure) -> Value {
    json!({
        "schema": "measure.v1",
        "atoms": m.atoms().iter().map(|(s, c)| json!({"node": skp_body(s), "mass": c.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn complex_measure_to_json(m: &ComplexMeasure) -> Value {
    json!({
        "schema": "measure.v1",
        "atoms": m.atoms().iter().map(|(s, c)| json!({
            "node": skp_body(s),
            "mass": [c.re.to_string(), c.im.to_string()],
        })).collect::<Vec<_>>(),
    })
}

/// Reads a real measure; complex masses `[re, im]` are accepted when `im = 0`.
pub fn measure_from_json(v: &Value) -> Result<AtomicMeasure> {
    check_schema(v, "measure.v1")?;
    let mut m = AtomicMeasure::new();
    for a in array(v, "atoms")? {
        let s = skp_from_body(field(a, "node")?)?;
        let mass = field(a, "mass")?;
        let c = match mass {
            Value::Array(p) => match p.as_slice() {
                [re, im] if rational(im)? == Q::from_integer(0.into()) => rational(re)?,
                _ => return Err(err("complex masses are not supported here")),
            },
            other => rational(other)?,
        };
        m.add_atom(s, &c);
    }
    Ok(m)
}

pub fn ideal_to_json(i: &IdealSpec) -> Value {
    json!({
        "schema": "ideal.v1",
        "branches": i.branches().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "generators": i.generators().iter().map(|g| {
            g.iter().map(|(b, e)| json!([b, e])).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

pub fn ideal_from_json(v: &Value) -> Result<IdealSpec> {
    check_schema(v, "ideal.v1")?;
    let branches = array(v, "branches")?
        .iter()
        .map(|b| string(b)?.parse::<BranchParam>())
        .collect::<Result<Vec<_>>>()?;
    let mut gens = Vec::new();
    for g in array(v, "generators")? {
        let factors = g
            .as_array()
            .ok_or_else(|| err("generator must be an array of [branch, exponent]"))?;
        let mut p: Product = Vec::new();
        for f in factors {
            match f.as_array().map(Vec::as_slice) {
                Some([b, e]) => p.push((uint(b)? as usize, uint(e)? as u32)),
                _ => return Err(err("factor must be [branch, exponent]")),
            }
        }
        gens.push(p);
    }
    IdealSpec::new(branches, gens)
}

pub fn equising_to_json(d: &EquisingData) -> Value {
    json!({
        "schema": "equising.v1",
        "branches": d.branches().iter().map(|b| json!({
            "multiplicity": b.multiplicity,
            "farey": b.farey.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "contacts": d.contacts().iter().map(|((i, j), a)| json!({"pair": [i, j], "farey": a.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn equising_from_json(v: &Value) -> Result<EquisingData> {
    check_schema(v, "equising.v1")?;
    let mut branches = Vec::new();
    for b in array(v, "branches")? {
        branches.push(EquisingBranch {
            multiplicity: uint(field(b, "multiplicity")?)? as u32,
            farey: array(b, "farey")?.iter().map(rational).collect::<Result<_>>()?,
        });
    }
    let mut contacts = BTreeMap::new();
    for c in array(v, "contacts")? {
        let pair = array(c, "pair")?;
        let [i, j] = pair.as_slice() else {
            return Err(err("pair must have two entries"));
        };
        let (i, j) = (uint(i)? as usize, uint(j)? as usize);
        contacts.insert((i.min(j), i.max(j)), rational(field(c, "farey")?)?);
    }
    EquisingData::new(branches, contacts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::minimal_desing_from_branches;
    use crate::skp::skp_of_branch;
    use crate::treemeasure::zariski_factor;

    #[test]
    fn skp_round_trip() {
        let s = skp_of_branch(&"n=2; y = t^3 + t^5".parse().unwrap()).unwrap();
        let v = skp_to_json(&s);
        assert_eq!(v["values"][1], "3/2");
        assert_eq!(skp_from_json(&v).unwrap(), s);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(skp_from_json(&serde_json::from_str(&text).unwrap()).unwrap(), s);
        assert!(skp_from_json(&json!({"schema": "measure.v1"})).is_err());
    }

    #[test]
    fn graph_round_trip() {
        let b: Vec<BranchParam> = ["n=2; y = t^3", "n=1; y = 0"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let g = minimal_desing_from_branches(&b).unwrap().into_graph();
        let v = graph_to_json(&g);
        assert_eq!(v["vertices"][2]["weight"], json!([5, 2]));
        assert_eq!(graph_from_json(&v).unwrap(), g);
        let mut bad = v.clone();
        bad["vertices"][2]["weight"] = json!([5, 3]);
        assert!(graph_from_json(&bad).is_err());
    }

    #[test]
    fn measure_ideal_equising_round_trip() {
        let i = IdealSpec::parse("x^2, y^3, y^2 - x^3").unwrap();
        assert_eq!(ideal_from_json(&ideal_to_json(&i)).unwrap(), i);
        let (rho, _) = zariski_factor(&i).unwrap();
        assert_eq!(measure_from_json(&measure_to_json(&rho)).unwrap(), rho);
        let c = ComplexMeasure::from(&rho);
        assert_eq!(measure_from_json(&complex_measure_to_json(&c)).unwrap(), rho);
        let cs: Vec<BranchParam> = ["n=2; y = t^3", "n=2; y = t^3 + t^5"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let d = EquisingData::from_branches(&cs).unwrap();
        assert_eq!(equising_from_json(&equising_to_json(&d)).unwrap(), d);
    }
}
