//! The nine acceptance checks. Each returns `Ok(summary)` or `Err(first failure)`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::corpus::{corpus, tangential_pair, TANGENTIAL_TRUNCATION};
use super::oracles::{all_models, monomial_mixed_multiplicity, random_poly, random_skp};
use crate::arith::{q, BiPoly, BranchParam, ExtRat, Q};
use crate::dualgraph::{
    branch_data, classical_invariants, contact_parameter, minimal_desing_from_branches, minimal_desing_from_equising,
    minimal_desing_from_params, nearby_points_of_branch, semigroup_from_tree, BlowupModel, EquisingData, Until,
};
use crate::io::{graph_to_json, measure_to_json, skp_to_json, to_dot};
use crate::skp::{skp_of_branch, Skp};
use crate::treemeasure::{
    class_measure, class_of_component, class_of_vertex, integral_closure_member, mixed_multiplicity, zariski_factor,
    AtomicMeasure, IdealSpec,
};

pub type Outcome = std::result::Result<String, String>;

const SEED: u64 = 0x5EED_7A1E;

fn fail<E: std::fmt::Display>(what: impl std::fmt::Display) -> impl FnOnce(E) -> String {
    move |e| format!("{what}: {e}")
}

/// Runs `f` over `items` in parallel and returns the first failure in input order.
fn first_failure<T: Sync, F>(items: &[T], f: F) -> std::result::Result<(), String>
where
    F: Fn(&T) -> std::result::Result<(), String> + Sync + Send,
{
    let results: Vec<_> = items.par_iter().map(f).collect();
    results.into_iter().collect()
}

fn min_ext(a: ExtRat, b: ExtRat) -> ExtRat {
    a.min(b)
}

/// Valuation axioms on random SKPs.
pub fn valuation_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cases: Vec<(Skp, Vec<(BiPoly, BiPoly)>)> = (0..200)
        .map(|_| {
            let s = random_skp(&mut rng, 12);
            let pairs = (0..5)
                .map(|_| (random_poly(&mut rng, 6), random_poly(&mut rng, 6)))
                .collect();
            (s, pairs)
        })
        .collect();
    first_failure(&cases, |(s, pairs)| {
        for j in 0..=s.k() {
            let v = s.eval(&s.key_input(j)).map_err(fail(format!("{s}")))?;
            if v != s.values()[j] {
                return Err(format!("{s}: ν(U_{j}) = {v}, expected {}", s.values()[j]));
            }
        }
        for (f, g) in pairs {
            let ev = |p: &BiPoly| s.eval(p).map_err(fail(format!("{s} at {p}")));
            let (vf, vg) = (ev(f)?, ev(g)?);
            if ev(&(f * g))? != &vf + &vg {
                return Err(format!("{s}: additivity fails for {f} and {g}"));
            }
            if ev(&(f + g))? < min_ext(vf, vg) {
                return Err(format!("{s}: ultrametric inequality fails for {f} and {g}"));
            }
        }
        Ok(())
    })?;
    Ok("200 SKPs, 1000 polynomial pairs".into())
}

fn multiplicity_of(c: &BranchParam) -> Result<Q, String> {
    let ox = c.substitute_order(&BiPoly::x()).map_err(fail(c))?;
    let oy = c.substitute_order(&BiPoly::y()).map_err(fail(c))?;
    Ok(ox.min(oy).fin().cloned().ok_or("branch along both axes")?)
}

/// SKP evaluation of curve valuations against substitution orders.
pub fn oracle_equivalence() -> Outcome {
    let cs = corpus();
    let ws: Vec<BiPoly> = cs.iter().map(|c| c.weierstrass()).collect();
    let count = std::sync::atomic::AtomicUsize::new(0);
    first_failure(&cs.iter().enumerate().collect::<Vec<_>>(), |&(i, c)| {
        let s = skp_of_branch(c).map_err(fail(c))?;
        let n = multiplicity_of(c)?;
        let mut probes: Vec<BiPoly> = (0..=8)
            .flat_map(|a| (0..=8 - a).map(move |b| BiPoly::monomial(q(1), a, b)))
            .collect();
        probes.extend(ws.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, w)| w.clone()));
        for p in &probes {
            let lhs = s.eval(p).map_err(fail(c))?;
            let rhs = c.substitute_order(p).map_err(fail(c))?.div_q(&n);
            if lhs != rhs {
                return Err(format!("{c} at {p}: SKP gives {lhs}, substitution gives {rhs}"));
            }
        }
        count.fetch_add(probes.len(), std::sync::atomic::Ordering::Relaxed);
        Ok(())
    })?;
    Ok(format!("{} branches, {} evaluations", cs.len(), count.into_inner()))
}

fn check_vertices(model: &BlowupModel) -> std::result::Result<(), String> {
    let g = model.graph();
    let mut mult = Vec::with_capacity(g.len());
    for (e, v) in g.vertices().iter().enumerate() {
        let s = model.vertex_to_skp(e).map_err(fail(format!("E{e}")))?;
        let inv = s.invariants();
        let (a, b) = v.farey;
        if inv.thinness != ExtRat::Fin(v.farey_parameter()) || inv.b != Some(b as u32) {
            return Err(format!(
                "E{e} of {}: SKP gives A = {}, b = {:?}; Farey weight ({a},{b})",
                g.canonical_form(),
                inv.thinness,
                inv.b
            ));
        }
        mult.push(s.multiplicity() as u64);
    }
    let bad = g.check_determinants(|v| mult[v]);
    if let Some((p, v)) = bad.first() {
        return Err(format!(
            "determinant law fails on E{p} -- E{v} of {}",
            g.canonical_form()
        ));
    }
    Ok(())
}

/// Farey weights against SKP invariants of divisorial valuations.
pub fn farey_isometry() -> Outcome {
    let mut models: Vec<BlowupModel> = Vec::new();
    for c in corpus() {
        models.push(nearby_points_of_branch(&c, Until::Depth(8)).map_err(fail(&c))?.model);
    }
    let enumerated = all_models(6);
    let n_enum = enumerated.len();
    models.extend(enumerated);
    first_failure(&models, check_vertices)?;
    let comps: usize = models.iter().map(|m| m.graph().len()).sum();
    Ok(format!(
        "{} models ({n_enum} enumerated), {comps} components",
        models.len()
    ))
}

fn compare_desing(cs: &[BranchParam]) -> std::result::Result<(), String> {
    let names = || cs.iter().map(|c| format!("[{c}]")).collect::<Vec<_>>().join(" ");
    let oracle = minimal_desing_from_branches(cs).map_err(fail(names()))?;
    let data = EquisingData::from_branches(cs).map_err(fail(names()))?;
    let g = minimal_desing_from_equising(&data).map_err(fail(names()))?;
    if g.canonical_form() != oracle.graph().canonical_form() {
        return Err(format!(
            "{}: equisingularity gives {}, simulation gives {}",
            names(),
            g.canonical_form(),
            oracle.graph().canonical_form()
        ));
    }
    Ok(())
}

/// The tangential pair from exact parameterizations, with the contact derived from
/// the intersection number.
fn tangential_case() -> std::result::Result<String, String> {
    let [c1, c2] = tangential_pair();
    let cs = corpus();
    let cusp = &cs[2];
    let w = cusp.weierstrass();
    let meet = c2.order_at(&w, 64).ok_or("the pair meets to infinite order")?;
    let s1 = skp_of_branch(cusp).map_err(fail(cusp))?;
    let s2 = skp_of_branch(&cs[TANGENTIAL_TRUNCATION]).map_err(fail(&cs[TANGENTIAL_TRUNCATION]))?;
    let contact = contact_parameter(&s1, &s2, &q(meet as i64)).map_err(fail("contact"))?;
    let data = EquisingData::new(
        vec![branch_data(&s1), branch_data(&s2)],
        [((0, 1), contact.clone())].into(),
    )
    .map_err(fail("tangential data"))?;
    let g = minimal_desing_from_equising(&data).map_err(fail("tangential pair"))?;
    let oracle = minimal_desing_from_params(&[c1, c2]).map_err(fail("tangential pair"))?;
    if g.canonical_form() != oracle.graph().canonical_form() {
        return Err(format!(
            "tangential pair: equisingularity gives {}, simulation gives {}",
            g.canonical_form(),
            oracle.graph().canonical_form()
        ));
    }
    Ok(format!("C1·C2 = {meet}, contact {contact}"))
}

/// Desingularization from equisingularity data against chart simulation.
pub fn desingularization() -> Outcome {
    let cs = corpus();
    let mut sets: Vec<Vec<BranchParam>> = cs.iter().map(|c| vec![c.clone()]).collect();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            sets.push(vec![cs[i].clone(), cs[j].clone()]);
        }
    }
    for i in 0..cs.len() {
        sets.push((0..3).map(|k| cs[(i + 5 * k) % cs.len()].clone()).collect());
    }
    sets.push(vec![cs[0].clone(), cs[1].clone(), cs[10].clone(), cs[13].clone()]);
    first_failure(&sets, |s| compare_desing(s))?;
    let tangential = tangential_case()?;
    Ok(format!("{} curves; tangential pair: {tangential}", sets.len() + 1))
}

/// Semigroup generators from the recursion, from the tree, and from intersections
/// with the approximate roots.
pub fn classical_dictionary() -> Outcome {
    let cs = corpus();
    let cusp = classical_invariants(&cs[2]).map_err(fail(&cs[2]))?;
    if cusp.beta_bar != [2, 3] {
        return Err(format!("cusp semigroup is {:?}", cusp.beta_bar));
    }
    first_failure(&cs, |c| {
        let inv = classical_invariants(c).map_err(fail(c))?;
        let tree = semigroup_from_tree(c).map_err(fail(c))?;
        if inv.beta_bar != tree {
            return Err(format!(
                "{c}: recursion gives {:?}, tree gives {:?}",
                inv.beta_bar, tree
            ));
        }
        let s = skp_of_branch(c).map_err(fail(c))?;
        let mut keys = vec![0];
        keys.extend(s.invariants().approx.iter().map(|p| p.k));
        let direct: Vec<u64> = keys
            .iter()
            .map(|&k| {
                let o = c.substitute_order(&s.key_input(k)).map_err(fail(c))?;
                o.fin()
                    .and_then(|v| v.to_integer().try_into().ok())
                    .ok_or(format!("{c}: key {k} lies on the branch"))
            })
            .collect::<std::result::Result<_, String>>()?;
        if direct != tree {
            return Err(format!(
                "{c}: intersections with keys give {direct:?}, tree gives {tree:?}"
            ));
        }
        Ok(())
    })?;
    Ok(format!("{} branches; cusp semigroup <2, 3>", cs.len()))
}

fn measure(spec: &IdealSpec) -> std::result::Result<AtomicMeasure, String> {
    zariski_factor(spec).map(|(m, _)| m).map_err(fail(spec))
}

fn random_spec<R: Rng>(rng: &mut R, pool: &[BranchParam]) -> IdealSpec {
    let gens = (0..rng.gen_range(1..=3))
        .map(|_| {
            (0..rng.gen_range(1..=2))
                .map(|_| (rng.gen_range(0..pool.len()), rng.gen_range(1..=2)))
                .collect()
        })
        .collect();
    IdealSpec::new(pool.to_vec(), gens).expect("pool branches are distinct")
}

/// Tree measures of ideals: closures, multiplicativity, mass.
pub fn ideals() -> Outcome {
    let two_m = AtomicMeasure::atom(Skp::nu_m(), q(2));
    for text in ["x^2, y^2", "x^2, x*y, y^2"] {
        let spec = IdealSpec::parse(text).map_err(fail(text))?;
        let rho = measure(&spec)?;
        if rho != two_m {
            return Err(format!("({text}) has measure {rho}"));
        }
    }
    let spec = IdealSpec::parse("x^2, y^2").map_err(fail("ideal"))?;
    let xy = [(BranchParam::y_axis(), 1), (BranchParam::x_axis(), 1)];
    if !integral_closure_member(&xy, &spec).map_err(fail("closure"))? {
        return Err("xy is not found in the closure of (x^2, y^2)".into());
    }
    let cs = corpus();
    let pool: Vec<BranchParam> = [0, 10, 1, 13, 2, 9, 11, 5].iter().map(|&i| cs[i].clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let pairs: Vec<(IdealSpec, IdealSpec)> = (0..50)
        .map(|_| (random_spec(&mut rng, &pool), random_spec(&mut rng, &pool)))
        .collect();
    first_failure(&pairs, |(i, j)| {
        let ij = i.product(j).map_err(fail("product"))?;
        let (ri, rj, rij) = (measure(i)?, measure(j)?, measure(&ij)?);
        if rij != ri.add(&rj) {
            return Err(format!("ρ of ({i})({j}) is {rij}, sum is {}", ri.add(&rj)));
        }
        for (spec, rho) in [(i, &ri), (j, &rj), (&ij, &rij)] {
            let m = spec
                .generator_polys()
                .iter()
                .filter_map(|p| p.multiplicity())
                .min()
                .expect("nonzero");
            if rho.mass() != q(m as i64) {
                return Err(format!("({spec}): mass {} but multiplicity {m}", rho.mass()));
            }
        }
        Ok(())
    })?;
    Ok("closures of m^2, xy in closure, 50 random products".into())
}

/// Exponent pairs `(i, j)` of monomial generators `x^i y^j`.
type Monomials = Vec<(u32, u32)>;

fn monomial_text(gens: &[(u32, u32)]) -> String {
    gens.iter()
        .map(|&(a, b)| format!("x^{a}*y^{b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn power_of_m(a: u32) -> Vec<(u32, u32)> {
    (0..=a).map(|i| (i, a - i)).collect()
}

/// Mixed multiplicities from inner products against lattice counts and intersections.
pub fn mixed_multiplicities() -> Outcome {
    let mut monomial: Vec<(Monomials, Monomials)> = vec![
        (vec![(2, 0), (0, 3)], vec![(2, 0), (0, 3)]),
        (vec![(2, 0), (0, 3)], vec![(3, 0), (0, 2)]),
        (vec![(1, 0), (0, 2)], vec![(2, 0), (0, 1)]),
        (vec![(3, 0), (1, 1), (0, 4)], vec![(2, 0), (0, 5)]),
        (vec![(4, 0), (2, 1), (0, 3)], power_of_m(1)),
        (vec![(5, 0), (1, 2), (0, 3)], vec![(3, 0), (2, 1), (0, 2)]),
    ];
    for (a, b) in [(1, 1), (1, 2), (2, 3), (3, 3)] {
        monomial.push((power_of_m(a), power_of_m(b)));
    }
    let mut checked = Vec::new();
    for (i, j) in &monomial {
        let (ti, tj) = (monomial_text(i), monomial_text(j));
        let si = IdealSpec::parse(&ti).map_err(fail(&ti))?;
        let sj = IdealSpec::parse(&tj).map_err(fail(&tj))?;
        let e = mixed_multiplicity(&si, &sj).map_err(fail(format!("({ti}), ({tj})")))?;
        let oracle = monomial_mixed_multiplicity(i, j).ok_or(format!("lattice counts of ({ti}), ({tj}) unstable"))?;
        if e != q(oracle as i64) {
            return Err(format!("e(({ti}), ({tj})) = {e}, lattice count gives {oracle}"));
        }
        checked.push(e);
    }
    if checked[0] != q(6) {
        return Err(format!("e(x^2, y^3) = {}", checked[0]));
    }
    for (k, (a, b)) in [(1, 1), (1, 2), (2, 3), (3, 3)].iter().enumerate() {
        if checked[6 + k] != q(a * b) {
            return Err(format!("e(m^{a}, m^{b}) = {}", checked[6 + k]));
        }
    }
    let principal = [
        ("y^2 - x^3", "y^2 - x^5"),
        ("y^2 - x^3", "x"),
        ("(y - x^2)*(y + x)", "y^2 - x^3"),
        ("y^3 - x^4", "y^2 - x^3"),
        ("y*(y - x)", "x^2 - y^3"),
    ];
    for (f, g) in principal {
        let sf = IdealSpec::parse(f).map_err(fail(f))?;
        let sg = IdealSpec::parse(g).map_err(fail(g))?;
        let gp = crate::arith::parse_poly(g).map_err(fail(g))?;
        let mut oracle = Q::zero();
        for gen in sf.generators() {
            for &(b, e) in gen {
                let o = sf.branches()[b].substitute_order(&gp).map_err(fail(g))?;
                oracle += o.fin().ok_or(format!("({f}) and ({g}) share a branch"))? * q(e as i64);
            }
        }
        let ip = measure(&sf)?
            .inner_product(&measure(&sg)?)
            .map_err(fail("inner product"))?;
        if ip != ExtRat::Fin(oracle.clone()) {
            return Err(format!("ρ({f})·ρ({g}) = {ip}, intersection number {oracle}"));
        }
    }
    Ok(format!(
        "{} monomial pairs, {} principal pairs",
        monomial.len(),
        principal.len()
    ))
}

fn check_classes(model: &BlowupModel) -> std::result::Result<(), String> {
    let g = model.graph();
    let n = g.len();
    let name = || g.canonical_form();
    let rhos: Vec<AtomicMeasure> = (0..n)
        .map(|e| class_measure(model, e).map_err(fail(format!("E{e} of {}", name()))))
        .collect::<Result<_, _>>()?;
    for e in 0..n {
        let we = class_of_vertex(model, e).map_err(fail("class"))?;
        for f in 0..n {
            let wf = class_of_vertex(model, f).map_err(fail("class"))?;
            let delta = if e == f { Q::one() } else { Q::zero() };
            let ip = rhos[e].inner_product(&rhos[f]).map_err(fail("inner product"))?;
            if -we.pairing(&wf) != delta || ip != ExtRat::Fin(delta.clone()) {
                return Err(format!("E{e}, E{f} of {}: ρ·ρ' = {ip}, expected {delta}", name()));
            }
        }
        let s = model.vertex_to_skp(e).map_err(fail("vertex"))?;
        let b = q(g.vertices()[e].farey.1 as i64);
        let alpha = s.skewness().fin().cloned().ok_or("divisorial skewness is finite")?;
        let w = class_of_component(model, e).map_err(fail("class"))?;
        if -w.pairing(&w) != &b * &b * &alpha {
            return Err(format!(
                "E{e} of {}: -ω·ω = {}, b²α = {}",
                name(),
                -w.pairing(&w),
                &b * &b * &alpha
            ));
        }
        let rho_w = crate::treemeasure::measure_of_class(model, &w).map_err(fail("measure"))?;
        if rho_w != AtomicMeasure::atom(s.clone(), b.clone()) {
            return Err(format!("E{e} of {}: measure of ω is {rho_w}", name()));
        }
        for m in [&rhos[e], &rho_w] {
            for (atom, c) in m.atoms() {
                let bn = atom.generic_multiplicity().ok_or("divisorial atom expected")?;
                if !(c / q(bn as i64)).is_integer() {
                    return Err(format!("E{e} of {}: mass {c} at {atom} is not in {bn}Z", name()));
                }
            }
        }
    }
    Ok(())
}

/// Cohomology classes of components against inner products of their measures.
pub fn cohomology_isometry() -> Outcome {
    let models = all_models(6);
    first_failure(&models, check_classes)?;
    let comps: usize = models.iter().map(|m| m.graph().len()).sum();
    Ok(format!("{} models, {comps} components", models.len()))
}

/// Every serialized artifact of the corpus, as one string.
pub fn artifacts() -> std::result::Result<String, String> {
    let cs = corpus();
    let parts: Vec<std::result::Result<String, String>> = cs
        .par_iter()
        .map(|c| {
            let s = skp_of_branch(c).map_err(fail(c))?;
            let m = minimal_desing_from_branches(std::slice::from_ref(c)).map_err(fail(c))?;
            let inv = s.invariants();
            Ok(format!(
                "{c}\n{}\n{}\n{}\n{}\n{:?}\n",
                skp_to_json(&s),
                graph_to_json(m.graph()),
                to_dot(m.graph()),
                s,
                inv
            ))
        })
        .collect();
    let mut out = parts.into_iter().collect::<std::result::Result<Vec<_>, _>>()?.concat();
    for text in ["x^2, y^3", "x^2, x*y, y^2", "y^2 - x^3, x*y"] {
        let spec = IdealSpec::parse(text).map_err(fail(text))?;
        out.push_str(&format!("{}\n", measure_to_json(&measure(&spec)?)));
    }
    Ok(out)
}

/// Recomputes every artifact twice, in parallel and sequentially, and compares bytes.
pub fn determinism() -> Outcome {
    let a = artifacts()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(fail("thread pool"))?;
    let b = pool.install(artifacts)?;
    if a != b {
        return Err("artifacts differ between runs".into());
    }
    Ok(format!("{} bytes of artifacts byte-identical across runs", a.len()))
}
