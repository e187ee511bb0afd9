use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use valtree::arith::{q, BiPoly, ExtRat, Q};
use valtree::dualgraph::{BlowupModel, Point};
use valtree::io::{skp_from_json, skp_to_json};
use valtree::selftest::{corpus, random_poly, random_skp};
use valtree::skp::{skp_of_branch, Skp};
use valtree::treemeasure::{laplacian, potential_of_measure, zariski_factor, AtomicMeasure, IdealSpec};

fn skp_from_seed(seed: u64) -> Skp {
    random_skp(&mut ChaCha8Rng::seed_from_u64(seed), 12)
}

fn divisorial_from_seed(seed: u64) -> Skp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let s = random_skp(&mut rng, 12);
        if !s.is_curve() {
            return s;
        }
    }
}

fn poly_from_seed(seed: u64) -> BiPoly {
    random_poly(&mut ChaCha8Rng::seed_from_u64(seed), 6)
}

/// Curve valuations of the corpus plus random SKPs.
fn any_point() -> impl Strategy<Value = Skp> {
    let curves: Vec<Skp> = corpus().iter().map(|c| skp_of_branch(c).unwrap()).collect();
    prop_oneof![proptest::sample::select(curves), any::<u64>().prop_map(skp_from_seed),]
}

fn positive_measure() -> impl Strategy<Value = AtomicMeasure> {
    proptest::collection::vec((any::<u64>(), 1i64..5, 1i64..4), 1..4).prop_map(|atoms| {
        AtomicMeasure::from_atoms(
            atoms
                .into_iter()
                .map(|(seed, n, d)| (divisorial_from_seed(seed), Q::new(n.into(), d.into()))),
        )
    })
}

fn fin(v: ExtRat) -> Q {
    v.fin().cloned().expect("finite")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_axioms(seed in any::<u64>(), f in any::<u64>(), g in any::<u64>()) {
        let s = skp_from_seed(seed);
        let (f, g) = (poly_from_seed(f), poly_from_seed(g));
        let (vf, vg) = (s.eval(&f).unwrap(), s.eval(&g).unwrap());
        prop_assert_eq!(s.eval(&(&f * &g)).unwrap(), &vf + &vg);
        prop_assert!(s.eval(&(&f + &g)).unwrap() >= vf.min(vg));
        for j in 0..=s.k() {
            prop_assert_eq!(&s.eval(&s.key_input(j)).unwrap(), &s.values()[j]);
        }
        prop_assert_eq!(s.eval(&BiPoly::x()).unwrap().min(s.eval(&BiPoly::y()).unwrap()), ExtRat::int(1));
    }

    #[test]
    fn wedge_is_the_infimum(s in any_point(), t in any_point()) {
        let w = s.wedge(&t);
        prop_assert_eq!(&w, &t.wedge(&s));
        prop_assert!(w.le(&s) && w.le(&t));
        prop_assert!(Skp::nu_m().le(&w));
        prop_assert!(w.skewness() <= s.skewness().min(t.skewness()));
        if s.le(&t) {
            prop_assert_eq!(&w, &s);
        }
        prop_assert!(s.le(&s));
    }

    #[test]
    fn skewness_increases_along_segments(s in any_point(), a in 1i64..40, b in 1i64..40) {
        let alpha = s.skewness();
        let (lo, hi) = (Q::new(a.min(b).into(), 4.into()), Q::new(a.max(b).into(), 4.into()));
        prop_assume!(ExtRat::Fin(hi.clone()) <= alpha && lo >= q(1));
        let p = s.point_at(&lo).unwrap();
        let r = s.point_at(&hi).unwrap();
        prop_assert!(p.le(&r) && r.le(&s));
        prop_assert_eq!(p.skewness(), ExtRat::Fin(lo.clone()));
        prop_assert!(p.thinness_at(&ExtRat::Fin(lo)) <= r.thinness_at(&ExtRat::Fin(hi)));
        prop_assert!(p.multiplicity() <= r.multiplicity());
    }

    #[test]
    fn laplacian_inverts_potential(rho in positive_measure()) {
        let g = potential_of_measure(&rho).unwrap();
        prop_assert_eq!(laplacian(&g), rho.clone());
        prop_assert!(g.is_positive_potential());
        prop_assert_eq!(g.root_value(), &rho.mass());
    }

    #[test]
    fn cauchy_schwarz_and_mass_bound(r in positive_measure(), s in positive_measure()) {
        let rs = fin(r.inner_product(&s).unwrap());
        let rr = fin(r.inner_product(&r).unwrap());
        let ss = fin(s.inner_product(&s).unwrap());
        prop_assert_eq!(&rs, &fin(s.inner_product(&r).unwrap()));
        prop_assert!(&rs * &rs <= &rr * &ss);
        prop_assert!(rs >= r.mass() * s.mass());
    }

    #[test]
    fn skp_json_round_trip(s in any_point()) {
        prop_assert_eq!(skp_from_json(&skp_to_json(&s)).unwrap(), s);
    }
}

fn random_spec(picks: &[(usize, u32)], split: usize) -> IdealSpec {
    let pool: Vec<_> = [0, 10, 1, 13, 2, 9, 11, 5]
        .iter()
        .map(|&i| corpus()[i].clone())
        .collect();
    let (a, b) = picks.split_at(split.min(picks.len() - 1) + 1);
    let mut gens = vec![a.to_vec()];
    if !b.is_empty() {
        gens.push(b.to_vec());
    }
    IdealSpec::new(pool, gens).unwrap()
}

fn spec_strategy() -> impl Strategy<Value = IdealSpec> {
    (proptest::collection::vec((0usize..8, 1u32..3), 1..4), 0usize..3).prop_map(|(p, s)| random_spec(&p, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tree_measures_are_multiplicative(i in spec_strategy(), j in spec_strategy()) {
        let ij = i.product(&j).unwrap();
        let (ri, rj, rij) = (zariski_factor(&i).unwrap().0, zariski_factor(&j).unwrap().0, zariski_factor(&ij).unwrap().0);
        prop_assert_eq!(rij, ri.add(&rj));
        let m = i.generator_polys().iter().filter_map(|p| p.multiplicity()).min().unwrap();
        prop_assert_eq!(ri.mass(), q(m as i64));
        prop_assert!(ri.is_positive());
    }

    #[test]
    fn farey_weights_follow_the_blowup_rules(choices in proptest::collection::vec(any::<u32>(), 1..9)) {
        let mut model = BlowupModel::new();
        model.blowup(Point::Origin).unwrap();
        for c in choices {
            let g = model.graph().clone();
            let edges: Vec<_> = g.edges().iter().copied().collect();
            let k = c as usize % (g.len() + edges.len());
            let p = if k < g.len() { Point::Free(k) } else { Point::Satellite(edges[k - g.len()].0, edges[k - g.len()].1) };
            let e = model.blowup(p).unwrap();
            let v = &model.graph().vertices()[e];
            match p {
                Point::Free(f) => {
                    let w = &g.vertices()[f];
                    prop_assert_eq!(v.farey.1, w.farey.1);
                    prop_assert_eq!(v.farey_parameter() - w.farey_parameter(), Q::new(1.into(), (w.farey.1 as i64).into()));
                }
                Point::Satellite(a, b) => {
                    let (pa, pb) = (g.vertices()[a].farey_parameter(), g.vertices()[b].farey_parameter());
                    let a_new = v.farey_parameter();
                    prop_assert!(a_new > pa.clone().min(pb.clone()) && a_new < pa.max(pb));
                }
                Point::Origin => unreachable!(),
            }
            let inv = model.vertex_to_skp(e).unwrap().invariants();
            prop_assert_eq!(inv.thinness, ExtRat::Fin(v.farey_parameter()));
            prop_assert_eq!(inv.b, Some(v.farey.1 as u32));
        }
    }
}
