use super::*;
use crate::arith::{q, qr, BranchParam, ExtRat};
use crate::dualgraph::{minimal_desing_from_branches, BlowupModel, Point};
use crate::skp::{skp_of_branch, Skp};

fn br(s: &str) -> BranchParam {
    s.parse().unwrap()
}

fn skp(keys: &[&str], values: &[&str], swap: bool) -> Skp {
    Skp::from_strs(keys, values, swap).unwrap()
}

/// ν(y) = 1, ν(x) = 3/2.
fn nu_y32() -> Skp {
    skp(&["x", "y"], &["1", "3/2"], true)
}

#[test]
fn span_of_cusp_and_y_axis() {
    let cusp = skp_of_branch(&br("n=2; y = t^3")).unwrap();
    let yaxis = skp_of_branch(&BranchParam::y_axis()).unwrap();
    let t = FiniteTree::span(&[cusp.clone(), yaxis]).unwrap();
    // root, the approximating point of the cusp, and two ends
    assert_eq!(t.len(), 4);
    let a = t.index_of(&skp(&["x", "y"], &["1", "3/2"], false)).unwrap();
    assert_eq!(t.parent(a), Some(0));
    assert_eq!(t.edge_multiplicity(t.index_of(&cusp).unwrap()), 2);
    let c1 = skp_of_branch(&br("n=2; y = t^3")).unwrap();
    let c2 = skp_of_branch(&br("n=2; y = t^3 + 1/2*t^5 - 5/8*t^7")).unwrap();
    assert_eq!(c1.wedge(&c2).skewness(), ExtRat::int(2));
}

#[test]
fn monomial_ideal_transform() {
    let i = IdealSpec::parse("x^2, y^3").unwrap();
    let g = tree_transform(&i).unwrap();
    assert_eq!(g.root_value(), &q(2));
    assert_eq!(g.eval(&nu_y32()), ExtRat::int(3));
    assert!(g.is_positive_potential());
    let (rho, factors) = zariski_factor(&i).unwrap();
    assert_eq!(rho, AtomicMeasure::atom(nu_y32(), q(2)));
    assert_eq!(factors.len(), 1);
    assert_eq!((factors[0].b, factors[0].exponent), (2, 1));
    assert_eq!(rho.mass(), q(2));
}

#[test]
fn maximal_ideal_and_powers() {
    let m = IdealSpec::parse("x, y").unwrap();
    assert_eq!(tree_transform(&m).unwrap().root_value(), &q(1));
    let (rho, _) = zariski_factor(&m).unwrap();
    assert_eq!(rho, AtomicMeasure::atom(Skp::nu_m(), q(1)));
    let m3 = IdealSpec::parse("x^3, x^2*y, x*y^2, y^3").unwrap();
    let (rho, f) = zariski_factor(&m3).unwrap();
    assert_eq!(rho, AtomicMeasure::atom(Skp::nu_m(), q(3)));
    assert_eq!(f[0].exponent, 3);
}

#[test]
fn equal_measures_for_closures() {
    let a = zariski_factor(&IdealSpec::parse("x^2, y^2").unwrap()).unwrap().0;
    let b = zariski_factor(&IdealSpec::parse("x^2, x*y, y^2").unwrap()).unwrap().0;
    assert_eq!(a, AtomicMeasure::atom(Skp::nu_m(), q(2)));
    assert_eq!(a, b);
}

#[test]
fn principal_ideal_of_cusp() {
    let i = IdealSpec::parse("y^2 - x^3").unwrap();
    let (rho, f) = zariski_factor(&i).unwrap();
    let cusp = skp_of_branch(&br("n=2; y = t^3")).unwrap();
    assert_eq!(rho, AtomicMeasure::atom(cusp.clone(), q(2)));
    assert_eq!((f[0].b, f[0].exponent), (2, 1));
    let g = tree_transform(&i).unwrap();
    let nu = cusp.point_at(&q(2)).unwrap();
    assert_eq!(g.eval(&nu), ExtRat::int(4));
}

#[test]
fn closure_membership() {
    let i = IdealSpec::parse("x^2, y^2").unwrap();
    let xy = [(BranchParam::y_axis(), 1), (BranchParam::x_axis(), 1)];
    assert!(integral_closure_member(&xy, &i).unwrap());
    assert!(!integral_closure_member(&[(BranchParam::y_axis(), 1)], &i).unwrap());
    let j = IdealSpec::parse("x^2, y^3").unwrap();
    assert!(!integral_closure_member(&[(BranchParam::x_axis(), 1)], &j).unwrap());
    assert!(integral_closure_member(&[(BranchParam::x_axis(), 2), (BranchParam::y_axis(), 1)], &j).unwrap());
    // principal ideal: closure is the ideal itself
    let p = IdealSpec::parse("y^2 - x^3").unwrap();
    assert!(integral_closure_member(&[(br("n=2; y = t^3"), 1)], &p).unwrap());
    assert!(!integral_closure_member(&[(BranchParam::x_axis(), 5)], &p).unwrap());
}

#[test]
fn potential_round_trip() {
    let rho = AtomicMeasure::from_atoms([(nu_y32(), q(2)), (Skp::nu_m(), q(1))]);
    let g = potential_of_measure(&rho).unwrap();
    assert_eq!(g.root_value(), &q(3));
    assert_eq!(g.eval(&nu_y32()), ExtRat::Fin(qr(2 * 3, 2) + q(1)));
    assert_eq!(laplacian(&g), rho);
    let one = potential_of_measure(&AtomicMeasure::atom(Skp::nu_m(), q(1))).unwrap();
    assert_eq!(one.eval(&nu_y32()), ExtRat::int(1));
}

#[test]
fn inner_products() {
    let nm = AtomicMeasure::atom(Skp::nu_m(), q(1));
    assert_eq!(nm.inner_product(&nm).unwrap(), ExtRat::int(1));
    let r = AtomicMeasure::atom(nu_y32(), q(2));
    assert_eq!(r.inner_product(&r).unwrap(), ExtRat::int(6));
    let x = zariski_factor(&IdealSpec::parse("x").unwrap()).unwrap().0;
    let y = zariski_factor(&IdealSpec::parse("y").unwrap()).unwrap().0;
    assert_eq!(x.inner_product(&y).unwrap(), ExtRat::int(1));
    assert_eq!(x.inner_product(&x).unwrap(), ExtRat::Inf);
    let cr = ComplexMeasure::from_atoms([(nu_y32(), CQ::new(q(1), q(1)))]);
    assert_eq!(cr.inner_product(&cr).unwrap(), CQ::new(q(3), q(0)));
}

#[test]
fn mixed_multiplicities() {
    let i = IdealSpec::parse("x^2, y^3").unwrap();
    assert_eq!(mixed_multiplicity(&i, &i).unwrap(), q(6));
    let m = IdealSpec::parse("x, y").unwrap();
    assert_eq!(mixed_multiplicity(&m, &m).unwrap(), q(1));
    let m2 = IdealSpec::parse("x^2, x*y, y^2").unwrap();
    let m3 = IdealSpec::parse("x^3, y^3").unwrap();
    assert_eq!(mixed_multiplicity(&m2, &m3).unwrap(), q(6));
    let p = IdealSpec::parse("y^2 - x^3").unwrap();
    assert!(matches!(mixed_multiplicity(&p, &m), Err(crate::Error::NotPrimary(_))));
}

#[test]
fn product_of_ideals_adds_measures() {
    let i = IdealSpec::parse("x^2, y^3").unwrap();
    let j = IdealSpec::parse("y^2 - x^3, x*y").unwrap();
    let ij = i.product(&j).unwrap();
    let r = |s: &IdealSpec| zariski_factor(s).unwrap().0;
    assert_eq!(r(&ij), r(&i).add(&r(&j)));
}

fn cusp_model() -> BlowupModel {
    minimal_desing_from_branches(&[br("n=2; y = t^3")]).unwrap()
}

#[test]
fn class_measures_of_cusp_model() {
    let m = cusp_model();
    assert_eq!(class_measure(&m, 0).unwrap(), AtomicMeasure::atom(Skp::nu_m(), q(1)));
    let nu_y2 = skp(&["x", "y"], &["1", "2"], false);
    assert_eq!(
        class_measure(&m, 1).unwrap(),
        AtomicMeasure::from_atoms([(nu_y2.clone(), q(1)), (Skp::nu_m(), q(-1))])
    );
    let nu52 = skp(&["x", "y"], &["1", "3/2"], false);
    assert_eq!(
        class_measure(&m, 2).unwrap(),
        AtomicMeasure::from_atoms([(nu52, q(2)), (Skp::nu_m(), q(-1)), (nu_y2, q(-1))])
    );
}

#[test]
fn isometry_on_cusp_model() {
    let m = cusp_model();
    for e in 0..3 {
        for f in 0..3 {
            let we = class_of_vertex(&m, e).unwrap();
            let wf = class_of_vertex(&m, f).unwrap();
            let rho = class_measure(&m, e)
                .unwrap()
                .inner_product(&class_measure(&m, f).unwrap())
                .unwrap();
            assert_eq!(ExtRat::Fin(-we.pairing(&wf)), rho);
            assert_eq!(rho, ExtRat::int(if e == f { 1 } else { 0 }));
        }
    }
}

#[test]
fn divisorial_classes() {
    let m = cusp_model();
    let expect = [(Skp::nu_m(), q(1)), (skp(&["x", "y"], &["1", "2"], false), q(2))];
    for (s, v) in expect {
        let w = class_of_divisorial(&s, &m).unwrap();
        assert_eq!(-w.pairing(&w), v);
    }
    let s52 = skp(&["x", "y"], &["1", "3/2"], false);
    let w = class_of_divisorial(&s52, &m).unwrap();
    assert_eq!(-w.pairing(&w), q(6));
    assert_eq!(measure_of_class(&m, &w).unwrap(), AtomicMeasure::atom(s52, q(2)));
    let mut deeper = cusp_model();
    let f = deeper.blowup(Point::Free(2)).unwrap();
    let s = deeper.vertex_to_skp(f).unwrap();
    let w = class_of_divisorial(&s, &deeper).unwrap();
    let alpha = s.skewness().fin().unwrap().clone();
    assert_eq!(-w.pairing(&w), q(4) * alpha);
}

#[test]
fn span_tree_with_kinks() {
    let t = span_tree(&[br("n=2; y = t^3"), BranchParam::x_axis()], &[(0, q(2))]).unwrap();
    // ν_m, ν_{x,3/2} (wedge and approximating point), the kink at α = 2, two ends
    assert_eq!(t.len(), 5);
    let w = t.index_of(&skp(&["x", "y"], &["1", "3/2"], false)).unwrap();
    assert_eq!(t.children(w).len(), 2);
    assert!(span_tree(&[BranchParam::x_axis(), br("n=1; y = 0")], &[]).is_err());
}
