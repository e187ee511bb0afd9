use super::*;
use crate::arith::{qr, BranchParam};

fn skp(keys: &[&str], values: &[&str]) -> Skp {
    Skp::from_strs(keys, values, false).unwrap()
}

fn p(s: &str) -> BiPoly {
    parse_poly(s).unwrap()
}

fn br(s: &str) -> BranchParam {
    s.parse().unwrap()
}

#[test]
fn validate_examples() {
    let s = skp(&["x", "y", "y^2 - x^3"], &["1", "3/2", "7"]);
    assert_eq!(
        s.steps()[0],
        Step {
            n: 2,
            m: vec![3],
            theta: Some(q(1))
        }
    );
    let err = Skp::from_strs(&["x", "y", "y^2 - x^3"], &["1", "3/2", "2"], false).unwrap_err();
    assert!(matches!(
        err,
        Error::InvalidSkp(Violation {
            rule: "P1",
            index: Some(2),
            ..
        })
    ));
    let err = Skp::from_strs(&["x", "y", "y^2 - x^2"], &["1", "3/2", "7"], false).unwrap_err();
    assert!(matches!(err, Error::InvalidSkp(Violation { rule: "P2", .. })));
    let err = Skp::from_strs(&["y", "x"], &["1", "1"], false).unwrap_err();
    assert!(matches!(err, Error::InvalidSkp(Violation { rule: "P0", .. })));
    assert!(Skp::from_strs(&["x", "y"], &["1", "1"], true).is_err());
}

#[test]
fn decomposition_respects_bounds() {
    // β̃ = (1, 3/2, 13/4): n_2 = 2, 2·13/4 = 13/2 = 5·1 + 1·3/2
    let (n, m) = decompose(&[q(1), qr(3, 2), qr(13, 4)], &[2]).unwrap();
    assert_eq!((n, m), (2, vec![5, 1]));
    let (n, m) = decompose(&[q(1), qr(3, 2), q(4)], &[2]).unwrap();
    assert_eq!((n, m), (1, vec![4, 0]));
}

#[test]
fn eval_examples() {
    let num = Skp::nu_m();
    assert_eq!(num.eval(&p("x^2 + y^3")).unwrap(), ExtRat::int(2));
    let mono = skp(&["x", "y"], &["1", "3/2"]);
    assert_eq!(mono.eval(&p("y^2 - x^3")).unwrap(), ExtRat::int(3));
    let cusp = skp(&["x", "y", "y^2 - x^3"], &["1", "3/2", "inf"]);
    assert_eq!(cusp.eval(&p("y^2 - x^3")).unwrap(), ExtRat::Inf);
    let s = skp(&["x", "y", "y^2 - x^3"], &["1", "3/2", "7"]);
    assert_eq!(s.eval(&p("y")).unwrap(), ExtRat::Fin(qr(3, 2)));
    assert_eq!(s.eval(&p("y^2 - x^3")).unwrap(), ExtRat::int(7));
    assert_eq!(s.eval(&p("y^4 - 2*x^3*y^2 + x^6 + x^8")).unwrap(), ExtRat::int(8));
    assert_eq!(s.eval(&BiPoly::one()).unwrap(), ExtRat::int(0));
    assert_eq!(s.eval(&BiPoly::zero()).unwrap(), ExtRat::Inf);
}

#[test]
fn branch_skps() {
    let cusp = skp_of_branch(&br("n=2; y=t^3")).unwrap();
    assert_eq!(cusp, skp(&["x", "y", "y^2 - x^3"], &["1", "3/2", "inf"]));
    let line = skp_of_branch(&br("n=1; y=t")).unwrap();
    assert_eq!(line, skp(&["x", "y", "y - x"], &["1", "1", "inf"]));
    // n_2 = 1 here: the tail t^5 only adds non-characteristic keys
    let c = skp_of_branch(&br("n=2; y=t^3+t^5")).unwrap();
    assert_eq!(
        c,
        skp(
            &["x", "y", "y^2 - x^3", "y^2 - x^3 - 2*x^4", "y^2 - x^3 - 2*x^4 - x^5"],
            &["1", "3/2", "4", "5", "inf"]
        )
    );
    let yaxis = skp_of_branch(&BranchParam::y_axis()).unwrap();
    assert!(yaxis.swap() && yaxis.is_curve() && yaxis.k() == 1);
    let tangent = skp_of_branch(&br("n=2; x=t^3")).unwrap();
    assert_eq!(
        tangent,
        Skp::from_strs(&["x", "y", "y^2 - x^3"], &["1", "3/2", "inf"], true).unwrap()
    );
}

#[test]
fn compare_and_wedge() {
    let a = skp(&["x", "y"], &["1", "3/2"]);
    let b = skp(&["x", "y", "y^2 - x^3"], &["1", "3/2", "7"]);
    assert_eq!(a.compare(&b), Comparison::Less);
    assert_eq!(b.compare(&a), Comparison::Greater);
    assert_eq!(b.compare(&b), Comparison::Equal);
    let c = skp(&["x", "y", "y - x"], &["1", "1", "5"]);
    assert_eq!(a.compare(&c), Comparison::Incomparable);
    assert_eq!(a.wedge(&c), Skp::nu_m());
    let cusp = skp_of_branch(&br("n=2; y=t^3")).unwrap();
    let yline = skp_of_branch(&BranchParam::x_axis()).unwrap();
    assert_eq!(cusp.wedge(&yline), a);
    assert_eq!(cusp.wedge(&cusp), cusp);
    let sx = Skp::monomial(&ExtRat::int(2), &ExtRat::int(1)).unwrap();
    let sy = Skp::monomial(&ExtRat::int(1), &ExtRat::int(2)).unwrap();
    assert_eq!(sx.wedge(&sy), Skp::nu_m());
    assert_eq!(sx.compare(&sy), Comparison::Incomparable);
}

#[test]
fn eval_irreducible_examples() {
    let cusp = skp_of_branch(&br("n=2; y=t^3")).unwrap();
    let s = skp(&["x", "y"], &["1", "2"]);
    assert_eq!(s.eval_irreducible(&cusp).unwrap(), ExtRat::int(3));
    assert_eq!(cusp.eval_irreducible(&cusp).unwrap(), ExtRat::Inf);
    assert_eq!(Skp::nu_m().eval_irreducible(&cusp).unwrap(), ExtRat::int(2));
    assert!(s.eval_irreducible(&s).is_err());
}

#[test]
fn invariant_examples() {
    let r = Skp::nu_m().invariants();
    assert_eq!(
        (r.alpha.clone(), r.thinness.clone(), r.m, r.b),
        (ExtRat::int(1), ExtRat::int(2), 1, Some(1))
    );
    assert_eq!(r.kind, Kind::Divisorial);
    let s = skp(&["x", "y", "y^2 - x^3"], &["1", "3/2", "7"]);
    let r = s.invariants();
    assert_eq!(r.alpha, ExtRat::Fin(qr(7, 2)));
    assert_eq!(r.thinness, ExtRat::Fin(qr(13, 2)));
    assert_eq!((r.m, r.b), (2, Some(2)));
    assert_eq!(
        r.approx,
        vec![ApproxPoint {
            k: 1,
            m: 1,
            alpha: qr(3, 2),
            thinness: qr(5, 2)
        }]
    );
    assert_eq!(r.semigroup, vec![ExtRat::int(1), ExtRat::Fin(qr(3, 2)), ExtRat::int(7)]);
    let cusp = skp_of_branch(&br("n=2; y=t^3")).unwrap().invariants();
    assert_eq!(
        (cusp.kind, cusp.alpha.clone(), cusp.thinness.clone(), cusp.m),
        (Kind::Curve, ExtRat::Inf, ExtRat::Inf, 2)
    );
    assert_eq!(cusp.semigroup, vec![ExtRat::int(1), ExtRat::Fin(qr(3, 2))]);
    assert_eq!(cusp.ranks(), (2, 2, 0));
}

#[test]
fn relative_invariant_examples() {
    let r = relative_invariants(&Skp::nu_m()).unwrap();
    assert_eq!(r, (ExtRat::int(1), ExtRat::int(2), 1));
    let sx = Skp::monomial(&ExtRat::int(2), &ExtRat::int(1)).unwrap();
    let r = relative_invariants(&sx).unwrap();
    assert_eq!((r.0, r.2), (ExtRat::Fin(qr(1, 2)), 1));
    let s = skp(&["x", "y", "y^2 - x^3"], &["1", "3/2", "7"]);
    assert_eq!(
        relative_invariants(&s).unwrap(),
        (ExtRat::Fin(qr(7, 2)), ExtRat::Fin(qr(13, 2)), 2)
    );
    let nux = skp_of_branch(&BranchParam::y_axis()).unwrap();
    assert!(relative_invariants(&nux).is_err());
}

#[test]
fn ball_distance_examples() {
    let cusp = br("n=2; y=t^3");
    assert_eq!(ball_distance(&cusp, &BranchParam::x_axis()).unwrap(), qr(2, 3));
    let cusp2 = br("n=2; y = t^3 + 1/2*t^5 - 5/8*t^7");
    assert_eq!(ball_distance(&cusp, &cusp2).unwrap(), qr(1, 2));
    assert_eq!(ball_distance(&cusp, &br("n=1; y=-t")).unwrap(), q(1));
    assert_eq!(ball_distance(&cusp, &cusp), Err(Error::IdenticalBranches));
}

#[test]
fn point_on_segment() {
    let cusp = skp_of_branch(&br("n=2; y=t^3")).unwrap();
    assert_eq!(cusp.point_at(&q(1)).unwrap(), Skp::nu_m());
    assert_eq!(cusp.point_at(&qr(5, 4)).unwrap(), skp(&["x", "y"], &["1", "5/4"]));
    assert_eq!(
        cusp.point_at(&q(2)).unwrap(),
        skp(&["x", "y", "y^2 - x^3"], &["1", "3/2", "4"])
    );
    assert_eq!(cusp.thinness_at(&ExtRat::int(2)), ExtRat::Fin(qr(7, 2)));
}
