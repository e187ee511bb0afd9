use super::poly::BiPoly;
use crate::error::{Error, Result};

/// Division with remainder by `u`, monic in y: returns `(q, r)` with `deg_y r < deg_y u`.
fn divrem_y(f: &BiPoly, u: &BiPoly, d: u32) -> (BiPoly, BiPoly) {
    let mut r = f.clone();
    let mut quo = BiPoly::zero();
    while let Some(df) = r.deg_y() {
        if df < d {
            break;
        }
        let lead = r.y_coeff(df).shift(0, df - d);
        r = &r - &(&lead * u);
        quo = &quo + &lead;
    }
    (quo, r)
}

/// The U-adic expansion `φ = Σ φ_j U^j` with `deg_y φ_j < deg_y U`.
///
/// The returned list is never empty; for `φ = 0` it is `[0]`.
pub fn weierstrass_divide(phi: &BiPoly, u: &BiPoly) -> Result<Vec<BiPoly>> {
    let d = match u.deg_y() {
        Some(d) if d >= 1 && u.is_monic_in_y() => d,
        _ => return Err(Error::NotMonic("y")),
    };
    let mut out = Vec::new();
    let mut cur = phi.clone();
    loop {
        let (quo, r) = divrem_y(&cur, u, d);
        out.push(r);
        if quo.is_zero() {
            return Ok(out);
        }
        cur = quo;
    }
}

/// Remainder of `φ` modulo a polynomial monic in y.
pub fn rem_y(phi: &BiPoly, u: &BiPoly) -> Result<BiPoly> {
    let d = match u.deg_y() {
        Some(d) if d >= 1 && u.is_monic_in_y() => d,
        _ => return Err(Error::NotMonic("y")),
    };
    Ok(divrem_y(phi, u, d).1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_poly;

    #[test]
    fn cusp_expansion() {
        let u = parse_poly("y^2 - x^3").unwrap();
        let parts = weierstrass_divide(&parse_poly("y^3").unwrap(), &u).unwrap();
        assert_eq!(parts, vec![parse_poly("x^3*y").unwrap(), parse_poly("y").unwrap()]);
        let parts = weierstrass_divide(&u, &u).unwrap();
        assert_eq!(parts, vec![BiPoly::zero(), BiPoly::one()]);
        let low = parse_poly("x^5 + y").unwrap();
        assert_eq!(weierstrass_divide(&low, &u).unwrap(), vec![low]);
    }

    #[test]
    fn rejects_non_monic() {
        let u = parse_poly("2*y^2 - x^3").unwrap();
        assert_eq!(weierstrass_divide(&BiPoly::y(), &u), Err(Error::NotMonic("y")));
        assert_eq!(
            weierstrass_divide(&BiPoly::y(), &BiPoly::x()),
            Err(Error::NotMonic("y"))
        );
    }
}
