//! Exact arithmetic: extended rationals, bivariate polynomials, truncated series,
//! branch parameterizations and the substitution-order oracle.

mod branch;
mod division;
mod extrat;
mod parse;
mod poly;
pub mod puiseux;
mod series;

pub use branch::{BranchParam, PolyParam, DEFAULT_TRUNC_CAP};
pub use division::{rem_y, weierstrass_divide};
pub use extrat::{is_integer, parse_rational, q, qr, ExtRat, Q};
pub use parse::parse_poly;
pub(crate) use parse::parse_poly_in;
pub use poly::BiPoly;
pub use series::Series;

/// `ord_t φ(x(t), y(t))` along the branch, with automatic truncation doubling.
pub fn substitute_order(phi: &BiPoly, c: &BranchParam) -> crate::Result<ExtRat> {
    c.substitute_order(phi)
}
