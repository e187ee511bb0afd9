//! Independent brute-force oracles and enumerations used by the self-test.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::Rng;

use crate::arith::{q, BiPoly, ExtRat, Q};
use crate::dualgraph::{BlowupModel, Point};
use crate::skp::{decompose, Skp};

/// Minimal generators of the monomial ideal generated by `gens` (exponent pairs).
fn minimize(gens: &BTreeSet<(u32, u32)>) -> BTreeSet<(u32, u32)> {
    gens.iter()
        .filter(|&&(a, b)| !gens.iter().any(|&(c, d)| (c, d) != (a, b) && c <= a && d <= b))
        .copied()
        .collect()
}

/// `dim_Q R / I` for an `m`-primary monomial ideal, by counting the staircase.
pub fn colength(gens: &BTreeSet<(u32, u32)>) -> u64 {
    let pure_x = gens.iter().filter(|g| g.1 == 0).map(|g| g.0).min().expect("m-primary");
    (0..pure_x)
        .map(|i| gens.iter().filter(|g| g.0 <= i).map(|g| g.1).min().expect("m-primary") as u64)
        .sum()
}

fn product(a: &BTreeSet<(u32, u32)>, b: &BTreeSet<(u32, u32)>) -> BTreeSet<(u32, u32)> {
    minimize(
        &a.iter()
            .flat_map(|x| b.iter().map(move |y| (x.0 + y.0, x.1 + y.1)))
            .collect(),
    )
}

/// Hilbert–Samuel multiplicity `e(I) = lim 2 dim R/I^n / n^2`, read off the second
/// difference of `n ↦ dim R/I^n`, which must be constant for `n = 8..=11`.
pub fn monomial_multiplicity(gens: &[(u32, u32)]) -> Option<u64> {
    let base = minimize(&gens.iter().copied().collect());
    let mut power = base.clone();
    let mut lens = vec![0, colength(&base)];
    for _ in 2..=11 {
        power = product(&power, &base);
        lens.push(colength(&power));
    }
    let diffs: BTreeSet<u64> = (8..=11).map(|n| lens[n] + lens[n - 2] - 2 * lens[n - 1]).collect();
    (diffs.len() == 1).then(|| *diffs.iter().next().expect("one element"))
}

/// `e(I, J) = (e(IJ) - e(I) - e(J)) / 2` for monomial ideals.
pub fn monomial_mixed_multiplicity(i: &[(u32, u32)], j: &[(u32, u32)]) -> Option<u64> {
    let prod: Vec<(u32, u32)> = i
        .iter()
        .flat_map(|a| j.iter().map(move |b| (a.0 + b.0, a.1 + b.1)))
        .collect();
    Some((monomial_multiplicity(&prod)? - monomial_multiplicity(i)? - monomial_multiplicity(j)?) / 2)
}

/// Every blowup model reachable by `depth` point blowups, one representative per
/// isomorphism class of weighted dual graph.
pub fn all_models(depth: usize) -> Vec<BlowupModel> {
    let mut start = BlowupModel::new();
    start.blowup(Point::Origin).expect("origin");
    let mut layer = vec![start];
    let mut out = layer.clone();
    for _ in 1..depth {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for m in &layer {
            let g = m.graph();
            let points = (0..g.len())
                .map(Point::Free)
                .chain(g.edges().iter().map(|&(a, b)| Point::Satellite(a, b)));
            for p in points {
                let mut m2 = m.clone();
                m2.blowup(p).expect("valid point");
                if seen.insert(m2.graph().canonical_form()) {
                    next.push(m2);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn random_rational<R: Rng>(rng: &mut R, lo: &Q, height: i64) -> Option<Q> {
    let cands: Vec<Q> = (1..=height)
        .flat_map(|d| (1..=height).map(move |n| Q::new(n.into(), d.into())))
        .filter(|v| v > lo)
        .collect();
    (!cands.is_empty()).then(|| cands[rng.gen_range(0..cands.len())].clone())
}

/// A random valid SKP with at most three keys beyond `x`, values of height at most
/// `height`, and a final infinite value with probability 1/6.
pub fn random_skp<R: Rng>(rng: &mut R, height: i64) -> Skp {
    loop {
        let k = rng.gen_range(1..=3usize);
        let mut keys = vec![BiPoly::x(), BiPoly::y()];
        let mut vals = vec![q(1)];
        let Some(b1) = random_rational(rng, &Q::zero(), height).filter(|v| *v >= q(1)) else {
            continue;
        };
        vals.push(b1);
        let mut ns = Vec::new();
        let mut ok = true;
        for j in 1..k {
            let Some((n, m)) = decompose(&vals, &ns) else {
                ok = false;
                break;
            };
            let theta = Q::from_integer(rng.gen_range(1..=3i64).into()) * if rng.gen_bool(0.5) { q(1) } else { q(-1) };
            let mut prod = BiPoly::one();
            for (u, &e) in keys.iter().zip(&m) {
                prod = &prod * &u.pow(e);
            }
            let next = &keys[j].pow(n) - &prod.scale(&theta);
            let lo = &vals[j] * q(n as i64);
            let Some(v) = random_rational(rng, &lo, height) else {
                break;
            };
            keys.push(next);
            vals.push(v);
            ns.push(n);
        }
        if !ok {
            continue;
        }
        let mut values: Vec<ExtRat> = vals.into_iter().map(ExtRat::Fin).collect();
        if rng.gen_range(0..6) == 0 {
            *values.last_mut().expect("nonempty") = ExtRat::Inf;
        }
        if let Ok(s) = Skp::new(keys, values, rng.gen_bool(0.25)) {
            return s;
        }
    }
}

/// A random polynomial of total degree at most `deg` with up to four terms.
pub fn random_poly<R: Rng>(rng: &mut R, deg: u32) -> BiPoly {
    loop {
        let mut p = BiPoly::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let i = rng.gen_range(0..=deg);
            let j = rng.gen_range(0..=deg - i);
            let c = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            p.add_term((i, j), &q(c));
        }
        if !p.is_zero() {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_counts() {
        let i: BTreeSet<_> = [(2, 0), (0, 3)].into();
        assert_eq!(colength(&i), 6);
        let m2: BTreeSet<_> = [(2, 0), (1, 1), (0, 2)].into();
        assert_eq!(colength(&m2), 3);
        assert_eq!(monomial_multiplicity(&[(2, 0), (0, 3)]), Some(6));
        assert_eq!(monomial_multiplicity(&[(1, 0), (0, 1)]), Some(1));
        // integral closure does not change the multiplicity
        assert_eq!(monomial_multiplicity(&[(2, 0), (0, 2)]), Some(4));
        assert_eq!(monomial_multiplicity(&[(4, 0), (0, 6), (2, 3)]), Some(24));
        assert_eq!(
            monomial_mixed_multiplicity(&[(1, 0), (0, 1)], &[(2, 0), (0, 3)]),
            Some(2)
        );
    }

    #[test]
    fn enumerated_models_up_to_isomorphism() {
        // depth 1: E0; depth 2: one free point; depth 3: free on E0, free on E1, satellite
        assert_eq!(all_models(1).len(), 1);
        assert_eq!(all_models(2).len(), 2);
        assert_eq!(all_models(3).len(), 5);
    }
}
