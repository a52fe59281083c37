//! Auxiliary polynomials: low-degree `g` vanishing on every integral point
//! of `V(f)` in a box without being a multiple of `f`.
//!
//! The points are enumerated exactly and `g` is read off the nullspace of
//! the evaluation matrix over the graded-lex monomials of degree at most `k`.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::count::enumerate_points;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, Q};

/// An auxiliary polynomial and the data it was computed from.
#[derive(Clone, Debug, PartialEq)]
pub struct AuxResult {
    /// The degree bound `k` it was searched at.
    pub degree: u32,
    /// Primitive integer polynomial, not divisible by `f`.
    pub g: Polynomial,
    pub points_used: usize,
}

/// Monomials of total degree at most `k` in `nvars` variables, ascending in
/// graded-lex order.
pub fn monomial_basis(nvars: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == e.len() {
            out.push(Monomial::new(e.clone()));
            return;
        }
        for x in 0..=left {
            e[i] = x;
            rec(i + 1, left - x, e, out);
        }
        e[i] = 0;
    }
    rec(0, k, &mut e, &mut out);
    out.sort();
    out
}

fn eval_monomial(m: &Monomial, p: &[i64]) -> Q {
    let mut v = Q::one();
    for (&e, &x) in m.exponents().iter().zip(p) {
        for _ in 0..e {
            v *= Q::from_integer(x.into());
        }
    }
    v
}

/// Searches degree `k` against a precomputed point list.
fn aux_from_points(f: &Polynomial, points: &[Vec<i64>], k: u32) -> Option<AuxResult> {
    let n = f.nvars();
    let basis = monomial_basis(n, k);
    let make = |v: &[Q]| {
        Polynomial::from_terms(
            n,
            basis
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.exponents().to_vec(), c.clone())),
        )
    };
    if points.is_empty() {
        // vanishes vacuously; 1 is never a multiple of a nonconstant f
        let one = Polynomial::one(n);
        return (!f.divides(&one)).then_some(AuxResult {
            degree: k,
            g: one,
            points_used: 0,
        });
    }
    let rows: Vec<Vec<Q>> = points
        .par_iter()
        .map(|p| basis.iter().map(|m| eval_monomial(m, p)).collect())
        .collect();
    let null = Matrix::from_rows(rows).nullspace();
    null.iter().map(|v| make(v)).find(|g| !f.divides(g)).map(|g| AuxResult {
        degree: k,
        g: g.normalized(),
        points_used: points.len(),
    })
}

/// A polynomial of degree at most `k` vanishing on all integral points of
/// `V(f)` in `[-B, B]^n` and not divisible by `f`, if one exists.
pub fn aux_poly(f: &Polynomial, b: u64, k: u32) -> Result<Option<AuxResult>> {
    let points = enumerate_points(f, b)?;
    Ok(aux_from_points(f, &points, k))
}

/// The auxiliary polynomial of least degree `k <= k_max`.
pub fn min_aux(f: &Polynomial, b: u64, k_max: u32) -> Result<Option<AuxResult>> {
    let points = enumerate_points(f, b)?;
    Ok((0..=k_max).find_map(|k| aux_from_points(f, &points, k)))
}

/// Least `k <= k_max` for which [`aux_poly`] succeeds.
pub fn min_aux_degree(f: &Polynomial, b: u64, k_max: u32) -> Result<Option<u32>> {
    Ok(min_aux(f, b, k_max)?.map(|r| r.degree))
}

/// `C * d^(4 - 1/n) * B^(1 / d^(1/n)) * ln B`; a comparator.
pub fn aux_degree_bound(d: u32, n: u32, b: f64, c: f64) -> f64 {
    let (d, n) = (d as f64, n as f64);
    c * d.powf(4.0 - 1.0 / n) * b.powf(1.0 / d.powf(1.0 / n)) * b.ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, 2).unwrap()
    }

    #[test]
    fn basis_order() {
        let b = monomial_basis(2, 2);
        assert_eq!(b.len(), 6);
        assert!(b[0].is_one());
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(monomial_basis(3, 3).len(), 20);
    }

    #[test]
    fn parabola() {
        let f = p("x1 - x2^2");
        let r = aux_poly(&f, 2, 2).unwrap().unwrap();
        assert_eq!(r.points_used, 3);
        for pt in [[0, 0], [1, 1], [1, -1]] {
            let q: Vec<Q> = pt.iter().map(|&x| Q::from_integer(x.into())).collect();
            assert!(r.g.eval(&q).is_zero());
        }
        assert!(!f.divides(&r.g));
        assert_eq!(aux_poly(&f, 2, 1).unwrap(), None);
        assert_eq!(min_aux_degree(&f, 2, 5).unwrap(), Some(2));
    }

    #[test]
    fn empty_point_set() {
        let f = p("x1^2 + x2^2 + 1");
        let r = aux_poly(&f, 7, 0).unwrap().unwrap();
        assert_eq!(r.g, Polynomial::one(2));
        assert_eq!(min_aux_degree(&f, 5, 3).unwrap(), Some(0));
    }

    #[test]
    fn circle_needs_degree_six() {
        // a curve of degree k < 6 meets the circle in at most 2k < 12 points
        let f = p("x1^2 + x2^2 - 25");
        assert_eq!(min_aux_degree(&f, 5, 8).unwrap(), Some(6));
        assert_eq!(min_aux_degree(&f, 5, 5).unwrap(), None);
    }

    #[test]
    fn bound_formula() {
        let e2 = std::f64::consts::E.powi(2);
        assert!((aux_degree_bound(2, 1, e2, 1.0) - 8.0 * std::f64::consts::E * 2.0).abs() < 1e-9);
        assert_eq!(aux_degree_bound(3, 2, 100.0, 0.0), 0.0);
        let want = 3f64.powf(3.5) * 100f64.powf(1.0 / 3f64.sqrt()) * 100f64.ln();
        assert!((aux_degree_bound(3, 2, 100.0, 1.0) - want).abs() < 1e-9);
    }
}
