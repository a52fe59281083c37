//! Integral points in boxes on affine hypersurfaces, projective counts, lines
//! on surfaces, and the comparator bound formulas.
//!
//! Enumeration fixes the first `n - 1` coordinates and solves the last one
//! exactly: the residual is an integer polynomial in one variable whose
//! integer roots in `[-B, B]` are isolated without floating point. A residual
//! that vanishes identically contributes its whole fiber.

mod lines;
mod roots;

pub use lines::{count_on_line, find_lines_on_surface, Line, LineFamily, LineSearch};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use roots::{integer_roots, Overflow};

/// One observation of a box count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRecord {
    pub b: u64,
    pub count: u64,
    pub sz_bound: BigUint,
    pub elapsed_ms: u64,
}

/// Integer points over a fixed prefix of coordinates.
enum Fiber {
    Roots(Vec<i64>),
    All,
}

/// `f` with cleared denominators, split by the exponent of the last
/// variable.
struct Prepared {
    n: usize,
    /// `(exponents of x_1..x_{n-1}, exponent of x_n, coefficient)`
    terms: Vec<(Vec<u32>, usize, BigInt, Option<i128>)>,
    deg_last: usize,
    max_exp: Vec<u32>,
}

impl Prepared {
    fn new(f: &Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = f.nvars();
        let terms: Vec<_> = f
            .integer_terms()
            .into_iter()
            .map(|(m, c)| {
                let e = m.exponents();
                let small = c.to_i128();
                (e[..n - 1].to_vec(), e[n - 1] as usize, c, small)
            })
            .collect();
        let deg_last = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut max_exp = vec![0; n - 1];
        for (e, _, _, _) in &terms {
            for (i, &x) in e.iter().enumerate() {
                max_exp[i] = max_exp[i].max(x);
            }
        }
        Ok(Prepared {
            n,
            terms,
            deg_last,
            max_exp,
        })
    }

    fn residual_small(&self, prefix: &[i64]) -> Option<Vec<i128>> {
        let mut pows: Vec<Vec<i128>> = Vec::with_capacity(prefix.len());
        for (i, &x) in prefix.iter().enumerate() {
            let mut row = Vec::with_capacity(self.max_exp[i] as usize + 1);
            row.push(1i128);
            for k in 1..=self.max_exp[i] as usize {
                row.push(row[k - 1].checked_mul(x as i128)?);
            }
            pows.push(row);
        }
        let mut res = vec![0i128; self.deg_last + 1];
        for (e, k, _, c) in &self.terms {
            let mut v = (*c)?;
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    v = v.checked_mul(pows[i][ei as usize])?;
                }
            }
            res[*k] = res[*k].checked_add(v)?;
        }
        Some(res)
    }

    fn residual_big(&self, prefix: &[i64]) -> Vec<BigInt> {
        let mut res = vec![BigInt::zero(); self.deg_last + 1];
        for (e, k, c, _) in &self.terms {
            let mut v = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    v *= BigInt::from(prefix[i]).pow(ei);
                }
            }
            res[*k] += v;
        }
        res
    }

    fn fiber(&self, prefix: &[i64], b: i64) -> Fiber {
        if let Some(mut r) = self.residual_small(prefix) {
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.is_empty() {
                return Fiber::All;
            }
            if let Ok(roots) = integer_roots(&r, -b, b) {
                return Fiber::Roots(roots);
            }
        }
        let mut r = self.residual_big(prefix);
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            return Fiber::All;
        }
        match integer_roots(&r, -b, b) {
            Ok(roots) => Fiber::Roots(roots),
            Err(Overflow) => unreachable!("big integers do not overflow"),
        }
    }

    /// Visits every prefix with the given first coordinate (or the empty
    /// prefix when `n = 1`) in lexicographic order.
    fn visit<F: FnMut(&[i64], Fiber)>(&self, first: Option<i64>, b: i64, mut visit: F) {
        let k = self.n - 1;
        if k == 0 {
            visit(&[], self.fiber(&[], b));
            return;
        }
        let mut prefix = vec![-b; k];
        prefix[0] = first.expect("first coordinate");
        loop {
            let fib = self.fiber(&prefix, b);
            visit(&prefix, fib);
            let mut i = k - 1;
            loop {
                if i == 0 {
                    return;
                }
                if prefix[i] < b {
                    prefix[i] += 1;
                    break;
                }
                prefix[i] = -b;
                i -= 1;
            }
        }
    }

    fn points_for(&self, first: Option<i64>, b: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.visit(first, b, |prefix, fib| {
            let mut emit = |s: i64| {
                let mut p = prefix.to_vec();
                p.push(s);
                out.push(p);
            };
            match fib {
                Fiber::Roots(r) => r.into_iter().for_each(&mut emit),
                Fiber::All => (-b..=b).for_each(&mut emit),
            }
        });
        out
    }

    fn count_for(&self, first: Option<i64>, b: i64) -> u64 {
        let mut total = 0u64;
        self.visit(first, b, |_, fib| {
            total += match fib {
                Fiber::Roots(r) => r.len() as u64,
                Fiber::All => 2 * b as u64 + 1,
            };
        });
        total
    }

    fn firsts(&self, b: i64) -> Vec<Option<i64>> {
        if self.n == 1 {
            vec![None]
        } else {
            (-b..=b).map(Some).collect()
        }
    }
}

fn box_radius(b: u64) -> Result<i64> {
    i64::try_from(b)
        .ok()
        .filter(|&v| v < i64::MAX / 4)
        .ok_or_else(|| Error::InvalidInput(format!("box radius {b} too large")))
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))
}

/// Integer points of `V(f)` in `[-B, B]^n`, in lexicographic order.
pub fn enumerate_points(f: &Polynomial, b: u64) -> Result<Vec<Vec<i64>>> {
    let prep = Prepared::new(f)?;
    let b = box_radius(b)?;
    Ok(prep.firsts(b).into_iter().flat_map(|x| prep.points_for(x, b)).collect())
}

/// Number of integer points of `V(f)` in `[-B, B]^n`.
pub fn count_points(f: &Polynomial, b: u64) -> Result<u64> {
    let prep = Prepared::new(f)?;
    let b = box_radius(b)?;
    Ok(prep.firsts(b).into_iter().map(|x| prep.count_for(x, b)).sum())
}

/// [`enumerate_points`] with the first coordinate split across `workers`
/// threads; the output is identical.
pub fn enumerate_points_parallel(f: &Polynomial, b: u64, workers: usize) -> Result<Vec<Vec<i64>>> {
    let prep = Prepared::new(f)?;
    let b = box_radius(b)?;
    let shards: Vec<Vec<Vec<i64>>> = pool(workers)?.install(|| {
        prep.firsts(b)
            .into_par_iter()
            .map(|x| prep.points_for(x, b))
            .collect()
    });
    Ok(shards.into_iter().flatten().collect())
}

/// [`count_points`] with the first coordinate split across `workers`
/// threads.
pub fn count_points_parallel(f: &Polynomial, b: u64, workers: usize) -> Result<u64> {
    let prep = Prepared::new(f)?;
    let b = box_radius(b)?;
    Ok(pool(workers)?.install(|| {
        prep.firsts(b)
            .into_par_iter()
            .map(|x| prep.count_for(x, b))
            .sum()
    }))
}

/// Rational points of the projective hypersurface `V(f)` with a primitive
/// integer representative in `[-B, B]^n`, each counted once.
pub fn count_projective(f: &Polynomial, b: u64) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let pts = enumerate_points(f, b)?;
    Ok(pts
        .iter()
        .filter(|p| {
            let first = p.iter().find(|&&x| x != 0);
            first.is_some_and(|&x| x > 0) && p.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
        })
        .count() as u64)
}

/// `d * (2B + 1)^m`.
pub fn schwartz_zippel_bound(d: u64, m: u32, b: u64) -> BigUint {
    BigUint::from(d) * BigUint::from(2 * b + 1).pow(m)
}

/// Which curve bound [`curve_bound`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveBoundKind {
    /// `C d^3 B^(1/d) (ln B + d)` for affine integral points.
    Affine,
    /// `C d^2 B^(2/d) (ln B)^kappa` for projective rational points.
    Projective,
}

/// Evaluates a curve bound with calibration constant `c` and exponent
/// `kappa` (projective only). A comparator, not a certified bound.
pub fn curve_bound(d: u32, b: f64, kind: CurveBoundKind, c: f64, kappa: f64) -> f64 {
    let d = d as f64;
    match kind {
        CurveBoundKind::Affine => c * d.powi(3) * b.powf(1.0 / d) * (b.ln() + d),
        CurveBoundKind::Projective => c * d.powi(2) * b.powf(2.0 / d) * b.ln().powf(kappa),
    }
}
