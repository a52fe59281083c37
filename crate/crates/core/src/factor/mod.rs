//! Complete factorization over `Q`, `r`-irreducibility, and a bivariate
//! absolute-irreducibility test.
//!
//! Univariate polynomials are factored by modular factorization, Hensel
//! lifting and recombination. Bivariate polynomials lift the factors of a
//! univariate specialization over `Q[[y]]`. With three or more variables the
//! non-main variables are collapsed by the Kronecker transform, the
//! bivariate image is factored, and products of its factors are pulled back
//! and confirmed by exact division. Homogeneous inputs are dehomogenized
//! first, which removes one variable.

mod absolute;
mod lifting;
pub mod dense;
pub mod modp;
mod zassenhaus;

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{content_in, gcd, kronecker_inverse, kronecker_transform, Monomial, Polynomial, Q};
use dense::{poly_to_z, z_to_poly};

pub use zassenhaus::{exact_sqrt, factor_z};

/// `unit * prod factor^multiplicity`, factors primitive over `Z` with
/// positive leading coefficient, sorted by degree then printed form.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, nvars: usize) -> Polynomial {
        let mut p = Polynomial::constant(nvars, self.unit.clone());
        for (f, e) in &self.factors {
            p = &p * &f.pow(*e);
        }
        p
    }

    /// True for a single factor of multiplicity one.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Smallest degree among the factors, if any.
    pub fn min_factor_degree(&self) -> Option<u32> {
        self.factors.iter().filter_map(|(f, _)| f.degree()).min()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (g, e) in &self.factors {
            if *e == 1 {
                write!(f, " * ({g})")?;
            } else {
                write!(f, " * ({g})^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors a nonzero polynomial in any number of variables.
pub fn factor(f: &Polynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let raw = factor_rec(f);
    let mut merged: Vec<(Polynomial, u32)> = Vec::new();
    for (g, e) in raw {
        let g = g.normalized();
        match merged.iter_mut().find(|(h, _)| *h == g) {
            Some(entry) => entry.1 += e,
            None => merged.push((g, e)),
        }
    }
    merged.sort_by_cached_key(|(g, _)| (g.degree().unwrap_or(0), g.to_string()));
    let mut lc = Q::one();
    for (g, e) in &merged {
        let l = g.leading_coeff().expect("nonzero factor");
        for _ in 0..*e {
            lc *= l;
        }
    }
    let unit = f.leading_coeff().expect("nonzero") / lc;
    Ok(Factorization {
        unit,
        factors: merged,
    })
}

/// Factorization of a polynomial in one variable.
pub fn factor_univariate(f: &Polynomial) -> Result<Factorization> {
    if f.nvars() != 1 {
        return Err(Error::InvalidInput(format!(
            "expected 1 variable, got {}",
            f.nvars()
        )));
    }
    factor(f)
}

/// Factorization of a polynomial in two or more variables.
pub fn factor_multivariate(f: &Polynomial) -> Result<Factorization> {
    if f.nvars() < 2 {
        return Err(Error::TooFewVariables {
            needed: 2,
            got: f.nvars(),
        });
    }
    factor(f)
}

/// True iff every irreducible factor of `f` over `Q` has degree `> r`.
pub fn is_r_irreducible(f: &Polynomial, r: u32) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if f.degree() <= Some(r) {
        return Ok(false);
    }
    Ok(factor(f)?.min_factor_degree().is_none_or(|d| d > r))
}

/// Irreducibility over `Q`; constants are not irreducible.
pub fn is_irreducible(f: &Polynomial) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Ok(false);
    }
    Ok(factor(f)?.is_irreducible())
}

/// Irreducibility over the algebraic closure for `f` in two variables. The
/// input must be squarefree and irreducible over `Q`.
pub fn is_absolutely_irreducible_bivariate(f: &Polynomial) -> Result<bool> {
    if f.nvars() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected 2 variables, got {}",
            f.nvars()
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let g = gcd(&gcd(f, &f.derivative(0)), &f.derivative(1));
    if !g.is_constant() {
        return Err(Error::NotSquarefree);
    }
    if !factor(f)?.is_irreducible() {
        return Err(Error::ReducibleOverQ);
    }
    let f = if f.deg_in(0) == 0 { f.embed(2, &[1, 0]) } else { f.clone() };
    Ok(absolute::absolute_factor_count(&f) == 1)
}

/// Factors with multiplicities, up to a constant.
fn factor_rec(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    if f.is_constant() {
        return Vec::new();
    }
    let n = f.nvars();
    let (mut out, f) = split_monomial_content(f);
    if f.is_constant() {
        return out;
    }
    let present = f.vars_present();
    if present.len() < n {
        let g = f.restrict_vars(&present);
        out.extend(factor_rec(&g).into_iter().map(|(h, e)| (h.embed(n, &present), e)));
        return out;
    }
    if n == 1 {
        let (_, fac) = zassenhaus::factor_z(&poly_to_z(&f, 0));
        out.extend(fac.into_iter().map(|(z, e)| (z_to_poly(&z, 1, 0), e)));
        return out;
    }
    if f.is_homogeneous() {
        let v = n - 1;
        let g = dehomogenize(&f, v);
        out.extend(factor_rec(&g).into_iter().map(|(h, e)| (homogenize(&h, v), e)));
        return out;
    }
    let x = main_variable(&f);
    let c = content_in(&f, x);
    if !c.is_constant() {
        out.extend(factor_rec(&c));
    }
    let pp = f.div_exact(&c).expect("content divides");
    for (s, e) in squarefree_parts(&pp, x) {
        out.extend(squarefree_primitive(&s, x).into_iter().map(|g| (g, e)));
    }
    out
}

/// Pulls out the largest monomial dividing `f`, returned as variable
/// factors with multiplicities.
fn split_monomial_content(f: &Polynomial) -> (Vec<(Polynomial, u32)>, Polynomial) {
    let n = f.nvars();
    let mut mins = vec![u32::MAX; n];
    for (m, _) in f.terms() {
        for (i, &e) in m.exponents().iter().enumerate() {
            mins[i] = mins[i].min(e);
        }
    }
    let out: Vec<(Polynomial, u32)> = mins
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (Polynomial::var(n, i), e))
        .collect();
    if out.is_empty() {
        return (out, f.clone());
    }
    let m = Monomial::new(mins);
    let q = Polynomial::from_terms(
        n,
        f.terms().map(|(t, c)| (t.div(&m).expect("divides").exponents().to_vec(), c.clone())),
    );
    (out, q)
}

/// Present variable of least positive degree, lowest index on ties.
fn main_variable(f: &Polynomial) -> usize {
    *f.vars_present()
        .iter()
        .min_by_key(|&&v| (f.deg_in(v), v))
        .expect("nonconstant")
}

/// Yun's algorithm in `x` for `f` primitive in `x`.
fn squarefree_parts(f: &Polynomial, x: usize) -> Vec<(Polynomial, u32)> {
    let mut out = Vec::new();
    let fp = f.derivative(x);
    let a0 = gcd(f, &fp);
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let c = fp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(x);
    let mut i = 1;
    while b.deg_in(x) > 0 {
        let a = gcd(&b, &d);
        if a.deg_in(x) > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        let c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative(x);
        i += 1;
    }
    out
}

/// Factors `f` squarefree and primitive in `x` with `deg_x f >= 1`.
fn kronecker_factor(g: &Polynomial) -> Vec<Polynomial> {
    let img = kronecker_transform(g).expect("nonzero with at least two variables");
    let mut pieces: Vec<Polynomial> = Vec::new();
    for (h, e) in factor_rec(&img.poly) {
        for _ in 0..e {
            pieces.push(h.clone());
        }
    }
    let mut out = Vec::new();
    let mut rem = g.clone();
    let mut size = 1;
    while 2 * size <= pieces.len() {
        let mut found = false;
        for subset in zassenhaus::subsets(pieces.len(), size) {
            let mut cand = Polynomial::one(2);
            for &i in &subset {
                cand = &cand * &pieces[i];
            }
            let Some(h) = kronecker_inverse(&cand, img.radix, img.ny) else {
                continue;
            };
            if h.is_constant() {
                continue;
            }
            if let Some(q) = rem.div_exact(&h) {
                out.push(h.normalized());
                rem = q;
                for &i in subset.iter().rev() {
                    pieces.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if !rem.is_constant() {
        out.push(rem.normalized());
    }
    out
}

fn squarefree_primitive(f: &Polynomial, x: usize) -> Vec<Polynomial> {
    let n = f.nvars();
    let mut keep = vec![x];
    keep.extend(f.vars_present().into_iter().filter(|&v| v != x));
    let g = f.restrict_vars(&keep);
    let pieces = match keep.len() {
        1 => zassenhaus::factor_squarefree(&poly_to_z(&g, 0))
            .iter()
            .map(|z| z_to_poly(z, 1, 0))
            .collect(),
        2 => lifting::factor_squarefree_lifting(&g),
        _ => kronecker_factor(&g),
    };
    pieces.iter().map(|h| h.embed(n, &keep)).collect()
}

/// Collapses variables `1..` of `g` into one, factors the bivariate image,
/// and recovers the true factors from products of image factors.
/// `f` with variable `v` set to 1 and removed.
fn dehomogenize(f: &Polynomial, v: usize) -> Polynomial {
    let n = f.nvars();
    let keep: Vec<usize> = (0..n).filter(|&i| i != v).collect();
    f.partial_eval(v, &Q::one()).restrict_vars(&keep)
}

/// Inverse of [`dehomogenize`] for a polynomial in the remaining variables.
fn homogenize(h: &Polynomial, v: usize) -> Polynomial {
    let n = h.nvars() + 1;
    let d = h.degree().unwrap_or(0);
    Polynomial::from_terms(
        n,
        h.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.insert(v, d - m.degree());
            (e, c.clone())
        }),
    )
}
