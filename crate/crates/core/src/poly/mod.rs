//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order, so the last entry is always the leading term and the
//! canonical printer simply walks the map backwards.

mod gcd;
mod kronecker;
mod linear;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use gcd::{content_in, gcd, gcd_many};
pub use kronecker::{kronecker_inverse, kronecker_transform, KroneckerImage};
pub use linear::LinearForm;
pub use parse::parse_poly;

/// Exact rational number used for every coefficient.
pub type Q = BigRational;

pub(crate) fn q_int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Exponent vector of a monomial, ordered graded-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables `x1..xn` over `Q`.
///
/// No stored coefficient is ever zero; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, q_int(c))
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Q::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Q)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(nvars: usize, terms: &[(Vec<u32>, i64)]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (e.clone(), q_int(*c))))
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        parse_poly(text, nvars)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<Q> {
        if self.is_constant() {
            Some(self.coeff(&Monomial::one(self.nvars)))
        } else {
            None
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_or_err(&self) -> Result<u32> {
        self.degree().ok_or(Error::ZeroPolynomial)
    }

    pub fn deg_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Indices of the variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.deg_in(i) > 0).collect()
    }

    /// Graded-lex leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Sum of the terms of total degree exactly `i`.
    pub fn homogeneous_part(&self, i: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == i)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous part of maximal degree.
    pub fn top_form(&self) -> Result<Polynomial> {
        let d = self.degree_or_err()?;
        Ok(self.homogeneous_part(d))
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut nm = m.clone();
                nm.0[var] -= 1;
                p.add_term(nm, c * q_int(e as i64));
            }
        }
        p
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_int(&self, point: &[BigInt]) -> Q {
        let q: Vec<Q> = point.iter().map(|x| Q::from_integer(x.clone())).collect();
        self.eval(&q)
    }

    /// Substitutes the constant `value` for variable `var`; the variable count
    /// is unchanged and `var` no longer occurs.
    pub fn partial_eval(&self, var: usize, value: &Q) -> Polynomial {
        let mut p = Self::zero(self.nvars);
        let d = self.deg_in(var) as usize;
        let mut pows = Vec::with_capacity(d + 1);
        let mut acc = Q::one();
        for _ in 0..=d {
            pows.push(acc.clone());
            acc *= value;
        }
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut nm = m.clone();
            nm.0[var] = 0;
            p.add_term(nm, c * &pows[e]);
        }
        p
    }

    /// Coefficients as a polynomial in `var`: entry `j` multiplies `var^j`
    /// and does not contain `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.deg_in(var) as usize;
        let mut out = vec![Self::zero(self.nvars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut nm = m.clone();
            nm.0[var] = 0;
            out[e].terms.insert(nm, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut p = Self::zero(nvars);
        for (j, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut nm = m.clone();
                nm.0[var] += j as u32;
                p.add_term(nm, v.clone());
            }
        }
        p
    }

    /// Leading coefficient with respect to `var` (a polynomial free of `var`).
    pub fn lc_in(&self, var: usize) -> Polynomial {
        self.coeffs_in(var).pop().unwrap_or_else(|| Self::zero(self.nvars))
    }

    /// Re-embeds into `new_nvars` variables, sending variable `i` to
    /// `mapping[i]`.
    pub fn embed(&self, new_nvars: usize, mapping: &[usize]) -> Polynomial {
        assert_eq!(mapping.len(), self.nvars);
        let mut p = Self::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; new_nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[mapping[i]] += x;
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Removes variables that do not occur in `keep` order; panics if a
    /// dropped variable occurs.
    pub fn restrict_vars(&self, keep: &[usize]) -> Polynomial {
        let mut p = Self::zero(keep.len());
        for (m, c) in &self.terms {
            for i in 0..self.nvars {
                if !keep.contains(&i) {
                    assert_eq!(m.0[i], 0, "dropping a variable that occurs");
                }
            }
            let e = keep.iter().map(|&i| m.0[i]).collect();
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Exact composition `f(images[0], …, images[n-1])`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::LengthMismatch {
                expected: target,
                got: bad.nvars,
            });
        }
        let mut cache: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// lcm of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Q {
        if self.is_zero() {
            return Q::zero();
        }
        let den = self.denominator_lcm();
        let g = self
            .terms
            .values()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .fold(BigInt::zero(), |acc, v| acc.gcd(&v));
        Q::new(g, den)
    }

    /// Integer coefficients with gcd 1 and a positive leading coefficient.
    /// Rational inputs have their denominators cleared first.
    pub fn primitive_part(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut c = self.content();
        if self.leading_coeff().map(|l| l.is_negative()).unwrap_or(false) {
            c = -c;
        }
        Ok(self.scale(&c.recip()))
    }

    /// Primitive part, or zero for the zero polynomial.
    pub fn normalized(&self) -> Polynomial {
        self.primitive_part().unwrap_or_else(|_| self.clone())
    }

    /// Projective height of the coefficient tuple.
    pub fn height(&self) -> Result<BigInt> {
        let p = self.primitive_part()?;
        Ok(p.terms
            .values()
            .map(|c| c.numer().abs())
            .max()
            .unwrap_or_else(BigInt::zero))
    }

    /// Integer coefficient list of a primitive copy (helper for callers that
    /// need `BigInt` arithmetic).
    pub fn integer_terms(&self) -> Vec<(Monomial, BigInt)> {
        let den = self.denominator_lcm();
        self.terms
            .iter()
            .map(|(m, c)| (m.clone(), (c * Q::from_integer(den.clone())).to_integer()))
            .collect()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, d.nvars);
        let (lm_d, lc_d) = d.leading_term()?;
        let lm_d = lm_d.clone();
        let lc_inv = lc_d.recip();
        let mut r = self.clone();
        let mut q = Polynomial::zero(self.nvars);
        while let Some((lm, lc)) = r.leading_term() {
            let m = lm.div(&lm_d)?;
            let c = lc * &lc_inv;
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&m), -(dc * &c));
            }
            q.add_term(m, c);
        }
        Some(q)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.div_exact(self).is_some()
    }

    /// Applies an invertible rational linear change of variables
    /// `x = M y` (rows of `m` give each `x_i` in terms of `y`).
    pub fn linear_change(&self, m: &[Vec<Q>]) -> Polynomial {
        let n = self.nvars;
        let images: Vec<Polynomial> = m
            .iter()
            .map(|row| {
                let mut p = Polynomial::zero(n);
                for (j, c) in row.iter().enumerate() {
                    p.add_term(Monomial::var(n, j), c.clone());
                }
                p
            })
            .collect();
        self.substitute(&images).expect("square change of variables")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (m, c) in &rhs.terms {
            p.add_term(m.clone(), -c.clone());
        }
        p
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut p = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                p.add_term(ma.mul(mb), ca * cb);
            }
        }
        p
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical form: graded-lex descending, explicit `*`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn homogeneous_parts() {
        let f = p("x1^2 + x2 + 3", 2);
        assert_eq!(f.homogeneous_part(2), p("x1^2", 2));
        assert_eq!(f.homogeneous_part(0), p("3", 2));
        let g = p("x1^3 - 2*x2^3 + x1", 2);
        assert_eq!(g.homogeneous_part(3), p("x1^3 - 2*x2^3", 2));
        assert!(g.homogeneous_part(2).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let f = p("x1^2", 1);
        let img = vec![p("x1 + x2", 2)];
        assert_eq!(f.substitute(&img).unwrap(), p("x1^2 + 2*x1*x2 + x2^2", 2));
        let g = p("x1 + x2", 2);
        assert!(g.substitute(&[p("x1", 1), p("-x1", 1)]).unwrap().is_zero());
        let h = p("x1*x2", 2);
        assert_eq!(h.substitute(&[p("2", 1), p("x1", 1)]).unwrap(), p("2*x1", 1));
        assert!(matches!(
            h.substitute(&[p("x1", 1)]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn heights_and_primitive_parts() {
        assert_eq!(p("2*x1 + 4*x2", 2).height().unwrap(), BigInt::from(2));
        assert_eq!(p("1/2*x1 + 1/3*x2", 2).height().unwrap(), BigInt::from(3));
        assert_eq!(p("3*x1^2 + 5", 1).height().unwrap(), BigInt::from(5));
        assert_eq!(p("6*x1 + 9", 1).primitive_part().unwrap(), p("2*x1 + 3", 1));
        assert_eq!(p("-x1", 1).primitive_part().unwrap(), p("x1", 1));
        assert_eq!(p("5", 1).primitive_part().unwrap(), p("1", 1));
        assert_eq!(Polynomial::zero(2).height(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let a = p("x1^2 - x2^2", 2);
        let b = p("x1 - x2", 2);
        assert_eq!(a.div_exact(&b).unwrap(), p("x1 + x2", 2));
        assert!(p("x1^2 + x2^2", 2).div_exact(&b).is_none());
        assert!(p("x1 - x2^2", 2).div_exact(&p("x1^2 - x1", 2)).is_none());
    }

    #[test]
    fn printer_is_canonical() {
        assert_eq!(p("x2*x1 + x1*x2 - 1/2 - x1^3", 2).to_string(), "-x1^3 + 2*x1*x2 - 1/2");
        assert_eq!(p("x1 - x1", 1).to_string(), "0");
    }
}
