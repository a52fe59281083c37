//! Dense univariate polynomials over `Q` and `Z`, coefficients stored from
//! the constant term upwards.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Polynomial, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly(pub Vec<Q>);

impl QPoly {
    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn one() -> Self {
        QPoly(vec![Q::one()])
    }

    pub fn constant(c: Q) -> Self {
        QPoly(vec![c]).trimmed()
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect()).trimmed()
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        QPoly((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect()).trimmed()
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).trimmed()
    }

    pub fn scale(&self, c: &Q) -> QPoly {
        QPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().recip();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[k + j] -= &c * dj;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (QPoly(q).trimmed(), QPoly(r).trimmed())
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn derivative(&self) -> QPoly {
        QPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
        .trimmed()
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Reads a polynomial that only involves `var`.
    pub fn from_poly(p: &Polynomial, var: usize) -> QPoly {
        let mut v = vec![Q::zero(); p.deg_in(var) as usize + 1];
        for (m, c) in p.terms() {
            v[m.exponents()[var] as usize] = c.clone();
        }
        QPoly(v).trimmed()
    }

    pub fn to_poly(&self, nvars: usize, var: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.0.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; nvars];
                e[var] = i as u32;
                (e, c.clone())
            }),
        )
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn to_primitive_z(&self) -> Vec<BigInt> {
        let den = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let z: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Q::from_integer(den.clone())).to_integer())
            .collect();
        zprimitive(&z)
    }

    pub fn from_z(z: &[BigInt]) -> QPoly {
        QPoly(z.iter().map(|c| Q::from_integer(c.clone())).collect()).trimmed()
    }
}

pub fn ztrim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub fn zcontent(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Divides by the content and makes the leading coefficient positive.
pub fn zprimitive(v: &[BigInt]) -> Vec<BigInt> {
    let v = ztrim(v.to_vec());
    if v.is_empty() {
        return v;
    }
    let mut g = zcontent(&v);
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

pub fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

/// Exact quotient `a / b` over `Z`, `None` if `b` does not divide `a`.
pub fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len().checked_sub(1).expect("division by zero");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() <= db {
        return None;
    }
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(ztrim(q))
    } else {
        None
    }
}

pub fn zderivative(a: &[BigInt]) -> Vec<BigInt> {
    ztrim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

pub fn z_to_poly(z: &[BigInt], nvars: usize, var: usize) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        z.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0; nvars];
            e[var] = i as u32;
            (e, Q::from_integer(c.clone()))
        }),
    )
}

/// Integer coefficient vector of a polynomial in one variable `var`
/// (denominators cleared, not made primitive).
pub fn poly_to_z(p: &Polynomial, var: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); p.deg_in(var) as usize + 1];
    for (m, c) in p.integer_terms() {
        v[m.exponents()[var] as usize] = c;
    }
    ztrim(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;

    fn qp(v: &[i64]) -> QPoly {
        QPoly(v.iter().map(|&c| q_int(c)).collect()).trimmed()
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, QPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), QPoly::one());
        let c = qp(&[1, 2, 1]);
        assert_eq!(a.gcd(&c), qp(&[1, 1]));
    }

    #[test]
    fn exact_integer_division() {
        let a: Vec<BigInt> = [-2, 0, 2].iter().map(|&v| BigInt::from(v)).collect();
        let b: Vec<BigInt> = [-1, 1].iter().map(|&v| BigInt::from(v)).collect();
        let q = zdiv_exact(&a, &b).unwrap();
        assert_eq!(q, vec![BigInt::from(2), BigInt::from(2)]);
        let c: Vec<BigInt> = [1, 2].iter().map(|&v| BigInt::from(v)).collect();
        assert!(zdiv_exact(&a, &c).is_none());
    }
}
