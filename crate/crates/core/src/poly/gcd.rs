//! Multivariate gcd over `Q`. The heuristic method (evaluate one variable at
//! a large integer, recurse, and reconstruct from the balanced digits) is
//! tried first; recursive primitive pseudo-remainder sequences are the
//! fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Q};

/// Evaluation points tried by the heuristic before falling back.
const HEURISTIC_TRIES: usize = 6;

/// Greatest common divisor, normalized to a primitive integer polynomial with
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.nvars(), b.nvars());
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Polynomial::zero(a.nvars()),
        (true, false) => b.normalized(),
        (false, true) => a.normalized(),
        (false, false) => gcd_pair(a, b),
    }
}

/// Normalized gcd of two nonzero polynomials.
fn gcd_pair(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.nvars());
    }
    let (a, b) = (a.normalized(), b.normalized());
    let mut vars = a.vars_present();
    vars.extend(b.vars_present());
    vars.sort_unstable();
    vars.dedup();
    match heuristic(&a, &b, &vars) {
        Some(g) => g.normalized(),
        None => gcd_rec(&a, &b).normalized(),
    }
}

fn max_norm(p: &Polynomial) -> BigInt {
    p.terms()
        .map(|(_, c)| c.to_integer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

fn integer_content(p: &Polynomial) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&c.to_integer()))
}

/// Balanced residue in `(-m/2, m/2]`.
fn balanced(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// gcd of integer polynomials in the variables `vars`, up to sign, or
/// `None` when no tried evaluation point certifies a candidate.
fn heuristic(a: &Polynomial, b: &Polynomial, vars: &[usize]) -> Option<Polynomial> {
    let n = a.nvars();
    let (ca, cb) = (integer_content(a), integer_content(b));
    let content = Polynomial::constant(n, Q::from_integer(ca.gcd(&cb)));
    let Some((&x, rest)) = vars.split_last() else {
        return Some(content);
    };
    if a.is_constant() || b.is_constant() {
        return Some(content);
    }
    let a = a.scale(&Q::from_integer(ca).recip());
    let b = b.scale(&Q::from_integer(cb).recip());
    let mut xi: BigInt = max_norm(&a).min(max_norm(&b)) * 2 + 29;
    for _ in 0..HEURISTIC_TRIES {
        let at = Q::from_integer(xi.clone());
        let (ea, eb) = (a.partial_eval(x, &at), b.partial_eval(x, &at));
        if !ea.is_zero() && !eb.is_zero() {
            let mut gamma = heuristic(&ea, &eb, rest)?;
            let mut g = Polynomial::zero(n);
            let mut i = 0u32;
            while !gamma.is_zero() {
                let digit = Polynomial::from_terms(
                    n,
                    gamma
                        .terms()
                        .map(|(m, c)| (m.exponents().to_vec(), Q::from_integer(balanced(&c.to_integer(), &xi)))),
                );
                let mut e = vec![0; n];
                e[x] = i;
                g = &g + &digit.mul_monomial(&Monomial::new(e), &Q::one());
                gamma = (&gamma - &digit).scale(&Q::from_integer(xi.clone()).recip());
                i += 1;
            }
            if !g.is_zero() {
                let c = integer_content(&g);
                let g = g.scale(&Q::from_integer(c).recip());
                if a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(&g * &content);
                }
            }
        }
        xi = xi * 73794u32 / 27011u32;
    }
    None
}

pub fn gcd_many<'a, I>(nvars: usize, items: I) -> Polynomial
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut g = Polynomial::zero(nvars);
    for p in items {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// gcd of the coefficients of `a` viewed as a polynomial in `var`.
pub fn content_in(a: &Polynomial, var: usize) -> Polynomial {
    if a.is_zero() {
        return Polynomial::zero(a.nvars());
    }
    let mut g = Polynomial::zero(a.nvars());
    for c in a.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.normalized() } else { gcd_pair(&g, &c) };
        if g.is_constant() {
            return Polynomial::one(a.nvars());
        }
    }
    g
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    let va = a.vars_present();
    let vb = b.vars_present();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_rec(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_rec(a, &content_in(b, v));
    }
    // both contain exactly the same variables; pick the one of least degree
    let v = *va
        .iter()
        .min_by_key(|&&v| a.deg_in(v).min(b.deg_in(v)))
        .expect("non-constant");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    &c * &g
}

fn primitive_prs(a: Polynomial, b: Polynomial, v: usize) -> Polynomial {
    let (mut a, mut b) = if a.deg_in(v) >= b.deg_in(v) { (a, b) } else { (b, a) };
    loop {
        let r = sparse_prem(&a, &b, v);
        if r.is_zero() {
            return pp_in(&b, v);
        }
        if r.deg_in(v) == 0 {
            return Polynomial::one(a.nvars());
        }
        a = b;
        b = pp_in(&r, v);
    }
}

fn pp_in(a: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(a, v);
    a.div_exact(&c).expect("content divides").normalized()
}

/// Pseudo-remainder of `a` by `b` in `var`, scaling by the leading
/// coefficient of `b` only as often as needed.
pub(crate) fn sparse_prem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.deg_in(var);
    let lb = b.lc_in(var);
    let mut r = a.clone();
    while !r.is_zero() && r.deg_in(var) >= db {
        let k = r.deg_in(var) - db;
        let lr = r.lc_in(var);
        let mut shift = Monomial::one(n).exponents().to_vec();
        shift[var] = k;
        let t = lr.mul_monomial(&Monomial::new(shift), &num_traits::One::one());
        r = &(&lb * &r) - &(&t * b);
    }
    r
}
