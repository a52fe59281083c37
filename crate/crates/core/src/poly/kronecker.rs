//! The Kronecker transform `F(T, Y1..Yn) -> F(T, Y, Y^a, …, Y^(a^(n-1)))`
//! with `a = 1 + max_i deg_{Y_i} F`.

use num_bigint::BigUint;

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// Image of the Kronecker transform together with the data needed to invert
/// it.
#[derive(Clone, Debug, PartialEq)]
pub struct KroneckerImage {
    /// Polynomial in two variables `(T, Y)`.
    pub poly: Polynomial,
    /// Radix `a`.
    pub radix: u32,
    /// Number of collapsed `Y` variables.
    pub ny: usize,
}

/// Variable 1 of `f` plays `T`, variables `2..=n+1` are `Y1..Yn`.
pub fn kronecker_transform(f: &Polynomial) -> Result<KroneckerImage> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ny = f.nvars().checked_sub(1).filter(|&k| k >= 1).ok_or(
        Error::TooFewVariables {
            needed: 2,
            got: f.nvars(),
        },
    )?;
    let radix = 1 + (1..f.nvars()).map(|i| f.deg_in(i)).max().unwrap_or(0);
    let mut out = Polynomial::zero(2);
    for (m, c) in f.terms() {
        let e = m.exponents();
        let mut y: u64 = 0;
        let mut place: u64 = 1;
        for &ei in &e[1..] {
            y = y
                .checked_add(place.checked_mul(ei as u64).expect("Kronecker exponent overflow"))
                .expect("Kronecker exponent overflow");
            place = place.saturating_mul(radix as u64);
        }
        let y: u32 = y.try_into().expect("Kronecker exponent overflow");
        out.add_term(Monomial::new(vec![e[0], y]), c.clone());
    }
    Ok(KroneckerImage {
        poly: out,
        radix,
        ny,
    })
}

/// Inverts the transform by base-`radix` digit expansion of each `Y`
/// exponent. Returns `None` if some exponent needs more than `ny` digits.
pub fn kronecker_inverse(k: &Polynomial, radix: u32, ny: usize) -> Option<Polynomial> {
    assert_eq!(k.nvars(), 2);
    let mut out = Polynomial::zero(ny + 1);
    let limit = BigUint::from(radix).pow(ny as u32);
    for (m, c) in k.terms() {
        let e = m.exponents();
        if BigUint::from(e[1]) >= limit {
            return None;
        }
        let mut rest = e[1];
        let mut exps = vec![e[0]];
        for _ in 0..ny {
            exps.push(rest % radix);
            rest /= radix;
        }
        debug_assert_eq!(rest, 0);
        out.add_term(Monomial::new(exps), c.clone());
    }
    Some(out)
}
