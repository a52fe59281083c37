//! Integer roots of integer polynomials inside an interval.
//!
//! Real roots are bracketed recursively: the integer floors of the roots of
//! `p'` split `[lo, hi]` into segments on which `p` is monotone, and a
//! bisection on each segment with a sign change gives the floor of its root.
//! Arithmetic is generic so the hot path can run on checked `i128` and fall
//! back to `BigInt` on overflow.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub(crate) trait Int: Clone + Sized {
    fn from_i64(v: i64) -> Self;
    fn add_c(&self, o: &Self) -> Option<Self>;
    fn mul_c(&self, o: &Self) -> Option<Self>;
    fn sign(&self) -> Ordering;
    /// `floor(-self / d)` when it lies in `[lo, hi]`.
    fn neg_floor_div_in(&self, d: &Self, lo: i64, hi: i64) -> Option<i64>;
    /// `-self / d` when exact and inside `[lo, hi]`.
    fn neg_exact_div_in(&self, d: &Self, lo: i64, hi: i64) -> Option<i64>;
}

impl Int for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn neg_floor_div_in(&self, d: &Self, lo: i64, hi: i64) -> Option<i64> {
        let r = Integer::div_floor(&self.checked_neg()?, d);
        (r >= lo as i128 && r <= hi as i128).then_some(r as i64)
    }
    fn neg_exact_div_in(&self, d: &Self, lo: i64, hi: i64) -> Option<i64> {
        let n = self.checked_neg()?;
        if n % d != 0 {
            return None;
        }
        let r = n / d;
        (r >= lo as i128 && r <= hi as i128).then_some(r as i64)
    }
}

impl Int for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add_c(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul_c(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn neg_floor_div_in(&self, d: &Self, lo: i64, hi: i64) -> Option<i64> {
        let r = Integer::div_floor(&-self, d).to_i64()?;
        (r >= lo && r <= hi).then_some(r)
    }
    fn neg_exact_div_in(&self, d: &Self, lo: i64, hi: i64) -> Option<i64> {
        let (q, r) = (-self).div_rem(d);
        if !r.is_zero() {
            return None;
        }
        let q = q.to_i64()?;
        (q >= lo && q <= hi).then_some(q)
    }
}

/// Outcome of a computation that may overflow the fast integer type.
pub(crate) struct Overflow;

pub(crate) fn eval<I: Int>(p: &[I], s: i64) -> Result<I, Overflow> {
    let x = I::from_i64(s);
    let mut acc = I::from_i64(0);
    for c in p.iter().rev() {
        acc = acc.mul_c(&x).ok_or(Overflow)?.add_c(c).ok_or(Overflow)?;
    }
    Ok(acc)
}

fn derivative<I: Int>(p: &[I]) -> Result<Vec<I>, Overflow> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.mul_c(&I::from_i64(k as i64)).ok_or(Overflow))
        .collect()
}

/// A superset of the integer floors of the real roots of `p` in `[lo, hi]`,
/// sorted. `p` must have positive degree with nonzero leading coefficient.
fn root_floors<I: Int>(p: &[I], lo: i64, hi: i64) -> Result<Vec<i64>, Overflow> {
    let deg = p.len() - 1;
    if deg == 1 {
        return Ok(p[0].neg_floor_div_in(&p[1], lo, hi).into_iter().collect());
    }
    let crit = root_floors(&derivative(p)?, lo, hi)?;
    let mut breaks = vec![lo, hi];
    for c in crit {
        breaks.push(c);
        if c < hi {
            breaks.push(c + 1);
        }
    }
    breaks.sort_unstable();
    breaks.dedup();
    let signs: Vec<Ordering> = breaks
        .iter()
        .map(|&s| eval(p, s).map(|v| v.sign()))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for (i, &s) in signs.iter().enumerate() {
        if s == Ordering::Equal {
            out.push(breaks[i]);
        }
    }
    for w in 0..breaks.len().saturating_sub(1) {
        let (a, b) = (breaks[w], breaks[w + 1]);
        let (sa, sb) = (signs[w], signs[w + 1]);
        if b == a + 1 {
            out.push(a);
            continue;
        }
        if sa == Ordering::Equal || sb == Ordering::Equal || sa == sb {
            continue;
        }
        // monotone with a sign change: bisect for the crossing
        let (mut l, mut h) = (a, b);
        while h - l > 1 {
            let m = l + (h - l) / 2;
            let sm = eval(p, m)?.sign();
            if sm == Ordering::Equal {
                l = m;
                break;
            }
            if sm == sa {
                l = m;
            } else {
                h = m;
            }
        }
        out.push(l);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Integer roots of `p` in `[lo, hi]`, ascending. `p` is trimmed (nonzero
/// leading coefficient) and not the zero polynomial.
pub(crate) fn integer_roots<I: Int>(p: &[I], lo: i64, hi: i64) -> Result<Vec<i64>, Overflow> {
    match p.len() {
        0 | 1 => Ok(Vec::new()),
        2 => Ok(p[0].neg_exact_div_in(&p[1], lo, hi).into_iter().collect()),
        _ => {
            let mut out = Vec::new();
            for c in root_floors(p, lo, hi)? {
                if eval(p, c)?.sign() == Ordering::Equal {
                    out.push(c);
                }
            }
            Ok(out)
        }
    }
}
