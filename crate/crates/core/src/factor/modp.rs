//! Univariate polynomials over a prime field `F_p` with `p < 2^32`, and
//! Cantor–Zassenhaus factorization of squarefree polynomials.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 32));
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn reduce(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced")
    }

    pub fn reduce_poly(&self, z: &[BigInt]) -> FpPoly {
        trim(z.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect())
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect())
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> FpPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // accumulate in u128 and reduce once per output coefficient
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        trim(acc.into_iter().map(|v| (v % self.p as u128) as u64).collect())
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> FpPoly {
        trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_divrem(&self, a: &[u64], d: &[u64]) -> (FpPoly, FpPoly) {
        let dd = d.len().checked_sub(1).expect("division by zero polynomial");
        if a.len() <= dd {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(d[dd]);
        let mut r = a.to_vec();
        let mut q = vec![0; a.len() - dd];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + dd], inv);
            if c == 0 {
                continue;
            }
            for (j, &dj) in d.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, dj));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (trim(q), trim(r))
    }

    pub fn poly_rem(&self, a: &[u64], d: &[u64]) -> FpPoly {
        self.poly_divrem(a, d).1
    }

    pub fn monic(&self, a: &[u64]) -> FpPoly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(a, self.inv(l)),
        }
    }

    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> FpPoly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s*a + t*b = g` and `g` monic.
    pub fn poly_ext_gcd(&self, a: &[u64], b: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("nonzero gcd"));
        (
            self.poly_scale(&r0, inv),
            self.poly_scale(&s0, inv),
            self.poly_scale(&t0, inv),
        )
    }

    /// Inverse of `a` modulo `m` (assumed coprime).
    pub fn poly_inv_mod(&self, a: &[u64], m: &[u64]) -> FpPoly {
        let (g, s, _) = self.poly_ext_gcd(&self.poly_rem(a, m), m);
        assert_eq!(g, vec![1], "not invertible");
        s
    }

    pub fn derivative(&self, a: &[u64]) -> FpPoly {
        trim(a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect())
    }

    /// `base^e mod m` for an arbitrary-size exponent.
    pub fn poly_powmod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> FpPoly {
        let mut result = vec![1];
        let b = self.poly_rem(base, m);
        for i in (0..e.bits()).rev() {
            result = self.poly_rem(&self.poly_mul(&result, &result), m);
            if e.bit(i) {
                result = self.poly_rem(&self.poly_mul(&result, &b), m);
            }
        }
        self.poly_rem(&result, m)
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.poly_gcd(a, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree k, k)`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: FpPoly = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut k = 0;
        while f.len() > 1 {
            k += 1;
            if 2 * k > f.len() - 1 {
                let d = f.len() - 1;
                out.push((f, d));
                break;
            }
            h = self.poly_powmod(&h, &p, &f);
            let g = self.poly_gcd(&self.poly_sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.poly_divrem(&f, &g).0;
                h = self.poly_rem(&h, &f);
                out.push((g, k));
            }
        }
        out
    }

    /// Splits a monic product of irreducibles all of degree `k` (odd `p`).
    pub fn equal_degree(&self, f: &[u64], k: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = f.len() - 1;
        if n == k {
            return vec![f.to_vec()];
        }
        let e = (BigUint::from(self.p).pow(k as u32) - BigUint::one()) >> 1;
        loop {
            let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let g = self.poly_gcd(&a, f);
            let split = if g.len() > 1 {
                g
            } else {
                let b = self.poly_powmod(&a, &e, f);
                self.poly_gcd(&self.poly_sub(&b, &[1]), f)
            };
            if split.len() > 1 && split.len() < f.len() {
                let other = self.poly_divrem(f, &split).0;
                let mut out = self.equal_degree(&split, k, rng);
                out.extend(self.equal_degree(&self.monic(&other), k, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree(&self, f: &[u64]) -> Vec<FpPoly> {
        let f = self.monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, k) in self.distinct_degree(&f) {
            out.extend(self.equal_degree(&g, k, &mut rng));
        }
        out.sort();
        out
    }
}

pub fn trim(mut v: FpPoly) -> FpPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Symmetric lift of a residue modulo `m` into `(-m/2, m/2]`.
pub fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

pub fn is_zero_poly(v: &[u64]) -> bool {
    v.iter().all(Zero::is_zero)
}
