//! Univariate factorization over `Z`: squarefree decomposition, modular
//! factorization, multifactor Hensel lifting and subset recombination.

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use super::dense::{zcontent, zderivative, zdiv_exact, zmul, zprimitive, QPoly};
use super::modp::{is_prime, symmetric, Fp, FpPoly};

const FIRST_PRIME: u64 = 1_000_000_007;
const PRIME_TRIALS: usize = 5;

/// Yun's squarefree decomposition over `Q`: returns primitive integer
/// polynomials `s_i` with multiplicities, `f = c * prod s_i^i`.
pub fn squarefree_decomposition(f: &[BigInt]) -> Vec<(Vec<BigInt>, u32)> {
    let f = QPoly::from_z(f);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.divrem(&a0).0;
    let mut c = fp.divrem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.to_primitive_z(), i));
        }
        b = b.divrem(&a).0;
        c = d.divrem(&a).0;
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Irreducible factors of a primitive squarefree integer polynomial of
/// positive degree, each primitive with positive leading coefficient.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let f = zprimitive(f);
    let n = f.len() - 1;
    assert!(n >= 1, "constant input");
    if n == 1 {
        return vec![f];
    }
    // x | f
    if f[0].is_zero() {
        let rest = zprimitive(&f[1..]);
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        if rest.len() > 1 {
            out.extend(factor_squarefree(&rest));
        }
        return out;
    }
    if n == 2 {
        return factor_quadratic(&f);
    }
    let Some((p, modular)) = choose_prime(&f) else {
        return vec![f];
    };
    if modular.len() == 1 {
        return vec![f];
    }
    let (lifted, pa) = hensel_lift(&f, p, &modular);
    recombine(&f, lifted, &pa)
}

/// Splits `a x^2 + b x + c` over `Z` when the discriminant is a square.
pub fn factor_quadratic(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let (c, b, a) = (&f[0], &f[1], &f[2]);
    let disc = b * b - BigInt::from(4) * a * c;
    match exact_sqrt(&disc) {
        None => vec![f.to_vec()],
        Some(s) => {
            // roots (-b ± s) / 2a give factors 2a x + b ∓ s
            let two_a: BigInt = a * BigInt::from(2);
            let mut out = vec![
                zprimitive(&[b - &s, two_a.clone()]),
                zprimitive(&[b + &s, two_a]),
            ];
            out.sort();
            out
        }
    }
}

pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = Roots::sqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Picks the prime with the fewest modular factors among the first few
/// admissible ones.
fn choose_prime(f: &[BigInt]) -> Option<(u64, Vec<FpPoly>)> {
    let lc = f.last().unwrap();
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut p = FIRST_PRIME;
    let mut tried = 0;
    while tried < PRIME_TRIALS {
        if is_prime(p) {
            let field = Fp::new(p);
            if field.reduce(lc) != 0 {
                let fp = field.reduce_poly(f);
                if field.is_squarefree(&fp) {
                    tried += 1;
                    let fac = field.factor_squarefree(&fp);
                    let better = best.as_ref().is_none_or(|(_, b)| fac.len() < b.len());
                    if better {
                        let done = fac.len() == 1;
                        best = Some((p, fac));
                        if done {
                            break;
                        }
                    }
                }
            }
        }
        p += 2;
    }
    best
}

/// Bound on coefficients of `lc(f) * g / lc(g)` for any factor `g`, times
/// two so the symmetric range covers both signs.
fn lifting_bound(f: &[BigInt]) -> BigInt {
    let norm2 = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + BigInt::one();
    let lc = f.last().unwrap().abs();
    BigInt::from(2) * lc * (BigInt::one() << (f.len() - 1)) * norm2
}

fn to_z(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ lc(f) * prod u_i (mod p)` to modulus `p^a` beyond the
/// coefficient bound. Lifted factors stay monic.
fn hensel_lift(f: &[BigInt], p: u64, us: &[FpPoly]) -> (Vec<Vec<BigInt>>, BigInt) {
    let field = Fp::new(p);
    let bound = lifting_bound(f);
    let lc = f.last().unwrap().clone();
    let lc_inv = field.inv(field.reduce(&lc));
    // s_i = (prod_{j != i} u_j)^{-1} mod u_i
    let cofactor_inv: Vec<FpPoly> = (0..us.len())
        .map(|i| {
            let mut prod: FpPoly = vec![1];
            for (j, u) in us.iter().enumerate() {
                if j != i {
                    prod = field.poly_mul(&prod, u);
                }
            }
            field.poly_inv_mod(&prod, &us[i])
        })
        .collect();
    let pz = BigInt::from(p);
    let mut lifted: Vec<Vec<BigInt>> = us.iter().map(|u| to_z(u)).collect();
    let mut pk = pz.clone();
    while pk <= bound {
        let mut prod = vec![lc.clone()];
        for u in &lifted {
            prod = zmul(&prod, u);
        }
        let n = f.len().max(prod.len());
        let err: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                let (q, r) = (a - b).div_rem(&pk);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        let e = field.poly_scale(&field.reduce_poly(&err), lc_inv);
        if !e.is_empty() {
            for (i, u) in lifted.iter_mut().enumerate() {
                let delta = field.poly_rem(&field.poly_mul(&e, &cofactor_inv[i]), &us[i]);
                for (k, &d) in delta.iter().enumerate() {
                    u[k] += &pk * BigInt::from(d);
                }
            }
        }
        pk *= &pz;
    }
    (lifted, pk)
}

fn reduce_sym(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    v.iter().map(|c| symmetric(c, m)).collect()
}

/// Recombines lifted modular factors by trying subsets of increasing size.
fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, pa: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut rem = f.to_vec();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = rem.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &subset {
                cand = reduce_sym(&zmul(&cand, &lifted[i]), pa);
            }
            let g = zprimitive(&cand);
            if !divides_constant_term(&g, &rem) {
                continue;
            }
            if let Some(q) = zdiv_exact(&rem, &g) {
                out.push(g);
                rem = zprimitive(&q);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(rem);
    out.sort();
    out
}

fn divides_constant_term(g: &[BigInt], f: &[BigInt]) -> bool {
    g[0].is_zero() || (&f[0] % &g[0]).is_zero()
}

/// Lexicographic enumeration of `k`-subsets of `0..n`.
struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    Subsets::new(n, k)
}

/// Complete factorization of a nonzero integer polynomial: returns the
/// signed content and the irreducible factors with multiplicities.
pub fn factor_z(f: &[BigInt]) -> (BigInt, Vec<(Vec<BigInt>, u32)>) {
    let mut content = zcontent(f);
    if f.last().is_some_and(|c| c.sign() == Sign::Minus) {
        content = -content;
    }
    let mut out = Vec::new();
    for (s, m) in squarefree_decomposition(f) {
        for g in factor_squarefree(&s) {
            out.push((g, m));
        }
    }
    (content, out)
}

pub(crate) fn is_squarefree_z(f: &[BigInt]) -> bool {
    let d = zderivative(f);
    !d.is_empty() && QPoly::from_z(f).gcd(&QPoly::from_z(&d)).degree() == Some(0)
}
