//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dgl_core::auxiliary::monomial_basis;
use dgl_core::factor::factor;
use dgl_core::poly::Q;
use dgl_core::Polynomial;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn p(s: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, n).unwrap()
}

/// Polynomial with the given coefficients on the graded-lex basis of degree
/// at most `d`.
pub fn from_basis(n: usize, d: u32, coeffs: &[i64]) -> Polynomial {
    Polynomial::from_terms(
        n,
        monomial_basis(n, d)
            .iter()
            .zip(coeffs)
            .map(|(m, &c)| (m.exponents().to_vec(), q(c))),
    )
}

pub fn basis_len(n: usize, d: u32) -> usize {
    monomial_basis(n, d).len()
}

/// Random dense polynomial of degree at most `d`.
pub fn poly_strategy(n: usize, d: u32, c: i64) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-c..=c, basis_len(n, d)).prop_map(move |v| from_basis(n, d, &v))
}

/// Random polynomial of degree exactly `d`.
pub fn poly_of_degree(n: usize, d: u32, c: i64) -> impl Strategy<Value = Polynomial> {
    poly_strategy(n, d, c).prop_filter("degree", move |f| f.degree() == Some(d))
}

pub fn random_poly<R: Rng>(rng: &mut R, n: usize, d: u32, c: i64) -> Polynomial {
    loop {
        let v: Vec<i64> = (0..basis_len(n, d)).map(|_| rng.gen_range(-c..=c)).collect();
        let f = from_basis(n, d, &v);
        if f.degree() == Some(d) {
            return f;
        }
    }
}

/// Integer value of `f` at an integer point, by direct term evaluation.
pub fn eval_z(f: &Polynomial, x: &[i64]) -> BigInt {
    let mut acc = BigInt::zero();
    for (m, c) in f.integer_terms() {
        let mut t = c;
        for (&e, &xi) in m.exponents().iter().zip(x) {
            t *= BigInt::from(xi).pow(e);
        }
        acc += t;
    }
    acc
}

/// Literal loop over `[-B, B]^n`.
pub fn brute_points(f: &Polynomial, b: i64) -> Vec<Vec<i64>> {
    let n = f.nvars();
    let mut out = Vec::new();
    let mut x = vec![-b; n];
    loop {
        if eval_z(f, &x).is_zero() {
            out.push(x.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < b {
                x[i] += 1;
                break;
            }
            x[i] = -b;
        }
    }
}

/// Random unimodular integer matrix as a product of elementary operations.
pub fn unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let k = rng.gen_range(-2i64..=2);
        for row in m.iter_mut() {
            row[i] += k * row[j];
        }
        if rng.gen_bool(0.3) {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
    }
    m
}

/// `f(M x)`.
pub fn change(f: &Polynomial, m: &[Vec<i64>]) -> Polynomial {
    let n = f.nvars();
    let images: Vec<Polynomial> = m
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .fold(Polynomial::zero(n), |acc, (j, &c)| &acc + &Polynomial::var(n, j).scale(&q(c)))
        })
        .collect();
    f.substitute(&images).unwrap()
}

pub fn linear(coeffs: &[i64]) -> Polynomial {
    let n = coeffs.len();
    coeffs
        .iter()
        .enumerate()
        .fold(Polynomial::zero(n), |acc, (j, &c)| &acc + &Polynomial::var(n, j).scale(&q(c)))
}

/// Rank of an integer matrix modulo the prime `2^61 - 1`; a lower bound for
/// the rational rank that is equal to it outside a thin set of cases.
pub fn rank_mod_p(rows: &[Vec<BigInt>]) -> usize {
    const P: u128 = (1u128 << 61) - 1;
    let pb = BigInt::from(P);
    let mut m: Vec<Vec<u128>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = ((x % &pb) + &pb) % &pb;
                    u128::try_from(v).unwrap()
                })
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let pow = |mut b: u128, mut e: u128| {
        let mut r = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow(m[rank][c], P - 2);
        for j in 0..cols {
            m[rank][j] = m[rank][j] * inv % P;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let k = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] + P - k * m[rank][j] % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Smallest `k <= k_max` for which the polynomials of degree at most `k`
/// vanishing on `points` are not all multiples of `f` (degree `d`), decided
/// by dimension count: the multiples of `f` contribute exactly the number of
/// monomials of degree at most `k - d`.
pub fn aux_degree_oracle(n: usize, d: u32, points: &[Vec<i64>], k_max: u32) -> Option<u32> {
    (0..=k_max).find(|&k| {
        let basis = monomial_basis(n, k);
        let rows: Vec<Vec<BigInt>> = points
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|m| {
                        m.exponents()
                            .iter()
                            .zip(x)
                            .fold(BigInt::one(), |acc, (&e, &xi)| acc * BigInt::from(xi).pow(e))
                    })
                    .collect()
            })
            .collect();
        let nullity = basis.len() - if rows.is_empty() { 0 } else { rank_mod_p(&rows) };
        let multiples = if k >= d { basis_len(n, k - d) } else { 0 };
        nullity > multiples
    })
}

/// Rational roots of an integer polynomial (constant term first) by the
/// rational root theorem.
pub fn rational_roots_naive(c: &[i64]) -> Vec<Q> {
    let mut c = c.to_vec();
    while c.last() == Some(&0) {
        c.pop();
    }
    let mut roots = Vec::new();
    let mut shift = 0;
    while c.first() == Some(&0) {
        c.remove(0);
        shift += 1;
    }
    if shift > 0 {
        roots.push(q(0));
    }
    if c.len() < 2 {
        return roots;
    }
    let divisors = |v: i64| -> Vec<i64> { (1..=v.abs()).filter(|k| v % k == 0).collect() };
    for a in divisors(c[0]) {
        for b in divisors(*c.last().unwrap()) {
            for s in [1, -1] {
                let r = Q::new((s * a).into(), b.into());
                let v = c.iter().rev().fold(Q::zero(), |acc, x| acc * &r + q(*x));
                if v.is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

/// Whether a binary form `sum c_i x1^i x2^(d-i)` has a linear factor over
/// `Q`, i.e. a rational zero on the projective line.
pub fn binary_form_has_linear_factor(top: &Polynomial) -> bool {
    let d = top.degree().unwrap();
    let coeff = |i: u32| -> i64 {
        let c = top.coeff(&dgl_core::Monomial::new(vec![i, d - i]));
        assert!(c.is_integer());
        i64::try_from(c.to_integer()).unwrap()
    };
    // zero at (1 : 0) means x2 divides the form
    if coeff(d) == 0 {
        return true;
    }
    let dehom: Vec<i64> = (0..=d).map(coeff).collect();
    !rational_roots_naive(&dehom).is_empty()
}

pub fn abs_max(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

/// `g(ell1, ell2)` for a random plane polynomial `g` of degree 2 to 4 and
/// random independent integer forms; returns the forms' coefficients too.
pub fn cylinder_constructed<R: Rng>(rng: &mut R, n: usize) -> (Polynomial, Vec<Vec<i64>>) {
    let d = rng.gen_range(2..=4);
    let g = random_poly(rng, 2, d, 5);
    loop {
        let forms: Vec<Vec<i64>> = (0..2).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let rows: Vec<Vec<BigInt>> = forms.iter().map(|r| r.iter().map(|&c| c.into()).collect()).collect();
        if rank_mod_p(&rows) == 2 {
            let f = g.substitute(&[linear(&forms[0]), linear(&forms[1])]).unwrap();
            return (f, forms);
        }
    }
}

/// `x1^a + x2^b + x3^c` with exponents at least 2, whose partials are
/// distinct monomials, after a random unimodular change of coordinates.
pub fn ncc_constructed<R: Rng>(rng: &mut R, n: usize) -> Polynomial {
    let f = (0..3).fold(Polynomial::zero(n), |acc, i| &acc + &Polynomial::var(n, i).pow(rng.gen_range(2..=4)));
    let m = unimodular(rng, n, 6);
    change(&f, &m)
}

/// An irreducible polynomial in `n` variables: either of degree one in some
/// variable with constant leading coefficient, or Eisenstein at 2 in `x1`.
pub fn irreducible_by_construction<R: Rng>(rng: &mut R, n: usize) -> Polynomial {
    if n == 1 || rng.gen_bool(0.5) {
        let k = rng.gen_range(1..=3u32);
        let mut f = Polynomial::var(n, 0).pow(k);
        for i in 0..k {
            let h = if n == 1 {
                Polynomial::from_int(n, rng.gen_range(-3..=3))
            } else {
                random_poly(rng, n, 1, 2)
            };
            // keep x1 out of the coefficient and force an odd constant term at x1^0
            let h = h.partial_eval(0, &q(0));
            let h = if i == 0 {
                let c = h.coeff(&dgl_core::Monomial::one(n));
                let fix = if c.to_integer() % 2 == BigInt::zero() { q(1) } else { q(0) };
                &h + &Polynomial::constant(n, fix)
            } else {
                h
            };
            f = &f + &(&h * &Polynomial::var(n, 0).pow(i)).scale(&q(2));
        }
        f
    } else {
        let j = rng.gen_range(0..n);
        let c = [1, -1, 2, -3][rng.gen_range(0..4)];
        let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let d = rng.gen_range(1..=3);
        let g = random_poly(rng, others.len(), d, 3).embed(n, &others);
        &Polynomial::var(n, j).scale(&q(c)) + &g
    }
}

pub fn key(f: &Polynomial) -> String {
    f.normalized().to_string()
}

/// Factors a product of constructed irreducibles and compares the result
/// with the factors used to build it.
pub fn check_round_trip(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=3);
    let mut product = Polynomial::from_int(n, rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
    let mut expected: BTreeMap<String, u32> = BTreeMap::new();
    for _ in 0..k {
        let g = irreducible_by_construction(&mut rng, n);
        product = &product * &g;
        *expected.entry(key(&g)).or_default() += 1;
    }
    let fac = factor(&product).map_err(|e| e.to_string())?;
    let got: BTreeMap<String, u32> = fac.factors.iter().map(|(g, e)| (key(g), *e)).collect();
    if got != expected {
        return Err(format!("seed {seed}: {product} gave {got:?}, expected {expected:?}"));
    }
    if fac.expand(n) != product {
        return Err(format!("seed {seed}: expansion mismatch"));
    }
    Ok(())
}
